#!/usr/bin/env python3
# Writes fixtures/scenarios/<id>.json: field data, quaternion algebra data,
# the quadratic extensions to test, and the expected values.  Published
# numbers are transcribed; "derived" ones come from an independent
# computation here (PARI) and say so in the note.
import json, os, sys
import cypari2

import sset_oracle

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9)

HERE = os.path.dirname(os.path.abspath(__file__))
SCN = os.path.normpath(os.path.join(HERE, "..", "..", "fixtures", "scenarios"))


def pub(v, note=""):
    return {"value": v, "source": "published", "note": note}


def der(v, note):
    return {"value": v, "source": "derived", "note": note}


def field_block(poly_gp, label):
    nf = pari.nfinit(poly_gp)
    d = pari.poldisc(poly_gp)
    D = pari.nfdisc(poly_gp)
    idx = pari.sqrtint(d / D)
    sig = [int(x) for x in pari.nf_get_sign(nf)] if hasattr(pari, "nf_get_sign") else None
    r1 = int(pari.polsturm(poly_gp))
    deg = int(pari.poldegree(poly_gp))
    over = {}
    if idx != 1:
        for p in pari.factor(idx)[0]:
            over[str(int(p))] = [[int(pr[3]), int(pr[2])] for pr in pari.idealprimedec(nf, p)]
    coeffs = [str(pari.polcoef(poly_gp, i)) for i in range(deg + 1)]
    return {
        "label": label,
        "poly": coeffs,
        "disc": str(D),
        "signature": [r1, (deg - r1) // 2],
        "index": str(idx),
        "splitting_overrides": over,
    }


# k_projection coordinates are 0-based embedding indices
SCEN = {
    "lv": dict(
        F="x^6-2*x^5-x^4+4*x^3-4*x^2+1", label="6.4.974528.1",
        ext=dict(label="F(sqrt(2a-1))", radicand=["-1", "2"], chi_of_c=-1),
        expected=dict(
            volume=pub("2.834032"),
            repequiv=pub("representation equivalent", "L ramified at exactly 2 of the 4 real places"),
        ),
    ),
    "small-iso": dict(
        F="x^4-x^3+x^2+4*x-4", label="4.2.1375.1",
        ext=dict(label="F(zeta10)", dump="small-iso", chi_of_c=-1),
        kproj=[0, 2, 3],
        B=[[2, -2, -3, 4], [4, -9, -10, 6], [-4, 9, 12, -10]],
        Bp=[[2, 0, -1], [-1, 2, -1], [1, 2, 3]],
        boxes=[dict(box=[[-1, 0, 1], [-1, 1], [-1, 1]], empty=True)],
        expected=dict(
            volume=pub("0.2510654"),
            repequiv=pub("inconclusive"),
            minus_rank=pub(4),
            shady={"omega-all": pub({"exists": False})},
            verdict=pub("i-isospectral for all i"),
            certificates=pub([]),
            sset=None,
        ),
    ),
    "zero-not-one": dict(
        F="x^4-3*x^2-2*x+1", label="4.2.1328.1",
        ext=dict(label="F(zeta4)", dump="zero-not-one", chi_of_c=-1),
        kproj=[0, 2, 3],
        B=[[4, -37, 50, 9], [4, -38, 53, 9], [4, -40, 51, 9]],
        Bp=[[1, -1, 1], [1, 2, 0], [1, 0, -2]],
        boxes=[dict(box=[[0], [-1, 1], [-1, 1]], empty=True),
               dict(box=[[-1, 1], [-1, 1], [-1, 1]], empty=False, contains=[1, 1, 1])],
        expected=dict(
            volume=pub("0.2461808"),
            repequiv=pub("inconclusive"),
            minus_rank=pub(4),
            shady={
                "omega-0": pub({"exists": False}),
                "omega-all": pub({"exists": True, "representative": [-2, -1, 0, -1, 1, 0, 1],
                                  "line": [-9, -4, 0, -4, 4, 0, 4]},
                                 "(Psi1')^-2 Psi4' and Psi0 = (Psi1')^-9 (Psi4')^4"),
            },
            eigenvalues=pub({"kind": "omega-all", "degree": 1,
                             "values": ["30.2167", "271.9505", "755.4182", "1480.6196", "2447.5549"]}),
            certificates=pub([{"degree": 1, "lambda": "30.2167"}]),
            count=der({"kind": "omega-all", "T": "300", "count": 4},
                      "pairs at 4(2.748+10.994n)^2 <= 300 for n = 0, -1"),
            verdict=pub("0-isospectral, not 1-isospectral"),
        ),
    ),
    "zero-betti": dict(
        F="x^6-x^5-3*x^4+2*x^2+4*x+1", label="6.4.958527.1",
        ext=dict(label="F(zeta6)", dump="zero-betti", chi_of_c=-1),
        kproj=[0, 1, 3, 4, 5],
        B=[[1, -2, 2, 4, 3, 2], [-1, 0, -2, -3, -2, 0], [1, 0, 4, 6, -1, -2],
           [1, 2, 2, 6, 1, 0], [-1, 0, 0, -2, 1, 0]],
        Bp=[[1, 0, -2, 0, 0], [-1, 1, -1, 1, 1], [1, 0, 0, 0, 2], [1, 2, 0, 0, 0], [-1, 0, 0, -2, 0]],
        boxes=[],
        expected=dict(
            volume=pub("3.397413"),
            repequiv=pub("inconclusive"),
            minus_rank=pub(6),
            shady={
                "omega-0": pub({"exists": False}),
                "h-bullet": pub({"exists": True, "finite": [[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]]},
                                "exactly Psi1 and its inverse"),
            },
            sset=pub({"finite": False}),
            verdict=pub("0-isospectral, first Betti numbers differ by 1"),
        ),
    ),
    "hnot0": dict(
        F="x^4-2*x^3+7*x^2-6*x-3", label="4.2.10224.2",
        ext=dict(label="F(zeta12)", dump="hnot0", chi_of_c=-1),
        kproj=[0, 1, 2],
        B=[[1, 3, -2, 3], [1, 3, -2, 5], [-19, -33, 26, -52]],
        Bp=[[-1, -2, 1], [1, -2, 1], [0, 2, 5]],
        boxes=[dict(box=[[-1, 1], [-1, 1], [-1, 1]], empty=True)],
        expected=dict(
            volume=pub("5.902455"),
            repequiv=pub("inconclusive"),
            minus_rank=pub(4),
            shady={
                "h-bullet": pub({"exists": False}),
                "omega-all": pub({"exists": True, "representative": [-1, -1, 0, 0, -1, 1, 0],
                                  "line": [-1, -1, -2, 0, 0, 0, 0]},
                                 "(Psi1')^-1 (Psi2')^-1 Psi4' and Psi0 = (Psi1')^-1 (Psi2')^-1 (Psi3')^-2"),
                "omega-0": pub({"exists": True}, "the same characters are also Omega0-shady"),
            },
            eigenvalues=pub({"kind": "omega-all", "degree": 1,
                             "values": ["1.741", "2.123", "8.735", "9.883", "23.107", "25.020"]}),
            certificates=pub([{"degree": 0, "lambda": "1.741"}, {"degree": 1, "lambda": "1.741"}]),
            count=None,
            verdict=pub("not 0-isospectral, not 1-isospectral, regulator quotient rational"),
        ),
    ),
}


def main():
    only = sys.argv[1:] or list(SCEN)
    for sid in only:
        sc = SCEN[sid]
        doc = {
            "schema": "scenario-1",
            "id": sid,
            "field": field_block(sc["F"], sc["label"]),
            "D": {"ramified_real": "all", "ramified_finite": [], "delta_norm": "1"},
            "level": {"norm": "1", "factors": []},
            "C": {"order": 2, "C_iso_order": 2},
        }
        ext = dict(sc["ext"])
        ext["chi"] = "c"
        if "dump" in ext:
            ext["dump"] = "../dumps/%s.json" % ext["dump"]
            ext["sset"] = "%s.sset.json" % sid
        ext.setdefault("finite_ramified", [])
        doc["extensions"] = [ext]
        if "kproj" in sc:
            doc["k_projection"] = sc["kproj"]
            doc["printed_lattice"] = {"B": [[str(v) for v in r] for r in sc["B"]],
                                      "B_reduced": [[str(v) for v in r] for r in sc["Bp"]]}
            doc["boxes"] = sc["boxes"]
        exp = {k: v for k, v in sc["expected"].items() if v is not None}
        if "sset" in sc["expected"] and sc["expected"]["sset"] is None:
            inf, primes = sset_oracle.oracle(sid)
            exp["sset"] = der({"finite": inf is None, "primes": [str(p) for p in primes]},
                              "unit congruences checked at every prime of the Galois closure (PARI)")
        doc["expected"] = exp
        with open(os.path.join(SCN, sid + ".json"), "w") as f:
            json.dump(doc, f, indent=1)
            f.write("\n")
        print(sid, "ok")


if __name__ == "__main__":
    main()
