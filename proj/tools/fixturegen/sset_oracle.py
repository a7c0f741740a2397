#!/usr/bin/env python3
# Independent check of the finite prime set for the unit condition, computed
# inside the Galois closure with PARI.  A prime p is listed when some balanced
# collection h and some prime P of the closure above p give
# prod_tau tau(u)^h_tau = 1 mod P for every unit generator u, or when p is in
# the base set (ramified in L, or dividing 2).  Only M = (1), delta_D = (1).
import json, sys, os, itertools
import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9)

HERE = os.path.dirname(os.path.abspath(__file__))
SCN = os.path.normpath(os.path.join(HERE, "..", "..", "fixtures", "scenarios"))


def topol(coeffs, var="x"):
    return pari("Pol(%s, '%s)" % ("[" + ",".join(reversed(coeffs)) + "]", var))


def oracle(name):
    blk = json.load(open(os.path.join(SCN, name + ".sset.json")))
    P = topol(blk["L_poly"])
    a = topol(blk["alpha_in_L"])
    units = [topol(u) for u in blk["moduli"][0]["units"]]
    R = pari.nfsplitting(P)
    R = pari.polredbest(R)
    nfR = pari.nfinit(R)
    imgs = pari.nfisincl(P, R)
    n = len(imgs)
    def emb(poly, i):
        return pari.lift(pari.Mod(pari.subst(pari.lift(poly), "x", imgs[i]), R))
    def same(x, y):
        return pari.lift(pari.Mod(x - y, R)) == 0
    # pair embeddings restricting to the same embedding of F
    alphas = [emb(a, i) for i in range(n)]
    pairs, used = [], set()
    for i in range(n):
        if i in used:
            continue
        js = [j for j in range(n) if j != i and j not in used and same(alphas[i], alphas[j])]
        assert len(js) == 1
        pairs.append((i, js[0]))
        used |= {i, js[0]}
    eu = [[emb(u, i) for i in range(n)] for u in units]
    base = set(int(p) for p in blk["L_disc_primes"]) | {2}
    found = set(base)
    infinite = None
    for choice in itertools.product([0, 1], repeat=len(pairs)):
        sel = [pr[c] for pr, c in zip(pairs, choice)]
        ys = []
        for k in range(len(units)):
            y = pari(1)
            for i in sel:
                y = pari.lift(pari.Mod(y * eu[k][i], R))
            ys.append(y - 1)
        norms = [abs(int(pari.nfeltnorm(nfR, y))) if y != 0 else 0 for y in ys]
        g = 0
        for v in norms:
            g = pari.gcd(g, v)
        if g == 0:
            infinite = choice
            continue
        for p in pari.factor(g)[0] if g > 1 else []:
            p = int(p)
            if p in found:
                continue
            for pr in pari.idealprimedec(nfR, p):
                if all(y == 0 or int(pari.nfeltval(nfR, y, pr)) >= 1 for y in ys):
                    found.add(p)
                    break
    return infinite, sorted(found)


if __name__ == "__main__":
    for name in sys.argv[1:] or ["small-iso"]:
        inf, primes = oracle(name)
        print(name, "infinite" if inf is not None else "finite", primes)
