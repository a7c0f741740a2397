#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "core/factor.hpp"
#include "fixtures.hpp"
#include "harness/scenario.hpp"
#include "nf/field.hpp"
#include "nf/modp.hpp"
#include "nf/poly.hpp"
#include "nf/repequiv.hpp"
#include "nf/sset.hpp"
#include "nf/zeta.hpp"

using namespace hcg;

TEST_SUITE("nf") {

TEST_CASE("resultant and discriminant") {
  CHECK(discriminant(zpoly({"-2", "0", "1"})) == 8);
  CHECK(discriminant(zpoly({"1", "1", "1"})) == -3);
  CHECK(discriminant(zpoly({"-4", "4", "1", "-1", "1"})) == -22000);  // index 4 over -1375
  CHECK(discriminant(zpoly({"1", "-2", "-3", "0", "1"})) == -1328);
  // Res(x - a, g) = g(a) up to sign
  CHECK(abs(resultant(zpoly({"-3", "1"}), zpoly({"1", "0", "2"}))) == 19);
}

TEST_CASE("parse_field") {
  auto F = parse_field(zpoly({"-4", "4", "1", "-1", "1"}), 4, {});
  CHECK(F.disc == -1375);
  CHECK(F.r1 == 2);
  CHECK(F.r2 == 1);
  auto G = parse_field(zpoly({"1", "-2", "-3", "0", "1"}));
  CHECK(G.disc == -1328);
  CHECK(G.r1 == 2);
  auto H = parse_field(zpoly({"-2", "0", "1"}));
  CHECK(H.disc == 8);
  CHECK(H.r1 == 2);
  CHECK(H.r2 == 0);
  CHECK_THROWS_AS(parse_field(zpoly({"-1", "0", "1"})), Error);       // (x-1)(x+1)
  CHECK_THROWS_AS(parse_field(zpoly({"4", "0", "0", "0", "1"})), Error);  // x^4 + 4 = (x^2+2x+2)(x^2-2x+2)
  CHECK_THROWS_AS(parse_field(zpoly({"1", "2"})), Error);                // not monic
}

TEST_CASE("factor over Z") {
  // (x^2+1)^2 (x^3-2)(2x+1)
  ZPoly a = zpoly({"1", "0", "1"}), b = zpoly({"-2", "0", "0", "1"}), c = zpoly({"1", "2"});
  auto f = pmul(pmul(pmul(a, a), b), c);
  auto fs = factor_z(f);
  REQUIRE(fs.size() == 3);
  CHECK(fs[0].first == c);
  CHECK(fs[1].first == a);
  CHECK(fs[1].second == 2);
  CHECK(fs[2].first == b);
  CHECK(is_irreducible(zpoly({"1", "-1", "4", "-7", "9", "-9", "6", "-3", "1"})));
  // x^4 - 10x^2 + 1 is irreducible but reducible modulo every prime
  CHECK(is_irreducible(zpoly({"1", "0", "-10", "0", "1"})));
  auto sw = factor_z(pmul(zpoly({"1", "0", "-10", "0", "1"}), zpoly({"-5", "0", "1"})));
  CHECK(sw.size() == 2);
}

TEST_CASE("real root isolation and signs") {
  auto f = to_qpoly(zpoly({"1", "0", "-4", "4", "-1", "-2", "1"}));  // 6.4.974528.1
  auto iv = isolate_real_roots(f);
  CHECK(iv.size() == 4);
  for (size_t i = 1; i < iv.size(); ++i) CHECK(iv[i - 1].second <= iv[i].first);
  auto F = parse_field(zpoly({"1", "0", "-4", "4", "-1", "-2", "1"}));
  CHECK(negative_real_places(F, to_qpoly(zpoly({"-1", "2"}))).size() == 2);
}

TEST_CASE("complex roots") {
  PrecisionScope ps(50);
  auto r = complex_roots(zpoly({"1", "0", "1"}));
  REQUIRE(r.size() == 2);
  CHECK(abs(r[0].re) < Real(1e-40));
  CHECK(abs(abs(r[0].im) - 1) < Real(1e-40));
  auto s = complex_roots(zpoly({"-4", "4", "1", "-1", "1"}));
  for (auto& z : s) CHECK(cabs(peval(to_qpoly(zpoly({"-4", "4", "1", "-1", "1"})), z)) < Real(1e-40));
}

TEST_CASE("mod p factorisation") {
  using namespace modp;
  std::mt19937_64 g(7);
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 101ULL, 1000003ULL}) {
    for (int it = 0; it < 20; ++it) {
      int n = 1 + int(g() % 7);
      Poly f(n + 1);
      for (auto& c : f) c = g() % p;
      f[n] = 1;
      auto fs = factor(f, p);
      Poly prod{1};
      for (auto& [h, e] : fs) {
        auto fd = factor_degrees(h, p);
        if (deg(h) <= 3 && p < 200) {
          // irreducible of degree <= 3 iff no root
          bool root = false;
          for (u64 x = 0; x < p; ++x) root |= eval(h, x, p) == 0;
          CHECK(root == (deg(h) == 1));
        }
        for (int k = 0; k < e; ++k) prod = mul(prod, h, p);
      }
      CHECK(prod == monic(f, p));
    }
  }
}

TEST_CASE("splitting types") {
  auto F = parse_field(zpoly({"-2", "0", "1"}));
  auto s7 = splitting_type(F, 7);
  CHECK(s7.fe == std::vector<std::pair<int, int>>{{1, 1}, {1, 1}});
  CHECK(splitting_type(F, 5).fe == std::vector<std::pair<int, int>>{{2, 1}});
  CHECK(splitting_type(F, 2).fe == std::vector<std::pair<int, int>>{{1, 2}});
  // degree sums, and root counts over F_{p^f} against brute force for small p
  auto G = parse_field(zpoly({"1", "-2", "-3", "0", "1"}));
  for (uint32_t p : primes_upto(60)) {
    auto s = splitting_type(G, p);
    int sum = 0;
    for (auto& [f, e] : s.fe) sum += f * e;
    CHECK(sum == 4);
    if (G.poly_disc % p == 0) continue;
    // roots in F_p = number of degree-1 primes
    int roots = 0, deg1 = 0;
    for (uint32_t x = 0; x < p; ++x) roots += modp::eval(modp::reduce(G.f, p), x, p) == 0;
    for (auto& [f, e] : s.fe) deg1 += f == 1;
    CHECK(roots == deg1);
    // roots in F_{p^2}: sum of f over primes with f | 2
    modp::GF K = modp::splitting_field(zpoly({"-3", "0", "1"}), p);  // some quadratic extension or F_p
    if (K.m == 2) {
      int r2 = int(modp::roots_in(K, G.f).size()), exp2 = 0;
      for (auto& [f, e] : s.fe) exp2 += (2 % f == 0) ? f : 0;
      CHECK(r2 == exp2);
    }
    auto cnt = factor_degree_counts(G.f, p);
    std::vector<std::pair<int, int>> fe2;
    for (int d = 1; d <= 4; ++d)
      for (int k = 0; k < cnt[d]; ++k) fe2.push_back({d, 1});
    CHECK(fe2 == s.fe);
  }
  // index prime without override is flagged
  auto H = parse_field(zpoly({"-4", "4", "1", "-1", "1"}), 4, {});
  CHECK(splitting_type(H, 2).flagged);
  auto H2 = parse_field(zpoly({"-4", "4", "1", "-1", "1"}), 4, {{Z(2), {{2, 1}, {2, 1}}}});
  CHECK(splitting_type(H2, 2).from_override);
  CHECK(H2.disc == -1375);
}

TEST_CASE("zeta2 over Q") {
  auto Qf = parse_field(zpoly({"0", "1"}));
  auto z = zeta2(Qf, 1000000);
  long double pi2_6 = 1.6449340668482264365L;
  CHECK(z.lower <= pi2_6);
  CHECK(z.upper >= pi2_6);
  CHECK(z.z.err < 1e-6L);
}

TEST_CASE("zeta2 brackets are nested in P") {
  auto F = parse_field(zpoly({"1", "-2", "-3", "0", "1"}));
  auto a = zeta2(F, 1000), b = zeta2(F, 10000), c = zeta2(F, 100000);
  CHECK(a.lower <= b.lower);
  CHECK(b.lower <= c.lower);
  CHECK(b.lower >= a.lower);
  CHECK(c.upper <= a.upper);
  CHECK(a.upper >= c.lower);
  CHECK(b.upper >= c.lower);
}

TEST_CASE("covolume brackets the printed values") {
  struct {
    const char* id;
    long double v;
  } cases[] = {{"small-iso", 0.2510654L}, {"zero-not-one", 0.2461808L}, {"lv", 2.834032L},
               {"zero-betti", 3.397413L}, {"hnot0", 5.902455L}};
  for (auto& c : cases) {
    auto sc = load_scenario(fixture(std::string("scenarios/") + c.id + ".json"));
    auto V = covolume(sc.F, {}, 100000);
    CAPTURE(c.id);
    CHECK(std::fabs(V.vol.value - c.v) <= V.vol.err + 1e-7L);
    CHECK(V.vol.err / V.vol.value < 3e-5L);
  }
  auto sc = load_scenario(fixture("scenarios/small-iso.json"));
  CHECK_THROWS_AS(covolume(sc.F, {true, 2, 1}, 1000), Error);
  CHECK_THROWS_AS(covolume(parse_field(zpoly({"-2", "0", "1"})), {}, 1000), Error);
}

TEST_CASE("repequiv") {
  RepEquivInput in;
  in.r1 = 4;
  in.D_real_ramified = {0, 1, 2, 3};
  in.extensions = {{"L", {0, 3}, {}, {}, -1}};
  CHECK(repequiv(in).verdict == "representation equivalent");
  in.extensions[0].real_ramified = {0, 1, 2, 3};
  CHECK(repequiv(in).verdict == "inconclusive");
  // D ramified at a finite prime: LV(i)(a) fails
  RepEquivInput d = in;
  d.D_finite_ramified = {"p5"};
  CHECK(repequiv(d).verdict == "representation equivalent");
  // odd-exponent level prime not split
  RepEquivInput l = in;
  l.odd_level_primes = 1;
  l.extensions[0].odd_level_split = {false};
  CHECK(repequiv(l).verdict == "representation equivalent");
  l.extensions[0].odd_level_split = {true};
  CHECK(repequiv(l).verdict == "inconclusive");
}

TEST_CASE("balanced collections") {
  auto two = balanced_collections({{0, 1}, {2, 3}}, 4);
  CHECK(two.size() == 4);
  auto four = balanced_collections({{0, 4}, {1, 5}, {2, 6}, {3, 7}}, 8);
  CHECK(four.size() == 16);
  for (auto& h : four) CHECK(is_balanced(h, {{0, 4}, {1, 5}, {2, 6}, {3, 7}}));
  CHECK_FALSE(is_balanced({1, 1}, {{0, 1}}));
  CHECK_THROWS_AS(balanced_collections({{0, 1}, {1, 2}}, 4), Error);
}

TEST_CASE("sset over Q(i)") {
  SSetInput in;
  in.F_poly = zpoly({"0", "1"});
  in.L_poly = zpoly({"1", "0", "1"});
  in.alpha_in_L = {};
  in.L_disc = -4;
  in.L_disc_primes = {2};
  in.moduli = {{"(1)", {zpoly({"0", "1"})}}};
  auto R = sset(in);
  CHECK(R.finite);
  // N(i - 1) * N(-i - 1) = 2: nothing beyond the base set
  CHECK(R.primes == std::vector<Z>{2});
}

TEST_CASE("sset on the fixtures") {
  auto t0 = std::chrono::steady_clock::now();
  auto sc = load_scenario(fixture("scenarios/small-iso.json"));
  auto in = load_sset_input(sc, sc.extensions[0]);
  auto R = sset(in);
  CHECK(R.finite);
  CHECK(R.primes == std::vector<Z>{2, 5, 11});
  // independence of the generating set
  auto alt = in;
  for (auto& u : alt.moduli[0].units) u = linv(u, in.L_poly);
  CHECK(sset(alt).primes == R.primes);
  auto prod = in;
  auto& us = prod.moduli[0].units;
  for (size_t i = 1; i < us.size(); ++i) us[i] = lmul(us[i], us[i - 1], in.L_poly);
  CHECK(sset(prod).primes == R.primes);

  auto zb = load_scenario(fixture("scenarios/zero-betti.json"));
  auto Rb = sset(load_sset_input(zb, zb.extensions[0]));
  CHECK_FALSE(Rb.finite);
  CHECK(Rb.witness_h.size() == 12);
  MESSAGE("sset fixtures took " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s");
}

TEST_CASE("units must have norm +-1") {
  auto sc = load_scenario(fixture("scenarios/small-iso.json"));
  auto in = load_sset_input(sc, sc.extensions[0]);
  in.moduli[0].units[0] = zpoly({"2"});
  CHECK_THROWS_AS(sset(in), Error);
}

}
