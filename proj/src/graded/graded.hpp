#pragma once
// modules graded by a finite abelian group, acted on by a commutative algebra given by matrices
#include <optional>
#include <string>

#include "core/num.hpp"
#include "lattice/squareclass.hpp"

namespace hcg {

struct Grading {
  std::vector<int> d;  // invariant factors (any positive orders accepted)
  int order() const;
  int add(int a, int b) const;
  int neg(int a) const;
  std::vector<int> tuple(int a) const;
  int index(const std::vector<int>& t) const;
};

struct Generator {
  std::string label;
  int degree = 0;
  QMat mat;     // on all of M
  int partner;  // index of iota(generator)
};

struct GradedSpec {
  Grading C;
  std::vector<int> dims;  // per grading element
  std::vector<Generator> gens;
  int n() const;
  int off(int c) const;
  QMat block(const QMat& X, int from, int to) const;  // part of X mapping M_from -> M_to
};

// block support, iota consistency, commutativity
void validate_spec(const GradedSpec& s);
// appends w and w^-1 (iota(w) = w^-1) as generators
void add_w_generator(GradedSpec& s, const std::string& label, int degree, const QMat& w);

using Word = std::vector<int>;  // product of generators, applied right to left
struct Element {
  std::vector<std::pair<Q, Word>> terms;
};
QMat word_matrix(const GradedSpec& s, const Word& w);
QMat element_matrix(const GradedSpec& s, const Element& e);
Element iota(const GradedSpec& s, const Element& e);
std::string element_str(const GradedSpec& s, const Element& e);

// homogeneous spanning words of the image of the algebra in End(M)
struct Algebra {
  std::vector<std::vector<Word>> words;  // per degree
  std::vector<std::vector<QMat>> mats;
  int dim() const;
};
// span closure; also checks that iota descends to an anti-homomorphism of the image
Algebra algebra_closure(const GradedSpec& s);

struct Invertible {
  std::optional<Element> elem;
  QMat mat;
  QVec obstruction;  // nonzero vector killed by every element of degree c (when elem is empty)
};
Invertible component_invertible(const GradedSpec& s, const Algebra& A, int c, Rng& rng);

struct LinkWitness {
  int c = 0, cp = 0;
  Element elem;
  QMat block;  // M_c -> M_cp
};
struct LinkResult {
  std::optional<LinkWitness> witness;
  QVec obstruction;
  std::string reason;
};
// random = true samples a random element (for independence tests)
LinkResult linked(const GradedSpec& s, const Algebra& A, int c, int cp, Rng& rng, bool random = false);

struct Polarisation {
  bool ok = false;
  std::string reason;
  QMat P;  // Gram matrix on M, block diagonal
  std::vector<int> tilde_C, coset_reps;
};
// throws unsupported unless the image of the algebra is reduced
Polarisation polarisable(const GradedSpec& s, const Algebra& A, Rng& rng);
bool is_polarisation(const GradedSpec& s, const QMat& P);

struct GradedRegConst {
  Q value;
  SquareClass cls;
  LinkWitness witness;
};
GradedRegConst regconst_graded(const GradedSpec& s, int c, int cp, Rng& rng, Ring ring = Ring::Q, const Z& p = 0,
                               bool random_link = false);
// det(P | M_c) / det(P | M_cp)
Q pairing_quotient(const GradedSpec& s, const QMat& P, int c, int cp);

// the same quotient for a polarisation with complex (non-rational) coefficients, at the given precision
struct ComplexQuotient {
  std::string re, im;  // printed to 30 digits
  double residual;     // |quotient - exact|
};
ComplexQuotient complex_polarisation_check(const GradedSpec& s, int c, int cp, const Q& exact, Rng& rng,
                                           int digits = 60);

std::vector<GradedSpec> decompose_isotypic(const GradedSpec& s, Rng& rng);

struct LocalFactor {
  std::vector<int> factor_degrees;  // degrees of the irreducible factors mod p in this iota-orbit
  SquareClass cls;
};
struct LocalResult {
  std::vector<LocalFactor> factors;
  SquareClass global;
};
LocalResult localize_p(const GradedSpec& s, int c, int cp, const Z& p, Rng& rng);

GradedSpec direct_sum(const GradedSpec& a, const GradedSpec& b);

// minimal and characteristic polynomials, low to high, monic
QVec min_poly(const QMat& X);
QVec char_poly(const QMat& X);

}  // namespace hcg
