#pragma once

#include "ksl/clifford.hpp"
#include "ksl/common.hpp"
#include "ksl/krein.hpp"
#include "ksl/torus.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ksl::forms {

// Universal m-form: linear combination of (m+1)-tuples (a_0, ..., a_m) of
// algebra elements, with the entries in slots >= 1 taken mod constants.
// Terms are kept canonicalized: constant components of slots >= 1 dropped,
// vanished terms removed, and terms with bitwise-identical tails merged, so
// the defining identities (d^2 = 0, the Leibniz rule, star involutivity)
// cancel exactly.
struct UniversalForm {
  int n = 0;
  int degree = 0;
  std::vector<std::vector<torus::AlgebraElement>> terms;  // each of size degree+1

  UniversalForm(int n_, int degree_);
  static UniversalForm algebra(const torus::AlgebraElement& a);  // degree 0
  bool is_zero() const { return terms.empty(); }
};

// d(a_0, ..., a_m) = (1, a_0, ..., a_m); kills tuples led by constants.
UniversalForm d(const UniversalForm& w);
// (a_0,...,a_m)(b_0,...,b_l) = sum_i (-1)^{m-i} (a_0,...,a_i a_{i+1},...,b_l)
// with a_{m+1} read as b_0.
UniversalForm product(const UniversalForm& a, const UniversalForm& b,
                      const torus::Theta& theta);
// (a_0,...,a_m)* = (-1)^m (1, a_m*, ..., a_1*) . (a_0*); an involution.
UniversalForm star(const UniversalForm& w, const torus::Theta& theta);
UniversalForm add(const UniversalForm& a, const UniversalForm& b);
UniversalForm scaled(const UniversalForm& w, Complex c);

// Operator image of a universal form: a finitely supported map from reduced
// gamma words (index bitmasks, canonically sorted) to algebra coefficients,
// Sigma_U gamma_U (x) a_U.  Words of pi(Omega^m) have populations <= m of the
// same parity as m.
struct RepresentedForm {
  int n = 0;
  int degree = 0;
  std::map<std::uint32_t, torus::AlgebraElement> words;

  RepresentedForm(int n_, int degree_);
  torus::AlgebraElement word_coeff(std::uint32_t mask) const;
  void set_word(std::uint32_t mask, torus::AlgebraElement a);  // erases zeros
  bool is_zero() const { return words.empty(); }
};

// Product of two reduced gamma words: anticommutation sign for the sort plus
// g_ii contraction of repeated indices; returns (sign, reduced mask).
std::pair<double, std::uint32_t> word_mul(std::uint32_t u, std::uint32_t v,
                                          const clifford::Signature& sig);

RepresentedForm symbol_add(const RepresentedForm& a, const RepresentedForm& b);
RepresentedForm symbol_scaled(const RepresentedForm& a, Complex c);
RepresentedForm symbol_product(const RepresentedForm& a, const RepresentedForm& b,
                               const torus::Theta& theta, const clifford::Signature& sig);

// pi((a_0,...,a_m)) = a_0 [D,a_1] ... [D,a_m] with the bounded commutator
// symbol [D,a] = i^{k-1} Sigma_j gamma_j delta_j(a).
RepresentedForm pi(const UniversalForm& w, const torus::Model& model);

// Components by word population: junk carries populations <= m-2 (by parity,
// everything below the top), the Connes projection keeps population == m.
RepresentedForm junk_component(const RepresentedForm& w);
RepresentedForm top_component(const RepresentedForm& w);
bool is_junk(const RepresentedForm& w, double tol = 0.0);

// binom(n, m): the A_theta-rank of the Connes-form quotient in degree m
// (zero when m > n).
std::size_t connes_rank(int n, int m);

// Basis description of the degree-m junk and top word spaces; for m > n the
// whole of pi(Omega^m) is junk.
struct JunkSpaceDescription {
  int degree = 0;
  bool everything_junk = false;
  std::vector<std::uint32_t> junk_words;
  std::vector<std::uint32_t> top_words;
};
JunkSpaceDescription junk_space(const torus::Model& model, int m);

// Gamma-word matrix on the spinor factor (identity for the empty word).
CMatrix realize_word(std::uint32_t mask, const clifford::GammaRep& rep);
// Dense truncated operator Sigma_U A(a_U) (x) gamma_U (test sizes only);
// mode-major indexing matching torus::u_operator.
CMatrix realize(const RepresentedForm& w, const torus::Model& model,
                std::size_t max_dim = 4096);

// Dixmier estimate of <w1, w2> = Tr_omega(w1^{*J} w2 Delta_J^{-n}) for
// degree-1 forms, with the J-adjoint taken in the model's J_r inner product.
// The density is complex in general; identically vanishing partial sums give
// an exact zero.
krein::DixmierEstimate one_form_inner_product(const RepresentedForm& w1,
                                              const RepresentedForm& w2,
                                              const torus::Model& model,
                                              double window_fraction = 0.75);

// Deterministic textual dumps for golden-file comparisons: 17 significant
// digits, words ascending, modes lexicographic.
std::string dump(const RepresentedForm& w);
std::string dump(const UniversalForm& w);

}  // namespace ksl::forms
