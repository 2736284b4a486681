#pragma once

#include "ksl/common.hpp"

#include <string>
#include <vector>

namespace ksl::clifford {

// Signature (n,k): quadratic form with k minus signs followed by n-k plus signs.
struct Signature {
  int n = 0;
  int k = 0;

  static constexpr int default_max_n = 12;

  Signature(int n_, int k_, int max_n = default_max_n);

  // g_ii for 0-based index i: -1 for i < k, +1 otherwise.
  double metric_sign(int i) const { return i < k ? -1.0 : 1.0; }
  RMatrix metric() const;
  double quadratic_form(const RVector& v) const;
  // Dimension of the spinor module: 2^{floor(n/2)}.
  int spinor_dim() const { return 1 << (n / 2); }
};

// Gamma matrices on the spinor module, with grading and the Krein form.
// Immutable after construction; all members are plain data.
struct GammaRep {
  Signature sig;
  int dim = 0;
  std::vector<CMatrix> gammas;  // gamma_1 .. gamma_n
  CMatrix chi;                  // grading for even n, identity for odd n
  CMatrix krein_gram;           // G with (u,v) = u^dagger G v

  // gamma(v) = sum_i v_i gamma_i.
  CMatrix gamma(const RVector& v) const;
};

// g-isometric involution r with g(., r.) positive definite.
struct SpacelikeReflection {
  RMatrix r;
};

// Aggregated max-violations of the GammaRep invariants.
struct RelationReport {
  struct Entry {
    std::string name;
    double violation = 0.0;
  };
  std::vector<Entry> entries;
  double tol = 0.0;

  double max_violation() const;
  bool pass() const { return max_violation() < tol; }
};

// Pauli-tensor construction of the representation for signature (n,k),
// with tau(j) = i for j <= k and 1 otherwise; odd n takes the first direct
// summand and stores chi = I.  The Krein form's global sign is fixed by
// requiring G * J_{r0} positive definite for the standard reflection.
GammaRep build_gamma(const Signature& sig);

SpacelikeReflection standard_reflection(const Signature& sig);

// Reflection with prescribed (-1)-eigenspace; basis columns must span a
// g-negative-definite k-dimensional subspace.
SpacelikeReflection spacelike_reflection_from_subspace(const Signature& sig,
                                                       const RMatrix& basis);

// Throws ksl::Error when r violates the reflection invariants.
void validate_reflection(const Signature& sig, const RMatrix& r, double tol = 1e-10);

// Riemannian form g^r(u,v) = g(u, rv), symmetrized.
RMatrix riemannian_metric(const Signature& sig, const SpacelikeReflection& r);

// J_r = i^{k(k+1)/2} gamma(e_1)...gamma(e_k) over an oriented g-orthonormal
// basis of the (-1)-eigenspace of r, sign-fixed so that G*J is positive
// definite.  Satisfies J^2 = I and J gamma(v) J = (-1)^k gamma(rv).
CMatrix fundamental_symmetry_from_reflection(const GammaRep& rep,
                                             const SpacelikeReflection& r);

// Inverse of the above: recovers r from J gamma(v) J = (-1)^k gamma(rv) by
// trace projection onto the gamma basis.  Throws with the violated
// pre-condition named when J is not of reflection type.
SpacelikeReflection classify_fundamental_symmetry(const GammaRep& rep, const CMatrix& j,
                                                  double tol = 1e-10);

RelationReport verify_clifford_relations(const GammaRep& rep, double tol = 1e-12);

}  // namespace ksl::clifford
