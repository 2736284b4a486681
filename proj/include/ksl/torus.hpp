#pragma once

#include "ksl/clifford.hpp"
#include "ksl/common.hpp"
#include "ksl/krein.hpp"

#include <Eigen/SparseCore>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ksl::torus {

// Lattice mode label y in Z^n; std::map ordering on modes is lexicographic.
using Mode = std::vector<int>;

// Deformation form theta(y, z) = y^T Theta z with Theta real antisymmetric.
struct Theta {
  RMatrix matrix;

  explicit Theta(RMatrix m, double tol = 1e-12);
  static Theta zero(int n);
  int n() const { return static_cast<int>(matrix.rows()); }
  // Evaluated over the strict upper triangle so that pairing(y, -y) == 0 exactly.
  double pairing(const Mode& y, const Mode& z) const;
};

// Continued-fraction test for |x - p/q| <= tol with q <= max_denominator.
bool near_rational(double x, int max_denominator = 64, double tol = 1e-9);
// True when every entry of Theta is near-rational: the deformed algebra then
// has nontrivial center and the uniqueness claims need a genericity caveat.
bool theta_is_rational(const Theta& theta, int max_denominator = 64, double tol = 1e-9);

// Finite linear combination a = sum_y a(y) u(y) of the unitary generators,
// with u(y1) u(y2) = exp(i pi theta(y1, y2)) u(y1 + y2).
struct AlgebraElement {
  int n = 0;
  std::map<Mode, Complex> coeffs;

  explicit AlgebraElement(int n_);
  static AlgebraElement unit(int n);
  static AlgebraElement u(const Mode& y);

  Complex coeff(const Mode& y) const;
  void set(const Mode& y, Complex c);  // exact zeros are erased
  bool is_zero() const { return coeffs.empty(); }

  AlgebraElement operator+(const AlgebraElement& other) const;
  AlgebraElement operator-(const AlgebraElement& other) const;
  AlgebraElement scaled(Complex c) const;
};

// Twisted convolution (ab)(z) = sum_y a(y) b(z - y) exp(i pi theta(y, z - y)).
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, const Theta& theta);
// a*(y) = conj(a(-y)); independent of theta.
AlgebraElement involution(const AlgebraElement& a);
// The faithful tracial state tau(a) = a(0).
Complex tau(const AlgebraElement& a);
// Basic derivation delta_j, 1-based: scales a(y) by 2 pi i y_j.
AlgebraElement derivation(int j, const AlgebraElement& a);

// All modes with max-norm <= cutoff, stored flat in lexicographic order, with
// the ascending Delta-eigenvalue permutation (lexicographic tie-break) and the
// inscribed-ellipsoid prefix used by the Dixmier fit windows.
struct ModeLattice {
  int n = 0;
  int cutoff = 0;
  int spinor_dim = 1;
  std::size_t count = 0;               // (2M+1)^n
  std::vector<int> modes_flat;         // count x n
  std::vector<double> gr2;             // g^r(y, y), the r-metric square length
  std::vector<double> q;               // g(y, y), the signature quadratic form
  std::vector<double> lambda;          // sqrt(1 + 4 pi^2 g^r(y, y))
  std::vector<std::size_t> by_lambda;  // ascending (lambda, lex) permutation
  std::size_t ball_count = 0;          // leading by_lambda modes with g^r(y,y) <= R^2
  double ball_radius2 = 0.0;           // largest R^2 with the ellipsoid inside the box

  std::span<const int> mode(std::size_t idx) const {
    return {modes_flat.data() + idx * static_cast<std::size_t>(n),
            static_cast<std::size_t>(n)};
  }
  std::optional<std::size_t> find(const Mode& y) const;
};

// Finite truncation of the deformed torus spectral triple: gamma representation,
// spinor Krein form with the fundamental symmetry J_r, and the mode lattice.
// Immutable after construction; operator indexing is mode-major (lexicographic
// mode order) times the spinor factor.
struct Model {
  clifford::Signature sig;
  Theta theta;
  clifford::SpacelikeReflection reflection;
  int cutoff;
  clifford::GammaRep rep;
  RMatrix gr;  // matrix of g^r(u, v) = g(u, rv), symmetric positive definite
  krein::KreinSpace spinor_space;
  krein::FundamentalSymmetry j;  // spinor factor J_r; the full symmetry is 1 (x) J_r
  ModeLattice lattice;
  bool rational_theta = false;  // genericity warning, not an error

  Model(const clifford::Signature& sig_, const Theta& theta_,
        const clifford::SpacelikeReflection& r, int cutoff_);
};

Model build_model(const clifford::Signature& sig, const Theta& theta,
                  const clifford::SpacelikeReflection& r, int cutoff);

// Per-mode Dirac block D_y = 2 pi i^k gamma(y); Krein-selfadjoint for every k.
CMatrix dirac_block(const Model& model, const Mode& y);
// Closed form sqrt(1 + 4 pi^2 g^r(y, y)), the Delta_J eigenvalue on mode y.
double delta_eigenvalue(const Model& model, const Mode& y);
// Dual route through the operator toolkit: eigenvalues of [D_y]_J^2 with the
// J-modulus computed by krein::j_modulus (ascending; s-fold 4 pi^2 g^r(y,y)).
RVector dirac_jmodulus_spectrum(const Model& model, const Mode& y);
double delta_eigenvalue_via_jmodulus(const Model& model, const Mode& y);

// Compression of the GNS shift u(y) e_z = exp(i pi theta(y, z)) e_{y+z} to the
// box, tensored with the spinor identity; diagonal-free for y != 0.
Eigen::SparseMatrix<Complex> u_operator(const Model& model, const Mode& y);

// Dense block-diagonal Dirac matrix of the whole truncation (test sizes only).
CMatrix full_dirac(const Model& model, std::size_t max_dim = 4096);

enum class TracePower {
  delta_n,      // a Delta_J^{-n}
  d2_delta_n2,  // a D^2 Delta_J^{-n-2}
};

// Partial sums of the unit-observable diagonal over the ball-limited window,
// one entry per spinor basis vector, in ascending Delta order.
std::vector<double> unit_trace_sigma(const Model& model, TracePower power);

// Dixmier estimate of Tr_omega(a Delta^{-n}) or Tr_omega(a D^2 Delta^{-n-2}).
// Off-diagonal generators contribute exactly zero to every partial trace, so
// the result is tau(a) times the unit estimate, exactly.
krein::DixmierEstimate trace_functional(const Model& model, const AlgebraElement& a,
                                        TracePower power,
                                        krein::EstimatorMethod method = krein::EstimatorMethod::slope,
                                        double window_fraction = 0.75);

struct SignatureRatio {
  double value = 0.0;
  bool converged = false;
  krein::DixmierEstimate numerator;    // Tr_omega(D^2 Delta^{-n-2})
  krein::DixmierEstimate denominator;  // Tr_omega(Delta^{-n})
};

// Ratio of the two slope estimates at a = 1; recovers (-1)^k (n - 2k) / n.
SignatureRatio signature_ratio(const Model& model, double window_fraction = 0.75);

// Log-log fit of the eigenvalue counting function over the upper half of the
// ball-limited spectrum levels; returns the growth exponent (near n).
double dimension_estimate(const Model& model);

// Weyl constant c(n) = 2^{n-[n/2]-1} pi^{n/2} n Gamma(n/2); the trace target
// for the unit observable is 1/c(n).
double c_constant(int n);
// (-1)^k (n - 2k) / n, the signature-ratio target.
double signature_target(const clifford::Signature& sig);

// Named admissibility conditions for a candidate spinor-factor symmetry, plus
// the classified reflection when everything passes.
struct AdmissibilityReport {
  struct Entry {
    std::string name;
    bool pass = false;
    double violation = 0.0;
  };
  std::vector<Entry> entries;
  bool pass = false;
  std::optional<clifford::SpacelikeReflection> reflection;
  std::string note;  // classification failure or genericity warning
};

AdmissibilityReport admissibility_check(const Model& model, const CMatrix& j_tilde,
                                        double tol = 1e-10);

}  // namespace ksl::torus
