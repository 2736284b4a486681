#pragma once

#include "ksl/common.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ksl::krein {

// Finite-dimensional indefinite inner product space (u,v) = u^dagger G v.
struct KreinSpace {
  CMatrix gram;

  explicit KreinSpace(CMatrix gram_, double tol = 1e-12);
  int dim() const { return static_cast<int>(gram.rows()); }
};

// Involution J whose J-product <u,v>_J = (u, Jv) is a scalar product.
struct FundamentalSymmetry {
  CMatrix j;

  FundamentalSymmetry(const KreinSpace& space, CMatrix j_, double tol = 1e-10);
};

// A^+ = G^{-1} A^dagger G, the adjoint for the indefinite product.
CMatrix krein_adjoint(const CMatrix& a, const KreinSpace& space);

bool is_krein_selfadjoint(const CMatrix& a, const KreinSpace& space, double tol = 1e-10);

struct EighResult {
  RVector values;   // ascending
  CMatrix vectors;  // unitary, columns are eigenvectors
};

// Residual-contract Hermitian eigendecomposition: throws on non-Hermitian
// input and when ||HV - VL|| or ||V^dagger V - I|| exceed tol relative to ||H||.
EighResult hermitian_eigh(const CMatrix& h, double tol = 1e-11);

// [A]_J = (1/2 (A^{*J}A + A A^{*J}))^{1/2} for Krein-selfadjoint A, computed
// as a Hermitian square root in the J-inner product.  The result is
// J-selfadjoint, J-positive, and commutes with J.
CMatrix j_modulus(const CMatrix& a, const KreinSpace& space, const FundamentalSymmetry& j,
                  double tol = 1e-10);

// mu sorted descending with running sums sigma_N.
struct SingularSequence {
  std::vector<double> mu;
  std::vector<double> sigma;
};

SingularSequence characteristic_sequence(std::vector<double> mu);

// Running sup of sigma_n / n^{(p-1)/p} for p > 1, and of sigma_n / ln n over
// n >= 3 for p = 1; a bounded trend indicates L^{p+} membership at truncation scale.
double lp_plus_diagnostic(const SingularSequence& seq, double p);

enum class EstimatorMethod { tail, slope };

struct DixmierEstimate {
  double value = 0.0;
  double value_imag = 0.0;  // nonzero only for complex-valued pairings
  EstimatorMethod method = EstimatorMethod::slope;
  std::size_t window_lo = 0;  // 1-based, inclusive
  std::size_t window_hi = 0;
  double residual = 0.0;  // rms deviation from the fitted line over the window
  double scale = 0.0;     // max |sigma| over the window
  bool converged = false;
};

// Least-squares slope of sigma_N against ln N over the trailing window
// [ceil(N^{1-f}), N] (f = window_fraction, the tail share on a log scale).
DixmierEstimate slope_fit(std::span<const double> sigma, double window_fraction = 0.75);
DixmierEstimate slope_fit(std::span<const double> sigma_re, std::span<const double> sigma_im,
                          double window_fraction = 0.75);

// sigma_N / ln N at the final index; carries the O(1/ln N) offset bias.
DixmierEstimate tail_quotient(std::span<const double> sigma);

DixmierEstimate dixmier_estimate(const SingularSequence& seq, EstimatorMethod method,
                                 double window_fraction = 0.75);

struct ConvergenceRow {
  std::size_t n = 0;
  double sigma = 0.0;
  double quotient = 0.0;       // sigma_n / ln n
  double running_slope = 0.0;  // slope over [ceil(n^{1-f}), n]
};

// Log-spaced convergence rows; running slopes use incremental window sums so
// the whole table costs one pass over sigma.
std::vector<ConvergenceRow> convergence_table(std::span<const double> sigma,
                                              double window_fraction = 0.75,
                                              std::size_t max_rows = 256);

}  // namespace ksl::krein
