#include "ksl/krein.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ksl::krein {

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
  double max_abs_y = 0.0;
};

// Unweighted least squares of sigma_N against ln N over 1-based [lo, hi].
LineFit fit_line(std::span<const double> sigma, std::size_t lo, std::size_t hi) {
  double sx = 0.0, sxx = 0.0, sy = 0.0, sxy = 0.0;
  const double m = static_cast<double>(hi - lo + 1);
  for (std::size_t i = lo; i <= hi; ++i) {
    const double x = std::log(static_cast<double>(i));
    const double y = sigma[i - 1];
    sx += x;
    sxx += x * x;
    sy += y;
    sxy += x * y;
  }
  LineFit fit;
  const double var = sxx - sx * sx / m;
  fit.slope = var > 0.0 ? (sxy - sx * sy / m) / var : 0.0;
  fit.intercept = (sy - fit.slope * sx) / m;
  double ss = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    const double x = std::log(static_cast<double>(i));
    const double d = sigma[i - 1] - (fit.intercept + fit.slope * x);
    ss += d * d;
    fit.max_abs_y = std::max(fit.max_abs_y, std::abs(sigma[i - 1]));
  }
  fit.rms = std::sqrt(ss / m);
  return fit;
}

std::size_t window_low(std::size_t n, double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction <= 1.0))
    throw Error("dixmier window fraction must lie in (0, 1]");
  const double lo = std::pow(static_cast<double>(n), 1.0 - window_fraction);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(lo)));
}

bool residual_converged(double rms, double scale) {
  return rms <= std::max(1e-2 * scale, 1e-13);
}

CMatrix hermitian_sqrt(const CMatrix& h, bool inverse) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  if (es.info() != Eigen::Success) throw Error("krein: eigensolver failed");
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw Error("krein: matrix not positive definite");
  RVector d = es.eigenvalues().cwiseSqrt();
  if (inverse) d = d.cwiseInverse();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

KreinSpace::KreinSpace(CMatrix gram_, double tol) : gram(std::move(gram_)) {
  if (gram.rows() != gram.cols() || gram.rows() == 0)
    throw Error("KreinSpace: Gram matrix must be square and non-empty");
  const double herm = max_abs(CMatrix(gram - gram.adjoint()));
  if (herm > tol * std::max(1.0, max_abs(gram)))
    throw Error("KreinSpace: Gram matrix not Hermitian");
  gram = 0.5 * (gram + gram.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
  if (es.info() != Eigen::Success) throw Error("KreinSpace: eigensolver failed");
  const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
  const double lo = es.eigenvalues().cwiseAbs().minCoeff();
  if (!(lo > 0.0) || hi / lo > 1e12)
    throw Error("KreinSpace: Gram matrix degenerate (condition number > 1e12)");
}

FundamentalSymmetry::FundamentalSymmetry(const KreinSpace& space, CMatrix j_, double tol)
    : j(std::move(j_)) {
  if (j.rows() != space.dim() || j.cols() != space.dim())
    throw Error("FundamentalSymmetry: dimension mismatch");
  const double inv_err =
      max_abs(CMatrix(j * j - CMatrix::Identity(j.rows(), j.cols())));
  if (inv_err > tol) throw Error("FundamentalSymmetry: J^2 != I");
  const CMatrix gj = space.gram * j;
  if (max_abs(CMatrix(gj - gj.adjoint())) > tol * std::max(1.0, max_abs(gj)))
    throw Error("FundamentalSymmetry: G*J not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (gj + gj.adjoint()));
  if (es.info() != Eigen::Success) throw Error("FundamentalSymmetry: eigensolver failed");
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw Error("FundamentalSymmetry: J-product not positive definite");
}

CMatrix krein_adjoint(const CMatrix& a, const KreinSpace& space) {
  if (a.rows() != space.dim() || a.cols() != space.dim())
    throw Error("krein_adjoint: dimension mismatch");
  return Eigen::PartialPivLU<CMatrix>(space.gram).solve(CMatrix(a.adjoint() * space.gram));
}

bool is_krein_selfadjoint(const CMatrix& a, const KreinSpace& space, double tol) {
  return max_abs(CMatrix(a - krein_adjoint(a, space))) <= tol * std::max(1.0, max_abs(a));
}

EighResult hermitian_eigh(const CMatrix& h, double tol) {
  if (h.rows() != h.cols()) throw Error("hermitian_eigh: matrix must be square");
  const double scale = max_abs(h);
  if (max_abs(CMatrix(h - h.adjoint())) > tol * std::max(1.0, scale))
    throw Error("hermitian_eigh: non-Hermitian input");
  const CMatrix hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hs);
  if (es.info() != Eigen::Success) throw Error("hermitian_eigh: convergence failure");
  EighResult out{es.eigenvalues(), es.eigenvectors()};
  const double residual =
      max_abs(CMatrix(hs * out.vectors - out.vectors * out.values.asDiagonal()));
  const double unitary = max_abs(
      CMatrix(out.vectors.adjoint() * out.vectors - CMatrix::Identity(h.rows(), h.cols())));
  if (residual > tol * std::max(1.0, scale) || unitary > tol)
    throw Error("hermitian_eigh: residual contract violated");
  return out;
}

CMatrix j_modulus(const CMatrix& a, const KreinSpace& space, const FundamentalSymmetry& jsym,
                  double tol) {
  if (a.rows() != space.dim() || a.cols() != space.dim())
    throw Error("j_modulus: dimension mismatch");
  if (!is_krein_selfadjoint(a, space, tol))
    throw Error("j_modulus: operator not Krein-selfadjoint");

  const CMatrix h = 0.5 * (space.gram * jsym.j + (space.gram * jsym.j).adjoint());
  const CMatrix s = hermitian_sqrt(h, false);
  const CMatrix s_inv = hermitian_sqrt(h, true);

  const CMatrix a_star_j =
      Eigen::PartialPivLU<CMatrix>(h).solve(CMatrix(a.adjoint() * h));
  const CMatrix q = 0.5 * (a_star_j * a + a * a_star_j);

  CMatrix q_h = s * q * s_inv;
  q_h = 0.5 * (q_h + q_h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(q_h);
  if (es.info() != Eigen::Success) throw Error("j_modulus: eigensolver failed");
  RVector vals = es.eigenvalues();
  const double top = std::max(vals.maxCoeff(), 0.0);
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) < -tol * std::max(1.0, top))
      throw Error("j_modulus: quadratic form not positive semi-definite");
    vals(i) = std::sqrt(std::max(vals(i), 0.0));
  }
  const CMatrix root = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  return s_inv * root * s;
}

SingularSequence characteristic_sequence(std::vector<double> mu) {
  for (double v : mu)
    if (v < 0.0) throw Error("characteristic_sequence: negative entry");
  std::sort(mu.begin(), mu.end(), std::greater<double>());
  SingularSequence seq;
  seq.sigma.reserve(mu.size());
  double run = 0.0;
  for (double v : mu) {
    run += v;
    seq.sigma.push_back(run);
  }
  seq.mu = std::move(mu);
  return seq;
}

double lp_plus_diagnostic(const SingularSequence& seq, double p) {
  if (p < 1.0) throw Error("lp_plus_diagnostic: p must be >= 1");
  double sup = 0.0;
  if (p == 1.0) {
    for (std::size_t n = 3; n <= seq.sigma.size(); ++n)
      sup = std::max(sup, seq.sigma[n - 1] / std::log(static_cast<double>(n)));
  } else {
    const double e = (p - 1.0) / p;
    for (std::size_t n = 1; n <= seq.sigma.size(); ++n)
      sup = std::max(sup, seq.sigma[n - 1] / std::pow(static_cast<double>(n), e));
  }
  return sup;
}

DixmierEstimate slope_fit(std::span<const double> sigma, double window_fraction) {
  const std::size_t n = sigma.size();
  if (n < 8) throw Error("dixmier slope fit: window too small (< 8 points)");
  const std::size_t lo = window_low(n, window_fraction);
  if (n - lo + 1 < 8) throw Error("dixmier slope fit: window too small (< 8 points)");
  const LineFit fit = fit_line(sigma, lo, n);
  DixmierEstimate est;
  est.value = fit.slope;
  est.method = EstimatorMethod::slope;
  est.window_lo = lo;
  est.window_hi = n;
  est.residual = fit.rms;
  est.scale = fit.max_abs_y;
  est.converged = residual_converged(est.residual, est.scale);
  return est;
}

DixmierEstimate slope_fit(std::span<const double> sigma_re, std::span<const double> sigma_im,
                          double window_fraction) {
  if (sigma_re.size() != sigma_im.size())
    throw Error("dixmier slope fit: real/imaginary length mismatch");
  DixmierEstimate re = slope_fit(sigma_re, window_fraction);
  const DixmierEstimate im = slope_fit(sigma_im, window_fraction);
  re.value_imag = im.value;
  re.residual = std::hypot(re.residual, im.residual);
  double scale = 0.0;
  for (std::size_t i = re.window_lo; i <= re.window_hi; ++i)
    scale = std::max(scale, std::hypot(sigma_re[i - 1], sigma_im[i - 1]));
  re.scale = scale;
  re.converged = residual_converged(re.residual, re.scale);
  return re;
}

DixmierEstimate tail_quotient(std::span<const double> sigma) {
  const std::size_t n = sigma.size();
  if (n < 2) throw Error("dixmier tail quotient: need at least 2 points");
  DixmierEstimate est;
  est.method = EstimatorMethod::tail;
  est.window_lo = n;
  est.window_hi = n;
  est.value = sigma[n - 1] / std::log(static_cast<double>(n));
  est.scale = std::abs(sigma[n - 1]);
  // Trend check: the quotient at N and N/2 must already agree loosely.
  const std::size_t half = std::max<std::size_t>(2, n / 2);
  const double prev = sigma[half - 1] / std::log(static_cast<double>(half));
  est.converged = std::abs(est.value - prev) <= 0.05 * std::abs(est.value) + 1e-13;
  return est;
}

DixmierEstimate dixmier_estimate(const SingularSequence& seq, EstimatorMethod method,
                                 double window_fraction) {
  if (method == EstimatorMethod::slope) return slope_fit(seq.sigma, window_fraction);
  return tail_quotient(seq.sigma);
}

std::vector<ConvergenceRow> convergence_table(std::span<const double> sigma,
                                              double window_fraction, std::size_t max_rows) {
  const std::size_t n = sigma.size();
  std::vector<ConvergenceRow> rows;
  if (n < 2 || max_rows < 2) return rows;

  std::vector<std::size_t> marks;
  const double l0 = std::log(2.0);
  const double l1 = std::log(static_cast<double>(n));
  for (std::size_t r = 0; r < max_rows; ++r) {
    const double t = max_rows == 1 ? l1 : l0 + (l1 - l0) * r / (max_rows - 1);
    const auto mark = static_cast<std::size_t>(std::llround(std::exp(t)));
    marks.push_back(std::min(std::max<std::size_t>(2, mark), n));
  }
  marks.push_back(n);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  // Incremental window sums: both pointers only move forward.
  struct Sums {
    std::size_t upto = 0;
    double sx = 0.0, sxx = 0.0, sy = 0.0, sxy = 0.0;
    void advance(std::span<const double> s, std::size_t target) {
      while (upto < target) {
        ++upto;
        const double x = std::log(static_cast<double>(upto));
        const double y = s[upto - 1];
        sx += x;
        sxx += x * x;
        sy += y;
        sxy += x * y;
      }
    }
  };
  Sums hi_sums, lo_sums;

  for (std::size_t mark : marks) {
    hi_sums.advance(sigma, mark);
    const std::size_t lo = window_low(mark, window_fraction);
    lo_sums.advance(sigma, lo - 1);
    const double m = static_cast<double>(mark - lo + 1);
    const double sx = hi_sums.sx - lo_sums.sx;
    const double sxx = hi_sums.sxx - lo_sums.sxx;
    const double sy = hi_sums.sy - lo_sums.sy;
    const double sxy = hi_sums.sxy - lo_sums.sxy;
    const double var = sxx - sx * sx / m;
    ConvergenceRow row;
    row.n = mark;
    row.sigma = sigma[mark - 1];
    row.quotient = sigma[mark - 1] / std::log(static_cast<double>(mark));
    row.running_slope = (m >= 2.0 && var > 0.0) ? (sxy - sx * sy / m) / var : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ksl::krein
