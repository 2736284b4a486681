#include "ksl/clifford.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ksl::clifford {

namespace {

CMatrix pauli(int which) {
  CMatrix m(2, 2);
  switch (which) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Tensor factor chain sigma3^{x(slot-1)} (x) head (x) I^{x(m-slot)}; slot is 1-based.
CMatrix pauli_chain(int m, int slot, const CMatrix& head) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (int s = 1; s <= m; ++s) {
    if (s < slot)
      out = kron(out, pauli(3));
    else if (s == slot)
      out = kron(out, head);
    else
      out = kron(out, CMatrix::Identity(2, 2));
  }
  return out;
}

// tau(j) = i for j <= k, 1 otherwise (1-based j).
Complex tau(int j, int k) { return j <= k ? kI : Complex{1.0, 0.0}; }

double min_hermitian_eigenvalue(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  if (es.info() != Eigen::Success) throw Error("clifford: eigensolver failed");
  return es.eigenvalues().minCoeff();
}

// Oriented g-orthonormal basis (columns) of the (-1)-eigenspace of r.
// r is selfadjoint in the positive-definite g^r inner product, so the
// eigenproblem is solved symmetrically through the Cholesky factor of g^r.
RMatrix negative_eigenspace_basis(const Signature& sig, const RMatrix& r) {
  const int n = sig.n;
  const int k = sig.k;
  const RMatrix g = sig.metric();
  const RMatrix gr = 0.5 * (g * r + (g * r).transpose());
  Eigen::LLT<RMatrix> llt(gr);
  if (llt.info() != Eigen::Success)
    throw Error("clifford: g^r not positive definite in eigenspace extraction");
  const RMatrix lt = llt.matrixL().transpose();
  RMatrix tilde = lt * r * lt.inverse();
  tilde = 0.5 * (tilde + tilde.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> es(tilde);
  if (es.info() != Eigen::Success) throw Error("clifford: eigensolver failed");

  int negatives = 0;
  for (int i = 0; i < n; ++i)
    if (es.eigenvalues()(i) < 0.0) ++negatives;
  if (negatives != k)
    throw Error("clifford: degenerate eigenspace extraction: (-1)-eigenspace dimension " +
                std::to_string(negatives) + ", expected " + std::to_string(k));

  RMatrix basis(n, k);
  for (int i = 0; i < k; ++i) basis.col(i) = lt.inverse() * es.eigenvectors().col(i);

  // Gram-Schmidt with respect to -g, positive definite on this span.
  for (int i = 0; i < k; ++i) {
    RVector v = basis.col(i);
    for (int p = 0; p < i; ++p) {
      const double proj = -(basis.col(p).transpose() * g * v)(0);
      v -= proj * basis.col(p);
    }
    const double norm2 = -(v.transpose() * g * v)(0);
    if (norm2 <= 0.0) throw Error("clifford: degenerate eigenspace extraction");
    basis.col(i) = v / std::sqrt(norm2);
  }
  return basis;
}

}  // namespace

Signature::Signature(int n_, int k_, int max_n) : n(n_), k(k_) {
  if (n < 1) throw Error("Signature: n must be positive");
  if (n > max_n)
    throw Error("Signature: dimension overflow, n = " + std::to_string(n) +
                " exceeds the maximum " + std::to_string(max_n));
  if (k < 0 || k > n) throw Error("Signature: k must satisfy 0 <= k <= n");
}

RMatrix Signature::metric() const {
  RMatrix g = RMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = metric_sign(i);
  return g;
}

double Signature::quadratic_form(const RVector& v) const {
  if (v.size() != n) throw Error("Signature: vector dimension mismatch");
  double q = 0.0;
  for (int i = 0; i < n; ++i) q += metric_sign(i) * v(i) * v(i);
  return q;
}

CMatrix GammaRep::gamma(const RVector& v) const {
  if (v.size() != sig.n) throw Error("GammaRep: vector dimension mismatch");
  CMatrix out = CMatrix::Zero(dim, dim);
  for (int i = 0; i < sig.n; ++i) out += v(i) * gammas[i];
  return out;
}

double RelationReport::max_violation() const {
  double worst = 0.0;
  for (const auto& e : entries) worst = std::max(worst, e.violation);
  return worst;
}

GammaRep build_gamma(const Signature& sig) {
  const int n = sig.n;
  const int k = sig.k;
  const int m = n / 2;
  const int dim = 1 << m;

  GammaRep rep{sig, dim, {}, CMatrix(), CMatrix()};
  rep.gammas.reserve(n);
  for (int j = 1; j <= 2 * m; ++j) {
    const int slot = (j + 1) / 2;
    rep.gammas.push_back(tau(j, k) * pauli_chain(m, slot, pauli(j % 2 == 1 ? 1 : 2)));
  }
  if (n % 2 == 1) {
    // First direct summand of the odd-dimensional algebra: gamma_n = tau(n) sigma3^{x m}.
    CMatrix top = CMatrix::Identity(1, 1);
    for (int s = 0; s < m; ++s) top = kron(top, pauli(3));
    rep.gammas.push_back(tau(n, k) * top);
  }

  if (n % 2 == 0) {
    CMatrix chi = CMatrix::Identity(dim, dim);
    for (const auto& g : rep.gammas) chi = chi * g;
    rep.chi = unit_imag_power(static_cast<long>(n) * (n - 1) / 2 + k) * chi;
  } else {
    rep.chi = CMatrix::Identity(dim, dim);
  }

  // (u,v) = i^{k(k+1)/2} <gamma(x_1)...gamma(x_k) u, v>, so the Gram matrix is
  // the adjoint of that word; the global sign makes G*J_{r0} positive definite.
  CMatrix word = CMatrix::Identity(dim, dim);
  for (int i = 0; i < k; ++i) word = word * rep.gammas[i];
  const Complex phase = unit_imag_power(static_cast<long>(k) * (k + 1) / 2);
  CMatrix gram = phase * word.adjoint();
  const CMatrix j0 = phase * word;
  if ((gram * j0).trace().real() < 0.0) gram = -gram;
  rep.krein_gram = gram;
  if (min_hermitian_eigenvalue(rep.krein_gram * j0) <= 0.0)
    throw Error("build_gamma: standard J-product not positive definite");
  return rep;
}

SpacelikeReflection standard_reflection(const Signature& sig) {
  return SpacelikeReflection{sig.metric()};
}

SpacelikeReflection spacelike_reflection_from_subspace(const Signature& sig,
                                                       const RMatrix& basis) {
  const int n = sig.n;
  const int k = sig.k;
  if (basis.rows() != n || basis.cols() != k)
    throw Error("spacelike_reflection_from_subspace: basis must be n x k");
  const RMatrix g = sig.metric();

  // Gram-Schmidt with respect to -g; failure means the span is not negative definite.
  RMatrix e = basis;
  for (int i = 0; i < k; ++i) {
    RVector v = e.col(i);
    for (int p = 0; p < i; ++p) {
      const double proj = -(e.col(p).transpose() * g * v)(0);
      v -= proj * e.col(p);
    }
    const double norm2 = -(v.transpose() * g * v)(0);
    if (!(norm2 > 1e-12 * std::max(1.0, v.squaredNorm())))
      throw Error("spacelike_reflection_from_subspace: subspace not g-negative definite");
    e.col(i) = v / std::sqrt(norm2);
  }

  // g-orthogonal projector onto the span: P = -sum_i e_i e_i^T g; r flips the span.
  RMatrix p = RMatrix::Zero(n, n);
  for (int i = 0; i < k; ++i) p -= e.col(i) * (e.col(i).transpose() * g);
  SpacelikeReflection refl{RMatrix::Identity(n, n) - 2.0 * p};
  validate_reflection(sig, refl.r, 1e-10);
  return refl;
}

void validate_reflection(const Signature& sig, const RMatrix& r, double tol) {
  const int n = sig.n;
  if (r.rows() != n || r.cols() != n)
    throw Error("SpacelikeReflection: matrix must be n x n");
  const RMatrix g = sig.metric();
  const double inv_err = max_abs(RMatrix(r * r - RMatrix::Identity(n, n)));
  if (inv_err > tol)
    throw Error("SpacelikeReflection: r^2 != I (violation " + std::to_string(inv_err) + ")");
  const double iso_err = max_abs(RMatrix(r.transpose() * g * r - g));
  if (iso_err > tol)
    throw Error("SpacelikeReflection: r not a g-isometry (violation " +
                std::to_string(iso_err) + ")");
  const RMatrix gr = g * r;
  const double sym_err = max_abs(RMatrix(gr - gr.transpose()));
  if (sym_err > tol)
    throw Error("SpacelikeReflection: g*r not symmetric (violation " +
                std::to_string(sym_err) + ")");
  Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (gr + gr.transpose()));
  if (es.info() != Eigen::Success) throw Error("SpacelikeReflection: eigensolver failed");
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 1e-10 * std::max(1.0, hi)))
    throw Error("SpacelikeReflection: g(., r.) not positive definite");
}

RMatrix riemannian_metric(const Signature& sig, const SpacelikeReflection& refl) {
  const RMatrix gr = sig.metric() * refl.r;
  return 0.5 * (gr + gr.transpose());
}

CMatrix fundamental_symmetry_from_reflection(const GammaRep& rep,
                                             const SpacelikeReflection& refl) {
  const Signature& sig = rep.sig;
  validate_reflection(sig, refl.r, 1e-10);
  const int k = sig.k;
  const int dim = rep.dim;

  CMatrix j = unit_imag_power(static_cast<long>(k) * (k + 1) / 2) *
              CMatrix::Identity(dim, dim);
  if (k > 0) {
    const RMatrix basis = negative_eigenspace_basis(sig, refl.r);
    for (int i = 0; i < k; ++i) j = j * rep.gamma(basis.col(i));
  }
  // The gamma product fixes J only up to sign; positivity of the J-product picks it.
  if ((rep.krein_gram * j).trace().real() < 0.0) j = -j;

  const double inv_err = max_abs(CMatrix(j * j - CMatrix::Identity(dim, dim)));
  if (inv_err > 1e-10)
    throw Error("fundamental_symmetry_from_reflection: J^2 != I (violation " +
                std::to_string(inv_err) + ")");
  if (min_hermitian_eigenvalue(rep.krein_gram * j) <= 0.0)
    throw Error("fundamental_symmetry_from_reflection: J-product not positive definite");
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  for (int i = 0; i < sig.n; ++i) {
    const CMatrix lhs = j * rep.gammas[i] * j;
    const CMatrix rhs = sign * rep.gamma(refl.r.col(i));
    if (max_abs(CMatrix(lhs - rhs)) > 1e-10)
      throw Error("fundamental_symmetry_from_reflection: conjugation law violated");
  }
  return j;
}

SpacelikeReflection classify_fundamental_symmetry(const GammaRep& rep, const CMatrix& j,
                                                  double tol) {
  const Signature& sig = rep.sig;
  const int n = sig.n;
  const int dim = rep.dim;
  if (j.rows() != dim || j.cols() != dim)
    throw Error("classify_fundamental_symmetry: J must act on the spinor module");

  auto fail = [](const std::string& condition, double violation) {
    std::ostringstream msg;
    msg << "classify_fundamental_symmetry: pre-condition violated: " << condition
        << " (violation " << violation << ")";
    throw Error(msg.str());
  };

  const double inv_err = max_abs(CMatrix(j * j - CMatrix::Identity(dim, dim)));
  if (inv_err > tol) fail("J^2 = I", inv_err);

  const CMatrix gj = rep.krein_gram * j;
  const double herm_err = max_abs(CMatrix(gj - gj.adjoint()));
  if (herm_err > tol * std::max(1.0, max_abs(gj))) fail("G*J Hermitian", herm_err);
  const double min_eig = min_hermitian_eigenvalue(gj);
  if (min_eig <= 0.0) fail("G*J positive definite", -min_eig);

  if (n % 2 == 0) {
    const double comm = max_abs(CMatrix(j * rep.chi - rep.chi * j));
    const double anti = max_abs(CMatrix(j * rep.chi + rep.chi * j));
    if (std::min(comm, anti) > tol)
      fail("J commutes or anticommutes with chi", std::min(comm, anti));
  }

  for (int i = 0; i < n; ++i) {
    const CMatrix jg = j * rep.gammas[i];
    const CMatrix gjm = rep.gammas[i] * j;
    const CMatrix x = jg * jg + gjm * gjm;
    const CMatrix dev = x - (x.trace() / static_cast<double>(dim)) * CMatrix::Identity(dim, dim);
    const double err = max_abs(dev);
    if (err > tol * std::max(1.0, max_abs(x)))
      fail("(J gamma(v))^2 + (gamma(v) J)^2 proportional to identity", err);
  }

  // Trace projection of (-1)^k J gamma_i J onto the gamma basis.
  const double sign = (sig.k % 2 == 0) ? 1.0 : -1.0;
  RMatrix r(n, n);
  std::vector<CMatrix> inverse_gammas;
  inverse_gammas.reserve(n);
  for (int i = 0; i < n; ++i)
    inverse_gammas.push_back(sig.metric_sign(i) * rep.gammas[i]);
  for (int i = 0; i < n; ++i) {
    const CMatrix x = sign * (j * rep.gammas[i] * j);
    for (int a = 0; a < n; ++a)
      r(a, i) = (inverse_gammas[a] * x).trace().real() / static_cast<double>(dim);
  }

  try {
    validate_reflection(sig, r, tol);
  } catch (const Error& e) {
    fail(std::string("extracted map not a spacelike reflection [") + e.what() + "]", 0.0);
  }

  double residual = 0.0;
  for (int i = 0; i < n; ++i) {
    const CMatrix lhs = sign * (j * rep.gammas[i] * j);
    residual = std::max(residual, max_abs(CMatrix(lhs - rep.gamma(r.col(i)))));
  }
  if (residual > tol) fail("conjugation law reconstruction", residual);

  SpacelikeReflection refl{r};
  const CMatrix rebuilt = fundamental_symmetry_from_reflection(rep, refl);
  const double roundtrip = max_abs(CMatrix(rebuilt - j));
  if (roundtrip > tol) fail("J_r round trip", roundtrip);
  return refl;
}

RelationReport verify_clifford_relations(const GammaRep& rep, double tol) {
  const Signature& sig = rep.sig;
  const int n = sig.n;
  const int dim = rep.dim;
  RelationReport report;
  report.tol = tol;

  double anticomm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double target = (i == j) ? 2.0 * sig.metric_sign(i) : 0.0;
      const CMatrix lhs = rep.gammas[i] * rep.gammas[j] + rep.gammas[j] * rep.gammas[i] -
                          target * CMatrix::Identity(dim, dim);
      anticomm = std::max(anticomm, max_abs(lhs));
    }
  report.entries.push_back({"gamma anticommutation", anticomm});

  report.entries.push_back(
      {"gram Hermitian", max_abs(CMatrix(rep.krein_gram - rep.krein_gram.adjoint()))});

  const CMatrix gram_inv = rep.krein_gram.inverse();
  report.entries.push_back(
      {"gram invertible",
       max_abs(CMatrix(rep.krein_gram * gram_inv - CMatrix::Identity(dim, dim)))});

  const double sign = (sig.k % 2 == 0) ? 1.0 : -1.0;
  double adj = 0.0;
  for (int i = 0; i < n; ++i)
    adj = std::max(adj, max_abs(CMatrix(gram_inv * rep.gammas[i].adjoint() * rep.krein_gram -
                                        sign * rep.gammas[i])));
  report.entries.push_back({"gamma Krein adjoint", adj});

  if (n % 2 == 0) {
    report.entries.push_back(
        {"chi squared",
         max_abs(CMatrix(rep.chi * rep.chi - CMatrix::Identity(dim, dim)))});
    double chi_anti = 0.0;
    for (int i = 0; i < n; ++i)
      chi_anti = std::max(chi_anti,
                          max_abs(CMatrix(rep.chi * rep.gammas[i] + rep.gammas[i] * rep.chi)));
    report.entries.push_back({"chi anticommutes", chi_anti});
    report.entries.push_back(
        {"chi Krein adjoint",
         max_abs(CMatrix(gram_inv * rep.chi.adjoint() * rep.krein_gram - sign * rep.chi))});
  } else {
    report.entries.push_back(
        {"chi identity (odd n)",
         max_abs(CMatrix(rep.chi - CMatrix::Identity(dim, dim)))});
  }
  return report;
}

}  // namespace ksl::clifford
