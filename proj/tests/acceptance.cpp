// Acceptance gate for the spectral workbench.  Each criterion prints exactly
// one [PASS]/[FAIL] line with the measured quantities; the process exits
// nonzero if any criterion fails.  Tolerances are pinned here and are not
// configurable: loosening them is a code change, not a runtime option.

#include "ksl/clifford.hpp"
#include "ksl/forms.hpp"
#include "ksl/io.hpp"
#include "ksl/krein.hpp"
#include "ksl/torus.hpp"
#include "test_helpers.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace ksl;
using Clock = std::chrono::steady_clock;

// criterion 1: gamma relation invariants
constexpr double kGammaTol = 1e-12;
constexpr double kGammaBudgetSec = 10.0;
// criterion 2: classification round trip
constexpr double kClassifyTol = 1e-10;
constexpr double kClassifyBudgetSec = 30.0;
constexpr int kClassifyTrials = 100;
// criterion 3: J-modulus closed form
constexpr double kModulusRelTol = 1e-10;
constexpr int kModulusModes = 1000;
// criteria 4, 5, 7: Dixmier fits per model
struct FitCase {
  int n, k, cutoff;
  double trace_rel_tol;      // criterion 4
  double signature_abs_tol;  // criterion 5
  double dimension_abs_tol;  // criterion 7, 0 = not scored
};
const std::vector<FitCase> kFitCases = {
    {2, 0, 128, 0.05, 0.05, 0.05},
    {2, 1, 128, 0.05, 0.01, 0.0},
    {3, 1, 40, 0.07, 0.05, 0.10},
    {4, 1, 16, 0.10, 0.05, 0.0},
};
// criterion 6: deformed torus trace
constexpr double kNcTraceRelTol = 0.05;
// criterion 9: independence checks
constexpr double kJPairFactor = 2.0;  // times the criterion-4 tolerance
// criterion 10: estimator calibration
constexpr double kSlopeCalRelTol = 5e-3;
constexpr std::size_t kCalLength = 10000;

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

torus::Model fit_model(const FitCase& c) {
  const clifford::Signature sig(c.n, c.k);
  return torus::build_model(sig, torus::Theta::zero(c.n),
                            clifford::standard_reflection(sig), c.cutoff);
}

torus::Theta irrational_theta(int n) {
  RMatrix m = RMatrix::Zero(n, n);
  m(0, 1) = 1.0 / std::sqrt(2.0);
  m(1, 0) = -m(0, 1);
  return torus::Theta(m);
}

bool criterion_relations(std::string& detail) {
  const auto t0 = Clock::now();
  double worst = 0.0;
  int count = 0;
  for (int n = 1; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) {
      const auto rep = clifford::build_gamma(clifford::Signature(n, k));
      const auto report = clifford::verify_clifford_relations(rep, kGammaTol);
      worst = std::max(worst, report.max_violation());
      ++count;
    }
  const double elapsed = seconds_since(t0);
  detail = format("%d signatures, max violation %.2e vs %.0e, %.2fs vs %.0fs",
                  count, worst, kGammaTol, elapsed, kGammaBudgetSec);
  return worst < kGammaTol && elapsed < kGammaBudgetSec;
}

bool criterion_classification(std::string& detail) {
  const auto t0 = Clock::now();
  auto rng = test::make_rng(0x5eed0002);
  double worst = 0.0;
  int count = 0;
  for (int n = 1; n <= 6; ++n)
    for (int k = 0; k <= n; ++k) {
      const clifford::Signature sig(n, k);
      const auto rep = clifford::build_gamma(sig);
      for (int trial = 0; trial < kClassifyTrials; ++trial) {
        const auto r = test::random_reflection(sig, rng);
        const auto j = clifford::fundamental_symmetry_from_reflection(rep, r);
        const auto back = clifford::classify_fundamental_symmetry(rep, j);
        worst = std::max(worst, (back.r - r.r).cwiseAbs().maxCoeff());
        ++count;
      }
    }
  const double elapsed = seconds_since(t0);
  detail = format("%d round trips, worst recovery error %.2e vs %.0e, %.2fs vs %.0fs",
                  count, worst, kClassifyTol, elapsed, kClassifyBudgetSec);
  return worst < kClassifyTol && elapsed < kClassifyBudgetSec;
}

bool criterion_j_modulus(std::string& detail) {
  // Dual route: eigenvalues of [D_y]_J^2 through the operator toolkit versus
  // the closed form 4 pi^2 g^r(y, y).  Standard and random reflections.
  auto rng = test::make_rng(0x5eed0003);
  const std::vector<std::pair<int, int>> sigs = {{2, 0}, {2, 1}, {2, 2}, {3, 0},
                                                 {3, 1}, {3, 2}, {4, 1}, {4, 2}};
  std::vector<torus::Model> models;
  for (const auto& [n, k] : sigs) {
    const clifford::Signature sig(n, k);
    models.push_back(torus::build_model(sig, torus::Theta::zero(n),
                                        clifford::standard_reflection(sig), 6));
    models.push_back(torus::build_model(sig, torus::Theta::zero(n),
                                        test::random_reflection(sig, rng), 6));
  }
  std::uniform_int_distribution<int> entry(-6, 6);
  double worst = 0.0;
  for (int trial = 0; trial < kModulusModes; ++trial) {
    const auto& model = models[trial % models.size()];
    const int n = model.sig.n;
    torus::Mode y(n);
    for (int i = 0; i < n; ++i) y[i] = entry(rng);
    RVector yv(n);
    for (int i = 0; i < n; ++i) yv[i] = y[i];
    const double target = 4.0 * kPi * kPi * yv.dot(model.gr * yv);
    const RVector spec = torus::dirac_jmodulus_spectrum(model, y);
    for (int i = 0; i < spec.size(); ++i)
      worst = std::max(worst, std::abs(spec[i] - target) / std::max(1.0, target));
  }
  detail = format("%d modes over %zu models, worst relative error %.2e vs %.0e",
                  kModulusModes, models.size(), worst, kModulusRelTol);
  return worst < kModulusRelTol;
}

bool criterion_dixmier_trace(std::string& detail) {
  const auto t0 = Clock::now();
  double worst_margin = 0.0;  // rel error / tolerance, worst case
  std::string worst_name = "none";
  for (const auto& c : kFitCases) {
    const auto model = fit_model(c);
    const auto est = torus::trace_functional(model, torus::AlgebraElement::unit(c.n),
                                             torus::TracePower::delta_n);
    const double target = 1.0 / torus::c_constant(c.n);
    const double rel = std::abs(est.value - target) / target;
    if (!est.converged) {
      detail = format("(%d,%d) M=%d did not converge", c.n, c.k, c.cutoff);
      return false;
    }
    if (rel / c.trace_rel_tol > worst_margin) {
      worst_margin = rel / c.trace_rel_tol;
      worst_name = format("(%d,%d) M=%d rel %.2e vs %.2f", c.n, c.k, c.cutoff, rel,
                          c.trace_rel_tol);
    }
  }
  detail = format("4 models, worst %s, %.1fs", worst_name.c_str(), seconds_since(t0));
  return worst_margin < 1.0;
}

bool criterion_signature(std::string& detail) {
  double worst_margin = 0.0;
  std::string worst_name = "none";
  for (const auto& c : kFitCases) {
    const auto model = fit_model(c);
    const auto ratio = torus::signature_ratio(model);
    const double target = torus::signature_target(model.sig);
    const double dev = std::abs(ratio.value - target);
    if (!ratio.converged) {
      detail = format("(%d,%d) M=%d did not converge", c.n, c.k, c.cutoff);
      return false;
    }
    if (dev / c.signature_abs_tol > worst_margin) {
      worst_margin = dev / c.signature_abs_tol;
      worst_name = format("(%d,%d) M=%d ratio %.5f target %.5f vs +-%.2f", c.n, c.k,
                          c.cutoff, ratio.value, target, c.signature_abs_tol);
    }
  }
  detail = format("4 models, worst %s", worst_name.c_str());
  return worst_margin < 1.0;
}

bool criterion_nc_trace(std::string& detail) {
  // Deformation Theta_12 = 1/sqrt(2); a = 3 u(0) + u(e_1) + u(e_2).  The
  // estimate factors through tau(a) = 3 and the nonzero modes contribute
  // exactly zero at every truncation, both as operators and as estimates.
  const auto theta = irrational_theta(2);
  double worst_rel = 0.0;
  for (int k = 0; k <= 1; ++k) {
    const clifford::Signature sig(2, k);
    const auto refl = clifford::standard_reflection(sig);
    const auto a = torus::AlgebraElement::unit(2).scaled(Complex(3.0, 0.0)) +
                   torus::AlgebraElement::u({1, 0}) + torus::AlgebraElement::u({0, 1});
    const auto model = torus::build_model(sig, theta, refl, 64);
    const auto est = torus::trace_functional(model, a, torus::TracePower::delta_n);
    const double target = 3.0 / torus::c_constant(2);
    worst_rel = std::max(worst_rel, std::abs(est.value - target) / target);
    if (!est.converged || est.value_imag != 0.0) {
      detail = format("(2,%d): converged %d, imaginary part %.2e", k,
                      int(est.converged), est.value_imag);
      return false;
    }
    for (int cutoff : {2, 4, 8, 16}) {
      const auto small = torus::build_model(sig, theta, refl, cutoff);
      for (const torus::Mode& y : {torus::Mode{1, 0}, torus::Mode{0, 1}}) {
        const auto zero = torus::trace_functional(small, torus::AlgebraElement::u(y),
                                                  torus::TracePower::delta_n);
        if (zero.value != 0.0 || zero.value_imag != 0.0 || zero.residual != 0.0) {
          detail = format("(2,%d) M=%d u-mode estimate not exactly zero", k, cutoff);
          return false;
        }
        const auto op = torus::u_operator(small, y);
        for (int i = 0; i < op.rows(); ++i)
          if (op.coeff(i, i) != Complex(0.0, 0.0)) {
            detail = format("(2,%d) M=%d u-mode operator has a diagonal entry", k, cutoff);
            return false;
          }
      }
    }
  }
  detail = format("both k, worst rel %.2e vs %.2f; nonzero modes exactly zero "
                  "at M in {2,4,8,16}", worst_rel, kNcTraceRelTol);
  return worst_rel < kNcTraceRelTol;
}

bool criterion_dimension(std::string& detail) {
  double worst_margin = 0.0;
  std::string worst_name = "none";
  for (const auto& c : kFitCases) {
    if (c.dimension_abs_tol == 0.0) continue;
    const auto model = fit_model(c);
    const double est = torus::dimension_estimate(model);
    const double dev = std::abs(est - c.n);
    if (dev / c.dimension_abs_tol > worst_margin) {
      worst_margin = dev / c.dimension_abs_tol;
      worst_name = format("n=%d M=%d estimate %.4f vs +-%.2f", c.n, c.cutoff, est,
                          c.dimension_abs_tol);
    }
  }
  detail = format("worst %s", worst_name.c_str());
  return worst_margin < 1.0;
}

bool criterion_junk(std::string& detail) {
  // omega = a da - (da) a with a = u(e_l): represented exactly zero, while
  // pi(d omega) is pure junk with an empty top component.
  const std::vector<std::pair<int, int>> sigs = {{2, 0}, {2, 1}, {3, 1}};
  for (const auto& [n, k] : sigs) {
    const clifford::Signature sig(n, k);
    const auto theta = n == 2 ? irrational_theta(2) : torus::Theta::zero(n);
    const auto model = torus::build_model(sig, theta,
                                          clifford::standard_reflection(sig), 2);
    for (int l = 1; l <= n; ++l) {
      torus::Mode e(n, 0);
      e[l - 1] = 1;
      const auto a = forms::UniversalForm::algebra(torus::AlgebraElement::u(e));
      const auto da = forms::d(a);
      const auto omega = forms::add(forms::product(a, da, theta),
                                    forms::scaled(forms::product(da, a, theta),
                                                  Complex(-1.0, 0.0)));
      if (!forms::pi(omega, model).is_zero()) {
        detail = format("(%d,%d) l=%d: pi(omega) not symbolically zero", n, k, l);
        return false;
      }
      const auto rep_d = forms::pi(forms::d(omega), model);
      if (rep_d.is_zero() || !forms::is_junk(rep_d) ||
          !forms::top_component(rep_d).is_zero()) {
        detail = format("(%d,%d) l=%d: pi(d omega) not classified junk", n, k, l);
        return false;
      }
    }
  }
  // Connes-form ranks are binomial(n, m) for every degree.
  long binom[6][7] = {};
  for (int n = 0; n <= 5; ++n) {
    binom[n][0] = 1;
    for (int m = 1; m <= 6; ++m)
      binom[n][m] = (n > 0 ? binom[n - 1][m - 1] + binom[n - 1][m] : 0);
  }
  for (int n = 1; n <= 4; ++n)
    for (int m = 0; m <= 6; ++m)
      if (static_cast<long>(forms::connes_rank(n, m)) != binom[n][m]) {
        detail = format("connes_rank(%d,%d) != C(n,m)", n, m);
        return false;
      }
  detail = "pi(omega) = 0 exactly, pi(d omega) junk at (2,0),(2,1),(3,1); "
           "ranks match binomials for n <= 4";
  return true;
}

bool criterion_independence(std::string& detail) {
  // Spectra ignore the deformation byte for byte.
  const clifford::Signature sig(2, 1);
  const auto refl = clifford::standard_reflection(sig);
  RMatrix m = RMatrix::Zero(2, 2);
  m(0, 1) = 0.3;
  m(1, 0) = -0.3;
  const std::vector<torus::Theta> thetas = {torus::Theta::zero(2), torus::Theta(m),
                                            irrational_theta(2)};
  const std::string base = io::spectrum_csv(torus::build_model(sig, thetas[0], refl, 8));
  for (std::size_t i = 1; i < thetas.size(); ++i)
    if (io::spectrum_csv(torus::build_model(sig, thetas[i], refl, 8)) != base) {
      detail = format("spectrum CSV differs for deformation %zu", i);
      return false;
    }

  // Dixmier estimates agree across two random admissible symmetries.
  auto rng = test::make_rng(0x5eed0009);
  const double target = 1.0 / torus::c_constant(2);
  const double budget = kJPairFactor * 0.05 * target;
  std::vector<double> values;
  for (int i = 0; i < 2; ++i) {
    const auto r = test::random_reflection(sig, rng);
    const auto model = torus::build_model(sig, torus::Theta::zero(2), r, 64);
    const auto est = torus::trace_functional(model, torus::AlgebraElement::unit(2),
                                             torus::TracePower::delta_n);
    if (!est.converged) {
      detail = format("reflection %d estimate did not converge", i);
      return false;
    }
    values.push_back(est.value);
  }
  const double delta = std::abs(values[0] - values[1]);
  detail = format("3 deformations byte-identical; |est_J1 - est_J2| %.2e vs %.2e",
                  delta, budget);
  return delta < budget;
}

bool criterion_calibration(std::string& detail) {
  // Synthetic mu_i = c/i + d/i^2: the slope fit recovers c to 0.5% while the
  // tail quotient carries its O(1/ln N) bias, shrinking with N but dominant.
  std::string note;
  for (const auto& [c, d] : std::vector<std::pair<double, double>>{{1, 1}, {2, 5}}) {
    std::vector<double> sigma(kCalLength);
    double acc = 0.0;
    for (std::size_t i = 1; i <= kCalLength; ++i) {
      acc += c / double(i) + d / (double(i) * double(i));
      sigma[i - 1] = acc;
    }
    const auto slope = krein::slope_fit(sigma);
    const double slope_rel = std::abs(slope.value - c) / c;
    if (!slope.converged || slope_rel > kSlopeCalRelTol) {
      detail = format("c=%.0f d=%.0f slope rel %.2e vs %.0e", c, d, slope_rel,
                      kSlopeCalRelTol);
      return false;
    }
    double prev_bias = 0.0;
    for (std::size_t len : {std::size_t(100), std::size_t(1000), kCalLength}) {
      const auto tail = krein::tail_quotient(std::span<const double>(sigma.data(), len));
      const double bias = std::abs(tail.value - c) / c;
      if (prev_bias != 0.0 && bias >= prev_bias) {
        detail = format("c=%.0f d=%.0f tail bias not decreasing at N=%zu", c, d, len);
        return false;
      }
      if (len == kCalLength && bias < 10.0 * kSlopeCalRelTol) {
        detail = format("c=%.0f d=%.0f tail bias %.3f unexpectedly small", c, d, bias);
        return false;
      }
      prev_bias = bias;
    }
    note += format("%sc=%.0f: slope rel %.1e, tail bias %.2f at N=%zu",
                   note.empty() ? "" : "; ", c, slope_rel, prev_bias, kCalLength);
  }
  detail = note;
  return true;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, bool (*)(std::string&)>> criteria = {
      {"Clifford relation invariants across all signatures", criterion_relations},
      {"fundamental symmetry classification round trip", criterion_classification},
      {"J-modulus spectra match the closed form", criterion_j_modulus},
      {"Dixmier trace recovers the Weyl constant", criterion_dixmier_trace},
      {"signature ratio recovers its target", criterion_signature},
      {"deformed torus trace factors through the trace state", criterion_nc_trace},
      {"log-log Weyl fit recovers the dimension", criterion_dimension},
      {"commutator square is junk after differentiation", criterion_junk},
      {"deformation and symmetry independence", criterion_independence},
      {"slope estimator calibrated, tail bias documented", criterion_calibration},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].second(detail);
    } catch (const std::exception& e) {
      detail = format("exception: %s", e.what());
    }
    std::printf("[%s] criterion %zu: %s (%s)\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].first, detail.c_str());
    failures += ok ? 0 : 1;
  }
  if (failures > 0) std::printf("acceptance: %d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
