#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace ksl {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr Complex kI{0.0, 1.0};

// All invariant violations and contract failures surface as ksl::Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Elementwise max-modulus norm used by the algebraic tolerance contracts.
inline double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}
inline double max_abs(const RMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

// i^p for integer p (exact, avoids pow on the unit circle).
inline Complex unit_imag_power(long p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Number of worker threads: hardware concurrency capped by KSL_THREADS.
int thread_budget();

// Chunked parallel loop over [begin, end); chunk_fn(lo, hi) must write only
// to disjoint state per chunk so results are deterministic.
void parallel_for(std::ptrdiff_t begin, std::ptrdiff_t end,
                  const std::function<void(std::ptrdiff_t, std::ptrdiff_t)>& chunk_fn);

}  // namespace ksl
