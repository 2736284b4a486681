// Shared helpers for the test suites: seeded random generators for
// isometries, spacelike reflections, and dense complex matrices.
#pragma once

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "ksl/clifford.hpp"
#include "ksl/common.hpp"

namespace ksl::test {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

// Element of the isometry group of the flat metric of the given signature,
// obtained as exp(g a) with a antisymmetric: (g a)^T g + g (g a) = 0.
inline RMatrix random_isometry(const clifford::Signature& sig, std::mt19937_64& rng,
                               double scale = 0.4) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  const int n = sig.n;
  RMatrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = dist(rng);
  RMatrix a = 0.5 * (b - b.transpose());
  RMatrix x = sig.metric() * a;
  return x.exp();
}

// Random spacelike reflection: the standard one conjugated by a random
// isometry. Its (-1)-eigenspace is the image of the first k axes, which
// stays negative definite because the conjugator preserves the metric.
inline clifford::SpacelikeReflection random_reflection(const clifford::Signature& sig,
                                                       std::mt19937_64& rng,
                                                       double scale = 0.4) {
  RMatrix l = random_isometry(sig, rng, scale);
  RMatrix r = l * sig.metric() * l.inverse();
  return clifford::SpacelikeReflection{r};
}

inline CMatrix random_complex_matrix(Eigen::Index rows, Eigen::Index cols,
                                     std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(dist(rng), dist(rng));
  return m;
}

inline CMatrix random_hermitian(Eigen::Index dim, std::mt19937_64& rng, double scale = 1.0) {
  CMatrix m = random_complex_matrix(dim, dim, rng, scale);
  return 0.5 * (m + m.adjoint()).eval();
}

}  // namespace ksl::test
