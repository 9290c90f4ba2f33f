#pragma once

// Shared helpers and independent oracles for the test suites.

#include "floquet_ep/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

namespace fep::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

template <int N>
Eigen::Matrix<cplx, N, N> random_matrix(double scale = 1.0) {
  Eigen::Matrix<cplx, N, N> m;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      m(i, j) = cplx(uniform(-scale, scale), uniform(-scale, scale));
    }
  }
  return m;
}

template <int N>
Eigen::Matrix<cplx, N, 1> random_state() {
  Eigen::Matrix<cplx, N, 1> v;
  for (int i = 0; i < N; ++i) v(i) = cplx(uniform(-1, 1), uniform(-1, 1));
  return v.normalized();
}

/// Taylor series with scaling and squaring; independent of the library's
/// closed forms and Padé approximant.
template <int N>
Eigen::Matrix<cplx, N, N> taylor_expm(const Eigen::Matrix<cplx, N, N>& m) {
  using M = Eigen::Matrix<cplx, N, N>;
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (std::ldexp(norm, -s) > 0.25) ++s;
  const M a = m / std::ldexp(1.0, s);
  M term = M::Identity();
  M sum = M::Identity();
  for (int k = 1; k < 40; ++k) {
    term = term * a / double(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

/// |<v_+|v_->| for unit eigenvectors from a generic dense solver.
inline double dense_eigenvector_overlap(const Mat2& m) {
  Eigen::ComplexEigenSolver<Mat2> solver(m);
  const Vec2 a = solver.eigenvectors().col(0).normalized();
  const Vec2 b = solver.eigenvectors().col(1).normalized();
  return std::abs(a.dot(b));
}

inline Eigen::Vector2cd dense_eigenvalues(const Mat2& m) {
  Eigen::ComplexEigenSolver<Mat2> solver(m, false);
  return solver.eigenvalues();
}

/// Distance between two unordered pairs of complex numbers.
inline double pair_distance(cplx a0, cplx a1, cplx b0, cplx b1) {
  const double same = std::max(std::abs(a0 - b0), std::abs(a1 - b1));
  const double swapped = std::max(std::abs(a0 - b1), std::abs(a1 - b0));
  return std::min(same, swapped);
}

}  // namespace fep::test
