#include "alimit/dense_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace alimit {

std::vector<double> dense_matrix(const WeightedTreeMatrix& m) {
  const std::size_t n = m.size();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = m.diag()[i];
  for (const auto& [c, p] : m.tree().edges()) {
    a[c * n + p] = m.edge_weights()[c];
    a[p * n + c] = m.edge_weights()[c];
  }
  return a;
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n) {
  if (a.size() != n * n) throw std::invalid_argument("matrix size mismatch");
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      scale += at(i, i) * at(i, i);
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    }
    if (off <= 1e-30 * (scale + off) || off == 0.0) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        // Rotation zeroing a_pq (stable tangent formula).
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = at(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::vector<double> dense_spectrum_oracle(const WeightedTreeMatrix& m) {
  if (m.size() > kDenseOracleMaxN)
    throw std::length_error(
        fmt::format("dense oracle is limited to n <= {} (got {})", kDenseOracleMaxN, m.size()));
  return jacobi_eigenvalues(dense_matrix(m), m.size());
}

Inertia count_relative_to(const std::vector<double>& spectrum, double c, double coincide) {
  Inertia in;
  for (double ev : spectrum) {
    if (std::abs(ev - c) <= coincide)
      ++in.n_zero;
    else if (ev > c)
      ++in.n_pos;
    else
      ++in.n_neg;
  }
  return in;
}

}  // namespace alimit
