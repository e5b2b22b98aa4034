#pragma once

// Canonical scalar arithmetic for the fixed-point quantities of
// phi(t) = 2 alpha - lambda - (1 - alpha)^2 / t. The AVX2 grid kernel repeats
// these operations in this exact order.

#include <cmath>

namespace alimit::detail {

struct FixedPoint {
  double om2;          // (1 - alpha)^2
  double delta;        // alpha + (1 - alpha)^2 / (lambda - alpha)
  double disc;         // (2 alpha - lambda)^2 - 4 (1 - alpha)^2
  double sqrt_disc;
  double theta;        // attracting fixed point
  double theta_prime;  // repelling fixed point, theta < theta_prime < 0
};

inline FixedPoint fixed_point(double lambda, double alpha) {
  FixedPoint q{};
  const double om = 1.0 - alpha;
  q.om2 = om * om;
  q.delta = alpha + q.om2 / (lambda - alpha);
  // Factored form avoids cancellation as lambda -> 2.
  q.disc = (lambda - 2.0) * ((lambda + 2.0) - 4.0 * alpha);
  q.sqrt_disc = std::sqrt(q.disc);
  q.theta = ((2.0 * alpha - lambda) - q.sqrt_disc) * 0.5;
  // theta * theta' = (1 - alpha)^2; the direct formula for theta' cancels
  // badly for large lambda.
  q.theta_prime = q.om2 / q.theta;
  return q;
}

inline double f0(const FixedPoint& q) { return q.delta - q.sqrt_disc; }

inline double f1(const FixedPoint& q, double lambda, double alpha) {
  return ((2.0 * alpha - lambda) + q.delta) * (q.theta_prime - q.delta) - 2.0 * q.om2;
}

inline double f2(const FixedPoint& q, double alpha) {
  return ((alpha - 1.0) + q.delta) - q.theta_prime;
}

inline double f3(const FixedPoint& q) { return q.delta + q.theta_prime; }

}  // namespace alimit::detail
