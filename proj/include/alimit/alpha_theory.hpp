#pragma once

// Closed-form alpha/lambda analysis for A_alpha limit points of caterpillars.
//
// Everything here is a function of (lambda, alpha) with lambda > 2 and
// 0 <= alpha <= 1. The rational map phi(t) = 2 alpha - lambda - (1-alpha)^2/t
// has two negative fixed points theta < theta' and each caterpillar pendant
// shifts the diagonal by the drift delta = alpha + (1-alpha)^2/(lambda-alpha).
// The threshold curves are the roots in lambda of
//
//   F0 = delta - (theta' - theta)                       (starlike limit, tau0)
//   F1 = (2 alpha - lambda + delta)(theta' - delta) - 2 (1-alpha)^2
//   F2 = -1 + alpha + delta - theta'                    (tau2)
//   F3 = delta + theta'                                 (tau1')
//
// with F1 = -F0 F3.

#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>

namespace alimit {

/// A validated (alpha, lambda) pair with its fixed-point quantities.
class AlphaLambda {
 public:
  /// Throws std::domain_error unless 0 <= alpha < 1 and lambda > 2.
  AlphaLambda(double alpha, double lambda);

  double alpha() const noexcept { return alpha_; }
  double lambda() const noexcept { return lambda_; }
  double one_minus_alpha_sq() const noexcept { return om2_; }
  /// delta_alpha, the per-pendant drift.
  double delta() const noexcept { return delta_; }
  /// Discriminant (2 alpha - lambda)^2 - 4 (1 - alpha)^2, positive for lambda > 2.
  double disc() const noexcept { return disc_; }
  double theta() const noexcept { return theta_; }
  double theta_prime() const noexcept { return theta_prime_; }

 private:
  double alpha_;
  double lambda_;
  double om2_;
  double delta_;
  double disc_;
  double theta_;
  double theta_prime_;
};

/// phi(t) = 2 alpha - lambda - (1 - alpha)^2 / t. Throws std::domain_error at t = 0.
double phi(double t, const AlphaLambda& p);

// Threshold functions. Preconditions: lambda > 2, 0 <= alpha <= 1 (domain
// error otherwise).
double F0(double lambda, double alpha);
double F1(double lambda, double alpha);
double F2(double lambda, double alpha);
double F3(double lambda, double alpha);

double dF0_dlambda(double lambda, double alpha);
double dF2_dlambda(double lambda, double alpha);
double dF3_dlambda(double lambda, double alpha);

/// Quartic whose positive root is tau0(alpha).
double quartic_P_alpha(double lambda, double alpha);
/// Cubic whose real root is tau1'(alpha) (alpha > 0); used only as a cross-check.
double cubic_P3(double lambda, double alpha);
/// Discriminant of the depressed form of cubic_P3. Throws at alpha = 0.
double cubic_discriminant_d(double alpha);

/// Limit of rho(A_alpha(T_{1,n,n})) as n -> infinity; 0 <= alpha <= 1.
double tau0(double alpha);
/// Every lambda >= tau2(alpha) is a limit point; requires 0 <= alpha < 1/2.
double tau2(double alpha);
/// Root of F3 in (2, inf); requires 0 < alpha < 1/4. For alpha = 0 returns +inf.
double tau1_prime(double alpha);

struct Tau1Interval {
  double tau1;
  /// +infinity for alpha = 0.
  double tau1_prime;
  bool prime_is_infinite() const noexcept {
    return tau1_prime == std::numeric_limits<double>::infinity();
  }
};

/// [tau1, tau1') of limit points; requires 0 <= alpha < alpha*.
Tau1Interval tau1_interval(double alpha);

/// (alpha*, lambda*) = ((3 - sqrt 2)/7, (9 + 4 sqrt 2)/7), where the interval
/// [tau1, tau1') collapses.
std::pair<double, double> alpha_star();

/// (1 - 2 sqrt5/5, (-7 + 5 sqrt5)/(3 sqrt5 - 5)), where tau1' = tau2.
std::pair<double, double> corollary_crossover();

enum class ThresholdKind { Tau0, Tau2, Tau1Prime };
std::string_view threshold_name(ThresholdKind kind);

struct ThresholdCurvePoint {
  double alpha;
  double value;
  ThresholdKind kind;
  /// |F(value, alpha)| for the defining function.
  double residual;
};

/// Threshold value plus residual; std::nullopt when alpha is outside the
/// curve's domain. tau1' at alpha = 0 yields value +inf, residual 0.
std::optional<ThresholdCurvePoint> threshold_point(ThresholdKind kind, double alpha);

/// Drops memoized threshold values.
void clear_threshold_cache();

/// Region of the (alpha, lambda) plane, as far as the two limit-point
/// theorems reach.
enum class Regime {
  AboveTau2,      // lambda > tau2(alpha), alpha < 1/2
  Tau2Boundary,   // lambda == tau2(alpha) within 1e-12
  Interval,       // tau1 <= lambda < tau1', alpha < alpha*
  Gap,            // tau1' <= lambda < tau2: open question, no claim either way
  Unknown,        // below tau1, or alpha >= 1/2 with no theorem applying
};
std::string_view regime_name(Regime r);
Regime classify_regime(double alpha, double lambda);

}  // namespace alimit
