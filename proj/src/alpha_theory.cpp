#include "alimit/alpha_theory.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include <fmt/format.h>

#include "alimit/detail/fixed_point.hpp"

namespace alimit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLowerEnd = 2.0 + 1e-9;
constexpr double kUpperStart = 8.0;
constexpr double kBracketWidth = 1e-13;

void check_domain(double lambda, double alpha) {
  if (!(lambda > 2.0))
    throw std::domain_error(fmt::format("lambda must exceed 2, got {}", lambda));
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::domain_error(fmt::format("alpha must lie in [0,1], got {}", alpha));
}

detail::FixedPoint quantities(double lambda, double alpha) {
  check_domain(lambda, alpha);
  return detail::fixed_point(lambda, alpha);
}

// d theta'/d lambda, from theta' = ((2 alpha - lambda) + sqrt(disc)) / 2.
double dtheta_prime(const detail::FixedPoint& q, double lambda, double alpha) {
  return 0.5 * (-1.0 + (lambda - 2.0 * alpha) / q.sqrt_disc);
}

double ddelta(double lambda, double alpha) {
  const double om = 1.0 - alpha;
  return -(om * om) / ((lambda - alpha) * (lambda - alpha));
}

// Root of f on (kLowerEnd, inf) given a single sign change. Bisection to
// kBracketWidth, then up to three Newton steps that must stay in the final
// bracket and reduce |f|.
template <class F, class DF>
double find_threshold_root(F f, DF df, std::string_view what) {
  double lo = kLowerEnd;
  double hi = kUpperStart;
  const double flo0 = f(lo);
  if (flo0 == 0.0) return lo;
  const bool lo_positive = flo0 > 0.0;
  while ((f(hi) > 0.0) == lo_positive) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e15) throw std::runtime_error(fmt::format("{}: no sign change found", what));
  }
  while (hi - lo > kBracketWidth) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    ((fm > 0.0) == lo_positive ? lo : hi) = mid;
  }
  double x = lo + (hi - lo) / 2.0;
  double fx = f(x);
  for (int step = 0; step < 3 && fx != 0.0; ++step) {
    const double slope = df(x);
    if (slope == 0.0 || !std::isfinite(slope)) break;
    const double next = x - fx / slope;
    if (!(next >= lo && next <= hi)) break;
    const double fnext = f(next);
    if (!(std::abs(fnext) < std::abs(fx))) break;
    x = next;
    fx = fnext;
  }
  return x;
}

class ThresholdCache {
 public:
  template <class Compute>
  double get(ThresholdKind kind, double alpha, Compute compute) {
    const auto key = std::make_pair(static_cast<int>(kind), std::llround(alpha * 1e12));
    {
      std::lock_guard lock(mu_);
      if (auto it = values_.find(key); it != values_.end()) return it->second;
    }
    // Computed outside the lock; a racing duplicate computes the same value.
    const double v = compute();
    std::lock_guard lock(mu_);
    values_.emplace(key, v);
    return v;
  }
  void clear() {
    std::lock_guard lock(mu_);
    values_.clear();
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, long long>, double> values_;
};

ThresholdCache& cache() {
  static ThresholdCache c;
  return c;
}

}  // namespace

AlphaLambda::AlphaLambda(double alpha, double lambda) : alpha_(alpha), lambda_(lambda) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::domain_error(fmt::format("alpha must lie in [0,1), got {}", alpha));
  if (!(lambda > 2.0)) throw std::domain_error(fmt::format("lambda must exceed 2, got {}", lambda));
  const auto q = detail::fixed_point(lambda, alpha);
  om2_ = q.om2;
  delta_ = q.delta;
  disc_ = q.disc;
  theta_ = q.theta;
  theta_prime_ = q.theta_prime;
}

double phi(double t, const AlphaLambda& p) {
  if (t == 0.0) throw std::domain_error("phi is undefined at t = 0");
  return 2.0 * p.alpha() - p.lambda() - p.one_minus_alpha_sq() / t;
}

double F0(double lambda, double alpha) { return detail::f0(quantities(lambda, alpha)); }

double F1(double lambda, double alpha) {
  return detail::f1(quantities(lambda, alpha), lambda, alpha);
}

double F2(double lambda, double alpha) { return detail::f2(quantities(lambda, alpha), alpha); }

double F3(double lambda, double alpha) { return detail::f3(quantities(lambda, alpha)); }

double dF0_dlambda(double lambda, double alpha) {
  const auto q = quantities(lambda, alpha);
  return ddelta(lambda, alpha) + (2.0 * alpha - lambda) / q.sqrt_disc;
}

double dF2_dlambda(double lambda, double alpha) {
  const auto q = quantities(lambda, alpha);
  return ddelta(lambda, alpha) - dtheta_prime(q, lambda, alpha);
}

double dF3_dlambda(double lambda, double alpha) {
  const auto q = quantities(lambda, alpha);
  return ddelta(lambda, alpha) + dtheta_prime(q, lambda, alpha);
}

double quartic_P_alpha(double lambda, double alpha) {
  const double a = alpha;
  const double c4 = -1.0;
  const double c3 = 6.0 * a;
  const double c2 = -8.0 * a * a - 8.0 * a + 4.0;
  const double c1 = 4.0 * a * a * a + 12.0 * a * a - 6.0 * a;
  const double c0 = -8.0 * a * a * a + 8.0 * a * a - 4.0 * a + 1.0;
  return (((c4 * lambda + c3) * lambda + c2) * lambda + c1) * lambda + c0;
}

double cubic_P3(double lambda, double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("cubic P3 needs alpha > 0");
  const double a = alpha;
  const double c2 = -5.0 * a;
  const double c1 = 4.0 * a * a + 6.0 * a - 3.0;
  const double c0 = -a * a * a - 2.0 * a * a - 3.0 * a + 4.0 - 1.0 / a;
  return ((lambda + c2) * lambda + c1) * lambda + c0;
}

double cubic_discriminant_d(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error(fmt::format("d(alpha) needs 0 < alpha < 1, got {}", alpha));
  const double a = alpha;
  const double poly =
      ((((((-23.0 * a + 200.0) * a - 732.0) * a + 1496.0) * a - 1886.0) * a + 1512.0) * a) - 756.0;
  return poly + 216.0 / a - 27.0 / (a * a);
}

double tau0(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::domain_error(fmt::format("tau0 needs alpha in [0,1], got {}", alpha));
  return cache().get(ThresholdKind::Tau0, alpha, [alpha] {
    return find_threshold_root([alpha](double l) { return F0(l, alpha); },
                               [alpha](double l) { return dF0_dlambda(l, alpha); }, "tau0");
  });
}

double tau2(double alpha) {
  if (!(alpha >= 0.0 && alpha < 0.5))
    throw std::domain_error(
        fmt::format("tau2 needs alpha in [0, 1/2): F2 > 0 for all lambda > 2 when alpha >= 1/2 "
                    "(got {})",
                    alpha));
  return cache().get(ThresholdKind::Tau2, alpha, [alpha] {
    return find_threshold_root([alpha](double l) { return F2(l, alpha); },
                               [alpha](double l) { return dF2_dlambda(l, alpha); }, "tau2");
  });
}

double tau1_prime(double alpha) {
  if (alpha == 0.0) return kInf;
  if (!(alpha > 0.0 && alpha < 0.25))
    throw std::domain_error(fmt::format("tau1' needs alpha in [0, 1/4), got {}", alpha));
  return cache().get(ThresholdKind::Tau1Prime, alpha, [alpha] {
    return find_threshold_root([alpha](double l) { return F3(l, alpha); },
                               [alpha](double l) { return dF3_dlambda(l, alpha); }, "tau1'");
  });
}

std::pair<double, double> alpha_star() {
  const double s2 = std::sqrt(2.0);
  return {(3.0 - s2) / 7.0, (9.0 + 4.0 * s2) / 7.0};
}

std::pair<double, double> corollary_crossover() {
  const double s5 = std::sqrt(5.0);
  return {1.0 - 2.0 * s5 / 5.0, (-7.0 + 5.0 * s5) / (3.0 * s5 - 5.0)};
}

Tau1Interval tau1_interval(double alpha) {
  const double a_star = alpha_star().first;
  if (!(alpha >= 0.0 && alpha < a_star))
    throw std::domain_error(
        fmt::format("the interval [tau1, tau1') exists only for 0 <= alpha < alpha* = {:.13f} "
                    "(got {})",
                    a_star, alpha));
  return {tau0(alpha), tau1_prime(alpha)};
}

std::string_view threshold_name(ThresholdKind kind) {
  switch (kind) {
    case ThresholdKind::Tau0:
      return "tau0";
    case ThresholdKind::Tau2:
      return "tau2";
    case ThresholdKind::Tau1Prime:
      return "tau1_prime";
  }
  return "?";
}

std::optional<ThresholdCurvePoint> threshold_point(ThresholdKind kind, double alpha) {
  switch (kind) {
    case ThresholdKind::Tau0: {
      if (!(alpha >= 0.0 && alpha <= 1.0)) return std::nullopt;
      const double v = tau0(alpha);
      return ThresholdCurvePoint{alpha, v, kind, std::abs(F0(v, alpha))};
    }
    case ThresholdKind::Tau2: {
      if (!(alpha >= 0.0 && alpha < 0.5)) return std::nullopt;
      const double v = tau2(alpha);
      return ThresholdCurvePoint{alpha, v, kind, std::abs(F2(v, alpha))};
    }
    case ThresholdKind::Tau1Prime: {
      if (!(alpha >= 0.0 && alpha < alpha_star().first)) return std::nullopt;
      const double v = tau1_prime(alpha);
      const double res = std::isinf(v) ? 0.0 : std::abs(F3(v, alpha));
      return ThresholdCurvePoint{alpha, v, kind, res};
    }
  }
  return std::nullopt;
}

void clear_threshold_cache() { cache().clear(); }

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::AboveTau2:
      return "above-tau2";
    case Regime::Tau2Boundary:
      return "tau2-boundary";
    case Regime::Interval:
      return "tau1-interval";
    case Regime::Gap:
      return "gap";
    case Regime::Unknown:
      return "unknown";
  }
  return "?";
}

Regime classify_regime(double alpha, double lambda) {
  check_domain(lambda, alpha);
  double t2 = kInf;
  if (alpha < 0.5) {
    t2 = tau2(alpha);
    if (std::abs(lambda - t2) <= 1e-12 * t2) return Regime::Tau2Boundary;
    if (lambda > t2) return Regime::AboveTau2;
  }
  if (alpha < alpha_star().first) {
    const auto iv = tau1_interval(alpha);
    if (lambda >= iv.tau1 && lambda < iv.tau1_prime) return Regime::Interval;
    if (lambda >= iv.tau1_prime && lambda < t2) return Regime::Gap;
  }
  return Regime::Unknown;
}

}  // namespace alimit
