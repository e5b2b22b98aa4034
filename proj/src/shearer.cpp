#include "alimit/shearer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "alimit/common.hpp"
#include "alimit/diagonalize.hpp"
#include "alimit/parallel.hpp"

namespace alimit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// r = floor(v + nudge), refusing negative results.
int greedy_count(double v, std::size_t index) {
  const double f = std::floor(v + kFloorNudge);
  if (f < 0.0 || !std::isfinite(f))
    throw InvariantViolation(
        fmt::format("pendant count r_{} would be {} (floor argument {})", index, f, v));
  return static_cast<int>(f);
}

}  // namespace

ShearerSequence build_shearer(double alpha, double lambda, std::size_t k) {
  if (k == 0) throw std::invalid_argument("caterpillar needs k >= 1");
  ShearerSequence seq{AlphaLambda(alpha, lambda), 0, {}, {}, {}, kFloorNudge};
  const auto& p = seq.params;
  const double delta = p.delta();
  const double thp = p.theta_prime();
  const double om2 = p.one_minus_alpha_sq();
  const double leaf_slope = om2 / ((lambda - alpha) * (lambda - alpha));

  seq.k = k;
  seq.r.resize(k);
  seq.b.resize(k);
  seq.db.resize(k);

  if (k == 1) {
    // Single spine vertex: first and last lines of the recurrence combined.
    seq.r[0] = greedy_count((thp - (alpha - lambda) + alpha) / delta, 1);
    seq.b[0] = -alpha + (alpha - lambda) + seq.r[0] * delta;
    seq.db[0] = 1.0 + seq.r[0] * leaf_slope;
    return seq;
  }

  seq.r[0] = greedy_count((thp - (alpha - lambda)) / delta, 1);
  seq.b[0] = (alpha - lambda) + seq.r[0] * delta;
  seq.db[0] = 1.0 + seq.r[0] * leaf_slope;
  for (std::size_t j = 1; j < k; ++j) {
    const double prev = seq.b[j - 1];
    const double ph = phi(prev, p);
    const bool last = (j + 1 == k);
    if (last) {
      seq.r[j] = greedy_count((thp - ph + alpha) / delta, j + 1);
      seq.b[j] = -alpha + ph + seq.r[j] * delta;
    } else {
      seq.r[j] = greedy_count((thp - ph) / delta, j + 1);
      seq.b[j] = ph + seq.r[j] * delta;
    }
    seq.db[j] = 1.0 + om2 / (prev * prev) * seq.db[j - 1] + seq.r[j] * leaf_slope;
  }
  return seq;
}

std::string caterpillar_notation(std::span<const int> r) {
  return fmt::format("[{}]", fmt::join(r, ", "));
}

std::string_view violation_name(WindowViolationKind kind) {
  switch (kind) {
    case WindowViolationKind::NotNegative:
      return "not-negative";
    case WindowViolationKind::AboveWindow:
      return "above-window";
    case WindowViolationKind::BelowWindow:
      return "below-window";
    case WindowViolationKind::NotFloor:
      return "not-floor";
    case WindowViolationKind::Mismatch:
      return "mismatch";
  }
  return "?";
}

WindowReport verify_window(const ShearerSequence& seq) {
  const auto& p = seq.params;
  const double alpha = p.alpha();
  const double lambda = p.lambda();
  const double delta = p.delta();
  const double thp = p.theta_prime();
  // Slack for values the floor nudge may legitimately push onto a bound.
  const double slack = 4.0 * seq.floor_nudge * delta;

  WindowReport rep;
  auto flag = [&](std::size_t j, WindowViolationKind kind, double v) {
    rep.ok = false;
    rep.violations.push_back({j, kind, v});
  };

  double prev = 0.0;
  for (std::size_t i = 0; i < seq.k; ++i) {
    const std::size_t j = i + 1;
    const bool last = (j == seq.k);
    // base is the part of b_j that does not depend on r_j.
    double base;
    if (seq.k == 1)
      base = -lambda;
    else if (i == 0)
      base = alpha - lambda;
    else
      base = (last ? -alpha : 0.0) + phi(prev, p);

    const int r = seq.r[i];
    const double replay = base + r * delta;
    const double b = seq.b[i];
    if (std::abs(replay - b) > 1e-12 * (1.0 + std::abs(b))) flag(j, WindowViolationKind::Mismatch, b);

    const double floor_arg = (thp - base) / delta;
    if (r != static_cast<int>(std::floor(floor_arg + seq.floor_nudge)))
      flag(j, WindowViolationKind::NotFloor, static_cast<double>(r));

    if (!(b < 0.0)) flag(j, WindowViolationKind::NotNegative, b);
    if (!(b < thp + slack)) flag(j, WindowViolationKind::AboveWindow, b);
    // The last entry has no lower window bound.
    if (!last && !(b > thp - delta - slack)) flag(j, WindowViolationKind::BelowWindow, b);
    if (b <= -1.0 + alpha) rep.below_unit_bound.push_back(j);
    prev = b;
  }
  return rep;
}

double perturbed_shift(const ShearerSequence& seq, std::size_t j, double eps) {
  if (j == 0 || j > seq.k) throw std::out_of_range("index out of range");
  const auto& p = seq.params;
  const double alpha = p.alpha();
  const double lambda = p.lambda();
  const double om2 = p.one_minus_alpha_sq();
  if (!(eps < lambda - alpha)) return kInf;
  // delta(eps) - delta(0)
  const double ddelta = om2 * eps / ((lambda - alpha) * (lambda - eps - alpha));

  double shift = eps + seq.r[0] * ddelta;
  for (std::size_t i = 1; i < j; ++i) {
    const double prev = seq.b[i - 1];
    const double moved = prev + shift;
    if (!(moved < 0.0)) return kInf;
    // phi at lambda - eps, as an offset: eps + (1-alpha)^2 (t' - t) / (t t').
    shift = eps + om2 * shift / (prev * moved) + seq.r[i] * ddelta;
  }
  return shift;
}

std::vector<double> epsilon_roots(const ShearerSequence& seq, std::span<const std::size_t> js) {
  std::size_t max_j = 0;
  for (std::size_t j : js) {
    if (j == 0 || j > seq.k) throw std::out_of_range(fmt::format("epsilon index {} out of range", j));
    max_j = std::max(max_j, j);
  }

  std::vector<double> eps(max_j + 1);
  eps[0] = seq.params.lambda() - seq.params.alpha();
  for (std::size_t j = 1; j <= max_j; ++j) {
    const double bj = seq.b[j - 1];
    double lo = 0.0;
    double hi = eps[j - 1];
    for (int it = 0; it < 400 && hi - lo > 1e-13 * hi; ++it) {
      const double mid = lo + (hi - lo) / 2.0;
      if (mid <= lo || mid >= hi) break;
      const double value = bj + perturbed_shift(seq, j, mid);
      (value < 0.0 ? lo : hi) = mid;
    }
    eps[j] = lo + (hi - lo) / 2.0;
  }

  std::vector<double> out;
  out.reserve(js.size());
  for (std::size_t j : js) out.push_back(eps[j]);
  return out;
}

double sigma_bound(const ShearerSequence& seq) { return -seq.b.back() / seq.db.back(); }

DivergenceSum divergence_sum(const ShearerSequence& seq) {
  const double om2 = seq.params.one_minus_alpha_sq();
  DivergenceSum out;
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < seq.k; ++j) {
    const double c = om2 / (seq.b[j] * seq.b[j]);
    s = c * (1.0 + s);
    if (s > kDivergenceCap) {
      s = kDivergenceCap;
      out.saturated = true;
      break;
    }
  }
  out.value = s;
  return out;
}

namespace {

void require_interval_regime(double alpha, double lambda) {
  const double a_star = alpha_star().first;
  if (!(alpha < a_star))
    throw RegimeError(fmt::format(
        "pairing check needs alpha < alpha* = {:.10f}; got alpha = {}", a_star, alpha));
  const auto iv = tau1_interval(alpha);
  if (lambda < iv.tau1)
    throw RegimeError(fmt::format("pairing check needs lambda >= tau1({}) = {:.10f}; got {}",
                                  alpha, iv.tau1, lambda));
  if (!(lambda < iv.tau1_prime))
    throw RegimeError(fmt::format("pairing check needs lambda < tau1'({}) = {:.10f}; got {}",
                                  alpha, iv.tau1_prime, lambda));
}

}  // namespace

PairingReport pairing_check(const ShearerSequence& seq) {
  require_interval_regime(seq.params.alpha(), seq.params.lambda());

  PairingReport rep;
  rep.bound = seq.params.one_minus_alpha_sq();
  const std::size_t k = seq.k;
  std::size_t i = 0;
  while (i < k) {
    if (seq.r[i] != 0) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < k && seq.r[i] == 0) ++i;
    const std::size_t m = i - start;
    const bool terminated = i < k;
    rep.runs.push_back({start + 1, m, terminated});
    rep.max_zero_run = std::max(rep.max_zero_run, m);
    if (!terminated || start == 0) continue;

    // 1-based: run is r_{j+1..j+m}, j = start; pair (j+m-t+1, j+m+t), t = 1..m+1.
    const std::size_t end = start + m;  // 1-based index j+m
    for (std::size_t t = 1; t <= m + 1; ++t) {
      const std::size_t left = end - t + 1;
      const std::size_t right = end + t;
      // b_k carries the end-of-spine correction and is not a sequence entry.
      if (right >= k) {
        ++rep.truncated;
        continue;
      }
      const double prod = seq.b[left - 1] * seq.b[right - 1];
      const bool ok = prod < rep.bound;
      rep.ok = rep.ok && ok;
      rep.pairs.push_back({left, right, prod, ok});
    }
  }
  return rep;
}

DiagonalConsistency diagonal_consistency(const ShearerSequence& seq) {
  const double alpha = seq.params.alpha();
  const auto m = a_alpha_weights(make_caterpillar(seq.caterpillar()), alpha);
  const auto by_vertex = diagonal_by_vertex(m, diagonalize(m, -seq.params.lambda()));
  const double om2 = seq.params.one_minus_alpha_sq();
  const double unit = std::numeric_limits<double>::epsilon() / 2.0;

  DiagonalConsistency out;
  double q = 0.0;
  for (std::size_t j = 0; j < seq.k; ++j) {
    const double diff = std::abs(by_vertex[j] - seq.b[j]);
    const double tol = 1e-10 + 64.0 * unit * (1.0 + q);
    out.max_abs_diff = std::max(out.max_abs_diff, diff);
    out.worst_ratio = std::max(out.worst_ratio, diff / tol);
    q = std::min(om2 / (seq.b[j] * seq.b[j]) * (1.0 + q), kDivergenceCap);
  }
  out.ok = out.worst_ratio <= 1.0;
  return out;
}

double caterpillar_radius(const ShearerSequence& seq, double tol) {
  const auto m = a_alpha_weights(make_caterpillar(seq.caterpillar()), seq.params.alpha());
  return spectral_radius(m, tol).value;
}

ConvergenceReport convergence_report(double alpha, double lambda, std::span<const std::size_t> ks,
                                     ReportMode mode) {
  ConvergenceReport rep;
  rep.alpha = alpha;
  rep.lambda = lambda;
  rep.exploratory = (mode == ReportMode::Exploratory);
  rep.regime = classify_regime(alpha, lambda);
  rep.boundary = (rep.regime == Regime::Tau2Boundary);
  rep.resolution = 2.0 * (std::nextafter(lambda, kInf) - lambda);

  const bool covered = rep.regime == Regime::AboveTau2 || rep.regime == Regime::Tau2Boundary ||
                       rep.regime == Regime::Interval;
  if (!covered && !rep.exploratory) {
    std::ostringstream why;
    why << fmt::format("lambda = {} is not covered by a limit-point theorem at alpha = {}: ",
                       lambda, alpha);
    if (alpha < 0.5)
      why << fmt::format("it is below tau2 = {:.10f}", tau2(alpha));
    else
      why << "tau2 exists only for alpha < 1/2";
    if (alpha < alpha_star().first) {
      const auto iv = tau1_interval(alpha);
      why << fmt::format(" and outside [tau1, tau1') = [{:.10f}, {:.10f})", iv.tau1,
                         iv.tau1_prime);
    } else {
      why << fmt::format(" and alpha >= alpha* = {:.10f}", alpha_star().first);
    }
    why << "; use exploratory mode to probe it without assertions";
    throw RegimeError(why.str());
  }

  const AlphaLambda params(alpha, lambda);
  const double c_const = params.delta() - params.theta_prime();
  rep.samples.resize(ks.size());
  parallel_for(ks.size(), [&](std::size_t i) {
    const std::size_t k = ks[i];
    const auto seq = build_shearer(alpha, lambda, k);
    ConvergenceSample s;
    s.k = k;
    s.rho = caterpillar_radius(seq);
    s.gap = lambda - s.rho;
    s.sigma = sigma_bound(seq);
    s.c_over_k = c_const / static_cast<double>(k);
    const auto q = divergence_sum(seq);
    s.qk = q.value;
    s.qk_saturated = q.saturated;
    rep.samples[i] = s;
  });

  if (rep.exploratory) return rep;

  const bool above_tau2 = rep.regime == Regime::AboveTau2 || rep.regime == Regime::Tau2Boundary;
  for (const auto& s : rep.samples) {
    // A radius within half an ulp of lambda correctly rounds to lambda itself.
    if (!(s.gap + rep.resolution > 0.0))
      rep.violations.push_back(fmt::format("k={}: gap {} is negative", s.k, s.gap));
    if (!(s.gap <= s.sigma + rep.resolution))
      rep.violations.push_back(fmt::format("k={}: gap {} exceeds sigma {}", s.k, s.gap, s.sigma));
    if (above_tau2 && !(s.gap < s.c_over_k))
      rep.violations.push_back(
          fmt::format("k={}: gap {} not below C/k = {}", s.k, s.gap, s.c_over_k));
  }
  // Radii are strictly increasing along the nested sequence; only checkable
  // above the rounding resolution.
  std::vector<ConvergenceSample> sorted = rep.samples;
  std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.k < b.k; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].k == sorted[i - 1].k) continue;
    if (sorted[i].rho + rep.resolution < sorted[i - 1].rho)
      rep.violations.push_back(fmt::format("rho decreases from k={} to k={}", sorted[i - 1].k,
                                           sorted[i].k));
  }
  return rep;
}

}  // namespace alimit
