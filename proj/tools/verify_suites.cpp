#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "alimit/alpha_theory.hpp"
#include "alimit/dense_oracle.hpp"
#include "alimit/diagonalize.hpp"
#include "alimit/formats.hpp"
#include "alimit/kernels.hpp"
#include "alimit/random_tree.hpp"
#include "alimit/shearer.hpp"
#include "cli.hpp"
#include "reference_data.hpp"

namespace alimit::cli {

namespace {

constexpr double kCoincide = 1e-8;

CheckResult check(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok, std::move(detail)};
}

// Diagonalize agrees with the dense spectrum; eigenvalues within kCoincide of
// c may be classified either way.
bool inertia_agrees(const WeightedTreeMatrix& m, double c, std::string& why) {
  const Inertia got = diagonalize(m, -c).inertia();
  const Inertia ref = count_relative_to(dense_spectrum_oracle(m), c, kCoincide);
  const bool ok = got.n_pos >= ref.n_pos && got.n_pos <= ref.n_pos + ref.n_zero &&
                  got.n_neg >= ref.n_neg && got.n_neg <= ref.n_neg + ref.n_zero;
  if (!ok)
    why = fmt::format("n={} c={} got ({},{},{}) oracle ({},{},{} coincident)", m.size(), c,
                      got.n_pos, got.n_neg, got.n_zero, ref.n_pos, ref.n_neg, ref.n_zero);
  return ok;
}

}  // namespace

std::vector<CheckResult> verify_inertia(std::size_t cases, std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(2, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> shift(-4.0, 4.0);
  std::uniform_int_distribution<int> small_int(-1, 2);

  // A_alpha trees; one case in ten uses alpha in {0, 1/2, 1} and an integer
  // shift so that coincident eigenvalues and the zero branch are exercised.
  std::size_t passed = 0, coincident = 0;
  std::string first_failure;
  for (std::size_t i = 0; i < cases; ++i) {
    const bool special = (i % 10 == 9);
    const double alpha = special ? 0.5 * static_cast<double>(i / 10 % 3) : unit(rng);
    const auto m = random_a_alpha_tree(rng, size(rng), alpha);
    const double c = special ? static_cast<double>(small_int(rng)) : shift(rng);
    if (count_relative_to(dense_spectrum_oracle(m), c, kCoincide).n_zero > 0) ++coincident;
    std::string why;
    if (inertia_agrees(m, c, why))
      ++passed;
    else if (first_failure.empty())
      first_failure = why;
  }
  out.push_back(check("inertia.a_alpha_oracle", passed == cases,
                      fmt::format("{}/{} random A_alpha trees match the dense oracle ({} with "
                                  "coincident eigenvalues){}",
                                  passed, cases, coincident,
                                  first_failure.empty() ? "" : "; first failure: " + first_failure)));

  passed = 0;
  first_failure.clear();
  for (std::size_t i = 0; i < cases; ++i) {
    const auto m = random_weighted_tree(rng, size(rng));
    const double c = shift(rng);
    std::string why;
    if (inertia_agrees(m, c, why))
      ++passed;
    else if (first_failure.empty())
      first_failure = why;
  }
  out.push_back(check("inertia.weighted_oracle", passed == cases,
                      fmt::format("{}/{} random weighted trees match the dense oracle{}", passed,
                                  cases,
                                  first_failure.empty() ? "" : "; first failure: " + first_failure)));

#if defined(ALIMIT_HAVE_AVX2)
  if (kernels::detected_isa() == kernels::Isa::Avx2) {
    std::size_t mismatches = 0, compared = 0;
    for (int t = 0; t < 50; ++t) {
      const auto m = random_a_alpha_tree(rng, 2 + t * 7, unit(rng));
      const auto packed = kernels::PackedTree::from(m);
      std::vector<double> shifts(37);
      for (auto& s : shifts) s = shift(rng);
      shifts[5] = 0.0;
      std::vector<Inertia> a(shifts.size()), b(shifts.size());
      kernels::count_inertia_scalar(packed, shifts, a);
      kernels::count_inertia_avx2(packed, shifts, b);
      for (std::size_t i = 0; i < shifts.size(); ++i) mismatches += !(a[i] == b[i]);
      compared += shifts.size();
    }
    out.push_back(check("inertia.kernels_equal", mismatches == 0,
                        fmt::format("scalar and avx2 inertia agree on {}/{} shifts",
                                    compared - mismatches, compared)));
  } else {
    out.push_back(check("inertia.kernels_equal", true, "avx2 not available on this CPU; skipped"));
  }
#else
  out.push_back(check("inertia.kernels_equal", true, "built without avx2 kernels; skipped"));
#endif
  return out;
}

std::vector<CheckResult> verify_identities() {
  std::vector<CheckResult> out;

  // 100 x 20 grid: lambda in (2, 10], alpha in [0, 0.95].
  std::vector<double> ls, as;
  for (int i = 0; i < 100; ++i)
    for (int j = 0; j < 20; ++j) {
      ls.push_back(2.0 + 0.08 * (i + 1));
      as.push_back(0.05 * j);
    }
  const std::size_t n = ls.size();
  std::vector<double> f0(n), f1(n), f3(n);
  kernels::evaluate_f(kernels::FKind::F0, ls, as, f0);
  kernels::evaluate_f(kernels::FKind::F1, ls, as, f1);
  kernels::evaluate_f(kernels::FKind::F3, ls, as, f3);
  double worst_f = 0.0, worst_prod = 0.0, worst_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst_f = std::max(worst_f, std::abs(f1[i] + f0[i] * f3[i]));
    const AlphaLambda p(as[i], ls[i]);
    worst_prod = std::max(worst_prod, std::abs(p.theta() * p.theta_prime() - p.one_minus_alpha_sq()));
    worst_sum =
        std::max(worst_sum, std::abs(p.theta() + p.theta_prime() - (2.0 * as[i] - ls[i])));
  }
  out.push_back(check("identities.F1_eq_minus_F0F3", worst_f <= 1e-10,
                      fmt::format("max |F1 + F0 F3| = {:.3e} on {} grid points", worst_f, n)));
  out.push_back(check("identities.theta_product", worst_prod <= 1e-10,
                      fmt::format("max |theta theta' - (1-alpha)^2| = {:.3e}", worst_prod)));
  out.push_back(check("identities.theta_sum", worst_sum <= 1e-10,
                      fmt::format("max |theta + theta' - (2 alpha - lambda)| = {:.3e}", worst_sum)));

  double worst_quartic = 0.0;
  for (double a : {0.0, 0.1, 0.3, 0.5})
    worst_quartic = std::max(worst_quartic, std::abs(quartic_P_alpha(tau0(a), a)));
  out.push_back(check("identities.quartic_at_tau0", worst_quartic <= 1e-8,
                      fmt::format("max |P_alpha(tau0)| = {:.3e}", worst_quartic)));

  const double d_quarter = cubic_discriminant_d(0.25);
  out.push_back(check("identities.d_quarter",
                      std::abs(d_quarter - reference::kDiscriminantQuarter) <= 1e-12,
                      fmt::format("d(1/4) = {} vs -176823/4096 = {}", format_exact(d_quarter),
                                  format_exact(reference::kDiscriminantQuarter))));

  // d(alpha) against the discriminant -(4p^3 + 27q^2) of the depressed cubic.
  double worst_d = 0.0;
  for (double a : {0.01, 0.1, 0.2, 0.25, 0.4, 0.7, 0.95}) {
    const double b2 = -5.0 * a;
    const double b1 = 4.0 * a * a + 6.0 * a - 3.0;
    const double b0 = -a * a * a - 2.0 * a * a - 3.0 * a + 4.0 - 1.0 / a;
    const double p = b1 - b2 * b2 / 3.0;
    const double q = 2.0 * b2 * b2 * b2 / 27.0 - b2 * b1 / 3.0 + b0;
    const double direct = -(4.0 * p * p * p + 27.0 * q * q);
    const double d = cubic_discriminant_d(a);
    worst_d = std::max(worst_d, std::abs(d - direct) / std::max(1.0, std::abs(direct)));
  }
  out.push_back(check("identities.discriminant_routes", worst_d <= 1e-9,
                      fmt::format("max relative difference = {:.3e}", worst_d)));

  double worst_cubic = 0.0;
  for (double a : {1e-3, 0.01, 0.1, 0.2, 0.22}) {
    const double t = tau1_prime(a);
    worst_cubic = std::max(worst_cubic, std::abs(cubic_P3(t, a)) / (1.0 + t * t * t + 1.0 / a));
  }
  out.push_back(check("identities.cubic_at_tau1_prime", worst_cubic <= 1e-10,
                      fmt::format("max scaled |P3(tau1')| = {:.3e}", worst_cubic)));

  const auto [a_star, l_star] = alpha_star();
  const double collapse = std::max(std::abs(tau0(a_star) - l_star),
                                   std::abs(tau1_prime(a_star) - l_star));
  out.push_back(check("identities.interval_collapse", collapse <= 1e-8,
                      fmt::format("tau0 and tau1' at alpha* differ from lambda* by {:.3e}",
                                  collapse)));
  const auto [a_c, l_c] = corollary_crossover();
  const double cross = std::max(std::abs(tau2(a_c) - l_c), std::abs(tau1_prime(a_c) - l_c));
  out.push_back(check("identities.crossover", cross <= 1e-8,
                      fmt::format("tau2 and tau1' at the crossover differ from {} by {:.3e}",
                                  format_number(l_c), cross)));

#if defined(ALIMIT_HAVE_AVX2)
  if (kernels::detected_isa() == kernels::Isa::Avx2) {
    std::size_t mismatches = 0;
    for (auto kind : {kernels::FKind::F0, kernels::FKind::F1, kernels::FKind::F2,
                      kernels::FKind::F3}) {
      std::vector<double> a(n), b(n);
      kernels::evaluate_f_scalar(kind, ls, as, a);
      kernels::evaluate_f_avx2(kind, ls, as, b);
      for (std::size_t i = 0; i < n; ++i)
        mismatches += std::memcmp(&a[i], &b[i], sizeof(double)) != 0;
    }
    out.push_back(check("identities.kernels_equal", mismatches == 0,
                        fmt::format("{} bitwise mismatches between scalar and avx2 F grids",
                                    mismatches)));
  }
#endif
  return out;
}

std::vector<CheckResult> verify_examples() {
  using namespace reference;
  std::vector<CheckResult> out;

  auto max_b_error = [](const ShearerSequence& s, const std::vector<double>& head,
                        const std::vector<double>& tail) {
    double worst = 0.0;
    for (std::size_t i = 0; i < head.size(); ++i) worst = std::max(worst, std::abs(s.b[i] - head[i]));
    for (std::size_t i = 0; i < tail.size(); ++i)
      worst = std::max(worst, std::abs(s.b[s.k - tail.size() + i] - tail[i]));
    return worst;
  };

  {
    const auto s = build_shearer(kExampleAAlpha, kExampleALambda, 100);
    out.push_back(check("example_a.r_list", s.r == kExampleAR,
                        "pendant counts " + std::string(s.r == kExampleAR ? "match" : "differ")));
    const double err = max_b_error(s, kExampleAHead, kExampleATail);
    out.push_back(check("example_a.b_values", err <= 5e-4,
                        fmt::format("max |b_j - printed| = {:.3e}", err)));
    const auto w = verify_window(s);
    out.push_back(check("example_a.window", w.ok && w.below_unit_bound.empty(),
                        fmt::format("{} window violations, {} entries at or below -1 + alpha",
                                    w.violations.size(), w.below_unit_bound.size())));
    const double rho = caterpillar_radius(s);
    const double gap = kExampleALambda - rho;
    out.push_back(check("example_a.rho", std::abs(rho - kExampleARho) <= 1e-9 && gap < 1e-10,
                        fmt::format("rho = {} (printed {}), gap = {:.3e}", format_exact(rho),
                                    format_exact(kExampleARho), gap)));

    // DiagResult JSON round trip and agreement with the recurrence.
    const auto m = a_alpha_weights(make_caterpillar(s.caterpillar()), kExampleAAlpha);
    const DiagResult d = diagonalize(m, -kExampleALambda);
    const DiagResult back = diag_result_from_json(Json::parse(to_json(d).dump()));
    const bool same = back.d == d.d && back.inertia() == d.inertia() &&
                      back.removed_edges == d.removed_edges;
    out.push_back(check("example_a.diag_json_roundtrip", same,
                        same ? "DiagResult survives JSON exactly" : "JSON round trip changed data"));
    const auto c = diagonal_consistency(s);
    out.push_back(check("example_a.diag_matches_recurrence", c.ok,
                        fmt::format("max |Diag spine - b_j| = {:.3e}, worst ratio to the "
                                    "amplification-scaled tolerance {:.3f}",
                                    c.max_abs_diff, c.worst_ratio)));
  }

  {
    const auto s = build_shearer(kExampleBAlpha, kExampleBLambda, 100);
    out.push_back(check("example_b.r_list", s.r == kExampleBR,
                        "pendant counts " + std::string(s.r == kExampleBR ? "match" : "differ")));
    const double err = max_b_error(s, kExampleBHead, kExampleBTail);
    out.push_back(check("example_b.b_values", err <= 5e-4,
                        fmt::format("max |b_j - printed| = {:.3e}", err)));
    const double e1 = std::abs(s.b[0] - kExampleBB1);
    const double e21 = std::abs(s.b[20] - kExampleBB21);
    const double e24 = std::abs(s.b[23] - kExampleBB24);
    out.push_back(check("example_b.b_exact", std::max({e1, e21, e24}) <= 1e-12,
                        fmt::format("b_1 = {}, b_21 = {}, b_24 = {}", format_exact(s.b[0]),
                                    format_exact(s.b[20]), format_exact(s.b[23]))));
    const auto pairing = pairing_check(s);
    bool products_ok = true;
    std::string detail;
    for (const auto& p : kExampleBProducts) {
      const double got = s.b[p.left - 1] * s.b[p.right - 1];
      const bool ok = std::abs(got - p.value) <= 1e-10 && got < pairing.bound;
      products_ok = products_ok && ok;
      detail += fmt::format("b_{}b_{} = {} ", p.left, p.right, format_exact(got));
    }
    out.push_back(check("example_b.products", products_ok, detail));
    out.push_back(check("example_b.pairing", pairing.ok,
                        fmt::format("{} pairs checked, {} truncated, longest zero run {}",
                                    pairing.pairs.size(), pairing.truncated,
                                    pairing.max_zero_run)));
    const double rho = caterpillar_radius(s);
    out.push_back(check("example_b.rho", std::abs(rho - kExampleBRho) <= 1e-9,
                        fmt::format("rho = {} (printed {}), difference {:.3e}", format_exact(rho),
                                    format_exact(kExampleBRho), rho - kExampleBRho)));
  }
  return out;
}

}  // namespace alimit::cli
