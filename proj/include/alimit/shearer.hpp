#pragma once

// The alpha-Shearer caterpillar sequence and its convergence diagnostics.
//
// For a target lambda > 2 the pendant counts r_j are chosen greedily, each as
// large as possible while the diagonal value b_j at spine vertex j produced by
// the tree reduction of A_alpha(G_k) - lambda I stays below theta'. The b_j obey
//
//   b_1     = alpha - lambda + r_1 delta
//   b_{j+1} = phi(b_j) + r_{j+1} delta              (1 <= j <= k-2)
//   b_k     = -alpha + phi(b_{k-1}) + r_k delta
//
// where the last line accounts for the end of the spine having one neighbour
// fewer. For k = 1 the first and last lines merge: b_1 = -lambda + r_1 delta.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "alimit/alpha_theory.hpp"
#include "alimit/tree.hpp"

namespace alimit {

/// Added to the real-valued floor argument before flooring, so that values
/// which are mathematically integral but land one ulp low are not lost.
inline constexpr double kFloorNudge = 1e-12;

struct ShearerSequence {
  AlphaLambda params;
  std::size_t k = 0;
  std::vector<int> r;
  std::vector<double> b;
  /// d b_j / d epsilon at epsilon = 0 when lambda is replaced by lambda - epsilon.
  std::vector<double> db;
  double floor_nudge = kFloorNudge;

  CaterpillarSpec caterpillar() const { return CaterpillarSpec{r}; }
};

/// Builds G_k. Requires lambda > 2, 0 <= alpha < 1, k >= 1; throws
/// InvariantViolation if a floor argument comes out negative.
ShearerSequence build_shearer(double alpha, double lambda, std::size_t k);

/// [r_1, r_2, ..., r_k]
std::string caterpillar_notation(std::span<const int> r);

enum class WindowViolationKind {
  NotNegative,   // b_j >= 0
  AboveWindow,   // b_j >= theta'
  BelowWindow,   // b_j <= theta' - delta (j < k only)
  NotFloor,      // r_j is not the greedy floor value given b_{j-1}
  Mismatch,      // stored b_j differs from the value replayed from r
};

struct WindowViolation {
  std::size_t index;  // 1-based
  WindowViolationKind kind;
  double value;
};

struct WindowReport {
  bool ok = true;
  std::vector<WindowViolation> violations;
  /// 1-based indices with b_j <= -1 + alpha. Not a violation: outside the
  /// lambda > tau2 regime such entries are expected.
  std::vector<std::size_t> below_unit_bound;
};

std::string_view violation_name(WindowViolationKind kind);

/// Replays the recurrence from the stored r and checks the window
/// theta' - delta < b_j < theta', negativity and the floor property.
WindowReport verify_window(const ShearerSequence& seq);

/// b_1(eps), ..., b_j(eps) of the same caterpillar at lambda - eps, computed as
/// offsets from the stored b so that eps far below ulp(lambda) stays visible.
/// Returns b_j(eps) - b_j (the shift), or +inf once some earlier entry has
/// crossed zero.
double perturbed_shift(const ShearerSequence& seq, std::size_t j, double eps);

/// eps_j for each requested 1-based j: the smallest positive root of
/// eps -> b_j(eps), found by bisection on (0, eps_{j-1}) with eps_0 = lambda - alpha.
std::vector<double> epsilon_roots(const ShearerSequence& seq, std::span<const std::size_t> js);

/// Root of the tangent line to eps -> b_k(eps) at 0: -b_k / db_k.
double sigma_bound(const ShearerSequence& seq);

struct DivergenceSum {
  double value = 0.0;
  /// Running value exceeded kDivergenceCap and was clamped.
  bool saturated = false;
};
inline constexpr double kDivergenceCap = 1e300;

/// Q_k = sum_{m=1}^{k-1} prod_{i=1}^{m} (1-alpha)^2 / b_{k-i}^2, evaluated as
/// S <- c_j (1 + S) for j = 1..k-1.
DivergenceSum divergence_sum(const ShearerSequence& seq);

struct PairedProduct {
  std::size_t left;   // 1-based
  std::size_t right;  // 1-based
  double product;
  bool ok;            // product < (1 - alpha)^2
};

struct ZeroRun {
  std::size_t first;  // 1-based index of the first r = 0
  std::size_t length;
  bool terminated;    // followed by some r != 0 inside the built prefix
};

struct PairingReport {
  double bound = 0.0;  // (1 - alpha)^2
  std::vector<ZeroRun> runs;
  std::vector<PairedProduct> pairs;
  /// Pairs whose right index reaches k or beyond.
  std::size_t truncated = 0;
  std::size_t max_zero_run = 0;
  bool ok = true;
};

/// For each maximal run r_{j+1} = ... = r_{j+m} = 0 followed by r_{j+m+1} != 0,
/// checks b_{j+m-i+1} b_{j+m+i} < (1 - alpha)^2 for i = 1..m+1. Throws
/// RegimeError unless alpha < alpha* and tau1 <= lambda < tau1'.
PairingReport pairing_check(const ShearerSequence& seq);

struct ConvergenceSample {
  std::size_t k = 0;
  double rho = 0.0;
  double gap = 0.0;
  double sigma = 0.0;
  double c_over_k = 0.0;
  double qk = 0.0;
  bool qk_saturated = false;
};

struct ConvergenceReport {
  double alpha = 0.0;
  double lambda = 0.0;
  Regime regime = Regime::Unknown;
  bool exploratory = false;
  /// lambda sits on tau2(alpha); in-regime by a limiting argument.
  bool boundary = false;
  /// Two ulps of lambda: radii closer to lambda than this are not resolvable.
  double resolution = 0.0;
  std::vector<ConvergenceSample> samples;
  /// Invariant failures (empty in exploratory mode, where nothing is asserted).
  std::vector<std::string> violations;
};

enum class ReportMode { Checked, Exploratory };

/// Builds G_k for each sample k, computes rho by tree-reduction bisection and
/// fills the bounds. Checked mode requires a theorem-covered regime (throws
/// RegimeError naming the threshold otherwise) and records any broken
/// invariant. Samples are evaluated in parallel; order follows `ks`.
ConvergenceReport convergence_report(double alpha, double lambda, std::span<const std::size_t> ks,
                                     ReportMode mode = ReportMode::Checked);

struct DiagonalConsistency {
  double max_abs_diff = 0.0;
  /// Largest |diff_j| / tolerance_j; <= 1 means consistent.
  double worst_ratio = 0.0;
  bool ok = true;
};

/// Compares the stored b_j with the spine entries of diagonalize(A_alpha(G_k), -lambda).
/// Rounding differences between the two evaluation orders are amplified along
/// the spine by the same products that make up Q_j, so entry j is allowed
/// 1e-10 + 64 u (1 + Q_{j-1}) with u the unit roundoff.
DiagonalConsistency diagonal_consistency(const ShearerSequence& seq);

/// rho(A_alpha(G_k)) for the caterpillar given by seq.
double caterpillar_radius(const ShearerSequence& seq, double tol = 1e-15);

}  // namespace alimit
