#pragma once

// Data-parallel inner loops with a scalar reference and an AVX2 variant.
//
// The variant is picked once at runtime from CPUID; ALPHA_LIMIT_KERNEL=scalar
// (or force_isa) pins the reference path. Both variants perform the same IEEE
// operations in the same order, so their results are bit-identical.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "alimit/diagonalize.hpp"
#include "alimit/tree.hpp"

namespace alimit::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);
/// Best variant this binary and CPU support.
Isa detected_isa();
/// Variant used by the dispatching entry points.
Isa active_isa();
/// Overrides dispatch; std::nullopt restores auto-detection. Not thread-safe
/// with respect to concurrent kernel calls.
void force_isa(std::optional<Isa> isa);

/// Weighted tree flattened into bottom-up position order.
struct PackedTree {
  std::vector<double> diag;
  /// Squared weight of the edge from each position to its parent.
  std::vector<double> w2;
  std::vector<std::size_t> parent;  // npos for the root
  std::vector<Vertex> vertex;       // position -> vertex

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  static PackedTree from(const WeightedTreeMatrix& m);
  std::size_t size() const noexcept { return diag.size(); }
};

/// Inertia of M - c I for each c in shifts. Shifts that hit a pivot with
/// |d| <= kZeroTol are recomputed with the full reduction (zero branch).
void count_inertia(const PackedTree& t, std::span<const double> shifts, std::span<Inertia> out);
void count_inertia_scalar(const PackedTree& t, std::span<const double> shifts,
                          std::span<Inertia> out);
#if defined(ALIMIT_HAVE_AVX2)
void count_inertia_avx2(const PackedTree& t, std::span<const double> shifts,
                        std::span<Inertia> out);
#endif

/// Which of the threshold functions to evaluate on a grid.
enum class FKind { F0, F1, F2, F3 };

/// out[i] = F(lambdas[i], alphas[i]). Requires lambdas[i] > 2, alphas[i] in [0,1].
void evaluate_f(FKind kind, std::span<const double> lambdas, std::span<const double> alphas,
                std::span<double> out);
void evaluate_f_scalar(FKind kind, std::span<const double> lambdas,
                       std::span<const double> alphas, std::span<double> out);
#if defined(ALIMIT_HAVE_AVX2)
void evaluate_f_avx2(FKind kind, std::span<const double> lambdas, std::span<const double> alphas,
                     std::span<double> out);
#endif

}  // namespace alimit::kernels
