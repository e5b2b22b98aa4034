#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "alimit/kernels.hpp"

namespace alimit::kernels {

namespace {

// -1: auto-detect, otherwise static_cast<int>(Isa).
std::atomic<int> g_forced{-1};

Isa detect() {
#if defined(ALIMIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

Isa from_environment(Isa detected) {
  const char* env = std::getenv("ALPHA_LIMIT_KERNEL");
  if (env == nullptr) return detected;
  const std::string_view v(env);
  if (v == "scalar") return Isa::Scalar;
  return detected;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

Isa detected_isa() {
  static const Isa isa = detect();
  return isa;
}

Isa active_isa() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Isa>(forced);
  static const Isa chosen = from_environment(detected_isa());
  return chosen;
}

void force_isa(std::optional<Isa> isa) {
  if (isa && *isa == Isa::Avx2 && detected_isa() != Isa::Avx2)
    throw std::runtime_error("AVX2 kernels are not available on this machine");
  g_forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

PackedTree PackedTree::from(const WeightedTreeMatrix& m) {
  const auto& tree = m.tree();
  const auto order = tree.order();
  const std::size_t n = order.size();
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;

  PackedTree t;
  t.diag.resize(n);
  t.w2.resize(n);
  t.parent.resize(n);
  t.vertex.assign(order.begin(), order.end());
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex v = order[i];
    t.diag[i] = m.diag()[v];
    const double w = m.edge_weights()[v];
    t.w2[i] = w * w;
    const Vertex p = tree.parents()[v];
    t.parent[i] = (p == kNoParent) ? npos : position[p];
  }
  return t;
}

void count_inertia(const PackedTree& t, std::span<const double> shifts, std::span<Inertia> out) {
  if (out.size() != shifts.size()) throw std::invalid_argument("output size mismatch");
#if defined(ALIMIT_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) {
    count_inertia_avx2(t, shifts, out);
    return;
  }
#endif
  count_inertia_scalar(t, shifts, out);
}

void evaluate_f(FKind kind, std::span<const double> lambdas, std::span<const double> alphas,
                std::span<double> out) {
  if (lambdas.size() != alphas.size() || out.size() != lambdas.size())
    throw std::invalid_argument("grid size mismatch");
#if defined(ALIMIT_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) {
    evaluate_f_avx2(kind, lambdas, alphas, out);
    return;
  }
#endif
  evaluate_f_scalar(kind, lambdas, alphas, out);
}

}  // namespace alimit::kernels
