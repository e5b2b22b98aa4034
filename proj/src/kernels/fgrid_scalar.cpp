#include "alimit/detail/fixed_point.hpp"
#include "alimit/kernels.hpp"

namespace alimit::kernels {

void evaluate_f_scalar(FKind kind, std::span<const double> lambdas,
                       std::span<const double> alphas, std::span<double> out) {
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double l = lambdas[i];
    const double a = alphas[i];
    const auto q = detail::fixed_point(l, a);
    switch (kind) {
      case FKind::F0:
        out[i] = detail::f0(q);
        break;
      case FKind::F1:
        out[i] = detail::f1(q, l, a);
        break;
      case FKind::F2:
        out[i] = detail::f2(q, a);
        break;
      case FKind::F3:
        out[i] = detail::f3(q);
        break;
    }
  }
}

}  // namespace alimit::kernels
