#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "alimit/dense_oracle.hpp"
#include "alimit/random_tree.hpp"

using namespace alimit;

namespace {

RootedTree path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return RootedTree::from_edges(n, e, n - 1);
}

}  // namespace

TEST_SUITE("dense_oracle") {
  TEST_CASE("paths") {
    const auto p2 = dense_spectrum_oracle(a_alpha_weights(path(2), 0.0));
    REQUIRE(p2.size() == 2);
    CHECK(std::abs(p2[0] + 1.0) <= 1e-12);
    CHECK(std::abs(p2[1] - 1.0) <= 1e-12);

    const auto p3 = dense_spectrum_oracle(a_alpha_weights(path(3), 0.0));
    CHECK(std::abs(p3[0] + std::sqrt(2.0)) <= 1e-12);
    CHECK(std::abs(p3[1]) <= 1e-12);
    CHECK(std::abs(p3[2] - std::sqrt(2.0)) <= 1e-12);

    // P_n adjacency: 2 cos(pi j / (n + 1)).
    const std::size_t n = 20;
    const auto pn = dense_spectrum_oracle(a_alpha_weights(path(n), 0.0));
    for (std::size_t j = 1; j <= n; ++j)
      CHECK(std::abs(pn[n - j] - 2.0 * std::cos(M_PI * j / (n + 1))) <= 1e-10);
  }

  TEST_CASE("A_1/2 of P3 is half the signless Laplacian") {
    // Q(P3) = [[1,1,0],[1,2,1],[0,1,1]] has eigenvalues 0, 1, 3.
    const auto s = dense_spectrum_oracle(a_alpha_weights(path(3), 0.5));
    CHECK(std::abs(s[0] - 0.0) <= 1e-12);
    CHECK(std::abs(s[1] - 0.5) <= 1e-12);
    CHECK(std::abs(s[2] - 1.5) <= 1e-12);
  }

  TEST_CASE("trace and Frobenius norm are preserved") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 30; ++t) {
      const auto m = random_weighted_tree(rng, 2 + t);
      const auto a = dense_matrix(m);
      const auto s = dense_spectrum_oracle(m);
      const std::size_t n = m.size();
      double trace = 0.0, frob = 0.0, sum = 0.0, sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) trace += a[i * n + i];
      for (double x : a) frob += x * x;
      for (double e : s) {
        sum += e;
        sq += e * e;
      }
      CHECK(std::abs(trace - sum) <= 1e-10 * (1.0 + std::abs(trace)));
      CHECK(std::abs(frob - sq) <= 1e-10 * (1.0 + frob));
      for (std::size_t i = 1; i < n; ++i) CHECK(s[i - 1] <= s[i]);
    }
  }

  TEST_CASE("size limit") {
    CHECK_THROWS_AS(dense_spectrum_oracle(a_alpha_weights(path(kDenseOracleMaxN + 1), 0.0)),
                    std::length_error);
    CHECK_NOTHROW(dense_spectrum_oracle(a_alpha_weights(path(kDenseOracleMaxN), 0.0)));
  }

  TEST_CASE("count_relative_to") {
    const std::vector<double> s{-1.0, 0.0, 1e-9, 2.0};
    const auto in = count_relative_to(s, 0.0, 1e-8);
    CHECK(in == Inertia{1, 1, 2});
  }
}
