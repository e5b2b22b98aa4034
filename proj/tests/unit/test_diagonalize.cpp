#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "alimit/dense_oracle.hpp"
#include "alimit/diagonalize.hpp"
#include "alimit/random_tree.hpp"
#include "alimit/shearer.hpp"
#include "cli.hpp"
#include "reference_data.hpp"

using namespace alimit;

namespace {

RootedTree path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return RootedTree::from_edges(n, e, n - 1);
}

RootedTree star(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.emplace_back(v, 0);
  return RootedTree::from_edges(leaves + 1, e, 0);
}

// Same tree under a vertex relabelling and a different root.
WeightedTreeMatrix relabel(const WeightedTreeMatrix& m, std::mt19937_64& rng) {
  const std::size_t n = m.size();
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> edges;
  for (const auto& [c, p] : m.tree().edges()) edges.emplace_back(perm[p], perm[c]);
  std::shuffle(edges.begin(), edges.end(), rng);
  const auto t = RootedTree::from_edges(n, edges, perm[std::uniform_int_distribution<Vertex>(0, n - 1)(rng)]);
  std::vector<double> diag(n), w(n, 0.0);
  for (Vertex v = 0; v < n; ++v) diag[perm[v]] = m.diag()[v];
  // Edge weight moves to whichever endpoint is the child in the new rooting.
  for (const auto& [c, p] : m.tree().edges()) {
    const Vertex a = perm[c], b = perm[p];
    const Vertex child = (t.parent(a) && *t.parent(a) == b) ? a : b;
    w[child] = m.edge_weights()[c];
  }
  return WeightedTreeMatrix(t, diag, w);
}

}  // namespace

TEST_SUITE("diagonalize") {
  TEST_CASE("P2 at x = 0 takes the zero branch") {
    const auto m = a_alpha_weights(path(2), 0.0);
    const auto r = diagonalize(m, 0.0);
    REQUIRE(r.d.size() == 2);
    CHECK(r.d[0] == 2.0);
    CHECK(r.d[1] == -0.5);
    CHECK(r.n_pos == 1);
    CHECK(r.n_neg == 1);
    CHECK(r.n_zero == 0);
    CHECK(r.removed_edges.empty());
  }

  TEST_CASE("P3 at x = 0 cuts the middle edge") {
    const auto m = a_alpha_weights(path(3), 0.0);
    const auto r = diagonalize(m, 0.0);
    CHECK(r.d == std::vector<double>{2.0, -0.5, 0.0});
    CHECK(r.inertia() == Inertia{1, 1, 1});
    REQUIRE(r.removed_edges.size() == 1);
    CHECK(r.removed_edges[0] == Edge{1, 2});
    // The input is untouched.
    CHECK(m.tree().parent(1) == std::optional<Vertex>(2));
  }

  TEST_CASE("star K_{1,3} at x = 0 has a double zero") {
    const auto r = diagonalize(a_alpha_weights(star(3), 0.0), 0.0);
    CHECK(r.inertia() == Inertia{1, 1, 2});
  }

  TEST_CASE("inertia counts add up and match zero_tol") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
      const auto m = random_weighted_tree(rng, 1 + t % 20);
      const auto r = diagonalize(m, std::uniform_real_distribution<double>(-3, 3)(rng));
      CHECK(r.n_pos + r.n_neg + r.n_zero == m.size());
      const auto zeros = std::count_if(r.d.begin(), r.d.end(),
                                       [](double d) { return std::abs(d) <= kZeroTol; });
      CHECK(static_cast<std::size_t>(zeros) == r.n_zero);
    }
  }

  TEST_CASE("count_eigenvalues_greater") {
    CHECK(count_eigenvalues_greater(a_alpha_weights(path(2), 0.0), 0.0) == 1);
    CHECK(count_eigenvalues_greater(a_alpha_weights(path(3), 0.0), 1.5) == 0);
    CHECK(count_eigenvalues_greater(a_alpha_weights(path(3), 0.0), 1.4) == 1);
    CHECK(count_eigenvalues_greater(a_alpha_weights(path(3), 0.0), -1.5) == 3);
  }

  TEST_CASE("50 random 10-vertex trees agree with the dense oracle") {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> c(-3.0, 3.0), a(0.0, 1.0);
    for (int t = 0; t < 50; ++t) {
      const auto m = random_a_alpha_tree(rng, 10, a(rng));
      const double shift = c(rng);
      const auto spec = dense_spectrum_oracle(m);
      const auto expect = std::count_if(spec.begin(), spec.end(), [&](double e) { return e > shift; });
      CHECK(count_eigenvalues_greater(m, shift) == static_cast<std::size_t>(expect));
    }
  }

  TEST_CASE("Sylvester consistency on 200 random trees") {
    const auto results = cli::verify_inertia(200, 1234);
    for (const auto& r : results) {
      INFO(r.name << ": " << r.detail);
      CHECK(r.ok);
    }
  }

  TEST_CASE("inertia is invariant under relabelling and rerooting") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> c(-3.0, 3.0);
    for (int t = 0; t < 100; ++t) {
      const bool integer = t % 4 == 0;
      const auto m = integer ? random_a_alpha_tree(rng, 2 + t % 11, 0.0)
                             : random_weighted_tree(rng, 2 + t % 11);
      const auto other = relabel(m, rng);
      const double shift = integer ? static_cast<double>(t % 3 - 1) : c(rng);
      CHECK(diagonalize(m, -shift).inertia() == diagonalize(other, -shift).inertia());
    }
  }

  TEST_CASE("first example spine diagonal") {
    using namespace reference;
    const auto seq = build_shearer(kExampleAAlpha, kExampleALambda, 100);
    const auto m = a_alpha_weights(make_caterpillar(seq.caterpillar()), kExampleAAlpha);
    const auto r = diagonalize(m, -kExampleALambda);
    const auto d = diagonal_by_vertex(m, r);
    for (std::size_t j = 0; j < kExampleAHead.size(); ++j) CHECK(std::abs(d[j] - kExampleAHead[j]) <= 5e-4);
    for (std::size_t j = 0; j < 100; ++j) CHECK(d[j] < 0.0);
    // Leaves keep alpha - lambda.
    for (std::size_t v = 100; v < m.size(); ++v) CHECK(d[v] == kExampleAAlpha - kExampleALambda);
    CHECK(r.n_pos == 0);
  }

  TEST_CASE("spectral radius of small trees") {
    auto p2 = spectral_radius(a_alpha_weights(path(2), 0.0), 1e-12);
    CHECK(p2.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p2.converged);
    auto k14 = spectral_radius(a_alpha_weights(star(4), 0.0), 1e-12);
    CHECK(std::abs(k14.value - 2.0) <= 1e-12);
    CHECK(k14.lower <= k14.value);
    CHECK(k14.value <= k14.upper);
    CHECK(k14.upper - k14.lower <= 1e-12);
    // alpha = 1 on a star: rho = max degree, which is also the upper bracket end.
    auto d = spectral_radius(a_alpha_weights(star(4), 1.0), 1e-12);
    CHECK(std::abs(d.value - 4.0) <= 2e-12);
    // Signless Laplacian half: star K_{1,n} has q = n + 1, so A_{1/2} gives (n+1)/2.
    auto q = spectral_radius(a_alpha_weights(star(4), 0.5), 1e-12);
    CHECK(std::abs(q.value - 2.5) <= 1e-12);
  }

  TEST_CASE("spectral radius without alpha provenance") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
      const auto m = random_weighted_tree(rng, 2 + t % 15);
      const auto r = spectral_radius(m, 1e-11);
      const auto spec = dense_spectrum_oracle(m);
      CHECK(std::abs(r.value - spec.back()) <= 1e-10);
    }
  }

  TEST_CASE("spectral radius errors") {
    const auto m = a_alpha_weights(path(3), 0.2);
    CHECK_THROWS_AS(spectral_radius(m, 0.0), std::domain_error);
    CHECK_THROWS_AS(spectral_radius(m, -1.0), std::domain_error);
    const auto single = a_alpha_weights(RootedTree({kNoParent}, {0}), 0.2);
    CHECK_THROWS_AS(spectral_radius(single, 1e-9), std::invalid_argument);
  }

  TEST_CASE("first example radius") {
    using namespace reference;
    const auto seq = build_shearer(kExampleAAlpha, kExampleALambda, 100);
    const double rho = caterpillar_radius(seq);
    CHECK(std::abs(rho - kExampleARho) <= 1e-9);
    CHECK(kExampleALambda - rho < 1e-10);
  }

  TEST_CASE("degree bounds on random trees") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> a(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
      const double alpha = a(rng);
      const auto m = random_a_alpha_tree(rng, 2 + t % 40, alpha);
      const auto r = spectral_radius(m, 1e-12);
      const double lower = a_alpha_radius_lower_bound(alpha, m.tree().max_degree());
      CHECK(r.value >= lower - 1e-10);
      CHECK(r.value <= static_cast<double>(m.tree().max_degree()) + 1e-10);
    }
  }

  TEST_CASE("alpha monotonicity") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> a(0.0, 1.0);
    for (int t = 0; t < 60; ++t) {
      const auto tree = random_tree(rng, 3 + t % 20);
      double x = a(rng), y = a(rng);
      if (x > y) std::swap(x, y);
      if (y - x < 1e-3) continue;
      const double rx = spectral_radius(a_alpha_weights(tree, x), 1e-13).value;
      const double ry = spectral_radius(a_alpha_weights(tree, y), 1e-13).value;
      CHECK(rx < ry);
    }
  }

  TEST_CASE("nested caterpillars have increasing radii") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> count(0, 3);
    std::uniform_real_distribution<double> a(0.0, 1.0);
    for (int t = 0; t < 10; ++t) {
      const double alpha = a(rng);
      std::vector<int> r;
      double prev = -1.0;
      for (int k = 1; k <= 20; ++k) {
        r.push_back(count(rng));
        const auto m = a_alpha_weights(make_caterpillar({r}), alpha);
        if (m.size() < 2) continue;
        const double rho = spectral_radius(m, 1e-14).value;
        // Perron vector mass at the far end of a long spine can fall below the bracket width.
        CHECK(rho >= prev - 1e-13);
        prev = rho;
      }
    }
  }

  TEST_CASE("batched shifts match single reductions") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> c(-4.0, 4.0);
    for (int t = 0; t < 30; ++t) {
      const auto m = random_a_alpha_tree(rng, 2 + t * 3, 0.3);
      std::vector<double> shifts(11);
      for (auto& s : shifts) s = c(rng);
      shifts[3] = 0.0;
      const auto batch = inertia_at_shifts(m, shifts);
      for (std::size_t i = 0; i < shifts.size(); ++i)
        CHECK(batch[i] == diagonalize(m, -shifts[i]).inertia());
    }
  }
}
