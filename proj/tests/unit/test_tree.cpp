#include <doctest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "alimit/random_tree.hpp"
#include "alimit/tree.hpp"

using namespace alimit;

namespace {

std::size_t degree_sum(const RootedTree& t) {
  const auto d = t.degrees();
  return std::accumulate(d.begin(), d.end(), std::size_t{0});
}

bool bottom_up(const RootedTree& t) {
  std::vector<std::size_t> pos(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) pos[t.order()[i]] = i;
  for (Vertex v = 0; v < t.size(); ++v)
    if (auto p = t.parent(v); p && pos[v] >= pos[*p]) return false;
  return true;
}

}  // namespace

TEST_SUITE("tree") {
  TEST_CASE("constructor rejects malformed trees") {
    CHECK_THROWS_AS(RootedTree({kNoParent, kNoParent}, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(RootedTree({1, kNoParent}, {1, 0}), std::invalid_argument);  // not bottom-up
    CHECK_THROWS_AS(RootedTree({1, kNoParent}, {0, 0}), std::invalid_argument);  // not a permutation
    CHECK_THROWS_AS(RootedTree({1, 0, kNoParent}, {0, 1, 2}), std::invalid_argument);  // cycle
    CHECK_NOTHROW(RootedTree({1, kNoParent}, {0, 1}));
  }

  TEST_CASE("caterpillar [1] is a single edge") {
    const auto t = make_caterpillar({{1}});
    CHECK(t.size() == 2);
    CHECK(t.root() == 0);
    CHECK(t.degree(0) == 1);
    CHECK(t.degree(1) == 1);
  }

  TEST_CASE("caterpillar [4,0,1]") {
    const auto t = make_caterpillar({{4, 0, 1}});
    CHECK(t.size() == 8);
    CHECK(t.root() == 2);
    CHECK(*t.parent(0) == 1);
    CHECK(*t.parent(1) == 2);
    CHECK(t.degree(0) == 5);
    CHECK(t.degree(1) == 2);
    CHECK(t.degree(2) == 2);
    // Leaves first, then spine v_1..v_k.
    const auto order = t.order();
    CHECK(std::vector<Vertex>(order.end() - 3, order.end()) == std::vector<Vertex>{0, 1, 2});
    CHECK(bottom_up(t));
    CHECK(degree_sum(t) == 2 * (t.size() - 1));
  }

  TEST_CASE("caterpillar pendant counts round-trip") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> count(0, 4);
    std::uniform_int_distribution<std::size_t> len(1, 30);
    for (int trial = 0; trial < 50; ++trial) {
      CaterpillarSpec spec;
      spec.r.resize(len(rng));
      for (auto& x : spec.r) x = count(rng);
      const auto t = make_caterpillar(spec);
      CHECK(t.size() == spec.vertex_count());
      CHECK(caterpillar_pendant_counts(t, spec.r.size()).r == spec.r);
      CHECK(bottom_up(t));
      CHECK(degree_sum(t) == 2 * (t.size() - 1));
    }
  }

  TEST_CASE("caterpillar spec validation") {
    CHECK_THROWS(CaterpillarSpec{{}}.validate());
    CHECK_THROWS(CaterpillarSpec{{1, -1}}.validate());
    CHECK_THROWS(make_caterpillar({{2, -3}}));
  }

  TEST_CASE("starlike T_{1,n,n}") {
    for (std::size_t n : {1u, 2u, 5u, 40u}) {
      const auto t = make_starlike_1nn(n);
      CHECK(t.size() == 2 * n + 2);
      CHECK(t.degree(t.root()) == 3);
      CHECK(t.max_degree() == 3);
      CHECK(bottom_up(t));
      CHECK(degree_sum(t) == 2 * (t.size() - 1));
    }
    const auto star = make_starlike_1nn(1);
    for (Vertex v = 0; v < 4; ++v)
      if (v != star.root()) CHECK(star.degree(v) == 1);
    CHECK_THROWS(make_starlike_1nn(0));
  }

  TEST_CASE("A_alpha weights") {
    const auto p3 = RootedTree::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}}, 0);
    const auto a0 = a_alpha_weights(p3, 0.0);
    for (Vertex v = 0; v < 3; ++v) CHECK(a0.diag()[v] == 0.0);
    const auto a1 = a_alpha_weights(p3, 1.0);
    CHECK(a1.diag()[0] == 1.0);
    CHECK(a1.diag()[1] == 2.0);
    CHECK(a1.diag()[2] == 1.0);
    for (Vertex v = 0; v < 3; ++v) {
      if (v == p3.root()) {
        CHECK(a0.edge_weights()[v] == 0.0);
      } else {
        CHECK(a0.edge_weights()[v] == 1.0);
        CHECK(a1.edge_weights()[v] == 0.0);
      }
    }

    const auto t = make_starlike_1nn(2);
    const auto m = a_alpha_weights(t, 0.1);
    CHECK(m.alpha().value() == 0.1);
    for (Vertex v = 0; v < t.size(); ++v) {
      CHECK(m.diag()[v] == 0.1 * static_cast<double>(t.degree(v)));
      if (v != t.root()) CHECK(m.edge_weights()[v] == 1.0 - 0.1);
    }
    CHECK(m.diag()[t.root()] == doctest::Approx(0.3));

    CHECK_THROWS_AS(a_alpha_weights(t, -0.1), std::domain_error);
    CHECK_THROWS_AS(a_alpha_weights(t, 1.5), std::domain_error);
  }

  TEST_CASE("edge list round trip") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const auto t = random_tree(rng, 2 + trial);
      std::istringstream in(to_edge_list(t));
      const auto back = read_edge_list(in, t.root() + 1);
      CHECK(back.size() == t.size());
      CHECK(back.root() == t.root());
      for (Vertex v = 0; v < t.size(); ++v) CHECK(back.parent(v) == t.parent(v));
    }
  }

  TEST_CASE("edge list parsing") {
    std::istringstream in("# alpha-limit v1\n# comment\n\n1 2\n2 3\n");
    const auto t = read_edge_list(in);
    CHECK(t.size() == 3);
    CHECK(t.root() == 0);
    std::istringstream bad("1 2\n3 4\n");
    CHECK_THROWS(read_edge_list(bad));
    std::istringstream zero("0 1\n");
    CHECK_THROWS(read_edge_list(zero));
  }

  TEST_CASE("random trees are valid") {
    std::mt19937_64 rng(5);
    for (std::size_t n = 1; n < 40; ++n) {
      const auto t = random_tree(rng, n);
      CHECK(t.size() == n);
      CHECK(bottom_up(t));
      CHECK(degree_sum(t) == 2 * (n - 1));
    }
  }
}
