#include <doctest.h>

#include <random>
#include <sstream>

#include "arcres/arcs.hpp"
#include "arcres/resolve.hpp"
#include "arcres/search.hpp"
#include "fixtures.hpp"

using namespace arcres;

namespace {

BitGraph complete(std::uint32_t n) {
  BitGraph g(n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

}  // namespace

TEST_CASE("graph_from_relation") {
  std::vector<int> items{1, 2, 3, 4, 5, 6};
  auto g = graph_from_relation(std::span<const int>(items), [](int a, int b) { return (a + b) % 2 == 1; });
  CHECK(g.size() == 6);
  CHECK(g.adjacent(0, 1));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(g.adjacent(1, 0));
  CHECK(g.num_edges() == 9);

  std::vector<int> none;
  CHECK(graph_from_relation(std::span<const int>(none), [](int, int) { return true; }).size() == 0);
}

TEST_CASE("small clique counts") {
  CHECK(enumerate_cliques(complete(3), 3).size() == 1);
  CHECK(count_cliques(complete(18), 18) == 1);
  CHECK(count_cliques(complete(5), 3) == 10);
  CHECK(enumerate_cliques(complete(5), 1).size() == 5);
  CHECK(enumerate_cliques(complete(5), 6).empty());
  CHECK(count_cliques(BitGraph(0), 2) == 0);
  CHECK_THROWS_AS(enumerate_cliques(complete(3), 0), ParameterError);
}

TEST_CASE("K6 edge-disjointness graph: 15 perfect matchings") {
  auto k6 = fixtures::k6();
  auto g = block_disjointness_graph(k6);
  CHECK(g.size() == 15);
  for (std::uint32_t v = 0; v < 15; ++v) CHECK(g.degree(v) == 6);  // C(4,2) edges avoid a given edge
  auto cliques = enumerate_cliques(g, 3);
  CHECK(cliques.size() == 15);
  CHECK(cliques == fixtures::brute_cliques(g, 3));
}

TEST_CASE("oracle equivalence on random graphs") {
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::uint32_t> size(1, 18);
  std::uniform_real_distribution<double> prob(0.1, 0.95);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = fixtures::random_graph(rng, size(rng), prob(rng));
    for (std::uint32_t k = 1; k <= 6; ++k) {
      auto expect = fixtures::brute_cliques(g, k);
      auto got = enumerate_cliques(g, k);
      REQUIRE(got == expect);
      CHECK(count_cliques(g, k) == expect.size());
    }
  }
}

TEST_CASE("output does not depend on thread count") {
  std::mt19937_64 rng(99);
  auto g = fixtures::random_graph(rng, 60, 0.6);
  auto one = enumerate_cliques(g, 6, {1});
  CHECK(!one.empty());
  for (unsigned jobs : {2u, 3u, 8u}) {
    CHECK(enumerate_cliques(g, 6, {jobs}) == one);
    CHECK(count_cliques(g, 6, {jobs}) == one.size());
  }
  CHECK(std::is_sorted(one.begin(), one.end()));
  for (const auto& c : one) CHECK(std::is_sorted(c.begin(), c.end()));
}

TEST_CASE("dimacs export") {
  BitGraph g(3);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  std::ostringstream os;
  write_dimacs(os, g);
  CHECK(os.str() == "p edge 3 2\ne 1 3\ne 2 3\n");
}
