#include <doctest.h>

#include <fstream>
#include <set>

#include "arcres/arcs.hpp"
#include "arcres/resolve.hpp"
#include "arcres/serialize.hpp"
#include "fixtures.hpp"

using namespace arcres;
using fixtures::pg;

namespace {

fixtures::Sets as_sets(const std::vector<ParallelClass>& classes) {
  fixtures::Sets out;
  for (const auto& c : classes) out.push_back(c.blocks);
  return out;
}

fixtures::Sets as_sets(const std::vector<Resolution>& res) {
  fixtures::Sets out;
  for (const auto& r : res) out.push_back(r.classes);
  return out;
}

Design design_of(const Arc& hyperoval) { return extract_design(dual_arc(hyperoval)); }

Arc lunelli_sce() {
  std::ifstream in(ARCRES_TEST_DATA_DIR "/pg2_16_lunelli_sce.arc");
  REQUIRE(in);
  return load_arc(in, pg(4), 2);
}

void check_invariants(const Design& d, const std::vector<ParallelClass>& classes, const std::vector<Resolution>& res) {
  const auto& p = d.params();
  for (const auto& c : classes) {
    REQUIRE(c.blocks.size() == p.v / p.k);
    std::vector<int> hit(p.v, 0);
    for (auto b : c.blocks)
      for (auto x : d.block(b)) ++hit[x];
    CHECK(std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; }));
  }
  for (const auto& r : res) {
    REQUIRE(r.classes.size() == p.r);
    std::vector<int> seen(d.num_blocks(), 0);
    for (auto c : r.classes)
      for (auto b : classes[c].blocks) ++seen[b];
    CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
  }
}

std::size_t distinct_classes(const CompatibleSet& cs, const std::vector<Resolution>& res) {
  std::set<std::uint32_t> used;
  for (auto ri : cs.resolutions) used.insert(res[ri].classes.begin(), res[ri].classes.end());
  return used.size();
}

}  // namespace

TEST_CASE("K6 against the brute-force oracles") {
  auto d = fixtures::k6();
  auto classes = parallel_classes(d);
  CHECK(classes.size() == 15);
  CHECK(as_sets(classes) == fixtures::brute_classes(d));

  auto res = resolutions(d, classes);
  CHECK(res.size() == 6);
  CHECK(as_sets(res) == fixtures::brute_resolutions(d, as_sets(classes)));
  check_invariants(d, classes, res);

  // Every pair of the six one-factorisations of K6 is compatible.
  const auto cs = as_sets(classes);
  for (std::size_t a = 0; a < res.size(); ++a)
    for (std::size_t b = 0; b < res.size(); ++b) {
      CHECK(compatible(res[a], res[b], classes) == fixtures::brute_compatible(res[a].classes, res[b].classes, cs));
      if (a != b) CHECK(compatible(res[a], res[b], classes));
    }

  CHECK(compatible_set_bound(d.params()) == 6);
  auto sets = max_compatible_sets(d, classes, res);
  REQUIRE(sets.size() == 1);
  CHECK(sets[0].m() == 6);
  CHECK(distinct_classes(sets[0], res) == 6 * 5 - 15);
}

TEST_CASE("compatible: definition edge cases") {
  auto d = fixtures::k6();
  auto classes = parallel_classes(d);
  auto res = resolutions(d, classes);
  SUBCASE("a resolution is not compatible with itself") { CHECK_FALSE(compatible(res[0], res[0], classes)); }
  SUBCASE("no shared class") {
    // Two resolutions whose class sets are disjoint never qualify.
    Resolution a{{0, 1, 2, 3, 4}}, b{{5, 6, 7, 8, 9}};
    CHECK_FALSE(compatible(a, b, classes));
    CHECK_FALSE(fixtures::brute_compatible(a.classes, b.classes, as_sets(classes)));
  }
}

TEST_CASE("regular hyperoval of PG(2,16)") {
  auto d = design_of(regular_hyperoval(pg(4)));
  auto classes = parallel_classes(d, {2});
  CHECK(classes.size() == 221);
  auto res = resolutions(d, classes, {2});
  CHECK(res.size() == 137);
  check_invariants(d, classes, res);
  CHECK(compatible_set_bound(d.params()) == 18);
  auto sets = max_compatible_sets(d, classes, res, {2});
  REQUIRE(sets.size() == 1);
  CHECK(distinct_classes(sets[0], res) == 18 * 17 - 153);

  // Compatibility graph agrees with the definition on every edge.
  auto g = compatibility_graph(res, classes);
  const auto cs = as_sets(classes);
  for (std::uint32_t a = 0; a < res.size(); ++a)
    for (std::uint32_t b = a + 1; b < res.size(); ++b)
      REQUIRE(g.adjacent(a, b) == fixtures::brute_compatible(res[a].classes, res[b].classes, cs));

  SUBCASE("embedding is a plane of order 16 and round-trips") {
    auto e = embed(d, sets[0], res, classes);
    CHECK(e.plane.order() == 16);
    CHECK(e.plane.num_points() == 273);
    CHECK(validate_plane(e.plane).ok());
    CHECK(e.arc_points.size() == 120);
    CHECK(e.class_of_point.size() == 153);
    auto plane = std::make_shared<const ProjectivePlane>(e.plane);
    auto back = extract_design(make_arc(plane, e.arc_points, 8));
    CHECK(back.blocks() == d.blocks());
  }
}

TEST_CASE("Lunelli-Sce hyperoval of PG(2,16)") {
  auto d = design_of(lunelli_sce());
  auto classes = parallel_classes(d, {2});
  CHECK(classes.size() == 153);
  auto res = resolutions(d, classes, {2});
  CHECK(res.size() == 18);
  check_invariants(d, classes, res);
  auto sets = max_compatible_sets(d, classes, res);
  REQUIRE(sets.size() == 1);
  CHECK(validate_plane(embed(d, sets[0], res, classes).plane).ok());
}

TEST_CASE("embed on the K6 design") {
  auto d = design_of(regular_hyperoval(pg(2)));
  auto classes = parallel_classes(d);
  auto res = resolutions(d, classes);
  auto sets = max_compatible_sets(d, classes, res);
  REQUIRE(sets.size() == 1);
  auto e = embed(d, sets[0], res, classes);
  CHECK(e.plane.order() == 4);
  CHECK(validate_plane(e.plane).ok());
  auto back = extract_design(make_arc(std::make_shared<const ProjectivePlane>(e.plane), e.arc_points, 2));
  CHECK(back.blocks() == d.blocks());

  SUBCASE("a short compatible set is rejected") {
    CompatibleSet partial{{sets[0].resolutions.begin(), sets[0].resolutions.end() - 1}};
    CHECK_THROWS_AS(embed(d, partial, res, classes), ParameterError);
  }
}

TEST_CASE("embed rejects s = 1") {
  auto d = extract_design(regular_hyperoval(pg(1)));
  auto classes = parallel_classes(d);
  CHECK(classes.size() == 3);
  auto res = resolutions(d, classes);
  CHECK(res.size() == 1);
  CHECK_THROWS_WITH_AS(embed(d, CompatibleSet{{0}}, res, classes), doctest::Contains("s > 1"), ParameterError);
}

TEST_CASE("parallel classes need k | v") {
  auto fano = extract_design(dual_arc(regular_hyperoval(pg(2))));  // K6 is fine
  CHECK_NOTHROW(parallel_classes(fano));
  Design odd(derive_params(7, 3, 1), {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
  CHECK_THROWS_AS(parallel_classes(odd), ParameterError);
}

TEST_CASE("json round trip") {
  auto d = fixtures::k6();
  auto classes = parallel_classes(d);
  auto res = resolutions(d, classes);
  auto sets = max_compatible_sets(d, classes, res);
  CHECK(classes_from_json(classes_to_json(classes), d) == classes);
  CHECK(resolutions_from_json(resolutions_to_json(res), classes.size()) == res);
  CHECK(compatible_sets_from_json(compatible_sets_to_json(sets), res.size()) == sets);
  CHECK_THROWS_AS(resolutions_from_json(resolutions_to_json(res), 3), ParseError);
}
