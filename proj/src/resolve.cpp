#include "arcres/resolve.hpp"

#include <algorithm>
#include <stdexcept>

namespace arcres {

BitGraph block_disjointness_graph(const Design& design) {
  std::vector<std::uint32_t> ids(design.num_blocks());
  for (std::uint32_t i = 0; i < ids.size(); ++i) ids[i] = i;
  return graph_from_relation(std::span<const std::uint32_t>(ids), [&](std::uint32_t a, std::uint32_t b) {
    return !design.block_bits(a).intersects(design.block_bits(b));
  });
}

std::vector<ParallelClass> parallel_classes(const Design& design, SearchOptions opt) {
  const auto& p = design.params();
  if (p.v % p.k != 0)
    throw ParameterError("parallel classes need k | v, got v=" + std::to_string(p.v) + ", k=" + std::to_string(p.k));
  const std::uint32_t n = p.v / p.k;
  auto cliques = enumerate_cliques(block_disjointness_graph(design), n, opt);

  std::vector<ParallelClass> out;
  out.reserve(cliques.size());
  for (auto& c : cliques) {
    BitVec cover(p.v);
    BitVec set(design.num_blocks());
    for (auto b : c) {
      if (cover.intersects(design.block_bits(b))) throw std::logic_error("parallel class blocks overlap");
      cover |= design.block_bits(b);
      set.set(b);
    }
    if (cover.count() != p.v) throw std::logic_error("parallel class does not cover every point");
    out.push_back({std::move(c), std::move(set)});
  }
  return out;
}

BitGraph class_graph(const std::vector<ParallelClass>& classes) {
  return graph_from_relation(std::span<const ParallelClass>(classes), [](const ParallelClass& a, const ParallelClass& b) {
    return !a.block_set.intersects(b.block_set);
  });
}

std::vector<Resolution> resolutions(const Design& design, const std::vector<ParallelClass>& classes,
                                    SearchOptions opt) {
  const auto& p = design.params();
  auto cliques = enumerate_cliques(class_graph(classes), p.r, opt);

  std::vector<Resolution> out;
  out.reserve(cliques.size());
  for (auto& c : cliques) {
    // Re-verify from the raw blocks: every block exactly once.
    std::vector<std::uint32_t> seen(design.num_blocks(), 0);
    for (auto ci : c)
      for (auto b : classes[ci].blocks) {
        ++seen[b];
        if (design.block(b).size() != p.k) throw std::logic_error("resolution uses a malformed block");
      }
    if (!std::all_of(seen.begin(), seen.end(), [](std::uint32_t x) { return x == 1; }))
      throw std::logic_error("resolution does not partition the blocks");
    out.push_back({std::move(c)});
  }
  return out;
}

bool compatible(const Resolution& a, const Resolution& b, const std::vector<ParallelClass>& classes) {
  std::vector<std::uint32_t> shared;
  std::set_intersection(a.classes.begin(), a.classes.end(), b.classes.begin(), b.classes.end(),
                        std::back_inserter(shared));
  if (shared.empty()) return false;

  // Cross pairs excluding the first shared class on both sides. A second
  // shared class then appears as a pair meeting in v/k > 1 blocks.
  const std::uint32_t pivot = shared.front();
  bool cross_ok = true;
  for (auto i : a.classes) {
    if (i == pivot) continue;
    for (auto j : b.classes) {
      if (j == pivot) continue;
      if (classes[i].block_set.count_and(classes[j].block_set) > 1) {
        cross_ok = false;
        break;
      }
    }
    if (!cross_ok) break;
  }
  if (shared.size() > 1 && cross_ok && classes[shared[1]].blocks.size() > 1)
    throw std::logic_error("two shared classes passed the cross-intersection test");
  return shared.size() == 1 && cross_ok;
}

BitGraph compatibility_graph(const std::vector<Resolution>& res, const std::vector<ParallelClass>& classes) {
  return graph_from_relation(std::span<const Resolution>(res), [&](const Resolution& a, const Resolution& b) {
    return compatible(a, b, classes);
  });
}

std::uint32_t compatible_set_bound(const DesignParams& params) {
  if (!params.s) throw ParameterError("design is not of the form 2-((sk-s+1)k, k, 1)");
  const std::uint32_t s = *params.s, k = params.k;
  return (s * k - k + 1) * s;
}

std::vector<CompatibleSet> max_compatible_sets(const Design& design, const std::vector<ParallelClass>& classes,
                                               const std::vector<Resolution>& res, SearchOptions opt) {
  const std::uint32_t bound = compatible_set_bound(design.params());
  auto cliques = enumerate_cliques(compatibility_graph(res, classes), bound, opt);
  std::vector<CompatibleSet> out;
  out.reserve(cliques.size());
  for (auto& c : cliques) out.push_back({std::move(c)});
  return out;
}

Embedding embed(const Design& design, const CompatibleSet& cset, const std::vector<Resolution>& res,
                const std::vector<ParallelClass>& classes) {
  const auto& p = design.params();
  if (!p.s || !p.q) throw ParameterError("design is not of the form 2-((sk-s+1)k, k, 1)");
  if (*p.s < 2) throw ParameterError("embed needs s > 1 (s = 1 is an affine plane with a single resolution)");
  const std::uint32_t bound = compatible_set_bound(p);
  if (cset.m() != bound)
    throw ParameterError("compatible set has " + std::to_string(cset.m()) + " resolutions, embed needs " +
                         std::to_string(bound));

  std::vector<std::uint32_t> used;
  for (auto ri : cset.resolutions) {
    if (ri >= res.size()) throw ParameterError("resolution index " + std::to_string(ri) + " out of range");
    used.insert(used.end(), res[ri].classes.begin(), res[ri].classes.end());
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());

  const std::uint32_t q = *p.q;
  const std::uint64_t m = cset.m();
  const std::uint64_t expected_classes = m * p.r - m * (m - 1) / 2;
  if (used.size() != expected_classes || p.v + used.size() != q * q + q + 1) {
    ValidationReport rep;
    rep.add(ViolationKind::PointCount, {},
            std::to_string(used.size()) + " distinct classes, expected m*r - C(m,2) = " +
                std::to_string(expected_classes));
    throw ValidationError("compatible set does not induce a plane: " + rep.summary(), rep);
  }

  std::vector<std::vector<std::uint32_t>> lines(design.blocks().begin(), design.blocks().end());
  std::vector<std::uint32_t> class_point(classes.size(), UINT32_MAX);
  for (std::uint32_t i = 0; i < used.size(); ++i) {
    const std::uint32_t point = p.v + i;
    class_point[used[i]] = point;
    for (auto b : classes[used[i]].blocks) lines[b].push_back(point);
  }
  for (auto ri : cset.resolutions) {
    std::vector<std::uint32_t> line;
    for (auto ci : res[ri].classes) line.push_back(class_point[ci]);
    lines.push_back(std::move(line));
  }

  ProjectivePlane plane(q, std::move(lines), "embedded");
  auto rep = validate_plane(plane);
  if (!rep.ok()) throw ValidationError("compatible set does not induce a plane: " + rep.summary(), rep);

  Embedding e{std::move(plane), {}, std::move(used)};
  e.arc_points.resize(p.v);
  for (std::uint32_t i = 0; i < p.v; ++i) e.arc_points[i] = i;
  return e;
}

}  // namespace arcres
