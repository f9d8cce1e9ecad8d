#pragma once

// Shared test helpers: small planes, the K6 design, and brute-force oracles
// that never call into the clique engine.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "arcres/arcs.hpp"
#include "arcres/design.hpp"
#include "arcres/geometry.hpp"
#include "arcres/search.hpp"

namespace fixtures {

using arcres::Design;
using arcres::ProjectivePlane;
using Sets = std::vector<std::vector<std::uint32_t>>;

inline std::shared_ptr<const ProjectivePlane> pg(unsigned t) {
  auto f = std::make_shared<const arcres::Field>(arcres::Field::with_default_modulus(t));
  return std::make_shared<const ProjectivePlane>(arcres::build_pg2(f));
}

inline std::string to_text(const ProjectivePlane& p) {
  std::ostringstream os;
  arcres::write_plane(os, p);
  return os.str();
}

/// All 15 edges of K6 as a 2-(6,2,1) design, lexicographic.
inline Design k6() {
  Sets blocks;
  for (std::uint32_t a = 0; a < 6; ++a)
    for (std::uint32_t b = a + 1; b < 6; ++b) blocks.push_back({a, b});
  return Design(arcres::derive_params(6, 2, 1), blocks);
}

/// Calls f(subset) for every size-k subset of {0..n-1}, lexicographic.
template <class F>
void for_each_subset(std::uint32_t n, std::uint32_t k, F&& f) {
  if (k > n) return;
  std::vector<std::uint32_t> idx(k);
  for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && idx[i] == n - k + static_cast<std::uint32_t>(i)) --i;
    if (i < 0) return;
    ++idx[i];
    for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Naive subset-scan clique oracle.
inline Sets brute_cliques(const arcres::BitGraph& g, std::uint32_t size) {
  Sets out;
  for_each_subset(g.size(), size, [&](const std::vector<std::uint32_t>& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        if (!g.adjacent(s[i], s[j])) return;
    out.push_back(s);
  });
  return out;
}

/// Parallel classes by scanning all (v/k)-subsets of blocks.
inline Sets brute_classes(const Design& d) {
  const auto n = d.params().v / d.params().k;
  Sets out;
  for_each_subset(d.num_blocks(), n, [&](const std::vector<std::uint32_t>& s) {
    std::set<std::uint32_t> pts;
    for (auto b : s) pts.insert(d.block(b).begin(), d.block(b).end());
    if (pts.size() == d.params().v) out.push_back(s);
  });
  return out;
}

/// Resolutions by scanning all r-subsets of classes for a block partition.
inline Sets brute_resolutions(const Design& d, const Sets& classes) {
  Sets out;
  for_each_subset(static_cast<std::uint32_t>(classes.size()), d.params().r, [&](const std::vector<std::uint32_t>& s) {
    std::vector<int> seen(d.num_blocks(), 0);
    for (auto c : s)
      for (auto b : classes[c]) ++seen[b];
    if (std::all_of(seen.begin(), seen.end(), [](int x) { return x == 1; })) out.push_back(s);
  });
  return out;
}

/// Compatibility straight from the definition: some shared class P_i = Q_j
/// such that all other pairs (i' != i, j' != j) share at most one block,
/// and exactly one class shared overall.
inline bool brute_compatible(const std::vector<std::uint32_t>& r1, const std::vector<std::uint32_t>& r2,
                             const Sets& classes) {
  int shared = 0;
  for (auto a : r1)
    for (auto b : r2) shared += (a == b);
  if (shared != 1) return false;
  for (auto a : r1)
    for (auto b : r2) {
      if (a == b) continue;
      if (std::find(r2.begin(), r2.end(), a) != r2.end() || std::find(r1.begin(), r1.end(), b) != r1.end()) continue;
      std::size_t common = 0;
      for (auto x : classes[a]) common += std::count(classes[b].begin(), classes[b].end(), x);
      if (common > 1) return false;
    }
  return true;
}

/// Rank over GF(2) by counting kernel vectors: rank = cols - log2 |{x : Ax = 0}|.
inline std::size_t brute_rank2(const Sets& rows, std::uint32_t cols) {
  std::size_t kernel = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << cols); ++x) {
    bool zero = true;
    for (const auto& row : rows) {
      int parity = 0;
      for (auto c : row) parity ^= static_cast<int>((x >> c) & 1);
      if (parity) {
        zero = false;
        break;
      }
    }
    kernel += zero;
  }
  std::size_t log = 0;
  while ((std::size_t{1} << log) < kernel) ++log;
  return cols - log;
}

inline arcres::BitGraph random_graph(std::mt19937_64& rng, std::uint32_t n, double p) {
  arcres::BitGraph g(n);
  std::bernoulli_distribution edge(p);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      if (edge(rng)) g.add_edge(a, b);
  return g;
}

}  // namespace fixtures
