#pragma once

#include <cstdint>
#include <vector>

#include "arcres/bitvec.hpp"
#include "arcres/design.hpp"
#include "arcres/geometry.hpp"
#include "arcres/search.hpp"

namespace arcres {

/// v/k pairwise disjoint blocks covering every point once.
struct ParallelClass {
  std::vector<std::uint32_t> blocks;  // sorted block indices
  BitVec block_set;                   // same, as a bit vector over the design's blocks

  bool operator==(const ParallelClass& o) const { return blocks == o.blocks; }
};

/// r parallel classes partitioning the block set; indices into the class list.
struct Resolution {
  std::vector<std::uint32_t> classes;
  bool operator==(const Resolution&) const = default;
};

/// Pairwise compatible resolutions; indices into the resolution list.
struct CompatibleSet {
  std::vector<std::uint32_t> resolutions;
  std::uint32_t m() const { return static_cast<std::uint32_t>(resolutions.size()); }
  bool operator==(const CompatibleSet&) const = default;
};

/// Blocks adjacent iff disjoint.
BitGraph block_disjointness_graph(const Design& design);

/// All parallel classes, as (v/k)-cliques of the block-disjointness graph,
/// each re-checked to cover every point. Requires k | v.
std::vector<ParallelClass> parallel_classes(const Design& design, SearchOptions opt = {});

/// Classes adjacent iff they share no block.
BitGraph class_graph(const std::vector<ParallelClass>& classes);

/// All resolutions, as r-cliques of the class graph, each re-checked against
/// the raw blocks to partition the block set.
std::vector<Resolution> resolutions(const Design& design, const std::vector<ParallelClass>& classes,
                                    SearchOptions opt = {});

/// Exactly one shared class, and every other cross pair of classes (one
/// from each resolution) has at most one block in common.
bool compatible(const Resolution& a, const Resolution& b, const std::vector<ParallelClass>& classes);

BitGraph compatibility_graph(const std::vector<Resolution>& res, const std::vector<ParallelClass>& classes);

/// Largest possible compatible set size (sk - k + 1)s for the design's parameters.
std::uint32_t compatible_set_bound(const DesignParams& params);

/// All compatible sets of size compatible_set_bound(params).
std::vector<CompatibleSet> max_compatible_sets(const Design& design, const std::vector<ParallelClass>& classes,
                                               const std::vector<Resolution>& res, SearchOptions opt = {});

/// A plane of order sk reconstructed from a full compatible set. Points
/// 0..v-1 are the design points (the arc), followed by one point per
/// distinct class used by the set, in class-index order. Lines 0..b-1 are
/// the extended blocks in block order, then one line per resolution.
struct Embedding {
  ProjectivePlane plane;
  std::vector<std::uint32_t> arc_points;
  std::vector<std::uint32_t> class_of_point;  // class index for points v.., parallel to them
};

Embedding embed(const Design& design, const CompatibleSet& cset, const std::vector<Resolution>& res,
                const std::vector<ParallelClass>& classes);

}  // namespace arcres
