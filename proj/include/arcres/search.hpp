#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "arcres/bitvec.hpp"

namespace arcres {

/// Undirected simple graph with bit-packed adjacency rows.
class BitGraph {
 public:
  BitGraph() = default;
  explicit BitGraph(std::uint32_t n) : n_(n), stride_(bits::words_for(n)), adj_(std::size_t{n} * stride_, 0) {}

  std::uint32_t size() const { return n_; }
  std::size_t stride() const { return stride_; }

  /// Sets both directions; self-loops are ignored.
  void add_edge(std::uint32_t a, std::uint32_t b) {
    if (a == b) return;
    bits::set(row_mut(a), b);
    bits::set(row_mut(b), a);
  }
  bool adjacent(std::uint32_t a, std::uint32_t b) const { return bits::test(row(a), b); }
  std::span<const std::uint64_t> row(std::uint32_t v) const { return {adj_.data() + v * stride_, stride_}; }
  std::size_t degree(std::uint32_t v) const { return bits::count(row(v)); }
  std::size_t num_edges() const;

 private:
  std::span<std::uint64_t> row_mut(std::uint32_t v) { return {adj_.data() + v * stride_, stride_}; }

  std::uint32_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> adj_;
};

/// Vertex i ~ j (i != j) iff rel(items[i], items[j]). Only i < j is
/// evaluated; the relation is assumed symmetric.
template <class T, class Rel>
BitGraph graph_from_relation(std::span<const T> items, Rel&& rel) {
  BitGraph g(static_cast<std::uint32_t>(items.size()));
  for (std::uint32_t i = 0; i < items.size(); ++i)
    for (std::uint32_t j = i + 1; j < items.size(); ++j)
      if (rel(items[i], items[j])) g.add_edge(i, j);
  return g;
}

using Clique = std::vector<std::uint32_t>;

struct SearchOptions {
  /// Worker threads for the root-level branches; 0 picks hardware concurrency.
  unsigned jobs = 1;
};

/// Every clique with exactly `size` vertices, each sorted ascending, the
/// list sorted lexicographically. Output does not depend on `jobs`.
std::vector<Clique> enumerate_cliques(const BitGraph& g, std::uint32_t size, SearchOptions opt = {});

/// Number of cliques enumerate_cliques would return, without materializing them.
std::uint64_t count_cliques(const BitGraph& g, std::uint32_t size, SearchOptions opt = {});

/// DIMACS edge format ("p edge n m", then "e i j", 1-based).
void write_dimacs(std::ostream& out, const BitGraph& g);

}  // namespace arcres
