#include "arcres/design.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "arcres/geometry.hpp"

namespace arcres {

DesignParams derive_params(std::uint32_t v, std::uint32_t k, std::uint32_t lambda) {
  if (k < 2 || v <= k || lambda < 1)
    throw ParameterError("inadmissible parameters: need v > k >= 2 and lambda >= 1, got (" + std::to_string(v) +
                         ", " + std::to_string(k) + ", " + std::to_string(lambda) + ")");
  const std::uint64_t rn = std::uint64_t{lambda} * (v - 1);
  if (rn % (k - 1) != 0)
    throw ParameterError("inadmissible parameters: r = " + std::to_string(rn) + "/" + std::to_string(k - 1) +
                         " is not an integer");
  const std::uint64_t r = rn / (k - 1);
  if ((std::uint64_t{v} * r) % k != 0)
    throw ParameterError("inadmissible parameters: b = " + std::to_string(std::uint64_t{v} * r) + "/" +
                         std::to_string(k) + " is not an integer");
  DesignParams p;
  p.v = v;
  p.k = k;
  p.lambda = lambda;
  p.r = static_cast<std::uint32_t>(r);
  p.b = static_cast<std::uint32_t>(std::uint64_t{v} * r / k);
  if (v % k == 0) {
    const std::uint32_t n = v / k;
    p.n = n;
    if ((n - 1) % (k - 1) == 0 && n > 1) {
      p.s = (n - 1) / (k - 1);
      p.q = *p.s * k;
    }
  }
  return p;
}

Design::Design(DesignParams params, std::vector<std::vector<std::uint32_t>> blocks,
               std::optional<DesignProvenance> provenance)
    : params_(params), blocks_(std::move(blocks)), provenance_(std::move(provenance)) {
  block_bits_.reserve(blocks_.size());
  for (std::uint32_t bi = 0; bi < blocks_.size(); ++bi) {
    auto& blk = blocks_[bi];
    std::sort(blk.begin(), blk.end());
    BitVec bits(params_.v);
    for (auto p : blk) {
      if (p >= params_.v)
        throw ParameterError("block " + std::to_string(bi) + " has point " + std::to_string(p) + " outside [0, " +
                             std::to_string(params_.v) + ")");
      bits.set(p);
    }
    block_bits_.push_back(std::move(bits));
  }
}

ValidationReport validate_design(const Design& design) {
  ValidationReport rep;
  const auto& p = design.params();
  const std::uint32_t v = p.v;
  if (design.num_blocks() != p.b)
    rep.add(ViolationKind::BlockCount, {},
            "expected " + std::to_string(p.b) + " blocks, found " + std::to_string(design.num_blocks()));

  std::vector<std::uint32_t> replication(v, 0);
  for (std::uint32_t bi = 0; bi < design.num_blocks(); ++bi) {
    const auto& blk = design.block(bi);
    if (std::adjacent_find(blk.begin(), blk.end()) != blk.end())
      rep.add(ViolationKind::DuplicatePoint, {bi}, "block " + std::to_string(bi) + " repeats a point");
    if (blk.size() != p.k)
      rep.add(ViolationKind::BlockSize, {bi},
              "block " + std::to_string(bi) + " has " + std::to_string(blk.size()) + " points, expected " +
                  std::to_string(p.k));
    for (auto x : blk) ++replication[x];
  }
  for (std::uint32_t x = 0; x < v; ++x)
    if (replication[x] != p.r)
      rep.add(ViolationKind::Replication, {x},
              "point " + std::to_string(x) + " lies in " + std::to_string(replication[x]) + " blocks, expected " +
                  std::to_string(p.r));

  std::vector<std::uint32_t> cover(static_cast<std::size_t>(v) * v, 0);
  for (const auto& blk : design.blocks())
    for (std::size_t a = 0; a < blk.size(); ++a)
      for (std::size_t b = a + 1; b < blk.size(); ++b)
        if (blk[a] != blk[b]) ++cover[static_cast<std::size_t>(blk[a]) * v + blk[b]];
  for (std::uint32_t i = 0; i < v; ++i)
    for (std::uint32_t j = i + 1; j < v; ++j) {
      auto c = cover[static_cast<std::size_t>(i) * v + j];
      if (c < p.lambda)
        rep.add(ViolationKind::PairUncovered, {i, j},
                "pair uncovered: points " + std::to_string(i) + ", " + std::to_string(j) + " in " +
                    std::to_string(c) + " blocks");
      else if (c > p.lambda)
        rep.add(ViolationKind::PairCoveredTwice, {i, j},
                "pair covered twice: points " + std::to_string(i) + ", " + std::to_string(j) + " in " +
                    std::to_string(c) + " blocks");
    }
  return rep;
}

Design load_design(std::istream& in) {
  auto rows = read_index_rows(in);
  if (rows.empty()) throw ParseError("design file is empty");
  if (rows[0].values.size() != 3)
    throw ParseError("row " + std::to_string(rows[0].source_line) + ": expected header 'v k lambda'");
  auto narrow = [&](std::uint64_t x, std::size_t line) {
    if (x > UINT32_MAX) throw ParseError("row " + std::to_string(line) + ": value too large");
    return static_cast<std::uint32_t>(x);
  };
  const auto params = derive_params(narrow(rows[0].values[0], rows[0].source_line),
                                    narrow(rows[0].values[1], rows[0].source_line),
                                    narrow(rows[0].values[2], rows[0].source_line));
  std::vector<std::vector<std::uint32_t>> blocks;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.values.size() != params.k)
      throw ParseError("row " + std::to_string(row.source_line) + ": expected " + std::to_string(params.k) +
                       " indices, found " + std::to_string(row.values.size()));
    std::vector<std::uint32_t> blk;
    for (auto x : row.values) {
      if (x >= params.v)
        throw ParseError("row " + std::to_string(row.source_line) + ": index " + std::to_string(x) + " out of range");
      blk.push_back(static_cast<std::uint32_t>(x));
    }
    blocks.push_back(std::move(blk));
  }
  if (blocks.size() != params.b)
    throw ParseError("expected " + std::to_string(params.b) + " blocks, found " + std::to_string(blocks.size()));
  Design d(params, std::move(blocks));
  auto rep = validate_design(d);
  if (!rep.ok()) throw ValidationError("design validation failed: " + rep.summary(), rep);
  return d;
}

void write_design(std::ostream& out, const Design& design) {
  const auto& p = design.params();
  out << p.v << ' ' << p.k << ' ' << p.lambda << '\n';
  for (const auto& blk : design.blocks()) {
    for (std::size_t i = 0; i < blk.size(); ++i) out << (i ? " " : "") << blk[i];
    out << '\n';
  }
}

std::size_t BitMatrix::col_weight(std::size_t c) const {
  std::size_t w = 0;
  for (std::size_t r = 0; r < rows_; ++r) w += get(r, c) ? 1 : 0;
  return w;
}

BitMatrix incidence_matrix(const Design& design) {
  BitMatrix m(design.num_blocks(), design.num_points());
  for (std::uint32_t i = 0; i < design.num_blocks(); ++i)
    for (auto x : design.block(i)) m.set(i, x);
  return m;
}

std::size_t rank2(const BitMatrix& m) {
  BitMatrix w = m;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < w.cols() && rank < w.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < w.rows() && !w.get(pivot, col)) ++pivot;
    if (pivot == w.rows()) continue;
    if (pivot != rank) {
      auto a = w.row(pivot), b = w.row(rank);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto prow = w.row(rank);
    for (std::size_t r = rank + 1; r < w.rows(); ++r) {
      if (!w.get(r, col)) continue;
      auto row = w.row(r);
      for (std::size_t i = 0; i < row.size(); ++i) row[i] ^= prow[i];
    }
    ++rank;
  }
  return rank;
}

ConjectureReport check_rank_conjecture(const Design& design, unsigned t) {
  const auto& p = design.params();
  if (t < 2 || t > 15)
    throw ParameterError("not a conjecture-shape design: t must be in [2, 15], got " + std::to_string(t));
  const std::uint64_t v = (std::uint64_t{1} << (2 * t - 1)) - (std::uint64_t{1} << (t - 1));
  const std::uint64_t k = std::uint64_t{1} << (t - 1);
  if (p.v != v || p.k != k || p.lambda != 1)
    throw ParameterError("not a conjecture-shape design: expected 2-(" + std::to_string(v) + "," + std::to_string(k) +
                         ",1) for t=" + std::to_string(t) + ", got 2-(" + std::to_string(p.v) + "," +
                         std::to_string(p.k) + "," + std::to_string(p.lambda) + ")");
  ConjectureReport rep;
  rep.t = t;
  rep.rank = rank2(incidence_matrix(design));
  std::size_t p3 = 1, p2 = 1;
  for (unsigned i = 0; i < t; ++i) {
    p3 *= 3;
    p2 *= 2;
  }
  rep.bound = p3 - p2;
  return rep;
}

}  // namespace arcres
