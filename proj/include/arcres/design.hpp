#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "arcres/bitvec.hpp"
#include "arcres/errors.hpp"

namespace arcres {

class ProjectivePlane;

/// Parameters of a 2-(v,k,lambda) design with everything derivable from them.
struct DesignParams {
  std::uint32_t v = 0;
  std::uint32_t k = 0;
  std::uint32_t lambda = 0;
  std::uint32_t r = 0;  // lambda (v-1)/(k-1)
  std::uint32_t b = 0;  // v r / k
  // Present when k | v and (k-1) | (n-1), i.e. v = (sk - s + 1) k.
  std::optional<std::uint32_t> n;
  std::optional<std::uint32_t> s;
  std::optional<std::uint32_t> q;

  bool operator==(const DesignParams&) const = default;
};

/// Throws ParameterError ("inadmissible parameters") if r or b is not integral.
DesignParams derive_params(std::uint32_t v, std::uint32_t k, std::uint32_t lambda);

/// Where a design came from: the plane, the arc's plane indices (design
/// point i is plane point arc_points[i]), and the plane line behind each block.
struct DesignProvenance {
  std::shared_ptr<const ProjectivePlane> plane;
  std::vector<std::uint32_t> arc_points;
  std::vector<std::uint32_t> block_lines;
};

class Design {
 public:
  /// Blocks are sorted internally. Only index ranges are checked here; use
  /// validate_design for the axioms.
  Design(DesignParams params, std::vector<std::vector<std::uint32_t>> blocks,
         std::optional<DesignProvenance> provenance = std::nullopt);

  const DesignParams& params() const { return params_; }
  std::uint32_t num_points() const { return params_.v; }
  std::uint32_t num_blocks() const { return static_cast<std::uint32_t>(blocks_.size()); }
  const std::vector<std::vector<std::uint32_t>>& blocks() const { return blocks_; }
  const std::vector<std::uint32_t>& block(std::uint32_t i) const { return blocks_[i]; }
  const BitVec& block_bits(std::uint32_t i) const { return block_bits_[i]; }
  const std::optional<DesignProvenance>& provenance() const { return provenance_; }

 private:
  DesignParams params_;
  std::vector<std::vector<std::uint32_t>> blocks_;
  std::vector<BitVec> block_bits_;
  std::optional<DesignProvenance> provenance_;
};

/// Exact pair-coverage, replication, block size and block count checks.
ValidationReport validate_design(const Design& design);

/// Design file: first row "v k lambda", then b rows of k indices (0-based).
Design load_design(std::istream& in);
void write_design(std::ostream& out, const Design& design);

/// Row-major bit-packed 0/1 matrix.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(bits::words_for(cols)), data_(rows * stride_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return bits::test(row(r), c); }
  void set(std::size_t r, std::size_t c) { bits::set(row(r), c); }
  std::span<const std::uint64_t> row(std::size_t r) const { return {data_.data() + r * stride_, stride_}; }
  std::span<std::uint64_t> row(std::size_t r) { return {data_.data() + r * stride_, stride_}; }
  std::size_t row_weight(std::size_t r) const { return bits::count(row(r)); }
  std::size_t col_weight(std::size_t c) const;

 private:
  std::size_t rows_, cols_, stride_;
  std::vector<std::uint64_t> data_;
};

/// b x v matrix with a_ij = 1 iff block i contains point j.
BitMatrix incidence_matrix(const Design& design);

/// Rank over GF(2) by row elimination on a private copy.
std::size_t rank2(const BitMatrix& m);

struct ConjectureReport {
  unsigned t = 0;
  std::size_t rank = 0;
  std::size_t bound = 0;  // 3^t - 2^t
  bool holds() const { return rank >= bound; }
  bool equality() const { return rank == bound; }
};

/// The 2-rank lower bound 3^t - 2^t for 2-(2^(2t-1) - 2^(t-1), 2^(t-1), 1)
/// designs. Throws ParameterError ("not a conjecture-shape design") on a
/// parameter mismatch.
ConjectureReport check_rank_conjecture(const Design& design, unsigned t);

}  // namespace arcres
