#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arcres/bitvec.hpp"
#include "arcres/errors.hpp"
#include "arcres/gf.hpp"

namespace arcres {

using Coords = std::array<FieldElement, 3>;

/// Homogeneous coordinates of a plane built over a field.
struct PlaneCoordinates {
  std::shared_ptr<const Field> field;
  std::vector<Coords> points;  // normalized: first nonzero coordinate is 1
  std::vector<Coords> lines;   // normalized functionals, line i = kernel of lines[i]
};

/// Incidence structure with the shape of a projective plane of order n.
///
/// Constructing one only checks that indices are in range; the axioms are
/// checked by validate_plane. Every plane returned by build_pg2, load_plane,
/// dual_plane and embed has passed validation.
class ProjectivePlane {
 public:
  ProjectivePlane(std::uint32_t order, std::vector<std::vector<std::uint32_t>> lines, std::string label = {});

  std::uint32_t order() const { return order_; }
  /// n^2 + n + 1 for the declared order.
  std::uint32_t num_points() const { return num_points_; }
  std::uint32_t num_lines() const { return static_cast<std::uint32_t>(lines_.size()); }

  /// Sorted point indices of each line.
  const std::vector<std::vector<std::uint32_t>>& lines() const { return lines_; }
  const std::vector<std::uint32_t>& line(std::uint32_t i) const { return lines_[i]; }
  /// Sorted line indices through each point.
  const std::vector<std::uint32_t>& lines_through(std::uint32_t p) const { return point_lines_[p]; }

  bool incident(std::uint32_t point, std::uint32_t line) const { return line_bits_[line].test(point); }
  const BitVec& line_bits(std::uint32_t line) const { return line_bits_[line]; }

  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  const std::optional<PlaneCoordinates>& coordinates() const { return coords_; }
  void set_coordinates(PlaneCoordinates c) { coords_ = std::move(c); }

  /// Same line sets in the same order (labels and coordinates ignored).
  bool same_incidence(const ProjectivePlane& o) const { return order_ == o.order_ && lines_ == o.lines_; }

 private:
  std::uint32_t order_;
  std::uint32_t num_points_;
  std::vector<std::vector<std::uint32_t>> lines_;
  std::vector<std::vector<std::uint32_t>> point_lines_;
  std::vector<BitVec> line_bits_;
  std::string label_;
  std::optional<PlaneCoordinates> coords_;
};

/// PG(2,q) over `field`. Points and lines are the normalized triples sorted
/// lexicographically by their integer-encoded coordinates:
/// (0,0,1), (0,1,0), (0,1,1), ..., (1,q-1,q-1).
ProjectivePlane build_pg2(std::shared_ptr<const Field> field);

/// Checks counts, line sizes, point degrees and exact pair coverage.
ValidationReport validate_plane(const ProjectivePlane& plane);

/// Parses the lines format (one row of n+1 indices per line, '#' comments)
/// and validates. Index base is auto-detected unless given. Throws
/// ParseError or ValidationError.
ProjectivePlane load_plane(std::istream& in, std::uint32_t expected_order, std::string label = {},
                           std::optional<std::uint32_t> index_base = std::nullopt);

/// Writes the lines format, 0-based.
void write_plane(std::ostream& out, const ProjectivePlane& plane);

/// Point i of the dual is line i; line j of the dual is the set of lines through point j.
ProjectivePlane dual_plane(const ProjectivePlane& plane);

/// Reads whitespace-separated non-negative integers, skipping '#' comments.
/// Each returned row carries its 1-based source line number.
struct IndexRow {
  std::size_t source_line;
  std::vector<std::uint64_t> values;
};
std::vector<IndexRow> read_index_rows(std::istream& in);

/// Decides whether indices are 0-based or 1-based: 0 present means 0-based,
/// `count` present means 1-based. Returns the offset to subtract.
std::uint32_t detect_index_base(std::uint64_t min_index, std::uint64_t max_index, std::uint64_t count);

}  // namespace arcres
