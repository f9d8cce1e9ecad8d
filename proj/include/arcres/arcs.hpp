#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "arcres/design.hpp"
#include "arcres/errors.hpp"
#include "arcres/geometry.hpp"

namespace arcres {

/// Maximal (m,k)-arc: a point set meeting every line in 0 or k points.
/// Always validated on construction through the free functions below.
struct Arc {
  std::shared_ptr<const ProjectivePlane> plane;
  std::vector<std::uint32_t> points;  // sorted plane indices
  std::uint32_t k = 0;

  std::uint32_t m() const { return static_cast<std::uint32_t>(points.size()); }
  /// q / k; only meaningful for a valid arc with 1 <= k <= q.
  std::uint32_t s() const { return plane->order() / k; }
};

/// Every line meeting `points` in a number outside {0, k} is reported; when
/// k divides the order the cardinality (sk - s + 1)k is checked too.
ValidationReport validate_maximal_arc(const ProjectivePlane& plane, std::span<const std::uint32_t> points,
                                      std::uint32_t k);

/// Validates and wraps. Throws ValidationError.
Arc make_arc(std::shared_ptr<const ProjectivePlane> plane, std::vector<std::uint32_t> points, std::uint32_t k);

/// Conic y^2 = xz plus its nucleus (0,1,0): the q+2 points
/// {(1,c,c^2)} u {(0,1,0), (0,0,1)}. Needs a plane from build_pg2 over GF(2^t).
Arc regular_hyperoval(std::shared_ptr<const ProjectivePlane> plane);

/// Arc file: whitespace-separated point indices, '#' comments. Index base is
/// auto-detected like plane files unless given.
Arc load_arc(std::istream& in, std::shared_ptr<const ProjectivePlane> plane, std::uint32_t k,
             std::optional<std::uint32_t> index_base = std::nullopt);
void write_arc(std::ostream& out, const Arc& arc);

/// The lines disjoint from `arc`, as a maximal ((sk-k+1)s, s)-arc of the dual plane.
Arc dual_arc(const Arc& arc);

/// Dual arc for a caller-supplied dual plane (must be dual_plane(*arc.plane)).
Arc dual_arc(const Arc& arc, std::shared_ptr<const ProjectivePlane> dual);

/// Nonempty line intersections as blocks of a 2-(m, k, 1) design. Design
/// point i is the i-th arc point in ascending plane order; blocks follow
/// plane line order.
Design extract_design(const Arc& arc);

}  // namespace arcres
