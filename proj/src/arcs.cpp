#include "arcres/arcs.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <regex>
#include <sstream>

namespace arcres {

ValidationReport validate_maximal_arc(const ProjectivePlane& plane, std::span<const std::uint32_t> points,
                                      std::uint32_t k) {
  ValidationReport rep;
  BitVec in(plane.num_points());
  for (auto p : points) {
    if (p >= plane.num_points()) {
      rep.add(ViolationKind::IndexOutOfRange, {p}, "point " + std::to_string(p) + " is not a plane point");
      continue;
    }
    if (in.test(p)) rep.add(ViolationKind::DuplicatePoint, {p}, "duplicate point " + std::to_string(p));
    in.set(p);
  }
  const std::uint32_t q = plane.order();
  if (k >= 1 && k <= q && q % k == 0) {
    const std::uint32_t s = q / k;
    const std::uint32_t expected = (s * k - s + 1) * k;
    if (in.count() != expected)
      rep.add(ViolationKind::ArcCardinality, {},
              "wrong cardinality: (sk-s+1)k = " + std::to_string(expected) + " expected for k=" + std::to_string(k) +
                  ", q=" + std::to_string(q) + ", found " + std::to_string(in.count()));
  }
  for (std::uint32_t li = 0; li < plane.num_lines(); ++li) {
    const auto meet = static_cast<std::uint32_t>(plane.line_bits(li).count_and(in));
    if (meet != 0 && meet != k)
      rep.add(ViolationKind::ArcLineIntersection, {li},
              "line " + std::to_string(li) + " meets the arc in " + std::to_string(meet) + " points, expected 0 or " +
                  std::to_string(k));
  }
  return rep;
}

Arc make_arc(std::shared_ptr<const ProjectivePlane> plane, std::vector<std::uint32_t> points, std::uint32_t k) {
  if (k == 0) throw ParameterError("arc degree k must be positive");
  auto rep = validate_maximal_arc(*plane, points, k);
  if (!rep.ok()) throw ValidationError("not a maximal arc: " + rep.summary(), rep);
  std::sort(points.begin(), points.end());
  return Arc{std::move(plane), std::move(points), k};
}

Arc regular_hyperoval(std::shared_ptr<const ProjectivePlane> plane) {
  const auto& coords = plane->coordinates();
  if (!coords) throw ParameterError("coordinates required: regular_hyperoval needs a plane built by build_pg2");
  const Field& f = *coords->field;
  if (f.order() != plane->order()) throw ParameterError("coordinates required: field does not match plane order");

  std::map<Coords, std::uint32_t> index;
  for (std::uint32_t i = 0; i < coords->points.size(); ++i) index.emplace(coords->points[i], i);

  std::vector<std::uint32_t> pts;
  for (std::uint32_t c = 0; c < f.order(); ++c) {
    FieldElement e{c};
    pts.push_back(index.at({f.one(), e, f.sqr(e)}));
  }
  pts.push_back(index.at({f.zero(), f.one(), f.zero()}));  // nucleus
  pts.push_back(index.at({f.zero(), f.zero(), f.one()}));
  return make_arc(std::move(plane), std::move(pts), 2);
}

Arc load_arc(std::istream& in, std::shared_ptr<const ProjectivePlane> plane, std::uint32_t k,
             std::optional<std::uint32_t> index_base) {
  if (k == 0) throw ParameterError("arc degree k must be positive");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  // A "# index base N" comment stands in for an explicit base.
  if (!index_base) {
    static const std::regex declared(R"(#[^\n]*\bindex base ([01])\b)");
    if (std::smatch m; std::regex_search(text, m, declared)) index_base = static_cast<std::uint32_t>(m[1].str()[0] - '0');
  }
  std::istringstream body(text);
  auto rows = read_index_rows(body);
  std::vector<std::uint64_t> raw;
  for (const auto& row : rows) raw.insert(raw.end(), row.values.begin(), row.values.end());
  if (raw.empty()) throw ParseError("arc file lists no points");

  const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  const std::uint32_t base = index_base ? *index_base : detect_index_base(*lo, *hi, plane->num_points());

  std::vector<std::uint32_t> pts;
  for (const auto& row : rows)
    for (auto v : row.values) {
      if (v < base || v - base >= plane->num_points())
        throw ParseError("row " + std::to_string(row.source_line) + ": index " + std::to_string(v) + " out of range");
      pts.push_back(static_cast<std::uint32_t>(v - base));
    }
  {
    auto sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (auto d = std::adjacent_find(sorted.begin(), sorted.end()); d != sorted.end())
      throw ParseError("duplicate point " + std::to_string(*d + base));
  }
  const std::uint32_t q = plane->order();
  if (k <= q && q % k == 0) {
    const std::uint32_t s = q / k;
    const std::uint32_t expected = (s * k - s + 1) * k;
    if (pts.size() != expected)
      throw ParseError("wrong cardinality: (sk-s+1)k = " + std::to_string(expected) + " expected for k=" +
                       std::to_string(k) + ", q=" + std::to_string(q) + ", found " + std::to_string(pts.size()));
  }
  return make_arc(std::move(plane), std::move(pts), k);
}

void write_arc(std::ostream& out, const Arc& arc) {
  out << "# maximal (" << arc.m() << "," << arc.k << ")-arc, index base 0\n";
  for (std::size_t i = 0; i < arc.points.size(); ++i) out << (i ? " " : "") << arc.points[i];
  out << '\n';
}

Arc dual_arc(const Arc& arc) { return dual_arc(arc, std::make_shared<const ProjectivePlane>(dual_plane(*arc.plane))); }

Arc dual_arc(const Arc& arc, std::shared_ptr<const ProjectivePlane> dual) {
  const ProjectivePlane& plane = *arc.plane;
  const std::uint32_t q = plane.order();
  if (arc.k == 0 || arc.k > q || q % arc.k != 0)
    throw ParameterError("s undefined: k=" + std::to_string(arc.k) + " does not divide q=" + std::to_string(q));
  if (dual->order() != q || dual->num_points() != plane.num_lines())
    throw ParameterError("dual plane does not match the arc's plane");
  const std::uint32_t s = q / arc.k;

  BitVec in(plane.num_points());
  for (auto p : arc.points) in.set(p);
  std::vector<std::uint32_t> external;
  std::uint32_t secant = 0;
  for (std::uint32_t li = 0; li < plane.num_lines(); ++li) {
    if (plane.line_bits(li).intersects(in))
      ++secant;
    else
      external.push_back(li);
  }
  // Line counts forced by the arc property.
  const std::uint32_t expected_external = (s * arc.k - arc.k + 1) * s;
  if (external.size() != expected_external || std::uint64_t{secant} * arc.k != std::uint64_t{arc.m()} * (q + 1))
    throw ParameterError("arc line counts inconsistent: " + std::to_string(external.size()) + " external lines, " +
                         std::to_string(expected_external) + " expected");
  return make_arc(std::move(dual), std::move(external), s);
}

Design extract_design(const Arc& arc) {
  if (arc.k <= 1) throw ParameterError("degenerate: no design (k = " + std::to_string(arc.k) + ")");
  const ProjectivePlane& plane = *arc.plane;
  std::vector<std::int64_t> local(plane.num_points(), -1);
  for (std::uint32_t i = 0; i < arc.points.size(); ++i) local[arc.points[i]] = i;

  std::vector<std::vector<std::uint32_t>> blocks;
  std::vector<std::uint32_t> block_lines;
  for (std::uint32_t li = 0; li < plane.num_lines(); ++li) {
    std::vector<std::uint32_t> blk;
    for (auto p : plane.line(li))
      if (local[p] >= 0) blk.push_back(static_cast<std::uint32_t>(local[p]));
    if (!blk.empty()) {
      blocks.push_back(std::move(blk));
      block_lines.push_back(li);
    }
  }
  auto params = derive_params(arc.m(), arc.k, 1);
  Design d(params, std::move(blocks), DesignProvenance{arc.plane, arc.points, std::move(block_lines)});
  auto rep = validate_design(d);
  if (!rep.ok()) throw ValidationError("extracted design invalid: " + rep.summary(), rep);
  return d;
}

}  // namespace arcres
