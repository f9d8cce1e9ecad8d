#include "arcres/geometry.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace arcres {

ProjectivePlane::ProjectivePlane(std::uint32_t order, std::vector<std::vector<std::uint32_t>> lines, std::string label)
    : order_(order), lines_(std::move(lines)), label_(std::move(label)) {
  if (order < 2) throw ParameterError("plane order must be at least 2, got " + std::to_string(order));
  num_points_ = order * order + order + 1;
  point_lines_.resize(num_points_);
  line_bits_.reserve(lines_.size());
  for (std::uint32_t li = 0; li < lines_.size(); ++li) {
    auto& l = lines_[li];
    std::sort(l.begin(), l.end());
    BitVec b(num_points_);
    for (auto p : l) {
      if (p >= num_points_)
        throw ParameterError("line " + std::to_string(li) + " has point " + std::to_string(p) +
                             " outside [0, " + std::to_string(num_points_) + ")");
      if (!b.test(p)) point_lines_[p].push_back(li);
      b.set(p);
    }
    line_bits_.push_back(std::move(b));
  }
}

ProjectivePlane build_pg2(std::shared_ptr<const Field> field) {
  const std::uint32_t q = field->order();
  if (q < 2) throw ParameterError("field order must be at least 2");

  // Normalized triples in lexicographic order.
  std::vector<Coords> triples;
  for (std::uint32_t a = 0; a <= 1; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      for (std::uint32_t c = 0; c < q; ++c) {
        if (a == 0 && b > 1) continue;
        if (a == 0 && b == 0 && c != 1) continue;
        triples.push_back({FieldElement{a}, FieldElement{b}, FieldElement{c}});
      }

  const Field& f = *field;
  std::vector<std::vector<std::uint32_t>> lines;
  lines.reserve(triples.size());
  for (const auto& fn : triples) {
    std::vector<std::uint32_t> pts;
    for (std::uint32_t pi = 0; pi < triples.size(); ++pi) {
      const auto& p = triples[pi];
      auto dot = f.add(f.add(f.mul(fn[0], p[0]), f.mul(fn[1], p[1])), f.mul(fn[2], p[2]));
      if (dot.value == 0) pts.push_back(pi);
    }
    lines.push_back(std::move(pts));
  }

  ProjectivePlane plane(q, std::move(lines), "PG(2," + std::to_string(q) + ")");
  plane.set_coordinates({field, triples, triples});
  auto report = validate_plane(plane);
  if (!report.ok()) throw ValidationError("PG(2,q) construction failed: " + report.summary(), report);
  return plane;
}

ValidationReport validate_plane(const ProjectivePlane& plane) {
  ValidationReport r;
  const std::uint32_t n = plane.order();
  const std::uint32_t np = plane.num_points();

  if (plane.num_lines() != np)
    r.add(ViolationKind::LineCount, {},
          "expected " + std::to_string(np) + " lines, found " + std::to_string(plane.num_lines()));

  for (std::uint32_t li = 0; li < plane.num_lines(); ++li) {
    const auto& l = plane.line(li);
    if (std::adjacent_find(l.begin(), l.end()) != l.end())
      r.add(ViolationKind::DuplicatePoint, {li}, "line " + std::to_string(li) + " repeats a point");
    if (l.size() != n + 1)
      r.add(ViolationKind::LineSize, {li},
            "line " + std::to_string(li) + " has " + std::to_string(l.size()) + " points, expected " +
                std::to_string(n + 1));
  }
  for (std::uint32_t p = 0; p < np; ++p) {
    if (plane.lines_through(p).size() != n + 1)
      r.add(ViolationKind::PointDegree, {p},
            "point " + std::to_string(p) + " lies on " + std::to_string(plane.lines_through(p).size()) +
                " lines, expected " + std::to_string(n + 1));
  }

  // Exact pair coverage, counter per unordered pair (i < j), row-major triangle.
  std::vector<std::uint16_t> cover(static_cast<std::size_t>(np) * (np - 1) / 2, 0);
  auto slot = [np](std::size_t i, std::size_t j) { return i * (2 * np - i - 1) / 2 + (j - i - 1); };
  for (const auto& l : plane.lines()) {
    for (std::size_t a = 0; a < l.size(); ++a)
      for (std::size_t b = a + 1; b < l.size(); ++b)
        if (l[a] != l[b]) {
          auto& c = cover[slot(l[a], l[b])];
          if (c < 0xFFFF) ++c;
        }
  }
  for (std::uint32_t i = 0; i < np; ++i)
    for (std::uint32_t j = i + 1; j < np; ++j) {
      auto c = cover[slot(i, j)];
      if (c == 0)
        r.add(ViolationKind::PairUncovered, {i, j},
              "pair uncovered: points " + std::to_string(i) + ", " + std::to_string(j));
      else if (c > 1)
        r.add(ViolationKind::PairCoveredTwice, {i, j},
              "pair covered twice: points " + std::to_string(i) + ", " + std::to_string(j) + " on " +
                  std::to_string(c) + " lines");
    }

  // Dual axiom, checked directly rather than inferred from counting.
  for (std::uint32_t a = 0; a < plane.num_lines(); ++a)
    for (std::uint32_t b = a + 1; b < plane.num_lines(); ++b) {
      auto common = plane.line_bits(a).count_and(plane.line_bits(b));
      if (common == 0)
        r.add(ViolationKind::LinesDisjoint, {a, b},
              "lines " + std::to_string(a) + ", " + std::to_string(b) + " are disjoint");
      else if (common > 1)
        r.add(ViolationKind::LinesMeetTwice, {a, b},
              "lines " + std::to_string(a) + ", " + std::to_string(b) + " meet in " + std::to_string(common) +
                  " points");
    }
  return r;
}

std::vector<IndexRow> read_index_rows(std::istream& in) {
  std::vector<IndexRow> rows;
  std::string text;
  std::size_t lineno = 0;
  while (std::getline(in, text)) {
    ++lineno;
    if (auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
    std::istringstream ss(text);
    IndexRow row{lineno, {}};
    std::string tok;
    while (ss >> tok) {
      std::uint64_t v = 0;
      std::size_t used = 0;
      try {
        if (tok[0] == '-' || tok[0] == '+') throw std::invalid_argument(tok);
        v = std::stoull(tok, &used, 10);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size())
        throw ParseError("row " + std::to_string(lineno) + ": '" + tok + "' is not a non-negative integer");
      row.values.push_back(v);
    }
    if (!row.values.empty()) rows.push_back(std::move(row));
  }
  if (in.bad()) throw ParseError("read error");
  return rows;
}

std::uint32_t detect_index_base(std::uint64_t min_index, std::uint64_t max_index, std::uint64_t count) {
  if (min_index == 0 && max_index >= count)
    throw ParseError("index " + std::to_string(max_index) + " out of range for 0-based indexing of " +
                     std::to_string(count) + " points");
  if (min_index == 0) return 0;
  if (max_index == count) return 1;
  if (max_index > count)
    throw ParseError("index " + std::to_string(max_index) + " out of range for " + std::to_string(count) +
                     " points");
  throw ParseError("ambiguous index base: neither 0 nor " + std::to_string(count) +
                   " occurs; pass the base explicitly");
}

ProjectivePlane load_plane(std::istream& in, std::uint32_t expected_order, std::string label,
                           std::optional<std::uint32_t> index_base) {
  if (expected_order < 2) throw ParameterError("plane order must be at least 2");
  const std::uint64_t n = expected_order;
  const std::uint64_t np = n * n + n + 1;
  auto rows = read_index_rows(in);
  if (rows.size() != np)
    throw ParseError("expected " + std::to_string(np) + " rows, found " + std::to_string(rows.size()));

  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (const auto& row : rows) {
    if (row.values.size() != n + 1)
      throw ParseError("row " + std::to_string(row.source_line) + ": expected " + std::to_string(n + 1) +
                       " indices, found " + std::to_string(row.values.size()));
    for (auto v : row.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const std::uint32_t base = index_base ? *index_base : detect_index_base(lo, hi, np);

  std::vector<std::vector<std::uint32_t>> lines;
  lines.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<std::uint32_t> l;
    for (auto v : row.values) {
      if (v < base || v - base >= np)
        throw ParseError("row " + std::to_string(row.source_line) + ": index " + std::to_string(v) + " out of range");
      l.push_back(static_cast<std::uint32_t>(v - base));
    }
    std::sort(l.begin(), l.end());
    if (auto d = std::adjacent_find(l.begin(), l.end()); d != l.end())
      throw ParseError("row " + std::to_string(row.source_line) + ": duplicate index " + std::to_string(*d + base));
    lines.push_back(std::move(l));
  }

  ProjectivePlane plane(expected_order, std::move(lines), std::move(label));
  auto report = validate_plane(plane);
  if (!report.ok()) {
    // Point at the source rows of the first pair covered twice, if any.
    std::string where;
    for (const auto& v : report.violations()) {
      if (v.kind != ViolationKind::PairCoveredTwice) continue;
      for (std::uint32_t li = 0; li < plane.num_lines(); ++li)
        if (plane.incident(v.indices[0], li) && plane.incident(v.indices[1], li))
          where += (where.empty() ? " (rows " : ", ") + std::to_string(rows[li].source_line);
      where += ")";
      break;
    }
    throw ValidationError("plane validation failed" + where + ": " + report.summary(), report);
  }
  return plane;
}

void write_plane(std::ostream& out, const ProjectivePlane& plane) {
  for (const auto& l : plane.lines()) {
    for (std::size_t i = 0; i < l.size(); ++i) out << (i ? " " : "") << l[i];
    out << '\n';
  }
}

ProjectivePlane dual_plane(const ProjectivePlane& plane) {
  std::vector<std::vector<std::uint32_t>> lines(plane.num_points());
  for (std::uint32_t p = 0; p < plane.num_points(); ++p) lines[p] = plane.lines_through(p);
  std::string label = plane.label().empty() ? std::string{} : plane.label() + ".d";
  ProjectivePlane dual(plane.order(), std::move(lines), std::move(label));
  if (plane.coordinates()) {
    const auto& c = *plane.coordinates();
    dual.set_coordinates({c.field, c.lines, c.points});
  }
  auto report = validate_plane(dual);
  if (!report.ok()) throw ValidationError("dual is not a plane: " + report.summary(), report);
  return dual;
}

}  // namespace arcres
