#include "arcres/errors.hpp"

#include <algorithm>

namespace arcres {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::PointCount: return "point count";
    case ViolationKind::LineCount: return "line count";
    case ViolationKind::LineSize: return "line size";
    case ViolationKind::PointDegree: return "point degree";
    case ViolationKind::IndexOutOfRange: return "index out of range";
    case ViolationKind::DuplicatePoint: return "duplicate point";
    case ViolationKind::PairCoveredTwice: return "pair covered twice";
    case ViolationKind::PairUncovered: return "pair uncovered";
    case ViolationKind::LinesMeetTwice: return "lines meet twice";
    case ViolationKind::LinesDisjoint: return "lines disjoint";
    case ViolationKind::ArcLineIntersection: return "arc line intersection";
    case ViolationKind::ArcCardinality: return "arc cardinality";
    case ViolationKind::BlockCount: return "block count";
    case ViolationKind::BlockSize: return "block size";
    case ViolationKind::Replication: return "replication";
  }
  return "unknown";
}

std::size_t ValidationReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(violations_.begin(), violations_.end(), [&](const Violation& v) { return v.kind == kind; }));
}

std::string ValidationReport::summary(std::size_t max_items) const {
  if (ok()) return "valid";
  std::string out;
  std::size_t n = std::min(max_items, violations_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += "; ";
    out += violations_[i].message;
  }
  if (violations_.size() > n) out += "; ... (" + std::to_string(violations_.size()) + " violations)";
  return out;
}

}  // namespace arcres
