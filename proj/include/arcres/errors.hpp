#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arcres {

enum class ViolationKind {
  PointCount,
  LineCount,
  LineSize,
  PointDegree,
  IndexOutOfRange,
  DuplicatePoint,
  PairCoveredTwice,
  PairUncovered,
  LinesMeetTwice,
  LinesDisjoint,
  ArcLineIntersection,
  ArcCardinality,
  BlockCount,
  BlockSize,
  Replication,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<std::uint32_t> indices;  // points, lines, or blocks involved
  std::string message;
};

/// Structured list of axiom violations. Empty means valid.
class ValidationReport {
 public:
  void add(ViolationKind kind, std::vector<std::uint32_t> indices, std::string message) {
    violations_.push_back({kind, std::move(indices), std::move(message)});
  }
  bool ok() const { return violations_.empty(); }
  const std::vector<Violation>& violations() const { return violations_; }
  std::size_t count(ViolationKind kind) const;
  bool has(ViolationKind kind) const { return count(kind) > 0; }

  /// First few messages joined, for exception texts.
  std::string summary(std::size_t max_items = 5) const;

 private:
  std::vector<Violation> violations_;
};

/// Malformed input text (row numbers are 1-based source lines).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inadmissible parameters or preconditions.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A structure failed axiom validation.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, ValidationReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace arcres
