#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace abscompat {

/// A named intermediate matrix kept for inspection (|a|, |a - b|, ...).
struct Witness {
  std::string name;
  Eigen::MatrixXcd matrix;
};

/// Outcome of one relation test. verdict == (defect <= tolerance_used).
struct RelationReport {
  std::string relation_name;
  bool verdict = false;
  double defect = 0.0;
  double tolerance_used = 0.0;
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;

  static RelationReport make(std::string name, double defect, double tol, std::vector<Witness> witnesses = {});

  const Witness* find_witness(const std::string& name) const;
};

enum class ClauseStatus { Consistent, Indeterminate, Inconsistent };

const char* to_string(ClauseStatus status);

/// One side-by-side evaluation of an "if and only if" (or n-way equivalence).
struct ClauseResult {
  std::string clause;
  std::vector<RelationReport> sides;
  ClauseStatus status = ClauseStatus::Consistent;
};

struct ConsistencyReport {
  std::string name;
  std::vector<ClauseResult> clauses;

  /// No clause is Inconsistent.
  bool consistent() const;
  std::size_t indeterminate_count() const;
  const ClauseResult* find(const std::string& clause) const;
};

/// Compares verdicts of equivalent conditions. Agreement is Consistent; a
/// disagreement where every defect lies within 10*tol of the threshold is
/// Indeterminate; anything else is Inconsistent.
ClauseStatus classify_clause(const std::vector<RelationReport>& sides, double tol);

inline constexpr double kIndeterminateBand = 10.0;

}  // namespace abscompat
