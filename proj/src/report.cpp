#include "abscompat/report.hpp"

#include <algorithm>
#include <cmath>

namespace abscompat {

RelationReport RelationReport::make(std::string name, double defect, double tol, std::vector<Witness> witnesses) {
  RelationReport r;
  r.relation_name = std::move(name);
  r.defect = defect;
  r.tolerance_used = tol;
  r.verdict = defect <= tol;
  r.witnesses = std::move(witnesses);
  return r;
}

const Witness* RelationReport::find_witness(const std::string& name) const {
  auto it = std::find_if(witnesses.begin(), witnesses.end(), [&](const Witness& w) { return w.name == name; });
  return it == witnesses.end() ? nullptr : &*it;
}

const char* to_string(ClauseStatus status) {
  switch (status) {
    case ClauseStatus::Consistent: return "consistent";
    case ClauseStatus::Indeterminate: return "indeterminate";
    case ClauseStatus::Inconsistent: return "inconsistent";
  }
  return "unknown";
}

bool ConsistencyReport::consistent() const {
  return std::none_of(clauses.begin(), clauses.end(),
                      [](const ClauseResult& c) { return c.status == ClauseStatus::Inconsistent; });
}

std::size_t ConsistencyReport::indeterminate_count() const {
  return static_cast<std::size_t>(std::count_if(clauses.begin(), clauses.end(), [](const ClauseResult& c) {
    return c.status == ClauseStatus::Indeterminate;
  }));
}

const ClauseResult* ConsistencyReport::find(const std::string& clause) const {
  auto it = std::find_if(clauses.begin(), clauses.end(), [&](const ClauseResult& c) { return c.clause == clause; });
  return it == clauses.end() ? nullptr : &*it;
}

ClauseStatus classify_clause(const std::vector<RelationReport>& sides, double tol) {
  if (sides.empty()) return ClauseStatus::Consistent;
  const bool first = sides.front().verdict;
  const bool agree = std::all_of(sides.begin(), sides.end(), [&](const RelationReport& r) { return r.verdict == first; });
  if (agree) return ClauseStatus::Consistent;
  const bool near = std::all_of(sides.begin(), sides.end(), [&](const RelationReport& r) {
    return std::abs(r.defect - tol) <= kIndeterminateBand * tol;
  });
  return near ? ClauseStatus::Indeterminate : ClauseStatus::Inconsistent;
}

}  // namespace abscompat
