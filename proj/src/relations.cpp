#include "abscompat/relations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abscompat/error.hpp"

namespace abscompat {

std::string_view to_string(CompatKind kind) {
  switch (kind) {
    case CompatKind::Domain: return "domain";
    case CompatKind::Range: return "range";
    case CompatKind::Full: return "full";
  }
  return "unknown";
}

CompatKind parse_compat_kind(std::string_view text) {
  if (text == "domain") return CompatKind::Domain;
  if (text == "range") return CompatKind::Range;
  if (text == "full") return CompatKind::Full;
  throw Error(ErrorKind::InvalidArgument, "unknown compatibility kind '" + std::string(text) + "'");
}

std::string_view to_string(IntervalBoundary boundary) {
  switch (boundary) {
    case IntervalBoundary::ClosedClosed: return "closed-closed";
    case IntervalBoundary::OpenOpen: return "open-open";
    case IntervalBoundary::ClosedOpen: return "closed-open";
    case IntervalBoundary::OpenClosed: return "open-closed";
  }
  return "unknown";
}

namespace {

// Rescales norms in (1, 1 + tol] back onto the unit sphere.
AlgebraElement into_unit_ball(const AlgebraElement& a, const ToleranceConfig& tol, const char* op) {
  const double n = op_norm(a);
  if (n > 1.0 + tol.relation) {
    throw Error(ErrorKind::NotContraction, std::string(op) + ": operand has norm " + std::to_string(n));
  }
  return n > 1.0 ? (1.0 / n) * a : a;
}

RelationReport sum_at_most_one(const std::string& name, const AlgebraElement& x, const AlgebraElement& y,
                               const ToleranceConfig& tol) {
  return RelationReport::make(name, std::max(0.0, max_eigenvalue(x + y) - 1.0), tol.relation);
}

RelationReport all_of(const std::string& name, std::initializer_list<const RelationReport*> parts,
                      const ToleranceConfig& tol) {
  double d = 0.0;
  for (const RelationReport* p : parts) d = std::max(d, p->defect);
  return RelationReport::make(name, d, tol.relation);
}

double positivity_defect(const AlgebraElement& x) {
  return std::max(op_norm(x - adjoint(x)), std::max(0.0, -min_eigenvalue(x)));
}

ClauseResult clause(std::string name, std::vector<RelationReport> sides, const ToleranceConfig& tol) {
  ClauseResult c;
  c.clause = std::move(name);
  c.status = classify_clause(sides, tol.relation);
  c.sides = std::move(sides);
  return c;
}

}  // namespace

RelationReport positive_compat_defect(const AlgebraElement& x, const AlgebraElement& y, const ToleranceConfig& tol) {
  require_same_shape(x, y, "positive_compat_defect");
  const AlgebraElement one = unit(x.shape());
  const AlgebraElement diff = hermitian_abs(x - y, tol);
  const AlgebraElement rest = hermitian_abs(one - x - y, tol);
  const double defect = distance(diff + rest, one);
  return RelationReport::make("compat", defect, tol.relation,
                              {{"|x-y|", diff.matrix()}, {"|1-x-y|", rest.matrix()}});
}

RelationReport compat_defect(const AlgebraElement& a, const AlgebraElement& b, CompatKind kind,
                             const ToleranceConfig& tol) {
  require_same_shape(a, b, "compat_defect");
  const AlgebraElement aa = into_unit_ball(a, tol, "compat_defect");
  const AlgebraElement bb = into_unit_ball(b, tol, "compat_defect");

  auto side = [&](bool range) {
    const AlgebraElement x = abs_value(range ? adjoint(aa) : aa);
    const AlgebraElement y = abs_value(range ? adjoint(bb) : bb);
    RelationReport r = positive_compat_defect(x, y, tol);
    const std::string s = range ? "*" : "";
    r.relation_name = range ? "compat-range" : "compat-domain";
    r.witnesses = {{"|a" + s + "|", x.matrix()},
                   {"|b" + s + "|", y.matrix()},
                   {"||a" + s + "|-|b" + s + "||", r.witnesses[0].matrix},
                   {"|1-|a" + s + "|-|b" + s + "||", r.witnesses[1].matrix}};
    return r;
  };

  switch (kind) {
    case CompatKind::Domain: return side(false);
    case CompatKind::Range: return side(true);
    case CompatKind::Full: {
      RelationReport d = side(false);
      RelationReport r = side(true);
      RelationReport out = RelationReport::make("compat-full", std::max(d.defect, r.defect), tol.relation);
      out.witnesses = std::move(d.witnesses);
      for (auto& w : r.witnesses) out.witnesses.push_back(std::move(w));
      return out;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "compat_defect: bad kind");
}

RelationReport is_orthogonal(const AlgebraElement& a, const AlgebraElement& b, const ToleranceConfig& tol) {
  require_same_shape(a, b, "is_orthogonal");
  const AlgebraElement bs = adjoint(b);
  return RelationReport::make("orthogonal", std::max(op_norm(a * bs), op_norm(bs * a)), tol.relation);
}

ConsistencyReport check_orth_characterization(const AlgebraElement& a, const AlgebraElement& b,
                                              const ToleranceConfig& tol) {
  require_same_shape(a, b, "check_orth_characterization");
  const AlgebraElement aa = into_unit_ball(a, tol, "check_orth_characterization");
  const AlgebraElement bb = into_unit_ball(b, tol, "check_orth_characterization");
  const AlgebraElement as = adjoint(aa);
  const AlgebraElement bs = adjoint(bb);

  const RelationReport ab_star = RelationReport::make("ab*=0", op_norm(aa * bs), tol.relation);
  const RelationReport bstar_a = RelationReport::make("b*a=0", op_norm(bs * aa), tol.relation);
  const RelationReport sum_dom = sum_at_most_one("|a|+|b|<=1", abs_value(aa), abs_value(bb), tol);
  const RelationReport sum_rng = sum_at_most_one("|a*|+|b*|<=1", abs_value(as), abs_value(bs), tol);
  const RelationReport a_d_b = compat_defect(aa, bb, CompatKind::Domain, tol);
  const RelationReport as_r_bs = compat_defect(as, bs, CompatKind::Range, tol);
  const RelationReport as_d_bs = compat_defect(as, bs, CompatKind::Domain, tol);
  const RelationReport a_r_b = compat_defect(aa, bb, CompatKind::Range, tol);

  ConsistencyReport out;
  out.name = "orthogonality-characterization";
  out.clauses.push_back(clause("a",
                               {ab_star, all_of("|a|+|b|<=1 & a△_d b", {&sum_dom, &a_d_b}, tol),
                                all_of("|a|+|b|<=1 & a*△_r b*", {&sum_dom, &as_r_bs}, tol)},
                               tol));
  out.clauses.push_back(clause("b",
                               {bstar_a, all_of("|a*|+|b*|<=1 & a*△_d b*", {&sum_rng, &as_d_bs}, tol),
                                all_of("|a*|+|b*|<=1 & a△_r b", {&sum_rng, &a_r_b}, tol)},
                               tol));
  const RelationReport orth = all_of("a⊥b", {&ab_star, &bstar_a}, tol);
  out.clauses.push_back(
      clause("c", {orth, all_of("sums<=1 & a△_r b & a△_d b", {&sum_dom, &sum_rng, &a_r_b, &a_d_b}, tol)}, tol));

  if (is_hermitian(aa, tol).verdict && is_hermitian(bb, tol).verdict) {
    out.clauses.push_back(
        clause("self-adjoint", {orth, all_of("|a|+|b|<=1 & a△b", {&sum_dom, &a_d_b, &a_r_b}, tol)}, tol));
  }
  return out;
}

ConsistencyReport check_p00_equivalences(const AlgebraElement& a, const AlgebraElement& b,
                                         const ToleranceConfig& tol) {
  require_same_shape(a, b, "check_p00_equivalences");
  for (const AlgebraElement* x : {&a, &b}) {
    if (!is_positive(*x, tol).verdict || max_eigenvalue(*x) > 1.0 + tol.relation) {
      throw Error(ErrorKind::NotInUnitInterval, "check_p00_equivalences: operand is not in [0, 1]");
    }
  }
  const AlgebraElement one = unit(a.shape());

  RelationReport cond_a = compat_defect(a, b, CompatKind::Full, tol);
  cond_a.relation_name = "(a) a△b";

  const AlgebraElement lhs = 2.0 * jordan(a, b);
  const AlgebraElement rhs = a + b - hermitian_abs(a - b, tol);
  RelationReport cond_b = RelationReport::make("(b) 2a∘b = a+b-|a-b|", distance(lhs, rhs), tol.relation,
                                               {{"2a∘b", lhs.matrix()}, {"a+b-|a-b|", rhs.matrix()}});

  auto zero_product_pair = [&](const std::string& name, const AlgebraElement& x, const AlgebraElement& y) {
    const double d = std::max({positivity_defect(x), positivity_defect(y), op_norm(x * y)});
    return RelationReport::make(name, d, tol.relation, {{"first", x.matrix()}, {"second", y.matrix()}});
  };
  RelationReport cond_c =
      zero_product_pair("(c) a∘b, (1-a)∘(1-b) >= 0, product 0", jordan(a, b), jordan(one - a, one - b));
  RelationReport cond_d =
      zero_product_pair("(d) a∘(1-b), (1-a)∘b >= 0, product 0", jordan(a, one - b), jordan(one - a, b));

  ConsistencyReport out;
  out.name = "jordan-equivalences";
  out.clauses.push_back(clause("a-b-c-d", {cond_a, cond_b, cond_c, cond_d}, tol));
  return out;
}

RelationReport is_projection(const AlgebraElement& a, const ToleranceConfig& tol) {
  const double d = std::max(distance(a * a, a), distance(a, adjoint(a)));
  return RelationReport::make("projection", d, tol.relation);
}

RelationReport is_partial_isometry(const AlgebraElement& a, const ToleranceConfig& tol) {
  return RelationReport::make("partial-isometry", distance(a * adjoint(a) * a, a), tol.relation);
}

ConsistencyReport check_tripotent_characterization(const AlgebraElement& a, const ToleranceConfig& tol) {
  RelationReport self = compat_defect(a, a, CompatKind::Full, tol);
  self.relation_name = "a△a";
  ConsistencyReport out;
  out.name = "tripotent-characterization";
  out.clauses.push_back(clause("partial-isometry", {self, is_partial_isometry(a, tol)}, tol));
  return out;
}

RelationReport commutative_compat_check(const std::vector<Complex>& f, const std::vector<Complex>& g,
                                        const ToleranceConfig& tol) {
  if (f.size() != g.size()) {
    throw Error(ErrorKind::LengthMismatch, "commutative_compat_check: f has " + std::to_string(f.size()) +
                                               " points, g has " + std::to_string(g.size()));
  }
  if (f.empty()) throw Error(ErrorKind::InvalidArgument, "commutative_compat_check: empty domain");
  for (const auto* v : {&f, &g}) {
    for (const Complex& z : *v) {
      if (std::abs(z) > 1.0 + tol.relation) {
        throw Error(ErrorKind::NotContraction, "commutative_compat_check: sup norm exceeds 1");
      }
    }
  }

  double defect = 0.0;
  for (std::size_t t = 0; t < f.size(); ++t) {
    const double s = std::abs(f[t]);
    const double r = std::abs(g[t]);
    const double saturation = std::max(0.0, 1.0 - std::max(s, r));
    defect = std::max(defect, std::min(saturation, s * r));
  }

  const int n = static_cast<int>(f.size());
  const AlgebraShape shape(std::vector<int>(f.size(), 1));
  ComplexMatrix df = ComplexMatrix::Zero(n, n);
  ComplexMatrix dg = ComplexMatrix::Zero(n, n);
  for (int t = 0; t < n; ++t) {
    df(t, t) = f[t];
    dg(t, t) = g[t];
  }
  const RelationReport diagonal =
      compat_defect(AlgebraElement(shape, df), AlgebraElement(shape, dg), CompatKind::Domain, tol);

  RelationReport out = RelationReport::make("compat-commutative", defect, tol.relation,
                                            {{"diag(f)", df}, {"diag(g)", dg}});
  out.notes.push_back("diagonal-defect=" + std::to_string(diagonal.defect));
  if (diagonal.verdict != out.verdict) out.notes.push_back("diagonal-mismatch");
  return out;
}

AlgebraElement spectral_tripotent(const AlgebraElement& a, double lo, double hi, IntervalBoundary boundary,
                                  const ToleranceConfig& tol, bool snap) {
  if (!(lo >= 0.0 && lo < hi)) {
    throw Error(ErrorKind::InvalidArgument, "spectral_tripotent: need 0 <= lo < hi");
  }
  const bool lo_closed = boundary == IntervalBoundary::ClosedClosed || boundary == IntervalBoundary::ClosedOpen;
  const bool hi_closed = boundary == IntervalBoundary::ClosedClosed || boundary == IntervalBoundary::OpenClosed;
  const double eps = tol.relation;

  auto member = [&](double s) {
    if (std::abs(s - lo) <= eps) {
      if (!snap) throw Error(ErrorKind::EndpointAmbiguity, "eigenvalue " + std::to_string(s) + " at lower endpoint");
      return lo_closed;
    }
    if (std::abs(s - hi) <= eps) {
      if (!snap) throw Error(ErrorKind::EndpointAmbiguity, "eigenvalue " + std::to_string(s) + " at upper endpoint");
      return hi_closed;
    }
    return s > lo && s < hi;
  };

  const double cut = tol.rank * op_norm(a);
  return a.map_blocks([&](const ComplexMatrix& m) {
    const SingularDecomposition d = svd(m);
    ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < d.values.size(); ++i) {
      const double s = d.values(i);
      if (s <= cut) continue;
      if (member(s)) out += d.left.col(i) * d.right.col(i).adjoint();
    }
    return out;
  });
}

}  // namespace abscompat
