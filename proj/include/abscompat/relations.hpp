#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "abscompat/algebra.hpp"
#include "abscompat/report.hpp"
#include "abscompat/tolerance.hpp"

namespace abscompat {

/// Which absolute values enter the compatibility identity: |a|, |b| (Domain),
/// |a*|, |b*| (Range), or both (Full).
enum class CompatKind { Domain, Range, Full };

std::string_view to_string(CompatKind kind);
CompatKind parse_compat_kind(std::string_view text);

/// Norm residual of | x - y | + | 1 - x - y | = 1 for positive contractions x, y.
/// Witnesses: "|x-y|", "|1-x-y|".
RelationReport positive_compat_defect(const AlgebraElement& x, const AlgebraElement& y,
                                      const ToleranceConfig& tol = kDefaultTolerance);

/// Absolute compatibility defect of two contractions.
///
/// Inputs whose norm lies in (1, 1 + tol] are rescaled onto the unit sphere
/// first; anything larger raises NotContraction. Domain compares |a| and |b|,
/// Range compares |a*| and |b*|, Full reports the larger of the two.
RelationReport compat_defect(const AlgebraElement& a, const AlgebraElement& b, CompatKind kind,
                             const ToleranceConfig& tol = kDefaultTolerance);

/// a ⊥ b: defect max(||ab*||, ||b*a||).
RelationReport is_orthogonal(const AlgebraElement& a, const AlgebraElement& b,
                             const ToleranceConfig& tol = kDefaultTolerance);

/// Evaluates both sides of each orthogonality characterization:
///   (a)  ab* = 0  <=>  |a|+|b| <= 1 and a △_d b  <=>  |a|+|b| <= 1 and a* △_r b*
///   (b)  b*a = 0  <=>  |a*|+|b*| <= 1 and a* △_d b*  <=>  |a*|+|b*| <= 1 and a △_r b
///   (c)  a ⊥ b    <=>  both sums <= 1, a △_r b and a △_d b
///   (self-adjoint, only when a and b are Hermitian)  a ⊥ b  <=>  |a|+|b| <= 1 and a △ b
ConsistencyReport check_orth_characterization(const AlgebraElement& a, const AlgebraElement& b,
                                              const ToleranceConfig& tol = kDefaultTolerance);

/// For 0 <= a, b <= 1, evaluates the four equivalent conditions
///   (a) a △ b
///   (b) 2 a∘b = a + b - |a - b|
///   (c) a∘b, (1-a)∘(1-b) positive with zero product
///   (d) a∘(1-b), (1-a)∘b positive with zero product
/// as one four-sided clause.
ConsistencyReport check_p00_equivalences(const AlgebraElement& a, const AlgebraElement& b,
                                         const ToleranceConfig& tol = kDefaultTolerance);

/// max(||a^2 - a||, ||a - a*||).
RelationReport is_projection(const AlgebraElement& a, const ToleranceConfig& tol = kDefaultTolerance);
/// ||a a* a - a||.
RelationReport is_partial_isometry(const AlgebraElement& a, const ToleranceConfig& tol = kDefaultTolerance);

/// Side by side: a △ a versus a a* a = a.
ConsistencyReport check_tripotent_characterization(const AlgebraElement& a,
                                                   const ToleranceConfig& tol = kDefaultTolerance);

/// Pointwise test for f △ g in C(Ω) with Ω finite: at every point either one
/// value is unimodular or the product vanishes. The defect is
/// max_t min(1 - max(|f(t)|, |g(t)|), |f(t) g(t)|). The diagonal route
/// compat_defect(diag f, diag g) is evaluated as well; a verdict mismatch is
/// recorded as the note "diagonal-mismatch".
RelationReport commutative_compat_check(const std::vector<Complex>& f, const std::vector<Complex>& g,
                                        const ToleranceConfig& tol = kDefaultTolerance);

enum class IntervalBoundary { ClosedClosed, OpenOpen, ClosedOpen, OpenClosed };

std::string_view to_string(IntervalBoundary boundary);

/// u·χ_I(|a|) where a = u|a| and I is the interval [lo, hi] with endpoint
/// membership set by `boundary`. Eigenvalues of |a| within tol.relation of
/// an endpoint are treated as equal to it when `snap` is set; otherwise
/// such an eigenvalue raises EndpointAmbiguity.
AlgebraElement spectral_tripotent(const AlgebraElement& a, double lo, double hi, IntervalBoundary boundary,
                                  const ToleranceConfig& tol = kDefaultTolerance, bool snap = true);

}  // namespace abscompat
