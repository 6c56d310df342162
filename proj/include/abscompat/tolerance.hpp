#pragma once

namespace abscompat {

/// Numerical thresholds shared by every predicate.
///
/// `hermitian` and `reconstruction` are absolute after scaling by
/// max(1, ||a||). `rank` is relative to the largest singular value.
/// `relation` is the threshold a defect is compared against to produce a
/// verdict.
struct ToleranceConfig {
  double hermitian = 1e-8;
  double reconstruction = 1e-8;
  double rank = 1e-10;
  double relation = 1e-8;

  /// Same config with the relation threshold replaced.
  ToleranceConfig with_relation(double tol) const {
    ToleranceConfig out = *this;
    out.relation = tol;
    return out;
  }
};

inline constexpr ToleranceConfig kDefaultTolerance{};

}  // namespace abscompat
