#pragma once

#include <functional>

#include <Eigen/Dense>

#include "abscompat/tolerance.hpp"

namespace abscompat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Spectral decomposition a = V diag(λ) V* of a Hermitian matrix.
/// Eigenvalues are ascending; eigenvector phases are not canonicalized.
struct HermitianEig {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

/// a = u |a| with u a partial isometry whose initial projection is the
/// range projection of |a|.
struct PolarDecomposition {
  ComplexMatrix partial_isometry;
  ComplexMatrix absolute_value;
  int rank = 0;
};

/// Singular value decomposition a = U diag(s) V*, singular values descending.
struct SingularDecomposition {
  ComplexMatrix left;
  RealVector values;
  ComplexMatrix right;
};

ComplexMatrix identity(int dim);

/// Largest singular value.
double op_norm(const ComplexMatrix& a);

/// ||a - a*|| compared against tol.hermitian * max(1, ||a||).
bool is_hermitian(const ComplexMatrix& a, const ToleranceConfig& tol = kDefaultTolerance);

/// (a + a*) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

HermitianEig herm_eig(const ComplexMatrix& a, const ToleranceConfig& tol = kDefaultTolerance);

SingularDecomposition svd(const ComplexMatrix& a);

/// Continuous functional calculus f(a) = V diag(f(λ)) V* for Hermitian a.
ComplexMatrix apply_function(const ComplexMatrix& a, const std::function<double(double)>& f,
                             const ToleranceConfig& tol = kDefaultTolerance);

/// |a| = (a* a)^{1/2}.
ComplexMatrix abs_value(const ComplexMatrix& a);

/// |h| for Hermitian h, computed from the eigenvalues of h directly.
ComplexMatrix hermitian_abs(const ComplexMatrix& h, const ToleranceConfig& tol = kDefaultTolerance);

PolarDecomposition polar(const ComplexMatrix& a, double rank_tol = kDefaultTolerance.rank);

/// Smallest projection r with r a = a. Singular values at or below
/// rank_tol * s_max count as zero.
ComplexMatrix range_projection(const ComplexMatrix& a, double rank_tol = kDefaultTolerance.rank);

int numerical_rank(const ComplexMatrix& a, double rank_tol = kDefaultTolerance.rank);

}  // namespace abscompat
