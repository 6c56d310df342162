#include "abscompat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abscompat/error.hpp"

namespace abscompat {

namespace {

void require_square(const ComplexMatrix& a, const char* op) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorKind::ShapeMismatch, std::string(op) + ": expected a nonempty square matrix, got " +
                                              std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (!a.allFinite()) {
    throw Error(ErrorKind::NumericalFailure, std::string(op) + ": non-finite entries");
  }
}

// Rank cut shared by polar and range_projection.
int count_above(const RealVector& s, double rank_tol) {
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  const double cut = rank_tol * s(0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++r;
  }
  return r;
}

}  // namespace

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

double op_norm(const ComplexMatrix& a) {
  require_square(a, "op_norm");
  Eigen::JacobiSVD<ComplexMatrix> solver(a);
  const auto& s = solver.singularValues();
  return s.size() == 0 ? 0.0 : s(0);
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return (a + a.adjoint()) * 0.5; }

bool is_hermitian(const ComplexMatrix& a, const ToleranceConfig& tol) {
  require_square(a, "is_hermitian");
  const ComplexMatrix skew = a - a.adjoint();
  return op_norm(skew) <= tol.hermitian * std::max(1.0, op_norm(a));
}

HermitianEig herm_eig(const ComplexMatrix& a, const ToleranceConfig& tol) {
  require_square(a, "herm_eig");
  if (!is_hermitian(a, tol)) {
    throw Error(ErrorKind::NotHermitian, "herm_eig: ||a - a*|| = " + std::to_string(op_norm(a - a.adjoint())));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "herm_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SingularDecomposition svd(const ComplexMatrix& a) {
  require_square(a, "svd");
  Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (!solver.singularValues().allFinite()) {
    throw Error(ErrorKind::NumericalFailure, "svd: non-finite singular values");
  }
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

ComplexMatrix apply_function(const ComplexMatrix& a, const std::function<double(double)>& f,
                             const ToleranceConfig& tol) {
  const HermitianEig eig = herm_eig(a, tol);
  RealVector mapped(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped(i) = f(eig.eigenvalues(i));
  const ComplexMatrix& v = eig.eigenvectors;
  return hermitian_part(v * mapped.cast<Complex>().asDiagonal() * v.adjoint());
}

ComplexMatrix abs_value(const ComplexMatrix& a) {
  // a = U S V*  =>  a*a = V S^2 V*  =>  |a| = V S V*.
  const SingularDecomposition d = svd(a);
  return hermitian_part(d.right * d.values.cast<Complex>().asDiagonal() * d.right.adjoint());
}

ComplexMatrix hermitian_abs(const ComplexMatrix& h, const ToleranceConfig& tol) {
  return apply_function(h, [](double t) { return std::abs(t); }, tol);
}

PolarDecomposition polar(const ComplexMatrix& a, double rank_tol) {
  if (!(rank_tol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "polar: rank_tol must be positive");
  }
  const SingularDecomposition d = svd(a);
  const int r = count_above(d.values, rank_tol);
  PolarDecomposition out;
  out.rank = r;
  out.partial_isometry = d.left.leftCols(r) * d.right.leftCols(r).adjoint();
  out.absolute_value = hermitian_part(d.right * d.values.cast<Complex>().asDiagonal() * d.right.adjoint());
  return out;
}

ComplexMatrix range_projection(const ComplexMatrix& a, double rank_tol) {
  const SingularDecomposition d = svd(a);
  const int r = count_above(d.values, rank_tol);
  return d.left.leftCols(r) * d.left.leftCols(r).adjoint();
}

int numerical_rank(const ComplexMatrix& a, double rank_tol) {
  require_square(a, "numerical_rank");
  Eigen::JacobiSVD<ComplexMatrix> solver(a);
  return count_above(solver.singularValues(), rank_tol);
}

}  // namespace abscompat
