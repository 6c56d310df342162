#include "abscompat/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "abscompat/error.hpp"

namespace abscompat {

AlgebraShape::AlgebraShape(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "AlgebraShape: at least one block is required");
  }
  offsets_.reserve(dims_.size());
  for (int d : dims_) {
    if (d < 1) throw Error(ErrorKind::InvalidArgument, "AlgebraShape: block dimensions must be >= 1");
    offsets_.push_back(total_);
    total_ += d;
  }
}

int AlgebraShape::algebra_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), 0, [](int acc, int d) { return acc + d * d; });
}

bool AlgebraShape::is_commutative() const {
  return std::all_of(dims_.begin(), dims_.end(), [](int d) { return d == 1; });
}

std::size_t AlgebraShape::block_of(int index) const {
  if (index < 0 || index >= total_) {
    throw Error(ErrorKind::InvalidArgument, "AlgebraShape::block_of: index out of range");
  }
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  return static_cast<std::size_t>(std::distance(offsets_.begin(), it) - 1);
}

AlgebraElement::AlgebraElement(AlgebraShape shape)
    : shape_(std::move(shape)), matrix_(ComplexMatrix::Zero(shape_.total_dim(), shape_.total_dim())) {}

AlgebraElement::AlgebraElement(AlgebraShape shape, const ComplexMatrix& ambient) : AlgebraElement(std::move(shape)) {
  const int n = shape_.total_dim();
  if (ambient.rows() != n || ambient.cols() != n) {
    throw Error(ErrorKind::ShapeMismatch, "AlgebraElement: matrix is " + std::to_string(ambient.rows()) + "x" +
                                              std::to_string(ambient.cols()) + ", shape needs " +
                                              std::to_string(n) + "x" + std::to_string(n));
  }
  if (!ambient.allFinite()) throw Error(ErrorKind::NumericalFailure, "AlgebraElement: non-finite entries");
  for (std::size_t b = 0; b < shape_.block_count(); ++b) {
    const int off = shape_.block_offset(b);
    const int d = shape_.block_dim(b);
    matrix_.block(off, off, d, d) = ambient.block(off, off, d, d);
  }
}

AlgebraElement AlgebraElement::from_blocks(const AlgebraShape& shape, const std::vector<ComplexMatrix>& blocks) {
  if (blocks.size() != shape.block_count()) {
    throw Error(ErrorKind::ShapeMismatch, "from_blocks: expected " + std::to_string(shape.block_count()) +
                                              " blocks, got " + std::to_string(blocks.size()));
  }
  AlgebraElement out(shape);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const int d = shape.block_dim(b);
    if (blocks[b].rows() != d || blocks[b].cols() != d) {
      throw Error(ErrorKind::ShapeMismatch, "from_blocks: block " + std::to_string(b) + " has wrong size");
    }
    if (!blocks[b].allFinite()) throw Error(ErrorKind::NumericalFailure, "from_blocks: non-finite entries");
    out.matrix_.block(shape.block_offset(b), shape.block_offset(b), d, d) = blocks[b];
  }
  return out;
}

AlgebraElement AlgebraElement::matrix_unit(const AlgebraShape& shape, std::size_t block, int i, int j) {
  const int d = shape.block_dim(block);
  if (i < 0 || j < 0 || i >= d || j >= d) {
    throw Error(ErrorKind::InvalidArgument, "matrix_unit: index outside block");
  }
  AlgebraElement out(shape);
  out.matrix_(shape.block_offset(block) + i, shape.block_offset(block) + j) = 1.0;
  return out;
}

AlgebraElement AlgebraElement::embed(const AlgebraShape& shape, std::size_t block, const ComplexMatrix& m) {
  const int d = shape.block_dim(block);
  if (m.rows() != d || m.cols() != d) throw Error(ErrorKind::ShapeMismatch, "embed: block size mismatch");
  AlgebraElement out(shape);
  out.matrix_.block(shape.block_offset(block), shape.block_offset(block), d, d) = m;
  return out;
}

ComplexMatrix AlgebraElement::block(std::size_t i) const {
  const int off = shape_.block_offset(i);
  const int d = shape_.block_dim(i);
  return matrix_.block(off, off, d, d);
}

AlgebraElement AlgebraElement::map_blocks(const std::function<ComplexMatrix(const ComplexMatrix&)>& f) const {
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(shape_.block_count());
  for (std::size_t b = 0; b < shape_.block_count(); ++b) blocks.push_back(f(block(b)));
  return from_blocks(shape_, blocks);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  require_same_shape(*this, rhs, "operator+");
  matrix_ += rhs.matrix_;
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  require_same_shape(*this, rhs, "operator-");
  matrix_ -= rhs.matrix_;
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex scalar) {
  matrix_ *= scalar;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& lhs, const AlgebraElement& rhs) {
  require_same_shape(lhs, rhs, "operator*");
  // Product of block-diagonal matrices is block-diagonal with exact zeros.
  AlgebraElement out(lhs.shape());
  out.matrix_.noalias() = lhs.matrix_ * rhs.matrix_;
  return out;
}

void require_same_shape(const AlgebraElement& a, const AlgebraElement& b, const char* op) {
  if (!(a.shape() == b.shape())) {
    throw Error(ErrorKind::ShapeMismatch, std::string(op) + ": operands belong to different algebras");
  }
}

AlgebraElement unit(const AlgebraShape& shape) {
  return AlgebraElement(shape, ComplexMatrix::Identity(shape.total_dim(), shape.total_dim()));
}

AlgebraElement adjoint(const AlgebraElement& a) { return AlgebraElement(a.shape(), a.matrix().adjoint()); }

AlgebraElement jordan(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_shape(a, b, "jordan");
  return 0.5 * (a * b + b * a);
}

AlgebraElement triple(const AlgebraElement& a, const AlgebraElement& b, const AlgebraElement& c) {
  require_same_shape(a, b, "triple");
  require_same_shape(b, c, "triple");
  const AlgebraElement bs = adjoint(b);
  return 0.5 * (a * bs * c + c * bs * a);
}

double op_norm(const AlgebraElement& a) {
  double n = 0.0;
  for (std::size_t b = 0; b < a.shape().block_count(); ++b) n = std::max(n, op_norm(a.block(b)));
  return n;
}

AlgebraElement abs_value(const AlgebraElement& a) {
  return a.map_blocks([](const ComplexMatrix& m) { return abs_value(m); });
}

AlgebraElement hermitian_abs(const AlgebraElement& h, const ToleranceConfig& tol) {
  return h.map_blocks([&](const ComplexMatrix& m) { return hermitian_abs(m, tol); });
}

AlgebraElement apply_function(const AlgebraElement& h, const std::function<double(double)>& f,
                              const ToleranceConfig& tol) {
  return h.map_blocks([&](const ComplexMatrix& m) { return apply_function(m, f, tol); });
}

AlgebraElement range_projection(const AlgebraElement& a, double rank_tol) {
  return a.map_blocks([&](const ComplexMatrix& m) { return range_projection(m, rank_tol); });
}

double min_eigenvalue(const AlgebraElement& a) {
  double out = 0.0;
  for (std::size_t b = 0; b < a.shape().block_count(); ++b) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a.block(b)), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "min_eigenvalue: no convergence");
    const double v = solver.eigenvalues()(0);
    out = b == 0 ? v : std::min(out, v);
  }
  return out;
}

double max_eigenvalue(const AlgebraElement& a) {
  double out = 0.0;
  for (std::size_t b = 0; b < a.shape().block_count(); ++b) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a.block(b)), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "max_eigenvalue: no convergence");
    const double v = solver.eigenvalues()(solver.eigenvalues().size() - 1);
    out = b == 0 ? v : std::max(out, v);
  }
  return out;
}

double distance(const AlgebraElement& a, const AlgebraElement& b) { return op_norm(a - b); }

RelationReport is_positive(const AlgebraElement& a, const ToleranceConfig& tol) {
  const double skew = op_norm(a - adjoint(a));
  const double neg = std::max(0.0, -min_eigenvalue(a));
  return RelationReport::make("positive", std::max(skew, neg), tol.relation);
}

RelationReport is_contraction(const AlgebraElement& a, const ToleranceConfig& tol) {
  return RelationReport::make("contraction", std::max(0.0, op_norm(a) - 1.0), tol.relation);
}

RelationReport is_hermitian(const AlgebraElement& a, const ToleranceConfig& tol) {
  return RelationReport::make("hermitian", op_norm(a - adjoint(a)), tol.relation);
}

RelationReport is_unitary(const AlgebraElement& u, const ToleranceConfig& tol) {
  const AlgebraElement one = unit(u.shape());
  const double d = std::max(distance(adjoint(u) * u, one), distance(u * adjoint(u), one));
  return RelationReport::make("unitary", d, tol.relation);
}

}  // namespace abscompat
