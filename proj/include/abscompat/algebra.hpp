#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <vector>

#include "abscompat/linalg.hpp"
#include "abscompat/report.hpp"
#include "abscompat/tolerance.hpp"

namespace abscompat {

/// Block structure of A = M_{n1}(C) ⊕ ... ⊕ M_{nk}(C).
class AlgebraShape {
 public:
  explicit AlgebraShape(std::vector<int> block_dims);
  AlgebraShape(std::initializer_list<int> block_dims) : AlgebraShape(std::vector<int>(block_dims)) {}

  const std::vector<int>& block_dims() const { return dims_; }
  std::size_t block_count() const { return dims_.size(); }
  int block_dim(std::size_t i) const { return dims_.at(i); }
  /// Row/column where block i starts in the ambient matrix.
  int block_offset(std::size_t i) const { return offsets_.at(i); }
  int total_dim() const { return total_; }
  /// Sum of n_i^2, the complex dimension of the algebra.
  int algebra_dim() const;
  bool is_commutative() const;

  /// Block index containing ambient row/column `index`.
  std::size_t block_of(int index) const;
  /// True iff (row, col) lies inside a diagonal block.
  bool in_block(int row, int col) const { return block_of(row) == block_of(col); }

  friend bool operator==(const AlgebraShape&, const AlgebraShape&) = default;

 private:
  std::vector<int> dims_;
  std::vector<int> offsets_;
  int total_ = 0;
};

/// Block-diagonal element of an AlgebraShape. Off-block entries are held at
/// exactly zero: construction from an ambient matrix compresses it onto the
/// diagonal blocks.
class AlgebraElement {
 public:
  explicit AlgebraElement(AlgebraShape shape);
  AlgebraElement(AlgebraShape shape, const ComplexMatrix& ambient);

  static AlgebraElement zero(const AlgebraShape& shape) { return AlgebraElement(shape); }
  static AlgebraElement from_blocks(const AlgebraShape& shape, const std::vector<ComplexMatrix>& blocks);
  /// Matrix unit E_{ij} of block `block`.
  static AlgebraElement matrix_unit(const AlgebraShape& shape, std::size_t block, int i, int j);
  /// Element equal to `m` on block `block` and zero elsewhere.
  static AlgebraElement embed(const AlgebraShape& shape, std::size_t block, const ComplexMatrix& m);

  const AlgebraShape& shape() const { return shape_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  ComplexMatrix block(std::size_t i) const;
  int dim() const { return shape_.total_dim(); }

  /// Applies f to every block independently and reassembles.
  AlgebraElement map_blocks(const std::function<ComplexMatrix(const ComplexMatrix&)>& f) const;

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(Complex scalar);

  friend AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs) { return lhs += rhs; }
  friend AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs) { return lhs -= rhs; }
  friend AlgebraElement operator*(AlgebraElement lhs, Complex s) { return lhs *= s; }
  friend AlgebraElement operator*(Complex s, AlgebraElement rhs) { return rhs *= s; }
  friend AlgebraElement operator*(double s, AlgebraElement rhs) { return rhs *= Complex(s, 0.0); }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= Complex(-1.0, 0.0); }
  friend AlgebraElement operator*(const AlgebraElement& lhs, const AlgebraElement& rhs);

 private:
  AlgebraShape shape_;
  ComplexMatrix matrix_;
};

/// Throws ShapeMismatch unless both operands live in the same algebra.
void require_same_shape(const AlgebraElement& a, const AlgebraElement& b, const char* op);

AlgebraElement unit(const AlgebraShape& shape);
AlgebraElement adjoint(const AlgebraElement& a);
/// a ∘ b = (ab + ba) / 2.
AlgebraElement jordan(const AlgebraElement& a, const AlgebraElement& b);
/// {a, b, c} = (a b* c + c b* a) / 2.
AlgebraElement triple(const AlgebraElement& a, const AlgebraElement& b, const AlgebraElement& c);

// Blockwise numerics. Computing per block keeps results exactly block-diagonal.
double op_norm(const AlgebraElement& a);
AlgebraElement abs_value(const AlgebraElement& a);
AlgebraElement hermitian_abs(const AlgebraElement& h, const ToleranceConfig& tol = kDefaultTolerance);
AlgebraElement apply_function(const AlgebraElement& h, const std::function<double(double)>& f,
                              const ToleranceConfig& tol = kDefaultTolerance);
AlgebraElement range_projection(const AlgebraElement& a, double rank_tol = kDefaultTolerance.rank);
/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const AlgebraElement& a);
/// Largest eigenvalue of the Hermitian part.
double max_eigenvalue(const AlgebraElement& a);
/// ||a - b|| in operator norm.
double distance(const AlgebraElement& a, const AlgebraElement& b);

RelationReport is_positive(const AlgebraElement& a, const ToleranceConfig& tol = kDefaultTolerance);
RelationReport is_contraction(const AlgebraElement& a, const ToleranceConfig& tol = kDefaultTolerance);
RelationReport is_hermitian(const AlgebraElement& a, const ToleranceConfig& tol = kDefaultTolerance);
/// max(||u*u - 1||, ||uu* - 1||).
RelationReport is_unitary(const AlgebraElement& u, const ToleranceConfig& tol = kDefaultTolerance);

}  // namespace abscompat
