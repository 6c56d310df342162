#include "abscompat/sampling.hpp"

#include <cmath>
#include <numbers>

namespace abscompat::sampling {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

ComplexMatrix ginibre(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix out(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) out(i, j) = Complex(normal(rng), normal(rng));
  }
  return out;
}

ComplexMatrix haar_unitary(int dim, Rng& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(dim, rng));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fixing the phases of diag(R) makes Q Haar distributed.
  for (int i = 0; i < dim; ++i) {
    const double m = std::abs(r(i, i));
    if (m > 0.0) q.col(i) *= r(i, i) / m;
  }
  return q;
}

ComplexMatrix with_singular_values(const RealVector& s, Rng& rng) {
  const int n = static_cast<int>(s.size());
  return haar_unitary(n, rng) * s.cast<Complex>().asDiagonal() * haar_unitary(n, rng).adjoint();
}

ComplexMatrix random_contraction(int dim, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  RealVector s(dim);
  for (int i = 0; i < dim; ++i) s(i) = unif(rng);
  return with_singular_values(s, rng);
}

ComplexMatrix random_with_norm(int dim, double norm, Rng& rng) {
  ComplexMatrix g = ginibre(dim, rng);
  const double n = op_norm(g);
  return n > 0.0 ? ComplexMatrix(g * (norm / n)) : g;
}

ComplexMatrix random_partial_isometry(int dim, Rng& rng) {
  std::uniform_int_distribution<int> rank(0, dim);
  const int r = rank(rng);
  RealVector s = RealVector::Zero(dim);
  s.head(r).setOnes();
  return with_singular_values(s, rng);
}

ComplexMatrix random_projection(int dim, Rng& rng) {
  std::uniform_int_distribution<int> rank(0, dim);
  const int r = rank(rng);
  const ComplexMatrix u = haar_unitary(dim, rng);
  return u.leftCols(r) * u.leftCols(r).adjoint();
}

ComplexMatrix random_positive_contraction(int dim, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  RealVector lambda(dim);
  for (int i = 0; i < dim; ++i) lambda(i) = unif(rng);
  const ComplexMatrix u = haar_unitary(dim, rng);
  return hermitian_part(u * lambda.cast<Complex>().asDiagonal() * u.adjoint());
}

ComplexMatrix random_hermitian_contraction(int dim, Rng& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  RealVector lambda(dim);
  for (int i = 0; i < dim; ++i) lambda(i) = unif(rng);
  const ComplexMatrix u = haar_unitary(dim, rng);
  return hermitian_part(u * lambda.cast<Complex>().asDiagonal() * u.adjoint());
}

Complex random_phase(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, angle(rng));
}

Complex random_disc_point(Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return std::sqrt(unif(rng)) * random_phase(rng);
}

namespace {

template <class F>
AlgebraElement per_block(const AlgebraShape& shape, F f) {
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(shape.block_count());
  for (int d : shape.block_dims()) blocks.push_back(f(d));
  return AlgebraElement::from_blocks(shape, blocks);
}

}  // namespace

AlgebraElement random_contraction(const AlgebraShape& shape, Rng& rng) {
  return per_block(shape, [&](int d) { return random_contraction(d, rng); });
}

AlgebraElement random_unitary(const AlgebraShape& shape, Rng& rng) {
  return per_block(shape, [&](int d) { return haar_unitary(d, rng); });
}

AlgebraElement random_partial_isometry(const AlgebraShape& shape, Rng& rng) {
  return per_block(shape, [&](int d) { return random_partial_isometry(d, rng); });
}

AlgebraElement random_projection(const AlgebraShape& shape, Rng& rng) {
  return per_block(shape, [&](int d) { return random_projection(d, rng); });
}

AlgebraElement random_positive_contraction(const AlgebraShape& shape, Rng& rng) {
  return per_block(shape, [&](int d) { return random_positive_contraction(d, rng); });
}

AlgebraElement random_hermitian_contraction(const AlgebraShape& shape, Rng& rng) {
  return per_block(shape, [&](int d) { return random_hermitian_contraction(d, rng); });
}

AlgebraElement random_unit_sphere(const AlgebraShape& shape, Rng& rng) {
  AlgebraElement x = per_block(shape, [&](int d) { return ginibre(d, rng); });
  const double n = op_norm(x);
  return n > 0.0 ? (1.0 / n) * x : unit(shape);
}

}  // namespace abscompat::sampling
