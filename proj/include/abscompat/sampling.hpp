#pragma once

#include <cstdint>
#include <random>

#include "abscompat/algebra.hpp"

namespace abscompat::sampling {

using Rng = std::mt19937_64;

/// Independent 64-bit seed for sub-stream `stream` of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Entries i.i.d. standard complex Gaussian.
ComplexMatrix ginibre(int dim, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix haar_unitary(int dim, Rng& rng);
/// U diag(s) V* with Haar U, V and the given singular values.
ComplexMatrix with_singular_values(const RealVector& s, Rng& rng);
/// Singular values uniform in [0, 1].
ComplexMatrix random_contraction(int dim, Rng& rng);
/// Random matrix rescaled to operator norm exactly `norm`.
ComplexMatrix random_with_norm(int dim, double norm, Rng& rng);
/// Partial isometry of random rank in [0, dim].
ComplexMatrix random_partial_isometry(int dim, Rng& rng);
ComplexMatrix random_projection(int dim, Rng& rng);
/// Eigenvalues uniform in [0, 1].
ComplexMatrix random_positive_contraction(int dim, Rng& rng);
/// Eigenvalues uniform in [-1, 1].
ComplexMatrix random_hermitian_contraction(int dim, Rng& rng);
/// Uniform on the closed unit disc.
Complex random_disc_point(Rng& rng);
Complex random_phase(Rng& rng);

// Element versions apply the matrix version independently to every block.
AlgebraElement random_contraction(const AlgebraShape& shape, Rng& rng);
AlgebraElement random_unitary(const AlgebraShape& shape, Rng& rng);
AlgebraElement random_partial_isometry(const AlgebraShape& shape, Rng& rng);
AlgebraElement random_projection(const AlgebraShape& shape, Rng& rng);
AlgebraElement random_positive_contraction(const AlgebraShape& shape, Rng& rng);
AlgebraElement random_hermitian_contraction(const AlgebraShape& shape, Rng& rng);
/// Uniform random element of norm one.
AlgebraElement random_unit_sphere(const AlgebraShape& shape, Rng& rng);

}  // namespace abscompat::sampling
