#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abscompat/algebra.hpp"
#include "abscompat/relations.hpp"
#include "abscompat/report.hpp"
#include "abscompat/sampling.hpp"

namespace abscompat {

enum class Provenance { StarHom, StarAntiHom, Sandwich, Transpose, Compression, Custom };

std::string_view to_string(Provenance p);

/// Complex-linear map between two block algebras, stored as its matrix on
/// column-major vectorized elements. Rows for off-block codomain entries and
/// columns for off-block domain entries are held at zero.
class LinearMap {
 public:
  LinearMap(AlgebraShape domain, AlgebraShape codomain, ComplexMatrix action, Provenance provenance,
            std::string note = {});

  /// Linear extension of `f` from the matrix units of `domain`.
  static LinearMap from_function(const AlgebraShape& domain, const AlgebraShape& codomain,
                                 const std::function<AlgebraElement(const AlgebraElement&)>& f,
                                 Provenance provenance, std::string note = {});
  static LinearMap identity(const AlgebraShape& shape);

  const AlgebraShape& domain_shape() const { return domain_; }
  const AlgebraShape& codomain_shape() const { return codomain_; }
  const ComplexMatrix& action() const { return action_; }
  Provenance provenance() const { return provenance_; }
  const std::string& note() const { return note_; }

  AlgebraElement operator()(const AlgebraElement& x) const;

 private:
  AlgebraShape domain_;
  AlgebraShape codomain_;
  ComplexMatrix action_;
  Provenance provenance_;
  std::string note_;
};

/// x ↦ c·T(x).
LinearMap scale(const LinearMap& t, Complex c);
/// x ↦ outer(inner(x)).
LinearMap compose(const LinearMap& outer, const LinearMap& inner);

/// Copies domain block `domain_block` (optionally transposed) onto the
/// diagonal of codomain block `codomain_block` starting at `offset`.
struct BlockPlacement {
  std::size_t domain_block = 0;
  std::size_t codomain_block = 0;
  int offset = 0;
  bool transpose = false;
};

/// Placements are laid out first, then codomain block j is conjugated as
/// w_j* (·) w_j. An empty `unitaries` means no conjugation.
struct BlockMapSpec {
  std::vector<BlockPlacement> placements;
  std::vector<ComplexMatrix> unitaries;
};

/// General direct sum of *-homomorphic and *-anti-homomorphic block copies.
/// Provenance is StarHom when nothing is transposed, StarAntiHom when every
/// placement of a block of size > 1 is transposed, Custom otherwise.
LinearMap build_block_map(const AlgebraShape& domain, const AlgebraShape& codomain, const BlockMapSpec& spec);
LinearMap build_star_hom(const AlgebraShape& domain, const AlgebraShape& codomain, BlockMapSpec spec);
/// Same layout as build_star_hom with every placement transposed.
LinearMap build_star_anti_hom(const AlgebraShape& domain, const AlgebraShape& codomain, BlockMapSpec spec);
/// Blockwise transpose on `shape`.
LinearMap build_transpose(const AlgebraShape& shape);
/// x ↦ u x v for unitaries u, v.
LinearMap build_sandwich(const AlgebraElement& u, const AlgebraElement& v,
                         const ToleranceConfig& tol = kDefaultTolerance);
/// x ↦ p x p for a projection p.
LinearMap build_compression(const AlgebraElement& p, const ToleranceConfig& tol = kDefaultTolerance);
/// x ↦ c x.
LinearMap build_scalar(const AlgebraShape& shape, Complex c);
/// S(x) = T(x*)*.
LinearMap range_version_adapter(const LinearMap& t);

/// One-sided contractivity certificate over `n_samples` norm-one inputs
/// (the unit and matrix units first, then random unitaries, partial
/// isometries and Gaussian directions). Witnesses "x" and "T(x)" record the
/// worst sample.
RelationReport is_contractive_sampled(const LinearMap& t, int n_samples, std::uint64_t seed,
                                      const ToleranceConfig& tol = kDefaultTolerance);

/// max ||T{x,y,z} - {Tx,Ty,Tz}|| over all triples of matrix units, with the
/// middle slot also taken as i·y.
RelationReport is_triple_hom(const LinearMap& t, const ToleranceConfig& tol = kDefaultTolerance);

/// max ||T(x*) - T(x)*|| over matrix units.
RelationReport symmetry_defect(const LinearMap& t, const ToleranceConfig& tol = kDefaultTolerance);

using ElementPair = std::pair<AlgebraElement, AlgebraElement>;

/// Deterministic stream of compatible pairs.
class PairGenerator {
 public:
  enum class Strategy { Orthogonal, CommutingDiagonal, ReferenceConjugates, DirectSumMix, RandomContraction };

  static constexpr int kRetryBound = 100;

  PairGenerator(Strategy strategy, std::uint64_t seed, ToleranceConfig tol = kDefaultTolerance);

  Strategy strategy() const { return strategy_; }
  std::uint64_t seed() const { return seed_; }
  bool supports(const AlgebraShape& shape) const;

  /// Next pair with compat_defect(a, b, kind) <= tol; resamples up to
  /// kRetryBound times, then throws GeneratorExhausted.
  ElementPair next(const AlgebraShape& shape, CompatKind kind);

 private:
  ElementPair candidate(const AlgebraShape& shape, CompatKind kind);

  Strategy strategy_;
  std::uint64_t seed_;
  ToleranceConfig tol_;
  sampling::Rng rng_;
};

std::string_view to_string(PairGenerator::Strategy s);
PairGenerator::Strategy parse_strategy(std::string_view text);
inline constexpr PairGenerator::Strategy kAllStrategies[] = {
    PairGenerator::Strategy::Orthogonal, PairGenerator::Strategy::CommutingDiagonal,
    PairGenerator::Strategy::ReferenceConjugates, PairGenerator::Strategy::DirectSumMix,
    PairGenerator::Strategy::RandomContraction};

ElementPair generate_compat_pair(PairGenerator& gen, const AlgebraShape& shape, CompatKind kind);

/// The 2x2 positive pair a = [[2/3,1/3],[1/3,1/3]], b = [[2/3,-1/3],[-1/3,1/3]].
ElementPair reference_m2_pair();
/// e = [[0,0],[1,0]] and v = [[0,1],[0,1]]/sqrt(2): e △_d v, but not after transposing.
ElementPair transpose_witness_pair();

/// Fixed pairs tried before any random strategy, embedded into the first
/// block of size >= 2 when there is one. Labels are stable.
std::vector<std::pair<std::string, ElementPair>> seeded_witnesses(const AlgebraShape& shape);

struct PreservationWitness {
  AlgebraElement a;
  AlgebraElement b;
  AlgebraElement image_a;
  AlgebraElement image_b;
  double input_defect = 0.0;
  double output_defect = 0.0;
  std::size_t index = 0;
  std::string source;
};

struct PreservationReport {
  CompatKind input_kind = CompatKind::Domain;
  CompatKind output_kind = CompatKind::Domain;
  std::size_t pairs_tested = 0;
  std::size_t violations = 0;
  double max_output_defect = 0.0;
  double tolerance_used = 0.0;
  std::optional<PreservationWitness> worst;
  bool contractivity_verified = false;
  std::vector<std::string> notes;

  /// One-sided: false is conclusive, true means no violation was found.
  bool verdict() const { return violations == 0; }
};

/// Feeds `n_pairs` pairs with a △_in b from `gen` through T and measures the
/// `output_kind` defect of the images (defaults to `kind`).
PreservationReport preserves_compat_sampled(const LinearMap& t, CompatKind kind, PairGenerator& gen,
                                            std::size_t n_pairs, const ToleranceConfig& tol = kDefaultTolerance,
                                            std::optional<CompatKind> output_kind = std::nullopt);

struct TripleHomClassification {
  AlgebraElement unit_image;
  double unit_image_defect = 0.0;
  double triple_hom_defect = 0.0;
  std::vector<std::size_t> hom_blocks;
  std::vector<std::size_t> antihom_blocks;
  std::vector<double> multiplicative_defects;
  std::vector<double> antimultiplicative_defects;
};

/// Splits the domain blocks of a triple homomorphism into the part where
/// Φ = T(1)*·T is multiplicative and the part where it is anti-multiplicative.
TripleHomClassification classify_triple_hom(const LinearMap& t, const ToleranceConfig& tol = kDefaultTolerance);

/// Searches compatible input pairs (seeded witnesses, then every strategy in
/// turn) for one whose image is not compatible. Deterministic for a seed.
std::optional<PreservationWitness> fuzz_counterexample(const LinearMap& t, CompatKind kind, std::size_t budget,
                                                       std::uint64_t seed,
                                                       const ToleranceConfig& tol = kDefaultTolerance);

}  // namespace abscompat
