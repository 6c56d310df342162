#include "abscompat/preservers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "abscompat/error.hpp"

namespace abscompat {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::StarHom: return "star-hom";
    case Provenance::StarAntiHom: return "star-anti-hom";
    case Provenance::Sandwich: return "sandwich";
    case Provenance::Transpose: return "transpose";
    case Provenance::Compression: return "compression";
    case Provenance::Custom: return "custom";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// LinearMap

LinearMap::LinearMap(AlgebraShape domain, AlgebraShape codomain, ComplexMatrix action, Provenance provenance,
                     std::string note)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      action_(std::move(action)),
      provenance_(provenance),
      note_(std::move(note)) {
  const Eigen::Index m = domain_.total_dim();
  const Eigen::Index n = codomain_.total_dim();
  if (action_.rows() != n * n || action_.cols() != m * m) {
    throw Error(ErrorKind::ShapeMismatch, "LinearMap: action must be " + std::to_string(n * n) + "x" +
                                              std::to_string(m * m) + ", got " + std::to_string(action_.rows()) +
                                              "x" + std::to_string(action_.cols()));
  }
  if (!action_.allFinite()) throw Error(ErrorKind::NumericalFailure, "LinearMap: non-finite action");
  for (Eigen::Index c = 0; c < m * m; ++c) {
    if (!domain_.in_block(static_cast<int>(c % m), static_cast<int>(c / m))) action_.col(c).setZero();
  }
  for (Eigen::Index r = 0; r < n * n; ++r) {
    if (!codomain_.in_block(static_cast<int>(r % n), static_cast<int>(r / n))) action_.row(r).setZero();
  }
}

LinearMap LinearMap::from_function(const AlgebraShape& domain, const AlgebraShape& codomain,
                                   const std::function<AlgebraElement(const AlgebraElement&)>& f,
                                   Provenance provenance, std::string note) {
  const int m = domain.total_dim();
  const int n = codomain.total_dim();
  ComplexMatrix action = ComplexMatrix::Zero(n * n, m * m);
  for (std::size_t b = 0; b < domain.block_count(); ++b) {
    const int off = domain.block_offset(b);
    for (int j = 0; j < domain.block_dim(b); ++j) {
      for (int i = 0; i < domain.block_dim(b); ++i) {
        const AlgebraElement image = f(AlgebraElement::matrix_unit(domain, b, i, j));
        if (!(image.shape() == codomain)) {
          throw Error(ErrorKind::ShapeMismatch, "LinearMap::from_function: image has the wrong shape");
        }
        action.col((off + j) * m + (off + i)) = image.matrix().reshaped();
      }
    }
  }
  return LinearMap(domain, codomain, std::move(action), provenance, std::move(note));
}

LinearMap LinearMap::identity(const AlgebraShape& shape) {
  const int m = shape.total_dim();
  return LinearMap(shape, shape, ComplexMatrix::Identity(m * m, m * m), Provenance::StarHom, "identity");
}

AlgebraElement LinearMap::operator()(const AlgebraElement& x) const {
  if (!(x.shape() == domain_)) throw Error(ErrorKind::ShapeMismatch, "LinearMap: argument outside the domain");
  const int n = codomain_.total_dim();
  const Eigen::VectorXcd image = action_ * x.matrix().reshaped();
  return AlgebraElement(codomain_, image.reshaped(n, n));
}

LinearMap scale(const LinearMap& t, Complex c) {
  return LinearMap(t.domain_shape(), t.codomain_shape(), t.action() * c, Provenance::Custom,
                   "scaled " + std::string(to_string(t.provenance())));
}

LinearMap compose(const LinearMap& outer, const LinearMap& inner) {
  if (!(outer.domain_shape() == inner.codomain_shape())) {
    throw Error(ErrorKind::ShapeMismatch, "compose: inner codomain differs from outer domain");
  }
  return LinearMap(inner.domain_shape(), outer.codomain_shape(), outer.action() * inner.action(),
                   Provenance::Custom, "composition");
}

// ---------------------------------------------------------------------------
// Builders

LinearMap build_block_map(const AlgebraShape& domain, const AlgebraShape& codomain, const BlockMapSpec& spec) {
  std::vector<std::vector<bool>> used(codomain.block_count());
  for (std::size_t j = 0; j < codomain.block_count(); ++j) used[j].assign(codomain.block_dim(j), false);

  bool any_transposed = false;
  bool any_plain = false;
  for (const BlockPlacement& p : spec.placements) {
    if (p.domain_block >= domain.block_count() || p.codomain_block >= codomain.block_count()) {
      throw Error(ErrorKind::ShapeIncompatible, "block map: placement refers to a missing block");
    }
    const int d = domain.block_dim(p.domain_block);
    const int room = codomain.block_dim(p.codomain_block);
    if (p.offset < 0 || p.offset + d > room) {
      throw Error(ErrorKind::ShapeIncompatible, "block map: domain block " + std::to_string(p.domain_block) +
                                                    " does not fit codomain block " +
                                                    std::to_string(p.codomain_block) + " at offset " +
                                                    std::to_string(p.offset));
    }
    for (int k = p.offset; k < p.offset + d; ++k) {
      if (used[p.codomain_block][k]) throw Error(ErrorKind::ShapeIncompatible, "block map: placements overlap");
      used[p.codomain_block][k] = true;
    }
    if (d > 1) (p.transpose ? any_transposed : any_plain) = true;
  }

  if (!spec.unitaries.empty()) {
    if (spec.unitaries.size() != codomain.block_count()) {
      throw Error(ErrorKind::ShapeIncompatible, "block map: need one unitary per codomain block");
    }
    for (std::size_t j = 0; j < codomain.block_count(); ++j) {
      const ComplexMatrix& w = spec.unitaries[j];
      const int d = codomain.block_dim(j);
      if (w.rows() != d || w.cols() != d) {
        throw Error(ErrorKind::ShapeIncompatible, "block map: unitary " + std::to_string(j) + " has the wrong size");
      }
      if (op_norm(w.adjoint() * w - identity(d)) > kDefaultTolerance.reconstruction) {
        throw Error(ErrorKind::NotUnitary, "block map: conjugating matrix " + std::to_string(j) + " is not unitary");
      }
    }
  }

  Provenance provenance = Provenance::StarHom;
  std::string note;
  if (any_transposed && !any_plain) {
    provenance = Provenance::StarAntiHom;
  } else if (any_transposed) {
    provenance = Provenance::Custom;
    note = "mixed hom/anti-hom blocks";
  }

  auto action = [&](const AlgebraElement& x) {
    std::vector<ComplexMatrix> blocks;
    for (std::size_t j = 0; j < codomain.block_count(); ++j) {
      blocks.push_back(ComplexMatrix::Zero(codomain.block_dim(j), codomain.block_dim(j)));
    }
    for (const BlockPlacement& p : spec.placements) {
      const int d = domain.block_dim(p.domain_block);
      const ComplexMatrix src = x.block(p.domain_block);
      blocks[p.codomain_block].block(p.offset, p.offset, d, d) = p.transpose ? ComplexMatrix(src.transpose()) : src;
    }
    if (!spec.unitaries.empty()) {
      for (std::size_t j = 0; j < blocks.size(); ++j) {
        blocks[j] = spec.unitaries[j].adjoint() * blocks[j] * spec.unitaries[j];
      }
    }
    return AlgebraElement::from_blocks(codomain, blocks);
  };
  return LinearMap::from_function(domain, codomain, action, provenance, note);
}

LinearMap build_star_hom(const AlgebraShape& domain, const AlgebraShape& codomain, BlockMapSpec spec) {
  for (const BlockPlacement& p : spec.placements) {
    if (p.transpose && domain.block_dim(p.domain_block) > 1) {
      throw Error(ErrorKind::ShapeIncompatible, "build_star_hom: transposed placement");
    }
  }
  LinearMap out = build_block_map(domain, codomain, spec);
  return LinearMap(out.domain_shape(), out.codomain_shape(), out.action(), Provenance::StarHom);
}

LinearMap build_star_anti_hom(const AlgebraShape& domain, const AlgebraShape& codomain, BlockMapSpec spec) {
  for (BlockPlacement& p : spec.placements) p.transpose = true;
  LinearMap out = build_block_map(domain, codomain, spec);
  return LinearMap(out.domain_shape(), out.codomain_shape(), out.action(), Provenance::StarAntiHom);
}

LinearMap build_transpose(const AlgebraShape& shape) {
  return LinearMap::from_function(
      shape, shape, [&](const AlgebraElement& x) { return AlgebraElement(shape, x.matrix().transpose()); },
      Provenance::Transpose);
}

LinearMap build_sandwich(const AlgebraElement& u, const AlgebraElement& v, const ToleranceConfig& tol) {
  require_same_shape(u, v, "build_sandwich");
  if (!is_unitary(u, tol).verdict) throw Error(ErrorKind::NotUnitary, "build_sandwich: u is not unitary");
  if (!is_unitary(v, tol).verdict) throw Error(ErrorKind::NotUnitary, "build_sandwich: v is not unitary");
  // Only unitarity is required; whether uv or vu is the unit is recorded.
  const AlgebraElement one = unit(u.shape());
  std::string note = "x -> u x v";
  note += distance(u * v, one) <= tol.relation ? "; uv = 1" : "; uv != 1";
  note += distance(v * u, one) <= tol.relation ? "; vu = 1" : "; vu != 1";
  return LinearMap::from_function(
      u.shape(), u.shape(), [&](const AlgebraElement& x) { return u * x * v; }, Provenance::Sandwich,
      std::move(note));
}

LinearMap build_compression(const AlgebraElement& p, const ToleranceConfig& tol) {
  if (!is_projection(p, tol).verdict) throw Error(ErrorKind::InvalidArgument, "build_compression: not a projection");
  return LinearMap::from_function(
      p.shape(), p.shape(), [&](const AlgebraElement& x) { return p * x * p; }, Provenance::Compression,
      "x -> p x p");
}

LinearMap build_scalar(const AlgebraShape& shape, Complex c) {
  const int m = shape.total_dim();
  return LinearMap(shape, shape, ComplexMatrix::Identity(m * m, m * m) * c, Provenance::Custom,
                   "x -> c x, c = (" + std::to_string(c.real()) + ", " + std::to_string(c.imag()) + ")");
}

LinearMap range_version_adapter(const LinearMap& t) {
  return LinearMap::from_function(
      t.domain_shape(), t.codomain_shape(), [&](const AlgebraElement& x) { return adjoint(t(adjoint(x))); },
      Provenance::Custom, "x -> T(x*)*");
}

// ---------------------------------------------------------------------------
// Structural checks

namespace {

std::vector<AlgebraElement> matrix_units(const AlgebraShape& shape) {
  std::vector<AlgebraElement> out;
  out.reserve(static_cast<std::size_t>(shape.algebra_dim()));
  for (std::size_t b = 0; b < shape.block_count(); ++b) {
    for (int i = 0; i < shape.block_dim(b); ++i) {
      for (int j = 0; j < shape.block_dim(b); ++j) out.push_back(AlgebraElement::matrix_unit(shape, b, i, j));
    }
  }
  return out;
}

// Operator norm, skipping the SVD whenever the Frobenius bound cannot beat `best`.
double update_max(double best, const ComplexMatrix& diff) {
  if (diff.norm() <= best) return best;
  return std::max(best, op_norm(diff));
}

}  // namespace

RelationReport is_contractive_sampled(const LinearMap& t, int n_samples, std::uint64_t seed,
                                      const ToleranceConfig& tol) {
  if (n_samples < 1) throw Error(ErrorKind::InvalidArgument, "is_contractive_sampled: n_samples must be >= 1");
  const AlgebraShape& shape = t.domain_shape();
  sampling::Rng rng(seed);
  const std::vector<AlgebraElement> units = matrix_units(shape);

  auto sample = [&](int k) -> AlgebraElement {
    if (k == 0) return unit(shape);
    if (static_cast<std::size_t>(k) <= units.size()) return units[static_cast<std::size_t>(k) - 1];
    switch (k % 3) {
      case 0: return sampling::random_unitary(shape, rng);
      case 1: {
        AlgebraElement p = sampling::random_partial_isometry(shape, rng);
        if (op_norm(p) > 0.5) return p;
        return sampling::random_unit_sphere(shape, rng);
      }
      default: return sampling::random_unit_sphere(shape, rng);
    }
  };

  double worst = -1.0;
  std::optional<AlgebraElement> worst_x;
  for (int k = 0; k < n_samples; ++k) {
    AlgebraElement x = sample(k);
    x = (1.0 / op_norm(x)) * x;
    const double excess = op_norm(t(x)) - 1.0;
    if (excess > worst) {
      worst = excess;
      worst_x = x;
    }
  }
  RelationReport r = RelationReport::make("contractive-sampled", std::max(0.0, worst), tol.relation,
                                          {{"x", worst_x->matrix()}, {"T(x)", t(*worst_x).matrix()}});
  r.notes.push_back("samples=" + std::to_string(n_samples));
  return r;
}

RelationReport is_triple_hom(const LinearMap& t, const ToleranceConfig& tol) {
  const std::vector<AlgebraElement> basis = matrix_units(t.domain_shape());
  std::vector<ComplexMatrix> images;
  images.reserve(basis.size());
  for (const AlgebraElement& e : basis) images.push_back(t(e).matrix());

  const Complex i_unit(0.0, 1.0);
  double worst = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      for (int twist = 0; twist < 2; ++twist) {
        const Complex s = twist == 0 ? Complex(1.0, 0.0) : i_unit;
        const AlgebraElement mid = s * basis[b];
        const ComplexMatrix mid_image_adj = (s * images[b]).adjoint();
        for (std::size_t c = 0; c < basis.size(); ++c) {
          const ComplexMatrix lhs = t(triple(basis[a], mid, basis[c])).matrix();
          const ComplexMatrix rhs = 0.5 * (images[a] * mid_image_adj * images[c] + images[c] * mid_image_adj * images[a]);
          worst = update_max(worst, lhs - rhs);
        }
      }
    }
  }
  return RelationReport::make("triple-hom", worst, tol.relation);
}

RelationReport symmetry_defect(const LinearMap& t, const ToleranceConfig& tol) {
  double worst = 0.0;
  for (const AlgebraElement& e : matrix_units(t.domain_shape())) {
    worst = update_max(worst, t(adjoint(e)).matrix() - t(e).matrix().adjoint());
  }
  return RelationReport::make("symmetric", worst, tol.relation);
}

// ---------------------------------------------------------------------------
// Witness pairs and generators

ElementPair reference_m2_pair() {
  const AlgebraShape m2{2};
  ComplexMatrix a(2, 2), b(2, 2);
  a << 2.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3;
  b << 2.0 / 3, -1.0 / 3, -1.0 / 3, 1.0 / 3;
  return {AlgebraElement(m2, a), AlgebraElement(m2, b)};
}

ElementPair transpose_witness_pair() {
  const AlgebraShape m2{2};
  ComplexMatrix e(2, 2), v(2, 2);
  e << 0, 0, 1, 0;
  v << 0, 1, 0, 1;
  v *= 1.0 / std::numbers::sqrt2;
  return {AlgebraElement(m2, e), AlgebraElement(m2, v)};
}

std::string_view to_string(PairGenerator::Strategy s) {
  using S = PairGenerator::Strategy;
  switch (s) {
    case S::Orthogonal: return "orthogonal";
    case S::CommutingDiagonal: return "commuting-diagonal";
    case S::ReferenceConjugates: return "reference-conjugates";
    case S::DirectSumMix: return "direct-sum-mix";
    case S::RandomContraction: return "random-contraction";
  }
  return "unknown";
}

PairGenerator::Strategy parse_strategy(std::string_view text) {
  for (PairGenerator::Strategy s : kAllStrategies) {
    if (to_string(s) == text) return s;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown strategy '" + std::string(text) + "'");
}

namespace {

using sampling::Rng;
using BlockPair = std::pair<ComplexMatrix, ComplexMatrix>;

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

ComplexMatrix span_projection(const ComplexMatrix& basis, int from, int count) {
  return basis.middleCols(from, count) * basis.middleCols(from, count).adjoint();
}

// a = P1 X Q1, b = P2 Y Q2 with P1 ⊥ P2 and Q1 ⊥ Q2.
BlockPair orthogonal_block(int d, Rng& rng) {
  const ComplexMatrix w1 = sampling::haar_unitary(d, rng);
  const ComplexMatrix w2 = sampling::haar_unitary(d, rng);
  const int k = uniform_int(rng, 0, d);
  const int l = uniform_int(rng, 0, d);
  const ComplexMatrix x = sampling::random_contraction(d, rng);
  const ComplexMatrix y = sampling::random_contraction(d, rng);
  return {span_projection(w1, 0, k) * x * span_projection(w2, 0, l),
          span_projection(w1, k, d - k) * y * span_projection(w2, l, d - l)};
}

// Commuting normal pair W diag(f) W*, W diag(g) W* following the pointwise
// rule: one value unimodular, or one value zero.
BlockPair diagonal_block(int d, Rng& rng) {
  Eigen::VectorXcd f(d), g(d);
  for (int t = 0; t < d; ++t) {
    switch (uniform_int(rng, 0, 4)) {
      case 0: f(t) = sampling::random_phase(rng); g(t) = sampling::random_disc_point(rng); break;
      case 1: f(t) = sampling::random_disc_point(rng); g(t) = sampling::random_phase(rng); break;
      case 2: f(t) = sampling::random_disc_point(rng); g(t) = 0.0; break;
      case 3: f(t) = 0.0; g(t) = sampling::random_disc_point(rng); break;
      default: f(t) = 0.0; g(t) = 0.0; break;
    }
  }
  const ComplexMatrix w = sampling::haar_unitary(d, rng);
  return {w * f.asDiagonal() * w.adjoint(), w * g.asDiagonal() * w.adjoint()};
}

// U W* (a0 ⊕ 0) W and U W* (b0 ⊕ 0) W for the 2x2 positive pair a0, b0.
BlockPair reference_block(int d, Rng& rng) {
  const auto [pa, pb] = reference_m2_pair();
  ComplexMatrix a0 = ComplexMatrix::Zero(d, d);
  ComplexMatrix b0 = ComplexMatrix::Zero(d, d);
  a0.topLeftCorner(2, 2) = pa.matrix();
  b0.topLeftCorner(2, 2) = pb.matrix();
  const ComplexMatrix w = sampling::haar_unitary(d, rng);
  const ComplexMatrix u = sampling::haar_unitary(d, rng);
  return {u * w.adjoint() * a0 * w, u * w.adjoint() * b0 * w};
}

// U diag(s) V* and U diag(t) D V*: shared singular vectors, singular values
// paired pointwise (saturated or disjoint), independent phases D.
BlockPair spectral_block(int d, Rng& rng) {
  RealVector s(d), t(d);
  Eigen::VectorXcd phases(d);
  for (int k = 0; k < d; ++k) {
    switch (uniform_int(rng, 0, 3)) {
      case 0: s(k) = 1.0; t(k) = uniform01(rng); break;
      case 1: s(k) = uniform01(rng); t(k) = 1.0; break;
      case 2: s(k) = uniform01(rng); t(k) = 0.0; break;
      default: s(k) = 0.0; t(k) = uniform01(rng); break;
    }
    phases(k) = sampling::random_phase(rng);
  }
  const ComplexMatrix u = sampling::haar_unitary(d, rng);
  const ComplexMatrix v = sampling::haar_unitary(d, rng);
  const Eigen::VectorXcd tc = t.cast<Complex>().cwiseProduct(phases);
  return {u * s.cast<Complex>().asDiagonal() * v.adjoint(), u * tc.asDiagonal() * v.adjoint()};
}

}  // namespace

PairGenerator::PairGenerator(Strategy strategy, std::uint64_t seed, ToleranceConfig tol)
    : strategy_(strategy), seed_(seed), tol_(tol), rng_(seed) {}

bool PairGenerator::supports(const AlgebraShape& shape) const {
  if (strategy_ != Strategy::ReferenceConjugates) return true;
  const auto& dims = shape.block_dims();
  return std::any_of(dims.begin(), dims.end(), [](int d) { return d >= 2; });
}

ElementPair PairGenerator::candidate(const AlgebraShape& shape, CompatKind kind) {
  std::vector<ComplexMatrix> as, bs;
  for (int d : shape.block_dims()) {
    Strategy s = strategy_;
    if (s == Strategy::DirectSumMix) {
      const int options = d >= 2 ? 4 : 3;
      static constexpr Strategy kPick[] = {Strategy::Orthogonal, Strategy::CommutingDiagonal,
                                           Strategy::RandomContraction, Strategy::ReferenceConjugates};
      s = kPick[uniform_int(rng_, 0, options - 1)];
    }
    BlockPair p;
    switch (s) {
      case Strategy::Orthogonal: p = orthogonal_block(d, rng_); break;
      case Strategy::CommutingDiagonal: p = diagonal_block(d, rng_); break;
      case Strategy::RandomContraction: p = spectral_block(d, rng_); break;
      case Strategy::ReferenceConjugates:
        p = d >= 2 ? reference_block(d, rng_) : BlockPair{ComplexMatrix::Zero(1, 1), ComplexMatrix::Zero(1, 1)};
        break;
      case Strategy::DirectSumMix: break;
    }
    as.push_back(std::move(p.first));
    bs.push_back(std::move(p.second));
  }
  AlgebraElement a = AlgebraElement::from_blocks(shape, as);
  AlgebraElement b = AlgebraElement::from_blocks(shape, bs);

  // One-sided relations survive independent unitaries on the free side,
  // which breaks the other side and yields pairs that are only △_d or △_r.
  if (kind != CompatKind::Full && uniform01(rng_) < 0.5) {
    const AlgebraElement w1 = sampling::random_unitary(shape, rng_);
    const AlgebraElement w2 = sampling::random_unitary(shape, rng_);
    if (kind == CompatKind::Domain) {
      a = w1 * a;
      b = w2 * b;
    } else {
      a = a * w1;
      b = b * w2;
    }
  }
  return {std::move(a), std::move(b)};
}

ElementPair PairGenerator::next(const AlgebraShape& shape, CompatKind kind) {
  if (!supports(shape)) {
    throw Error(ErrorKind::GeneratorExhausted,
                std::string(to_string(strategy_)) + " needs a block of size >= 2");
  }
  for (int attempt = 0; attempt < kRetryBound; ++attempt) {
    ElementPair p = candidate(shape, kind);
    if (compat_defect(p.first, p.second, kind, tol_).verdict) return p;
  }
  throw Error(ErrorKind::GeneratorExhausted, std::string(to_string(strategy_)) + ": no compatible pair after " +
                                                 std::to_string(kRetryBound) + " attempts");
}

ElementPair generate_compat_pair(PairGenerator& gen, const AlgebraShape& shape, CompatKind kind) {
  return gen.next(shape, kind);
}

std::vector<std::pair<std::string, ElementPair>> seeded_witnesses(const AlgebraShape& shape) {
  std::vector<std::pair<std::string, ElementPair>> out;
  const AlgebraElement one = unit(shape);
  const auto& dims = shape.block_dims();
  const auto big = std::find_if(dims.begin(), dims.end(), [](int d) { return d >= 2; });
  if (big != dims.end()) {
    const std::size_t block = static_cast<std::size_t>(std::distance(dims.begin(), big));
    auto lift = [&](const AlgebraElement& m2) {
      ComplexMatrix m = ComplexMatrix::Zero(*big, *big);
      m.topLeftCorner(2, 2) = m2.matrix();
      return AlgebraElement::embed(shape, block, m);
    };
    const auto [pa, pb] = reference_m2_pair();
    const auto [e, v] = transpose_witness_pair();
    out.push_back({"reference-pair", {lift(pa), lift(pb)}});
    out.push_back({"transpose-witness", {lift(e), lift(v)}});
    out.push_back({"transpose-witness-adjoint", {lift(adjoint(e)), lift(adjoint(v))}});
    out.push_back({"saturated-unit-reference", {one, lift(pa)}});
  }
  out.push_back({"saturated-unit-half", {one, 0.5 * one}});
  return out;
}

// ---------------------------------------------------------------------------
// Audits

namespace {

struct ImageCheck {
  bool violation = false;
  double defect = 0.0;
  std::string note;
};

ImageCheck check_images(const AlgebraElement& ta, const AlgebraElement& tb, CompatKind kind,
                        const ToleranceConfig& tol) {
  const double excess = std::max(op_norm(ta), op_norm(tb)) - 1.0;
  if (excess > tol.relation) return {true, excess, "image outside the unit ball"};
  const RelationReport r = compat_defect(ta, tb, kind, tol);
  return {!r.verdict, r.defect, {}};
}

}  // namespace

PreservationReport preserves_compat_sampled(const LinearMap& t, CompatKind kind, PairGenerator& gen,
                                            std::size_t n_pairs, const ToleranceConfig& tol,
                                            std::optional<CompatKind> output_kind) {
  PreservationReport report;
  report.input_kind = kind;
  report.output_kind = output_kind.value_or(kind);
  report.tolerance_used = tol.relation;
  report.contractivity_verified = is_contractive_sampled(t, 64, gen.seed(), tol).verdict;
  if (!report.contractivity_verified) report.notes.push_back("map is not contractive on sampled inputs");

  for (std::size_t k = 0; k < n_pairs; ++k) {
    ElementPair p = gen.next(t.domain_shape(), kind);
    const double in_defect = compat_defect(p.first, p.second, kind, tol).defect;
    AlgebraElement ta = t(p.first);
    AlgebraElement tb = t(p.second);
    const ImageCheck c = check_images(ta, tb, report.output_kind, tol);
    ++report.pairs_tested;
    if (c.violation) {
      ++report.violations;
      if (!c.note.empty() && std::find(report.notes.begin(), report.notes.end(), c.note) == report.notes.end()) {
        report.notes.push_back(c.note);
      }
    }
    if (!report.worst || c.defect > report.max_output_defect) {
      report.max_output_defect = c.defect;
      report.worst = PreservationWitness{std::move(p.first), std::move(p.second), std::move(ta), std::move(tb),
                                         in_defect, c.defect, k, std::string(to_string(gen.strategy()))};
    }
  }
  return report;
}

TripleHomClassification classify_triple_hom(const LinearMap& t, const ToleranceConfig& tol) {
  const RelationReport triple_report = is_triple_hom(t, tol);
  if (!triple_report.verdict) {
    throw Error(ErrorKind::NotTripleHom, "classify_triple_hom: triple product defect " +
                                             std::to_string(triple_report.defect));
  }
  const AlgebraShape& dom = t.domain_shape();
  TripleHomClassification out{t(unit(dom)), 0.0, 0.0, {}, {}, {}, {}};
  out.triple_hom_defect = triple_report.defect;
  out.unit_image_defect = is_partial_isometry(out.unit_image, tol).defect;
  if (out.unit_image_defect > tol.relation) {
    throw Error(ErrorKind::NotTripleHom, "classify_triple_hom: T(1) is not a partial isometry");
  }
  const AlgebraElement e_star = adjoint(out.unit_image);

  for (std::size_t b = 0; b < dom.block_count(); ++b) {
    const int d = dom.block_dim(b);
    // phi[i * d + j] = e* T(E_ij)
    std::vector<ComplexMatrix> phi;
    phi.reserve(static_cast<std::size_t>(d * d));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) phi.push_back((e_star * t(AlgebraElement::matrix_unit(dom, b, i, j))).matrix());
    }
    const ComplexMatrix zero = ComplexMatrix::Zero(phi[0].rows(), phi[0].cols());
    double mult = 0.0;
    double anti = 0.0;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
          for (int l = 0; l < d; ++l) {
            const ComplexMatrix& prod = j == k ? phi[static_cast<std::size_t>(i * d + l)] : zero;
            const ComplexMatrix& x = phi[static_cast<std::size_t>(i * d + j)];
            const ComplexMatrix& y = phi[static_cast<std::size_t>(k * d + l)];
            mult = update_max(mult, prod - x * y);
            anti = update_max(anti, prod - y * x);
          }
        }
      }
    }
    out.multiplicative_defects.push_back(mult);
    out.antimultiplicative_defects.push_back(anti);
    if (d == 1 || (mult <= anti && mult <= tol.relation)) {
      out.hom_blocks.push_back(b);
    } else if (anti <= tol.relation) {
      out.antihom_blocks.push_back(b);
    } else {
      throw Error(ErrorKind::AmbiguousBlock, "classify_triple_hom: block " + std::to_string(b) +
                                                 " is neither multiplicative (" + std::to_string(mult) +
                                                 ") nor anti-multiplicative (" + std::to_string(anti) + ")");
    }
  }
  return out;
}

std::optional<PreservationWitness> fuzz_counterexample(const LinearMap& t, CompatKind kind, std::size_t budget,
                                                       std::uint64_t seed, const ToleranceConfig& tol) {
  if (budget < 1) throw Error(ErrorKind::InvalidArgument, "fuzz_counterexample: budget must be >= 1");
  const AlgebraShape& shape = t.domain_shape();
  std::size_t index = 0;

  auto probe = [&](ElementPair p, std::string source) -> std::optional<PreservationWitness> {
    const double in_defect = compat_defect(p.first, p.second, kind, tol).defect;
    AlgebraElement ta = t(p.first);
    AlgebraElement tb = t(p.second);
    const ImageCheck c = check_images(ta, tb, kind, tol);
    const std::size_t at = index++;
    if (!c.violation) return std::nullopt;
    if (!c.note.empty()) source += " (" + c.note + ")";
    return PreservationWitness{std::move(p.first), std::move(p.second), std::move(ta), std::move(tb),
                               in_defect, c.defect, at, std::move(source)};
  };

  for (auto& [label, pair] : seeded_witnesses(shape)) {
    if (index >= budget) return std::nullopt;
    // Seeded pairs that are not related for this kind are skipped.
    if (!compat_defect(pair.first, pair.second, kind, tol).verdict) continue;
    if (auto w = probe(std::move(pair), "seeded:" + label)) return w;
  }

  std::vector<PairGenerator> gens;
  for (std::size_t s = 0; s < std::size(kAllStrategies); ++s) {
    PairGenerator g(kAllStrategies[s], sampling::derive_seed(seed, s), tol);
    if (g.supports(shape)) gens.push_back(std::move(g));
  }
  for (std::size_t round = 0; index < budget; ++round) {
    PairGenerator& g = gens[round % gens.size()];
    if (auto w = probe(g.next(shape, kind), std::string(to_string(g.strategy())))) return w;
  }
  return std::nullopt;
}

}  // namespace abscompat
