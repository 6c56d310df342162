#include "abscompat/suite.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "abscompat/error.hpp"
#include "abscompat/preservers.hpp"
#include "abscompat/relations.hpp"
#include "abscompat/sampling.hpp"

namespace abscompat {

namespace {

using sampling::Rng;

std::string shape_label(const AlgebraShape& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.block_count(); ++i) os << (i ? "+" : "") << "M" << s.block_dim(i);
  return os.str();
}

bool has_matrix_block(const AlgebraShape& s) {
  const auto& d = s.block_dims();
  return std::any_of(d.begin(), d.end(), [](int n) { return n >= 2; });
}

void tally(SuiteResult& r, const ConsistencyReport& c) {
  ++r.trials;
  if (!c.consistent()) {
    ++r.failed;
  } else {
    ++r.passed;
    r.indeterminate += c.indeterminate_count() > 0 ? 1 : 0;
  }
  for (const ClauseResult& clause : c.clauses)
    for (const RelationReport& side : clause.sides)
      if (side.verdict) r.worst_defect = std::max(r.worst_defect, side.defect);
}

void tally(SuiteResult& r, bool ok, double defect) {
  ++r.trials;
  ++(ok ? r.passed : r.failed);
  r.worst_defect = std::max(r.worst_defect, defect);
}

/// Indeterminate trials count against a suite once they reach 1%.
void close_band(SuiteResult& r) {
  if (r.trials > 0 && 100 * r.indeterminate >= r.trials) r.notes.push_back("indeterminate band >= 1%");
}

SuiteResult orth_suite(const std::vector<AlgebraShape>& shapes, const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "orth-characterization";
  for (std::size_t si = 0; si < shapes.size(); ++si) {
    const AlgebraShape& s = shapes[si];
    Rng rng(sampling::derive_seed(cfg.seed, 100 + si));
    PairGenerator orth(PairGenerator::Strategy::Orthogonal, sampling::derive_seed(cfg.seed, 200 + si), cfg.tol);
    PairGenerator conj(PairGenerator::Strategy::ReferenceConjugates, sampling::derive_seed(cfg.seed, 300 + si),
                        cfg.tol);
    for (int t = 0; t < cfg.trials; ++t) {
      ElementPair p = [&] {
        switch (t % 3) {
          case 0: return orth.next(s, CompatKind::Full);
          case 1:
            if (conj.supports(s)) return conj.next(s, CompatKind::Full);
            [[fallthrough]];
          default: return ElementPair{sampling::random_contraction(s, rng), sampling::random_contraction(s, rng)};
        }
      }();
      tally(r, check_orth_characterization(p.first, p.second, cfg.tol));
    }
  }
  close_band(r);
  return r;
}

SuiteResult p00_suite(const std::vector<AlgebraShape>& shapes, const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "jordan-equivalences";
  for (std::size_t si = 0; si < shapes.size(); ++si) {
    const AlgebraShape& s = shapes[si];
    Rng rng(sampling::derive_seed(cfg.seed, 400 + si));
    PairGenerator orth(PairGenerator::Strategy::Orthogonal, sampling::derive_seed(cfg.seed, 500 + si), cfg.tol);
    for (int t = 0; t < cfg.trials; ++t) {
      AlgebraElement a = sampling::random_positive_contraction(s, rng);
      AlgebraElement b = a;
      switch (t % 3) {
        case 0: b = sampling::random_positive_contraction(s, rng); break;
        case 1: b = range_projection(a, cfg.tol.rank); break;
        default: {
          // Orthogonal positive pair: |x| and |y| of an orthogonal pair.
          auto [x, y] = orth.next(s, CompatKind::Full);
          a = abs_value(x);
          b = abs_value(y);
        }
      }
      tally(r, check_p00_equivalences(a, b, cfg.tol));
    }
  }
  close_band(r);
  return r;
}

SuiteResult tripotent_suite(const std::vector<AlgebraShape>& shapes, const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "tripotent-characterization";
  for (std::size_t si = 0; si < shapes.size(); ++si) {
    const AlgebraShape& s = shapes[si];
    Rng rng(sampling::derive_seed(cfg.seed, 600 + si));
    for (int t = 0; t < cfg.trials; ++t) {
      AlgebraElement a = [&] {
        switch (t % 3) {
          case 0: return sampling::random_contraction(s, rng);
          case 1: return sampling::random_partial_isometry(s, rng);
          default: return 0.9 * sampling::random_partial_isometry(s, rng);
        }
      }();
      tally(r, check_tripotent_characterization(a, cfg.tol));
    }
  }
  close_band(r);
  return r;
}

SuiteResult commutative_suite(const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "commutative-cross-check";
  Rng rng(sampling::derive_seed(cfg.seed, 700));
  std::uniform_int_distribution<int> size(1, 8), pick(0, 3);
  auto value = [&](int kind) -> Complex {
    switch (kind) {
      case 0: return 0.0;
      case 1: return sampling::random_phase(rng);
      default: return sampling::random_disc_point(rng);
    }
  };
  for (int t = 0; t < cfg.trials; ++t) {
    const int n = size(rng);
    std::vector<Complex> f(static_cast<std::size_t>(n)), g(static_cast<std::size_t>(n));
    ComplexMatrix df = ComplexMatrix::Zero(n, n), dg = ComplexMatrix::Zero(n, n);
    // Pointwise compatible values on most points so both verdicts occur.
    const bool aim_compatible = t % 2 == 0;
    for (int i = 0; i < n; ++i) {
      int kf = pick(rng), kg = pick(rng);
      if (aim_compatible && kf >= 2 && kg >= 2) kg = 0;
      f[static_cast<std::size_t>(i)] = df(i, i) = value(kf);
      g[static_cast<std::size_t>(i)] = dg(i, i) = value(kg);
    }
    const AlgebraShape s(std::vector<int>(static_cast<std::size_t>(n), 1));
    const RelationReport fun = commutative_compat_check(f, g, cfg.tol);
    const RelationReport mat = compat_defect(AlgebraElement(s, df), AlgebraElement(s, dg), CompatKind::Full, cfg.tol);
    tally(r, fun.verdict == mat.verdict, mat.verdict ? mat.defect : 0.0);
  }
  return r;
}

SuiteResult spectral_suite(const std::vector<AlgebraShape>& shapes, const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "spectral-tripotents";
  for (std::size_t si = 0; si < shapes.size(); ++si) {
    const AlgebraShape& s = shapes[si];
    Rng rng(sampling::derive_seed(cfg.seed, 800 + si));
    for (int t = 0; t < cfg.trials; ++t) {
      const AlgebraElement x = sampling::random_contraction(s, rng);
      const AlgebraElement lo = spectral_tripotent(x, 0.0, 0.5, IntervalBoundary::OpenOpen, cfg.tol);
      const AlgebraElement hi = spectral_tripotent(x, 0.5, 1.0, IntervalBoundary::ClosedClosed, cfg.tol);
      const AlgebraElement whole = spectral_tripotent(x, 0.0, 1.0, IntervalBoundary::OpenClosed, cfg.tol);
      const double d = std::max({is_orthogonal(lo, hi, cfg.tol).defect, distance(lo + hi, whole),
                                 is_partial_isometry(whole, cfg.tol).defect});
      tally(r, d <= cfg.tol.relation, d);
    }
  }
  return r;
}

struct NamedMap {
  std::string name;
  LinearMap map;
  /// Image kind that domain-compatible inputs must land in. Mixed maps have
  /// none: their hom part keeps △_d and their anti-hom part turns it into △_r.
  std::optional<CompatKind> out_kind_for_domain;
};

std::vector<NamedMap> triple_homs(const AlgebraShape& s, Rng& rng) {
  std::vector<NamedMap> maps;
  BlockMapSpec spec;
  for (std::size_t i = 0; i < s.block_count(); ++i) {
    spec.placements.push_back({i, i, 0, false});
    spec.unitaries.push_back(sampling::haar_unitary(s.block_dim(i), rng));
  }
  maps.push_back({"star-hom", build_star_hom(s, s, spec), CompatKind::Domain});
  maps.push_back({"star-anti-hom", build_star_anti_hom(s, s, spec), CompatKind::Range});
  maps.push_back({"sandwich",
                  build_sandwich(sampling::random_unitary(s, rng), sampling::random_unitary(s, rng)),
                  CompatKind::Domain});
  if (s.block_count() > 1) {
    BlockMapSpec mixed = spec;
    mixed.placements.back().transpose = true;
    maps.push_back({"mixed", build_block_map(s, s, mixed), std::nullopt});
  }
  return maps;
}

SuiteResult preserver_suite(const std::vector<AlgebraShape>& shapes, const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "triple-homs-preserve";
  for (std::size_t si = 0; si < shapes.size(); ++si) {
    const AlgebraShape& s = shapes[si];
    Rng rng(sampling::derive_seed(cfg.seed, 900 + si));
    for (const NamedMap& m : triple_homs(s, rng)) {
      const double th = is_triple_hom(m.map, cfg.tol).defect;
      const double unit_pi = is_partial_isometry(m.map(unit(s)), cfg.tol).defect;
      const bool structural = th <= cfg.tol.relation && unit_pi <= cfg.tol.relation;
      tally(r, structural, std::max(th, unit_pi));
      if (!structural) r.notes.push_back(shape_label(s) + " " + m.name + ": structure check failed");

      PairGenerator full(PairGenerator::Strategy::DirectSumMix, sampling::derive_seed(cfg.seed, 1000 + si), cfg.tol);
      const PreservationReport pf =
          preserves_compat_sampled(m.map, CompatKind::Full, full, static_cast<std::size_t>(cfg.trials), cfg.tol);
      tally(r, pf.verdict(), pf.max_output_defect);
      if (!pf.verdict()) r.notes.push_back(shape_label(s) + " " + m.name + ": full compatibility not preserved");

      if (!m.out_kind_for_domain) continue;
      PairGenerator dom(PairGenerator::Strategy::RandomContraction, sampling::derive_seed(cfg.seed, 1100 + si),
                        cfg.tol);
      const PreservationReport pd = preserves_compat_sampled(m.map, CompatKind::Domain, dom,
                                                             static_cast<std::size_t>(cfg.trials), cfg.tol,
                                                             *m.out_kind_for_domain);
      tally(r, pd.verdict(), pd.max_output_defect);
      if (!pd.verdict()) r.notes.push_back(shape_label(s) + " " + m.name + ": domain compatibility not carried");
    }
  }
  return r;
}

SuiteResult fuzz_suite(const std::vector<AlgebraShape>& shapes, const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "fuzz-contrapositive";
  for (std::size_t si = 0; si < shapes.size(); ++si) {
    const AlgebraShape& s = shapes[si];
    const std::uint64_t seed = sampling::derive_seed(cfg.seed, 1200 + si);
    const std::size_t prefix = seeded_witnesses(s).size();
    // Transpose breaks domain compatibility exactly when some block is noncommutative.
    const auto tw = fuzz_counterexample(build_transpose(s), CompatKind::Domain, prefix, seed, cfg.tol);
    tally(r, tw.has_value() == has_matrix_block(s), 0.0);
    const auto half = fuzz_counterexample(build_scalar(s, 0.5), CompatKind::Full, prefix, seed, cfg.tol);
    tally(r, half.has_value(), 0.0);
    const auto hom = fuzz_counterexample(LinearMap::identity(s), CompatKind::Full,
                                         static_cast<std::size_t>(cfg.trials), seed, cfg.tol);
    tally(r, !hom.has_value(), 0.0);
    if (hom) r.notes.push_back(shape_label(s) + " identity: witness from " + hom->source);
  }
  // Informational: how the image defect of x -> c x tracks its triple-hom
  // defect |c - c^3| as c approaches 1. Not asserted.
  const AlgebraShape& s = shapes.front();
  for (double c : {0.9, 0.99, 0.999}) {
    const LinearMap t = build_scalar(s, c);
    const auto w = fuzz_counterexample(t, CompatKind::Full, seeded_witnesses(s).size(), cfg.seed, cfg.tol);
    std::ostringstream os;
    os << "calibration c=" << c << ": triple-hom defect " << is_triple_hom(t, cfg.tol).defect
       << ", image defect " << (w ? w->output_defect : 0.0);
    r.notes.push_back(os.str());
  }
  return r;
}

}  // namespace

bool SuiteResult::ok() const {
  return failed == 0 && (trials == 0 || 100 * indeterminate < trials);
}

std::vector<AlgebraShape> suite_shapes(const std::vector<int>& dims) {
  if (dims.empty()) throw Error(ErrorKind::InvalidArgument, "dims list is empty");
  std::vector<AlgebraShape> shapes;
  for (int d : dims) {
    if (d < 1) throw Error(ErrorKind::InvalidArgument, "dims must be positive");
    shapes.push_back(d == 1 ? AlgebraShape{1, 1, 1, 1} : AlgebraShape{d});
  }
  if (dims.size() > 1) shapes.emplace_back(dims);
  return shapes;
}

std::vector<SuiteResult> run_verify_suite(const SuiteConfig& config) {
  if (config.trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  const std::vector<AlgebraShape> shapes = suite_shapes(config.dims);
  return {orth_suite(shapes, config),      p00_suite(shapes, config),       tripotent_suite(shapes, config),
          commutative_suite(config),       spectral_suite(shapes, config),  preserver_suite(shapes, config),
          fuzz_suite(shapes, config)};
}

}  // namespace abscompat
