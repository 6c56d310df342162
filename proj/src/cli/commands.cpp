#include "abscompat/cli.hpp"

#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "abscompat/error.hpp"
#include "abscompat/io.hpp"
#include "abscompat/suite.hpp"

namespace abscompat {

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;
constexpr int kExitWitness = 3;

void print_matrix(std::ostream& out, const ComplexMatrix& m, const std::string& indent) {
  std::ostringstream row;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    row.str("");
    row << indent << '[';
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex z = m(r, c);
      row << (c ? ", " : "") << std::setprecision(6) << z.real();
      if (z.imag() != 0.0) row << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << 'i';
    }
    out << row.str() << "]\n";
  }
}

void print_report(std::ostream& out, const RelationReport& r) {
  out << "relation:  " << r.relation_name << '\n'
      << "verdict:   " << (r.verdict ? "true" : "false") << '\n'
      << "defect:    " << std::setprecision(10) << r.defect << '\n'
      << "tolerance: " << r.tolerance_used << '\n';
  for (const Witness& w : r.witnesses) {
    out << "witness " << w.name << ":\n";
    print_matrix(out, w.matrix, "  ");
  }
  for (const std::string& n : r.notes) out << "note: " << n << '\n';
}

struct CheckOptions {
  std::string relation;
  std::string file_a;
  std::string file_b;
  std::string kind = "full";
  double tol = kDefaultTolerance.relation;
  bool json = false;
};

int cmd_check(const CheckOptions& o, std::ostream& out, std::ostream& err) {
  const ToleranceConfig tol = kDefaultTolerance.with_relation(o.tol);
  const AlgebraElement a = io::read_matrix_file(o.file_a);
  auto second = [&] {
    if (o.file_b.empty()) throw Error(ErrorKind::InvalidArgument, "relation '" + o.relation + "' needs two files");
    return io::read_matrix_file(o.file_b);
  };
  RelationReport r;
  if (o.relation == "compat") {
    r = compat_defect(a, second(), parse_compat_kind(o.kind), tol);
  } else if (o.relation == "orth") {
    r = is_orthogonal(a, second(), tol);
  } else if (o.relation == "positive") {
    r = is_positive(a, tol);
  } else if (o.relation == "contraction") {
    r = is_contraction(a, tol);
  } else if (o.relation == "hermitian") {
    r = is_hermitian(a, tol);
  } else if (o.relation == "projection") {
    r = is_projection(a, tol);
  } else if (o.relation == "partial-isometry") {
    r = is_partial_isometry(a, tol);
  } else {
    err << "unknown relation '" << o.relation << "'\n";
    return kExitError;
  }
  if (o.json) {
    out << io::to_json(r).dump(2) << '\n';
  } else {
    print_report(out, r);
  }
  return r.verdict ? kExitTrue : kExitFalse;
}

struct SuiteOptions {
  std::vector<int> dims{2, 3};
  int trials = 200;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance.relation;
  bool json = false;
};

int cmd_verify_suite(const SuiteOptions& o, std::ostream& out) {
  SuiteConfig cfg{o.dims, o.trials, o.seed, kDefaultTolerance.with_relation(o.tol)};
  const std::vector<SuiteResult> results = run_verify_suite(cfg);
  bool all = true;
  for (const SuiteResult& r : results) all = all && r.ok();
  if (o.json) {
    io::Json arr = io::Json::array();
    for (const SuiteResult& r : results) {
      arr.push_back({{"name", r.name},
                     {"ok", r.ok()},
                     {"trials", r.trials},
                     {"passed", r.passed},
                     {"failed", r.failed},
                     {"indeterminate", r.indeterminate},
                     {"worst_defect", r.worst_defect},
                     {"notes", r.notes}});
    }
    out << io::Json{{"ok", all}, {"suites", std::move(arr)}}.dump(2) << '\n';
  } else {
    out << std::left << std::setw(28) << "suite" << std::right << std::setw(8) << "trials" << std::setw(8) << "pass"
        << std::setw(8) << "fail" << std::setw(8) << "indet" << std::setw(14) << "worst" << "  status\n";
    for (const SuiteResult& r : results) {
      out << std::left << std::setw(28) << r.name << std::right << std::setw(8) << r.trials << std::setw(8)
          << r.passed << std::setw(8) << r.failed << std::setw(8) << r.indeterminate << std::setw(14)
          << std::setprecision(3) << std::scientific << r.worst_defect << std::defaultfloat << "  "
          << (r.ok() ? "PASS" : "FAIL") << '\n';
      for (const std::string& n : r.notes) out << "    note: " << n << '\n';
    }
    out << (all ? "all suites passed" : "some suites failed") << '\n';
  }
  return all ? kExitTrue : kExitFalse;
}

struct ClassifyOptions {
  std::string map_file;
  double tol = kDefaultTolerance.relation;
  bool json = false;
};

std::string block_list(const std::vector<std::size_t>& blocks) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < blocks.size(); ++i) os << (i ? ", " : "") << blocks[i];
  os << '}';
  return os.str();
}

int cmd_classify(const ClassifyOptions& o, std::ostream& out) {
  const ToleranceConfig tol = kDefaultTolerance.with_relation(o.tol);
  const LinearMap t = io::read_map_file(o.map_file).to_map(tol);
  const RelationReport th = is_triple_hom(t, tol);
  if (!th.verdict) {
    if (o.json) {
      out << io::Json{{"triple_hom", false}, {"triple_hom_defect", th.defect}}.dump(2) << '\n';
    } else {
      out << "triple hom: false (defect " << std::setprecision(10) << th.defect << ")\n";
    }
    return kExitFalse;
  }
  const TripleHomClassification c = classify_triple_hom(t, tol);
  const bool unit_pi = c.unit_image_defect <= tol.relation;
  if (o.json) {
    io::Json j = io::to_json(c);
    j["triple_hom"] = true;
    j["unit_image_partial_isometry"] = unit_pi;
    out << j.dump(2) << '\n';
  } else {
    out << "triple hom: true (defect " << std::setprecision(10) << c.triple_hom_defect << ")\n"
        << "T(1) partial isometry: " << (unit_pi ? "true" : "false") << " (defect " << c.unit_image_defect << ")\n"
        << "I (multiplicative): " << block_list(c.hom_blocks) << '\n'
        << "J (anti-multiplicative): " << block_list(c.antihom_blocks) << '\n';
  }
  return kExitTrue;
}

struct FuzzOptions {
  std::string map_file;
  std::string kind = "domain";
  std::size_t budget = 1000;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance.relation;
  std::string out_dir = ".";
  bool json = false;
};

int cmd_fuzz(const FuzzOptions& o, std::ostream& out) {
  const ToleranceConfig tol = kDefaultTolerance.with_relation(o.tol);
  const LinearMap t = io::read_map_file(o.map_file).to_map(tol);
  const auto w = fuzz_counterexample(t, parse_compat_kind(o.kind), o.budget, o.seed, tol);
  if (!w) {
    if (o.json) {
      out << io::Json{{"witness", nullptr}, {"budget", o.budget}}.dump(2) << '\n';
    } else {
      out << "no counterexample in " << o.budget << " pairs\n";
    }
    return kExitTrue;
  }
  const std::filesystem::path dir(o.out_dir);
  std::filesystem::create_directories(dir);
  io::write_matrix_file(dir / "witness_a.json", w->a);
  io::write_matrix_file(dir / "witness_b.json", w->b);
  if (o.json) {
    out << io::Json{{"witness", io::to_json(*w)}}.dump(2) << '\n';
  } else {
    out << "counterexample from " << w->source << " (pair " << w->index << ")\n"
        << "input defect:  " << std::setprecision(10) << w->input_defect << '\n'
        << "output defect: " << w->output_defect << '\n'
        << "wrote " << (dir / "witness_a.json").string() << " and " << (dir / "witness_b.json").string() << '\n';
  }
  return kExitWitness;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Absolute compatibility checks on finite-dimensional C*-algebras"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* c = app.add_subcommand("check", "Test one relation on matrix files");
  c->add_option("relation", check.relation,
                "compat | orth | positive | contraction | hermitian | projection | partial-isometry")
      ->required();
  c->add_option("a", check.file_a, "first matrix file")->required();
  c->add_option("b", check.file_b, "second matrix file");
  c->add_option("--kind", check.kind, "domain | range | full")->check(CLI::IsMember({"domain", "range", "full"}));
  c->add_option("--tol", check.tol, "relation tolerance")->check(CLI::PositiveNumber);
  c->add_flag("--json", check.json, "machine-readable output");

  SuiteOptions suite;
  auto* v = app.add_subcommand("verify-suite", "Run every equivalence and preserver suite");
  v->add_option("--dims", suite.dims, "comma-separated block sizes")->delimiter(',');
  v->add_option("--trials", suite.trials, "trials per suite and shape");
  v->add_option("--seed", suite.seed, "base seed");
  v->add_option("--tol", suite.tol, "relation tolerance")->check(CLI::PositiveNumber);
  v->add_flag("--json", suite.json, "machine-readable output");

  ClassifyOptions classify;
  auto* k = app.add_subcommand("classify", "Split a triple homomorphism into hom and anti-hom blocks");
  k->add_option("map", classify.map_file, "map file")->required();
  k->add_option("--tol", classify.tol, "relation tolerance")->check(CLI::PositiveNumber);
  k->add_flag("--json", classify.json, "machine-readable output");

  FuzzOptions fuzz;
  auto* f = app.add_subcommand("fuzz", "Search for a compatible pair whose image is not compatible");
  f->add_option("map", fuzz.map_file, "map file")->required();
  f->add_option("--kind", fuzz.kind, "domain | range | full")->check(CLI::IsMember({"domain", "range", "full"}));
  f->add_option("--budget", fuzz.budget, "number of pairs to try")->check(CLI::PositiveNumber);
  f->add_option("--seed", fuzz.seed, "seed");
  f->add_option("--tol", fuzz.tol, "relation tolerance")->check(CLI::PositiveNumber);
  f->add_option("--out-dir", fuzz.out_dir, "where witness_a.json and witness_b.json go");
  f->add_flag("--json", fuzz.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitTrue : kExitError;
  }

  try {
    if (*c) return cmd_check(check, out, err);
    if (*v) return cmd_verify_suite(suite, out);
    if (*k) return cmd_classify(classify, out);
    if (*f) return cmd_fuzz(fuzz, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace abscompat
