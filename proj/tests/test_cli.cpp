#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "abscompat/cli.hpp"
#include "abscompat/error.hpp"
#include "abscompat/io.hpp"
#include "test_support.hpp"

using namespace abscompat;
namespace fs = std::filesystem;
using io::Json;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("abscompat_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    const double s = 1.0 / std::numbers::sqrt2;
    write("a.json", test_support::m2(2.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3));
    write("b.json", test_support::m2(2.0 / 3, -1.0 / 3, -1.0 / 3, 1.0 / 3));
    write("et.json", test_support::m2(0, 1, 0, 0));
    write("vt.json", test_support::m2(0, 0, s, s));
    write("p.json", test_support::m2(1, 0, 0, 0));
    write("q.json", test_support::m2(0, 0, 0, 1));
    write_text("transpose.json", R"({"domain_shape":[2],"codomain_shape":[2],"builder":{"kind":"transpose"}})");
    write_text("hom.json", R"({"domain_shape":[2],"codomain_shape":[2,2],"builder":{"kind":"star_hom",
      "placements":[{"domain_block":0,"codomain_block":0},{"domain_block":0,"codomain_block":1}]}})");
    write_text("half.json", R"({"domain_shape":[2],"codomain_shape":[2],"builder":{"kind":"scalar","c":[0.5,0]}})");
    write_text("malformed.json", "{\"domain_shape\": [2], ");
    write_text("bad_shape.json", R"({"shape":[2],"entries":[[[[1,0]]]]})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const AlgebraElement& x) const { io::write_matrix_file(dir_ / name, x); }
  void write_text(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "abscompat");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return run_cli(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

}  // namespace

// --- serialization -----------------------------------------------------------

TEST(Serialization, MatrixRoundTripIsIdempotent) {
  sampling::Rng rng(1);
  for (const AlgebraShape& s : {AlgebraShape{2}, AlgebraShape{1, 3}, AlgebraShape{2, 1, 2}}) {
    const AlgebraElement x = sampling::random_contraction(s, rng);
    const Json once = io::element_to_json(x);
    const Json twice = io::element_to_json(io::element_from_json(once));
    EXPECT_EQ(once, twice);
    EXPECT_EQ(distance(io::element_from_json(once), x), 0.0);
  }
}

TEST(Serialization, MapRoundTripIsIdempotent) {
  sampling::Rng rng(2);
  const AlgebraShape s{2, 2};
  std::vector<Json> payloads = {
      Json::parse(R"({"domain_shape":[2,2],"codomain_shape":[2,2],"builder":{"kind":"identity"}})"),
      Json::parse(R"({"domain_shape":[2],"codomain_shape":[2],"builder":{"kind":"scalar","c":[0.5,-1.0]}})"),
      Json::parse(R"({"domain_shape":[2,2],"codomain_shape":[2,2],"builder":{"kind":"block_map",
        "placements":[{"domain_block":0,"codomain_block":0},{"domain_block":1,"codomain_block":1,"transpose":true}]}})"),
  };
  io::MapFile sandwich{s, s, io::BuilderSpec{"sandwich", {}, sampling::random_unitary(s, rng),
                                             sampling::random_unitary(s, rng), std::nullopt, 1.0},
                       std::nullopt};
  payloads.push_back(io::map_to_json(sandwich));
  payloads.push_back(io::map_to_json(io::map_file_from(build_transpose(s))));
  for (const Json& j : payloads) {
    const Json once = io::map_to_json(io::map_from_json(j));
    const Json twice = io::map_to_json(io::map_from_json(once));
    EXPECT_EQ(once, twice) << j.dump();
  }
  // Builder and raw forms describe the same map.
  const LinearMap from_builder = io::map_from_json(payloads[2]).to_map();
  const LinearMap from_raw = io::map_from_json(io::map_to_json(io::map_file_from(from_builder))).to_map();
  EXPECT_EQ((from_builder.action() - from_raw.action()).norm(), 0.0);
}

TEST(Serialization, RejectsMalformedPayloads) {
  auto parse_kind = [](const char* text, bool map) {
    try {
      if (map) {
        io::map_from_json(Json::parse(text));
      } else {
        io::element_from_json(Json::parse(text));
      }
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  EXPECT_EQ(parse_kind(R"({"shape":[2],"entries":[[[[1,0],[0,0]]]]})", false), ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"shape":[1,1],"entries":[[[[1,0]]]]})", false), ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"shape":[1],"entries":[[[[1,0,3]]]]})", false), ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"shape":[0],"entries":[]})", false), ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"domain_shape":[1],"codomain_shape":[1],"action":[[[1,0],[0,0]]]})", true),
            ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"domain_shape":[1],"codomain_shape":[1],"builder":{"kind":"rotate"}})", true),
            ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"domain_shape":[1],"codomain_shape":[1]})", true), ErrorKind::Parse);
}

// --- check -----------------------------------------------------------------------

TEST_F(CliTest, CheckReferencePairIsCompatible) {
  EXPECT_EQ(run({"check", "compat", path("a.json"), path("b.json"), "--kind", "full", "--json"}), 0);
  const Json j = Json::parse(out_.str());
  EXPECT_TRUE(j.at("verdict").get<bool>());
  EXPECT_LT(j.at("defect").get<double>(), 1e-9);
}

TEST_F(CliTest, CheckTransposedWitnessFails) {
  EXPECT_EQ(run({"check", "compat", path("et.json"), path("vt.json"), "--kind", "domain"}), 1);
  EXPECT_NE(out_.str().find("verdict:   false"), std::string::npos);
  EXPECT_EQ(run({"check", "compat", path("et.json"), path("vt.json"), "--kind", "domain", "--json"}), 1);
  EXPECT_NEAR(Json::parse(out_.str()).at("defect").get<double>(), 0.41421356, 1e-8);
}

TEST_F(CliTest, CheckOrthogonalProjections) {
  EXPECT_EQ(run({"check", "orth", path("p.json"), path("q.json")}), 0);
  EXPECT_EQ(run({"check", "projection", path("p.json")}), 0);
  EXPECT_EQ(run({"check", "partial-isometry", path("et.json")}), 0);
  EXPECT_EQ(run({"check", "positive", path("et.json")}), 1);
}

TEST_F(CliTest, JsonCarriesEveryReportField) {
  run({"check", "compat", path("a.json"), path("b.json"), "--json"});
  const Json j = Json::parse(out_.str());
  for (const char* key : {"relation_name", "verdict", "defect", "tolerance_used", "witnesses", "notes"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j.at("witnesses").size(), 8u);  // full kind: domain and range sets
}

TEST_F(CliTest, TextAndJsonVerdictsAgree) {
  for (const auto& [rel, a, b] : std::vector<std::tuple<std::string, std::string, std::string>>{
           {"compat", "a.json", "b.json"}, {"compat", "et.json", "vt.json"}, {"orth", "a.json", "b.json"},
           {"orth", "p.json", "q.json"},   {"positive", "a.json", ""},        {"contraction", "b.json", ""}}) {
    std::vector<std::string> args = {"check", rel, path(a)};
    if (!b.empty()) args.push_back(path(b));
    args.insert(args.end(), {"--kind", "domain"});
    const int text_code = run(args);
    const bool text_true = out_.str().find("verdict:   true") != std::string::npos;
    args.push_back("--json");
    const int json_code = run(args);
    EXPECT_EQ(text_code, json_code);
    EXPECT_EQ(text_true, Json::parse(out_.str()).at("verdict").get<bool>());
  }
}

TEST_F(CliTest, CheckErrorsExitTwo) {
  EXPECT_EQ(run({"check", "compat", path("a.json")}), 2);
  EXPECT_EQ(run({"check", "compat", path("a.json"), path("missing.json")}), 2);
  EXPECT_EQ(run({"check", "positive", path("bad_shape.json")}), 2);
  EXPECT_EQ(run({"check", "sideways", path("a.json")}), 2);
  EXPECT_EQ(run({"check", "compat", path("a.json"), path("b.json"), "--tol", "-1"}), 2);
  EXPECT_EQ(run({"check", "compat", path("a.json"), path("b.json"), "--kind", "diagonal"}), 2);
  EXPECT_FALSE(err_.str().empty());
}

// --- verify-suite ----------------------------------------------------------------

TEST_F(CliTest, VerifySuitePasses) {
  EXPECT_EQ(run({"verify-suite", "--dims", "2,3", "--trials", "30", "--seed", "7", "--json"}), 0);
  const Json j = Json::parse(out_.str());
  EXPECT_TRUE(j.at("ok").get<bool>());
  EXPECT_EQ(j.at("suites").size(), 7u);
}

TEST_F(CliTest, VerifySuiteDiagonalOnly) {
  EXPECT_EQ(run({"verify-suite", "--dims", "1", "--trials", "100"}), 0);
  EXPECT_NE(out_.str().find("commutative-cross-check"), std::string::npos);
}

TEST_F(CliTest, VerifySuiteConfigErrors) {
  EXPECT_EQ(run({"verify-suite", "--trials", "0"}), 2);
  EXPECT_EQ(run({"verify-suite", "--dims", "0"}), 2);
  EXPECT_EQ(run({"verify-suite", "--dims", "two"}), 2);
}

// --- classify ----------------------------------------------------------------------

TEST_F(CliTest, ClassifyTransposeIsAntiHom) {
  EXPECT_EQ(run({"classify", path("transpose.json"), "--json"}), 0);
  const Json j = Json::parse(out_.str());
  EXPECT_TRUE(j.at("triple_hom").get<bool>());
  EXPECT_EQ(j.at("antihom_blocks"), Json::array({0}));
  EXPECT_TRUE(j.at("hom_blocks").empty());
}

TEST_F(CliTest, ClassifyStarHom) {
  EXPECT_EQ(run({"classify", path("hom.json")}), 0);
  EXPECT_NE(out_.str().find("I (multiplicative): {0}"), std::string::npos);
}

TEST_F(CliTest, ClassifyHalfMapExitsOne) {
  EXPECT_EQ(run({"classify", path("half.json")}), 1);
  EXPECT_NE(out_.str().find("0.375"), std::string::npos);
  EXPECT_EQ(run({"classify", path("malformed.json")}), 2);
}

// --- fuzz --------------------------------------------------------------------------

TEST_F(CliTest, FuzzTransposeWritesWitness) {
  EXPECT_EQ(run({"fuzz", path("transpose.json"), "--out-dir", path("w")}), 3);
  const AlgebraElement a = io::read_matrix_file(dir_ / "w" / "witness_a.json");
  const AlgebraElement b = io::read_matrix_file(dir_ / "w" / "witness_b.json");
  auto [e, v] = transpose_witness_pair();
  EXPECT_EQ(distance(a, e), 0.0);
  EXPECT_EQ(distance(b, v), 0.0);
  EXPECT_NE(out_.str().find("0.41421356"), std::string::npos);
}

TEST_F(CliTest, FuzzStarHomFindsNothing) {
  EXPECT_EQ(run({"fuzz", path("hom.json"), "--budget", "1000", "--kind", "full"}), 0);
}

TEST_F(CliTest, FuzzErrors) {
  EXPECT_EQ(run({"fuzz", path("malformed.json")}), 2);
  EXPECT_EQ(run({"fuzz", path("transpose.json"), "--budget", "0"}), 2);
}
