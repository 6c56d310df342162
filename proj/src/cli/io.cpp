#include "abscompat/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "abscompat/error.hpp"

namespace abscompat::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail("complex entries must be [re, im] pairs of numbers");
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) fail("non-finite entry");
  return {re, im};
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) fail("wrong number of rows");
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) fail("wrong number of columns");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

ComplexMatrix square_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail("expected a nonempty square matrix");
  const auto n = static_cast<Eigen::Index>(j.size());
  return matrix_from_json(j, n, n);
}

Json shape_to_json(const AlgebraShape& s) { return Json(s.block_dims()); }

AlgebraShape shape_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail("shape must be a nonempty list of block sizes");
  std::vector<int> dims;
  for (const Json& d : j) {
    if (!d.is_number_integer() || d.get<long long>() < 1) fail("block sizes must be positive integers");
    dims.push_back(d.get<int>());
  }
  return AlgebraShape(dims);
}

Json witnesses_to_json(const std::vector<Witness>& ws) {
  Json out = Json::array();
  for (const Witness& w : ws) out.push_back({{"name", w.name}, {"matrix", matrix_to_json(w.matrix)}});
  return out;
}

const std::vector<std::string> kBuilderKinds = {"identity",  "transpose", "star_hom",    "star_anti_hom",
                                          "block_map", "sandwich",  "compression", "scalar"};

}  // namespace

Json element_to_json(const AlgebraElement& x) {
  Json blocks = Json::array();
  for (std::size_t i = 0; i < x.shape().block_count(); ++i) blocks.push_back(matrix_to_json(x.block(i)));
  return {{"shape", shape_to_json(x.shape())}, {"entries", std::move(blocks)}};
}

AlgebraElement element_from_json(const Json& j) {
  const AlgebraShape shape = shape_from_json(field(j, "shape"));
  const Json& entries = field(j, "entries");
  if (!entries.is_array() || entries.size() != shape.block_count()) fail("block count does not match shape");
  std::vector<ComplexMatrix> blocks;
  for (std::size_t i = 0; i < shape.block_count(); ++i) {
    const int n = shape.block_dim(i);
    blocks.push_back(matrix_from_json(entries[i], n, n));
  }
  return AlgebraElement::from_blocks(shape, blocks);
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail(path.string() + ": " + e.what());
  }
}

AlgebraElement read_matrix_file(const std::filesystem::path& path) {
  try {
    return element_from_json(read_json_file(path));
  } catch (const Json::exception& e) {
    fail(path.string() + ": " + e.what());
  }
}

void write_matrix_file(const std::filesystem::path& path, const AlgebraElement& x) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << element_to_json(x).dump(2) << '\n';
}

// --- map files -------------------------------------------------------------

LinearMap MapFile::to_map(const ToleranceConfig& tol) const {
  if (action) return LinearMap(domain_shape, codomain_shape, *action, Provenance::Custom, "raw action");
  if (!builder) fail("map file needs a 'builder' or an 'action'");
  const BuilderSpec& b = *builder;
  auto same_shape = [&] {
    if (!(domain_shape == codomain_shape)) fail(b.kind + " needs domain_shape == codomain_shape");
  };
  if (b.kind == "identity") {
    same_shape();
    return LinearMap::identity(domain_shape);
  }
  if (b.kind == "transpose") {
    same_shape();
    return build_transpose(domain_shape);
  }
  if (b.kind == "star_hom") return build_star_hom(domain_shape, codomain_shape, b.blocks);
  if (b.kind == "star_anti_hom") return build_star_anti_hom(domain_shape, codomain_shape, b.blocks);
  if (b.kind == "block_map") return build_block_map(domain_shape, codomain_shape, b.blocks);
  if (b.kind == "scalar") {
    same_shape();
    return build_scalar(domain_shape, b.scalar);
  }
  if (b.kind == "sandwich") {
    same_shape();
    if (!b.u || !b.v) fail("sandwich needs 'u' and 'v'");
    if (!(b.u->shape() == domain_shape) || !(b.v->shape() == domain_shape)) fail("sandwich factors have wrong shape");
    return build_sandwich(*b.u, *b.v, tol);
  }
  if (b.kind == "compression") {
    same_shape();
    if (!b.p) fail("compression needs 'p'");
    if (!(b.p->shape() == domain_shape)) fail("compression projection has wrong shape");
    return build_compression(*b.p, tol);
  }
  fail("unknown builder kind '" + b.kind + "'");
}

Json map_to_json(const MapFile& m) {
  Json out = {{"domain_shape", shape_to_json(m.domain_shape)}, {"codomain_shape", shape_to_json(m.codomain_shape)}};
  if (m.action) {
    out["action"] = matrix_to_json(*m.action);
    return out;
  }
  if (!m.builder) return out;
  const BuilderSpec& b = *m.builder;
  Json builder = {{"kind", b.kind}};
  if (b.kind == "star_hom" || b.kind == "star_anti_hom" || b.kind == "block_map") {
    Json placements = Json::array();
    for (const BlockPlacement& p : b.blocks.placements) {
      placements.push_back({{"domain_block", p.domain_block},
                            {"codomain_block", p.codomain_block},
                            {"offset", p.offset},
                            {"transpose", p.transpose}});
    }
    builder["placements"] = std::move(placements);
    Json unitaries = Json::array();
    for (const ComplexMatrix& w : b.blocks.unitaries) unitaries.push_back(matrix_to_json(w));
    builder["unitaries"] = std::move(unitaries);
  } else if (b.kind == "sandwich") {
    if (b.u) builder["u"] = element_to_json(*b.u);
    if (b.v) builder["v"] = element_to_json(*b.v);
  } else if (b.kind == "compression") {
    if (b.p) builder["p"] = element_to_json(*b.p);
  } else if (b.kind == "scalar") {
    builder["c"] = complex_to_json(b.scalar);
  }
  out["builder"] = std::move(builder);
  return out;
}

MapFile map_from_json(const Json& j) {
  MapFile m{shape_from_json(field(j, "domain_shape")), shape_from_json(field(j, "codomain_shape")), {}, {}};
  const bool has_action = j.contains("action");
  const bool has_builder = j.contains("builder");
  if (has_action == has_builder) fail("map file needs exactly one of 'builder' and 'action'");
  if (has_action) {
    const auto rows = static_cast<Eigen::Index>(m.codomain_shape.total_dim()) * m.codomain_shape.total_dim();
    const auto cols = static_cast<Eigen::Index>(m.domain_shape.total_dim()) * m.domain_shape.total_dim();
    m.action = matrix_from_json(j.at("action"), rows, cols);
    return m;
  }
  const Json& bj = j.at("builder");
  BuilderSpec b;
  const Json& kind = field(bj, "kind");
  if (!kind.is_string()) fail("builder kind must be a string");
  b.kind = kind.get<std::string>();
  if (std::find(kBuilderKinds.begin(), kBuilderKinds.end(), b.kind) == kBuilderKinds.end())
    fail("unknown builder kind '" + b.kind + "'");
  try {
    if (b.kind == "star_hom" || b.kind == "star_anti_hom" || b.kind == "block_map") {
      for (const Json& p : field(bj, "placements")) {
        b.blocks.placements.push_back({field(p, "domain_block").get<std::size_t>(),
                                       field(p, "codomain_block").get<std::size_t>(), p.value("offset", 0),
                                       p.value("transpose", false)});
      }
      if (bj.contains("unitaries"))
        for (const Json& w : bj.at("unitaries")) b.blocks.unitaries.push_back(square_from_json(w));
    } else if (b.kind == "sandwich") {
      b.u = element_from_json(field(bj, "u"));
      b.v = element_from_json(field(bj, "v"));
    } else if (b.kind == "compression") {
      b.p = element_from_json(field(bj, "p"));
    } else if (b.kind == "scalar") {
      b.scalar = complex_from_json(field(bj, "c"));
    }
  } catch (const Json::exception& e) {
    fail(std::string("builder: ") + e.what());
  }
  m.builder = std::move(b);
  return m;
}

MapFile read_map_file(const std::filesystem::path& path) {
  try {
    return map_from_json(read_json_file(path));
  } catch (const Json::exception& e) {
    fail(path.string() + ": " + e.what());
  }
}

MapFile map_file_from(const LinearMap& t) {
  return MapFile{t.domain_shape(), t.codomain_shape(), std::nullopt, t.action()};
}

// --- reports ---------------------------------------------------------------

Json to_json(const RelationReport& r) {
  return {{"relation_name", r.relation_name}, {"verdict", r.verdict},
          {"defect", r.defect},               {"tolerance_used", r.tolerance_used},
          {"witnesses", witnesses_to_json(r.witnesses)}, {"notes", r.notes}};
}

Json to_json(const ConsistencyReport& r) {
  Json clauses = Json::array();
  for (const ClauseResult& c : r.clauses) {
    Json sides = Json::array();
    for (const RelationReport& s : c.sides) sides.push_back(to_json(s));
    clauses.push_back({{"clause", c.clause}, {"status", to_string(c.status)}, {"sides", std::move(sides)}});
  }
  return {{"name", r.name}, {"consistent", r.consistent()}, {"clauses", std::move(clauses)}};
}

Json to_json(const PreservationWitness& w) {
  return {{"a", element_to_json(w.a)},
          {"b", element_to_json(w.b)},
          {"image_a", element_to_json(w.image_a)},
          {"image_b", element_to_json(w.image_b)},
          {"input_defect", w.input_defect},
          {"output_defect", w.output_defect},
          {"index", w.index},
          {"source", w.source}};
}

Json to_json(const TripleHomClassification& c) {
  return {{"unit_image", element_to_json(c.unit_image)},
          {"unit_image_defect", c.unit_image_defect},
          {"triple_hom_defect", c.triple_hom_defect},
          {"hom_blocks", c.hom_blocks},
          {"antihom_blocks", c.antihom_blocks},
          {"multiplicative_defects", c.multiplicative_defects},
          {"antimultiplicative_defects", c.antimultiplicative_defects}};
}

}  // namespace abscompat::io
