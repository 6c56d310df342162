#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "abscompat/algebra.hpp"
#include "abscompat/preservers.hpp"
#include "abscompat/report.hpp"

namespace abscompat::io {

using Json = nlohmann::json;

// Matrix files look like
//   {"shape": [1, 2], "entries": [ [[[re, im]]], [[[re, im], [re, im]], [[re, im], [re, im]]] ]}
// with one row-major block per entry of "shape".

Json element_to_json(const AlgebraElement& x);
AlgebraElement element_from_json(const Json& j);

AlgebraElement read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const AlgebraElement& x);

/// Builder section of a map file. Only the fields that belong to `kind` are
/// read or written.
struct BuilderSpec {
  std::string kind;  // identity, transpose, star_hom, star_anti_hom, block_map, sandwich, compression, scalar
  BlockMapSpec blocks;
  std::optional<AlgebraElement> u;
  std::optional<AlgebraElement> v;
  std::optional<AlgebraElement> p;
  Complex scalar{1.0, 0.0};
};

struct MapFile {
  AlgebraShape domain_shape;
  AlgebraShape codomain_shape;
  std::optional<BuilderSpec> builder;
  /// Raw action on column-major vectorized coordinates, row-major in the file.
  std::optional<ComplexMatrix> action;

  LinearMap to_map(const ToleranceConfig& tol = kDefaultTolerance) const;
};

Json map_to_json(const MapFile& m);
MapFile map_from_json(const Json& j);
MapFile read_map_file(const std::filesystem::path& path);
/// Raw-action form of an existing map.
MapFile map_file_from(const LinearMap& t);

Json to_json(const RelationReport& r);
Json to_json(const ConsistencyReport& r);
Json to_json(const PreservationWitness& w);
Json to_json(const TripleHomClassification& c);

Json read_json_file(const std::filesystem::path& path);

}  // namespace abscompat::io
