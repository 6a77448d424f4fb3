#pragma once

// JSON encoding of exact data and the spec file format. Rationals are
// written as "p/q" strings (integers as "p"); readers also accept JSON
// integers.

#include "relfan/fans.hpp"
#include "relfan/report.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace relfan {

Json json_of(const Rat& x);
Json json_of(const Int& x);
Json json_of(const Vec& v);
Json json_of(const IntVec& v);
Json json_of(const QMat& m);
Json json_of(const Cone& c);
Json json_of(const Filtration& f);
Json json_of(const CellIndex& idx);

/// Throw ParseError on malformed input.
Rat rat_from_json(const Json& j);
Vec vec_from_json(const Json& j, std::optional<std::size_t> size = std::nullopt);
QMat mat_from_json(const Json& j, std::optional<std::size_t> rows = std::nullopt,
                   std::optional<std::size_t> cols = std::nullopt);

/// The cell with t_0 in [0, upper] replacing sigma(0, 0); used to seed
/// deliberately broken fans.
struct CorruptCell {
  Rat upper;
};

struct SpecFile {
  DegenerationData data;
  std::optional<std::vector<Vec>> L_generators;
  std::vector<std::string> fans{"sigma3"};
  int window = 2;
  std::vector<Vec> cosets;
  std::size_t corpus = 100;
  std::uint64_t seed = 1;
  CubeConditionScope cube_scope = CubeConditionScope::full;
  std::optional<CorruptCell> corrupt_cell;
};

/// Throws ParseError for malformed JSON, schema violations and data that
/// DegenerationData::make rejects.
SpecFile parse_spec(const std::string& text);
SpecFile load_spec(const std::string& path);
Json spec_to_json(const SpecFile& spec);

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a64(const std::string& bytes);

std::string read_file(const std::string& path);

}  // namespace relfan
