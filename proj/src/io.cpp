#include "relfan/io.hpp"

#include "relfan/errors.hpp"

#include <fstream>
#include <sstream>

namespace relfan {

Json json_of(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Json json_of(const Int& x) { return x.get_str(); }

Json json_of(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(json_of(x));
  return a;
}

Json json_of(const IntVec& v) {
  Json a = Json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p())
      a.push_back(x.get_si());
    else
      a.push_back(x.get_str());
  }
  return a;
}

Json json_of(const QMat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(json_of(m.row(i)));
  return a;
}

Json json_of(const Cone& c) {
  Json j;
  j["dim"] = c.dim();
  Json rays = Json::array();
  const auto& f = c.gspace().frame();
  for (const auto& g : c.generators()) {
    Json r;
    r["restriction_scale"] = json_of(f.restriction_scale(g).value_or(Rat(-1)));
    r["image_of_e"] = json_of(f.image_of_e(g));
    rays.push_back(std::move(r));
  }
  j["rays"] = std::move(rays);
  return j;
}

Json json_of(const Filtration& f) {
  Json a = Json::array();
  for (const auto& [k, s] : f.jumps()) {
    Json step;
    step["index"] = k;
    Json basis = Json::array();
    for (const auto& b : s.basis()) basis.push_back(json_of(b));
    step["basis"] = std::move(basis);
    a.push_back(std::move(step));
  }
  return a;
}

Json json_of(const CellIndex& idx) {
  Json j;
  j["x"] = json_of(idx.x);
  j["n"] = json_of(idx.n);
  return j;
}

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad rational: ") + e.what());
    }
  }
  throw ParseError("expected a rational as an integer or a \"p/q\" string, got " + j.dump());
}

Vec vec_from_json(const Json& j, std::optional<std::size_t> size) {
  if (!j.is_array()) throw ParseError("expected an array, got " + j.dump());
  if (size && j.size() != *size)
    throw ParseError("expected an array of length " + std::to_string(*size) + ", got " + std::to_string(j.size()));
  Vec v;
  for (const auto& x : j) v.push_back(rat_from_json(x));
  return v;
}

QMat mat_from_json(const Json& j, std::optional<std::size_t> rows, std::optional<std::size_t> cols) {
  if (!j.is_array()) throw ParseError("expected a matrix (array of rows)");
  if (rows && j.size() != *rows) throw ParseError("matrix has " + std::to_string(j.size()) + " rows, expected " +
                                                  std::to_string(*rows));
  std::vector<Vec> r;
  for (const auto& row : j) r.push_back(vec_from_json(row, cols));
  std::size_t c = cols ? *cols : (r.empty() ? 0 : r.front().size());
  for (const auto& row : r)
    if (row.size() != c) throw ParseError("matrix rows have different lengths");
  return QMat::from_rows(r, c);
}

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<std::vector<int>> int_rows(const Json& j, const char* key, std::size_t width) {
  const Json& v = require(j, key);
  if (!v.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  std::vector<std::vector<int>> out;
  for (const auto& row : v) {
    if (!row.is_array() || row.size() != width)
      throw ParseError(std::string("entries of \"") + key + "\" must have length " + std::to_string(width));
    std::vector<int> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw ParseError(std::string("entries of \"") + key + "\" must be integers");
      r.push_back(x.get<int>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

SpecFile parse_spec(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("spec must be a JSON object");
  if (require(j, "schema") != "relfan-spec/1") throw ParseError("unsupported schema " + j.at("schema").dump());

  try {
    const int rank = int_field(j, "rank");
    if (rank < 0) throw ParseError("rank must be nonnegative");
    const auto n = static_cast<std::size_t>(rank);
    const Json& pj = require(j, "pairing");
    QMat gram = mat_from_json(require(pj, "gram"), n, n);
    const int sign = int_field(pj, "sign");
    QMat gamma = mat_from_json(require(j, "gamma"), n, n);
    if (!is_integral(gamma)) throw ParseError("gamma must be an integer matrix");
    const int k = int_field(j, "weight_k");
    std::vector<HodgeNumber> hodge;
    for (const auto& r : int_rows(j, "hodge_numbers", 3)) hodge.push_back({r[0], r[1], r[2]});
    std::optional<std::vector<GradedHodgeNumber>> graded;
    if (j.contains("graded_hodge_numbers")) {
      graded.emplace();
      for (const auto& r : int_rows(j, "graded_hodge_numbers", 4)) graded->push_back({r[0], r[1], r[2], r[3]});
    }
    std::string name = j.value("name", std::string("unnamed"));

    SpecFile spec;
    spec.data = DegenerationData::make(name, Pairing::make(gram, sign), to_int(gamma), k, hodge, graded);
    if (j.contains("L")) {
      spec.L_generators.emplace();
      for (const auto& g : j.at("L")) spec.L_generators->push_back(vec_from_json(g, n));
    }
    if (j.contains("fans")) {
      spec.fans.clear();
      for (const auto& f : j.at("fans")) {
        if (!f.is_string()) throw ParseError("fan names must be strings");
        const auto s = f.get<std::string>();
        if (s != "sigma0" && s != "sigma1" && s != "sigma2" && s != "neron" && s != "sigma3")
          throw ParseError("unknown fan " + s);
        spec.fans.push_back(s);
      }
    }
    if (j.contains("window")) spec.window = int_field(j, "window");
    if (spec.window < 0) throw ParseError("window must be nonnegative");
    if (j.contains("cosets"))
      for (const auto& c : j.at("cosets")) spec.cosets.push_back(vec_from_json(c, n));
    if (j.contains("corpus")) {
      const int c = int_field(j, "corpus");
      if (c < 0) throw ParseError("corpus must be nonnegative");
      spec.corpus = static_cast<std::size_t>(c);
    }
    if (j.contains("seed")) {
      const Json& s = j.at("seed");
      if (!s.is_number_unsigned()) throw ParseError("seed must be a nonnegative integer");
      spec.seed = s.get<std::uint64_t>();
    }
    if (j.contains("cube_condition_scope")) {
      const auto s = j.at("cube_condition_scope").get<std::string>();
      if (s == "full")
        spec.cube_scope = CubeConditionScope::full;
      else if (s == "nilpotency-only")
        spec.cube_scope = CubeConditionScope::nilpotency_only;
      else
        throw ParseError("cube_condition_scope must be \"full\" or \"nilpotency-only\"");
    }
    if (j.contains("corrupt_cell")) spec.corrupt_cell = CorruptCell{rat_from_json(require(j.at("corrupt_cell"), "upper"))};
    return spec;
  } catch (const MathError& e) {
    throw ParseError(std::string("invalid degeneration data: ") + e.what());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("schema error: ") + e.what());
  }
}

SpecFile load_spec(const std::string& path) { return parse_spec(read_file(path)); }

Json spec_to_json(const SpecFile& spec) {
  const auto& d = spec.data;
  Json j;
  j["schema"] = "relfan-spec/1";
  j["name"] = d.name;
  j["rank"] = d.rank();
  j["pairing"] = {{"gram", json_of(d.pairing.gram())}, {"sign", d.pairing.sign()}};
  Json gamma = Json::array();
  for (std::size_t i = 0; i < d.gamma.rows(); ++i) gamma.push_back(json_of(d.gamma.row(i)));
  j["gamma"] = std::move(gamma);
  j["weight_k"] = d.weight_k;
  Json hodge = Json::array();
  for (const auto& h : d.hodge_numbers) hodge.push_back({h.p, h.q, h.count});
  j["hodge_numbers"] = std::move(hodge);
  if (d.limit_hodge_numbers) {
    Json g = Json::array();
    for (const auto& h : *d.limit_hodge_numbers) g.push_back({h.weight, h.p, h.q, h.count});
    j["graded_hodge_numbers"] = std::move(g);
  }
  if (spec.L_generators) {
    Json l = Json::array();
    for (const auto& v : *spec.L_generators) l.push_back(json_of(v));
    j["L"] = std::move(l);
  }
  j["fans"] = spec.fans;
  j["window"] = spec.window;
  Json cosets = Json::array();
  for (const auto& c : spec.cosets) cosets.push_back(json_of(c));
  j["cosets"] = std::move(cosets);
  j["corpus"] = spec.corpus;
  j["seed"] = spec.seed;
  j["cube_condition_scope"] = spec.cube_scope == CubeConditionScope::full ? "full" : "nilpotency-only";
  if (spec.corrupt_cell) j["corrupt_cell"] = {{"upper", json_of(spec.corrupt_cell->upper)}};
  return j;
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace relfan
