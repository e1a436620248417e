#include "opradius/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace opradius {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing key '") + key + "'");
  return j.at(key);
}

int positive_int(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    parse_error(std::string("'") + key + "' must be a positive integer");
  }
  return v.get<int>();
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) parse_error(std::string(what) + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) parse_error(std::string(what) + " must be finite");
  return d;
}

Complex complex_entry(const Json& v) {
  if (!v.is_array() || v.size() != 2) parse_error("entries must be [re, im] pairs");
  return {number(v[0], "real part"), number(v[1], "imaginary part")};
}

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(complex_pair(m(i, j)));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const int rows = positive_int(j, "rows");
  const int cols = positive_int(j, "cols");
  const Json& data = field(j, "data");
  if (!data.is_array() || data.size() != static_cast<std::size_t>(rows) * cols) {
    parse_error("'data' must hold rows*cols entries");
  }
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < cols; ++k) m(i, k) = complex_entry(data[i * cols + k]);
  }
  return m;
}

Json block_to_json(const BlockMatrix& a) {
  Json rows = Json::array();
  for (int i = 0; i < a.grid_rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < a.grid_cols(); ++j) row.push_back(matrix_to_json(a.block(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"grid", Json::array({a.grid_rows(), a.grid_cols()})}, {"blocks", std::move(rows)}};
}

BlockMatrix block_from_json(const Json& j) {
  const Json& grid = field(j, "grid");
  if (!grid.is_array() || grid.size() != 2 || !grid[0].is_number_integer() ||
      !grid[1].is_number_integer() || grid[0].get<long long>() < 1 ||
      grid[1].get<long long>() < 1) {
    parse_error("'grid' must be [GR, GC] with positive integers");
  }
  const int gr = grid[0].get<int>();
  const int gc = grid[1].get<int>();
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_array() || blocks.size() != static_cast<std::size_t>(gr)) {
    parse_error("'blocks' must have GR rows");
  }
  std::vector<std::vector<ComplexMatrix>> out(gr);
  for (int i = 0; i < gr; ++i) {
    if (!blocks[i].is_array() || blocks[i].size() != static_cast<std::size_t>(gc)) {
      parse_error("each block row must have GC blocks");
    }
    for (int k = 0; k < gc; ++k) out[i].push_back(matrix_from_json(blocks[i][k]));
  }
  return BlockMatrix(std::move(out));
}

Json vector_to_json(const ComplexVector& v) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) data.push_back(complex_pair(v(i)));
  return Json{{"dim", v.size()}, {"data", std::move(data)}};
}

ComplexVector vector_from_json(const Json& j) {
  const int dim = positive_int(j, "dim");
  const Json& data = field(j, "data");
  if (!data.is_array() || data.size() != static_cast<std::size_t>(dim)) {
    parse_error("'data' must hold dim entries");
  }
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = complex_entry(data[i]);
  return v;
}

Json ensemble_to_json(const EnsembleSpec& e) {
  Json j{{"kind", std::string(to_string(e.kind))},
         {"dim", e.dim},
         {"scale", e.scale},
         {"seed", e.seed}};
  if (e.min_dim != 0) j["min_dim"] = e.min_dim;
  if (e.kind == EnsembleKind::block) {
    j["grid"] = e.grid;
    if (!e.block_dims.empty()) j["block_dims"] = e.block_dims;
    j["inner"] = std::string(to_string(e.inner));
  }
  return j;
}

EnsembleSpec ensemble_from_json(const Json& j) {
  EnsembleSpec e;
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) parse_error("'kind' must be a string");
  e.kind = ensemble_kind_from_string(kind.get<std::string>());
  e.dim = positive_int(j, "dim");
  e.scale = number(field(j, "scale"), "scale");
  const Json& seed = field(j, "seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
    parse_error("'seed' must be a nonnegative integer");
  }
  e.seed = seed.get<std::uint64_t>();
  if (j.contains("min_dim")) {
    if (!j["min_dim"].is_number_integer()) parse_error("'min_dim' must be an integer");
    e.min_dim = j["min_dim"].get<int>();
  }
  if (j.contains("grid")) e.grid = positive_int(j, "grid");
  if (j.contains("block_dims")) {
    const Json& d = j["block_dims"];
    if (!d.is_array()) parse_error("'block_dims' must be an array");
    for (const auto& v : d) {
      if (!v.is_number_integer()) parse_error("'block_dims' entries must be integers");
      e.block_dims.push_back(v.get<int>());
    }
  }
  if (j.contains("inner")) {
    if (!j["inner"].is_string()) parse_error("'inner' must be a string");
    e.inner = ensemble_kind_from_string(j["inner"].get<std::string>());
  }
  e.validate();
  return e;
}

Json chain_to_json(const TermChain& c) {
  Json rel = Json::array();
  for (Relation r : c.relations) rel.push_back(std::string(to_string(r)));
  return Json{{"source", c.source}, {"labels", c.labels}, {"values", c.values}, {"relations", rel}};
}

TermChain chain_from_json(const Json& j) {
  TermChain c;
  try {
    c.source = field(j, "source").get<std::string>();
    c.labels = field(j, "labels").get<std::vector<std::string>>();
    c.values = field(j, "values").get<std::vector<double>>();
    for (const auto& r : field(j, "relations")) {
      c.relations.push_back(relation_from_string(r.get<std::string>()));
    }
  } catch (const nlohmann::json::exception& ex) {
    parse_error(std::string("malformed chain: ") + ex.what());
  }
  if (!c.consistent()) parse_error("chain lengths are inconsistent");
  return c;
}

Json evaluation_to_json(const BoundEvaluation& e) {
  Json detail_list = Json::array();
  for (const auto& [k, v] : e.details) detail_list.push_back(Json::array({k, v}));
  return Json{{"bound_id", e.bound_id},
              {"variant", std::string(to_string(e.variant))},
              {"chain", chain_to_json(e.chain)},
              {"lhs", e.lhs},
              {"rhs_terms", e.rhs_terms},
              {"slack", e.slack},
              {"worst_slack", e.chain.worst_slack()},
              {"holds", e.holds},
              {"details", std::move(detail_list)},
              {"flags", e.flags}};
}

BoundEvaluation evaluation_from_json(const Json& j) {
  BoundEvaluation e;
  try {
    e.bound_id = field(j, "bound_id").get<std::string>();
    e.variant = variant_from_string(field(j, "variant").get<std::string>());
    e.chain = chain_from_json(field(j, "chain"));
    e.lhs = field(j, "lhs").get<double>();
    e.rhs_terms = field(j, "rhs_terms").get<std::vector<double>>();
    e.slack = field(j, "slack").get<double>();
    e.holds = field(j, "holds").get<bool>();
    for (const auto& d : field(j, "details")) {
      e.details.emplace_back(d.at(0).get<std::string>(), d.at(1).get<double>());
    }
    e.flags = field(j, "flags").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& ex) {
    parse_error(std::string("malformed evaluation: ") + ex.what());
  }
  return e;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    parse_error(ex.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + path.string() + "'");
  out << dump(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace opradius
