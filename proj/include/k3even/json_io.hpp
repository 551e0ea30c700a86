#pragma once
// JSON encodings, schema "k3evenset/1". Integers are decimal strings so that values of any
// size survive; rationals are "p/q" (or "p" when integral).

#include <json.hpp>

#include "models.hpp"

namespace k3even::io {

using json = nlohmann::ordered_json;

inline constexpr const char* schema = "k3evenset/1";

struct SchemaError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline json envelope(const std::string& kind) {
  json j;
  j["schema"] = schema;
  j["kind"] = kind;
  return j;
}

inline std::string str(const Integer& x) { return x.str(); }
inline std::string str(const Rational& q) { return to_string(q); }

inline json ints(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline json matrix(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(ints(m.row(i)));
  return a;
}

inline Integer read_int(const json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos || s.find('-', 1) != std::string::npos)
      throw SchemaError("expected a decimal integer, got \"" + s + "\"");
    return Integer(s);
  }
  if (j.is_number_integer()) return Integer(j.get<long long>());
  throw SchemaError("expected an integer, got " + j.dump());
}

inline IntVector read_ints(const json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of integers, got " + j.dump());
  IntVector v;
  for (const auto& x : j) v.push_back(read_int(x));
  return v;
}

inline IntMatrix read_matrix(const json& j) {
  if (!j.is_array()) throw SchemaError("expected a matrix, got " + j.dump());
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(read_ints(r));
  const std::size_t n = rows.size(), m = n ? rows[0].size() : 0;
  IntMatrix out(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != m) throw SchemaError("ragged matrix");
    for (std::size_t j2 = 0; j2 < m; ++j2) out(i, j2) = rows[i][j2];
  }
  return out;
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline void require_schema(const json& j) {
  if (!j.contains("schema") || j.at("schema") != schema) throw SchemaError(std::string("expected \"schema\": \"") + schema + "\"");
}

// ---- vectors and lattices -------------------------------------------------------

inline json to_json(const FrameVector& v) {
  json j;
  j["frame"] = v.frame()->name;
  j["num"] = ints(v.numerators());
  j["den"] = v.denominator().str();
  j["text"] = v.str();
  return j;
}

inline FrameVector frame_vector_from_json(const json& j, const FramePtr& f) {
  if (field(j, "frame").get<std::string>() != f->name) throw SchemaError("vector in frame " + j.at("frame").get<std::string>() + ", expected " + f->name);
  return FrameVector(f, read_ints(field(j, "num")), read_int(field(j, "den")));
}

inline json to_json(const IntegerLattice& l) {
  json j;
  j["name"] = l.name();
  j["rank"] = l.rank();
  j["gram"] = matrix(l.gram());
  j["basis_names"] = l.basis_names();
  const auto& b = l.basis_matrix();
  json f;
  f["parent"] = l.frame()->name;
  f["parent_gram"] = matrix(l.frame()->gram);
  f["parent_basis_names"] = l.frame()->basis_names;
  f["matrix_num"] = matrix(b.num);
  f["matrix_den"] = b.den.str();
  j["frame"] = f;
  return j;
}

inline IntegerLattice lattice_from_json(const json& j) {
  std::string name = field(j, "name").get<std::string>();
  IntMatrix gram = read_matrix(field(j, "gram"));
  auto names = field(j, "basis_names").get<std::vector<std::string>>();
  if (field(j, "rank").get<std::size_t>() != gram.rows()) throw SchemaError("rank does not match the Gram matrix");
  if (!j.contains("frame")) return IntegerLattice::root(name, gram, names);
  const json& f = j.at("frame");
  auto parent = make_frame(field(f, "parent").get<std::string>(), read_matrix(field(f, "parent_gram")),
                           f.contains("parent_basis_names") ? f.at("parent_basis_names").get<std::vector<std::string>>() : std::vector<std::string>{});
  IntMatrix num = read_matrix(field(f, "matrix_num"));
  Integer den = read_int(field(f, "matrix_den"));
  std::vector<FrameVector> basis;
  for (std::size_t c = 0; c < num.cols(); ++c) basis.emplace_back(parent, num.col(c), den);
  auto l = IntegerLattice::from_basis(name, basis, names);
  if (l.gram() != gram) throw SchemaError("lattice " + name + ": Gram does not match the frame basis");
  return l;
}

// ---- reports ---------------------------------------------------------------------

inline json to_json(const NSFamily& f) {
  json j;
  j["family"] = f.str();
  j["symbol"] = f.symbol();
  return j;
}

inline json to_json(const DiscriminantGroup& g) {
  json j;
  j["invariant_factors"] = ints(g.invariant_factors);
  j["order"] = g.order.str();
  j["group"] = g.str();
  json lifts = json::array();
  for (const auto& v : g.lifts) lifts.push_back(to_json(v));
  j["lifts"] = lifts;
  return j;
}

inline json to_json(const PositivityReport& r) {
  json j;
  j["divisor"] = to_json(r.divisor);
  j["d2"] = r.self_intersection.str();
  j["status"] = to_string(r.status);
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  j["a_max"] = str(r.search_bound);
  j["exhaustive"] = r.exhaustive;
  j["assumptions"] = r.assumptions;
  return j;
}

inline json to_json(const HyperellipticVerdict& v) {
  json j;
  j["double_cover"] = v.double_cover;
  j["target"] = v.target;
  j["reason"] = v.reason;
  j["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  return j;
}

inline json to_json(const ProjectiveModelDescriptor& m) {
  json j;
  j["family"] = m.family.symbol();
  j["polarization"] = m.polarization;
  j["divisor"] = to_json(m.divisor);
  j["d2"] = m.self_intersection.str();
  j["status"] = to_string(m.status);
  j["h0"] = m.h0.str();
  j["h0_assumption"] = m.h0_assumption;
  j["target"] = m.target();
  j["target_dim"] = m.target_dim.str();
  j["map_kind"] = to_string(m.map_kind);
  j["double_cover_target"] = m.double_cover_target;
  j["degree"] = m.degree.str();
  j["even_set_images"] = m.even_set_images;
  j["moduli_count"] = m.moduli_count;
  return j;
}

inline json to_json(const PairDescriptor& p) {
  json j;
  j["family"] = p.family.symbol();
  j["pair"] = {p.first, p.second};
  j["targets"] = {"P" + p.target1.str(), "P" + p.target2.str()};
  j["complete_intersection"] = p.ci.str();
  j["lattice_gram"] = matrix(p.gram);
  j["chow_matrix"] = matrix(p.chow);
  j["ci_is_k3"] = p.ci_k3;
  j["consistent"] = p.consistent();
  return j;
}

inline json to_json(const ModelCheck& c) {
  json j;
  j["polarization"] = c.golden.polarization;
  j["table_text"] = c.golden.text;
  j["computed"] = to_json(c.computed);
  j["match"] = c.match();
  j["mismatches"] = c.mismatches;
  return j;
}

inline json to_json(const RowReport& r) {
  json j;
  j["x"] = r.row->x.symbol();
  j["y"] = r.row->y.symbol();
  json xs = json::array();
  for (const auto& c : r.x) xs.push_back(to_json(c));
  j["x_models"] = xs;
  json ps = json::array();
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    json p = to_json(r.pairs[i]);
    p["table_text"] = r.row->x_pairs[i].text;
    ps.push_back(p);
  }
  j["x_pairs"] = ps;
  j["y_model"] = to_json(r.y);
  j["x_match"] = r.x_match();
  j["y_match"] = r.y_match();
  return j;
}

inline json to_json(const DistinctnessReport& r) {
  json j;
  j["kind"] = to_string(r.kind);
  j["groups"] = {r.group1, r.group2};
  j["detail"] = r.detail;
  return j;
}

inline json to_json(const ConfigurationCheck& c) {
  json j;
  j["name"] = c.config.name;
  j["target"] = c.config.target.symbol();
  j["statement"] = c.config.statement;
  j["generators"] = c.config.generators;
  j["gram"] = matrix(c.config.gram);
  j["images"] = c.config.images;
  j["status"] = to_string(c.status);
  j["index"] = c.index.str();
  j["basis_map_isometry"] = c.basis_map_isometry;
  j["detail"] = c.detail;
  return j;
}

}  // namespace k3even::io
