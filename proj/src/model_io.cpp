#include "contactgeo/model_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "contactgeo/errors.hpp"

namespace contactgeo {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw ModelFileError("model file: " + what); }

// ─── Reading ───

Polynomial read_component(const json& v, const Model& m, const std::string& where) {
  if (v.is_number()) return Polynomial(v.get<double>());
  if (!v.is_array()) bad(where + ": component must be a number or a term list");
  if (m.kind() == ModelKind::Frame) bad(where + ": frame components must be numbers");
  Polynomial p;
  for (const auto& t : v) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number() || !t[1].is_array())
      bad(where + ": terms are [coefficient, [exponents]]");
    std::vector<int> exps;
    for (const auto& e : t[1]) {
      if (!e.is_number_integer() || e.get<int>() < 0) bad(where + ": exponents are non-negative integers");
      exps.push_back(e.get<int>());
    }
    if (static_cast<int>(exps.size()) > m.dim()) bad(where + ": more exponents than coordinates");
    p.add(t[0].get<double>(), std::move(exps));
  }
  return p;
}

ComponentData read_vector(const json& v, const Model& m, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != m.dim())
    bad(where + ": expected " + std::to_string(m.dim()) + " components");
  ComponentData d;
  for (std::size_t i = 0; i < v.size(); ++i)
    d.push_back(read_component(v[i], m, where + "[" + std::to_string(i) + "]"));
  return d;
}

ComponentData read_matrix(const json& v, const Model& m, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != m.dim())
    bad(where + ": expected " + std::to_string(m.dim()) + " rows");
  ComponentData d;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const ComponentData row = read_vector(v[k], m, where + "[" + std::to_string(k) + "]");
    d.insert(d.end(), row.begin(), row.end());
  }
  return d;
}

ModelPtr read_model(const json& j, const std::string& name) {
  if (!j.contains("kind") || !j["kind"].is_string()) bad("missing \"kind\"");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) bad("missing integer \"dim\"");
  const std::string kind = j["kind"];
  const int dim = j["dim"];
  if (dim < 3 || dim % 2 == 0 || dim > kMaxDim)
    bad("dim must be odd, at least 3 and at most " + std::to_string(kMaxDim));
  if (kind == "chart") {
    std::vector<Interval> box;
    if (j.contains("box")) {
      for (const auto& iv : j["box"]) {
        if (!iv.is_array() || iv.size() != 2) bad("box entries are [lo, hi]");
        box.push_back({iv[0].get<double>(), iv[1].get<double>()});
      }
    }
    return Model::chart(name, dim, std::move(box));
  }
  if (kind == "frame") {
    std::map<std::pair<int, int>, std::vector<double>> br;
    for (const auto& e : j.value("c", json::array())) {
      if (!e.is_array() || e.size() != 4) bad("\"c\" entries are [i, j, k, value]");
      const int a = e[0], b = e[1], k = e[2];
      const double v = e[3];
      if (a < 0 || b < 0 || k < 0 || a >= dim || b >= dim || k >= dim || a == b)
        bad("structure constant index out of range");
      auto& slot = br[{std::min(a, b), std::max(a, b)}];
      slot.resize(dim, 0.0);
      slot[k] += a < b ? v : -v;
    }
    StructureConstants c(dim);
    for (const auto& [ij, v] : br) c.set_bracket(ij.first, ij.second, v);
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    return Model::frame(name, dim, std::move(c), std::move(labels));
  }
  bad("kind must be \"chart\" or \"frame\"");
}

// ─── Writing ───

json write_component(const Polynomial& p, int dim) {
  if (p.degree() <= 0) {
    double c = 0.0;
    for (const auto& t : p.terms()) c += t.coef;
    return c;
  }
  json terms = json::array();
  for (const auto& t : p.terms()) {
    std::vector<int> e = t.exps;
    e.resize(dim, 0);
    terms.push_back(json::array({t.coef, e}));
  }
  return terms;
}

template <class Field>
const ComponentData& data_of(const Field& f, const std::string& what) {
  if (!f.data()) throw UnsupportedError(what + " has no component data to export");
  return *f.data();
}

json write_vector(const ComponentData& d, int dim) {
  json a = json::array();
  for (const auto& c : d) a.push_back(write_component(c, dim));
  return a;
}

json write_matrix(const ComponentData& d, int dim) {
  json rows = json::array();
  for (int k = 0; k < dim; ++k) {
    json row = json::array();
    for (int j = 0; j < dim; ++j) row.push_back(write_component(d[k * dim + j], dim));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

ModelPack parse_model(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("top level must be an object");
  try {
    const std::string name = j.value("name", std::string("unnamed"));
    const ModelPtr m = read_model(j, name);
    if (!j.contains("eta")) bad("missing \"eta\"");
    ModelPack p{name, m, OneForm::polynomial(m, read_vector(j["eta"], *m, "eta"), "eta"),
                std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt, {}};
    if (j.contains("xi")) p.xi = VectorField::polynomial(m, read_vector(j["xi"], *m, "xi"), "xi");
    if (j.contains("phi"))
      p.phi = Tensor11Field::polynomial(m, read_matrix(j["phi"], *m, "phi"), "phi");
    if (j.contains("g")) p.g = MetricField::polynomial(m, read_matrix(j["g"], *m, "g"), "g");
    if (j.contains("phi1"))
      p.phi1 = Tensor11Field::polynomial(m, read_matrix(j["phi1"], *m, "phi1"), "phi1");
    if (j.contains("phi2"))
      p.phi2 = Tensor11Field::polynomial(m, read_matrix(j["phi2"], *m, "phi2"), "phi2");
    if (p.phi1.has_value() != p.phi2.has_value()) bad("\"phi1\" and \"phi2\" come together");
    if (p.phi.has_value() != p.g.has_value()) bad("\"phi\" and \"g\" come together");
    if (j.contains("facts")) {
      const json& f = j["facts"];
      if (f.contains("kappa")) p.facts.kappa = f["kappa"].get<double>();
      if (f.contains("mu")) p.facts.mu = f["mu"].get<double>();
      if (f.contains("normal")) p.facts.normal = f["normal"].get<bool>();
    }
    return p;
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

ModelPack read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelFileError("cannot read model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

std::string export_model(const ModelPack& pack) {
  const Model& m = *pack.model;
  const int n = m.dim();
  json j;
  j["name"] = pack.name;
  j["kind"] = m.kind() == ModelKind::Chart ? "chart" : "frame";
  j["dim"] = n;
  if (m.kind() == ModelKind::Chart) {
    json box = json::array();
    for (const auto& iv : m.box()) box.push_back(json::array({iv.lo, iv.hi}));
    j["box"] = box;
  } else {
    json c = json::array();
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int k = 0; k < n; ++k)
          if (m.c(a, b, k) != 0.0) c.push_back(json::array({a, b, k, m.c(a, b, k)}));
    j["c"] = c;
    if (!m.labels().empty()) j["labels"] = m.labels();
  }
  j["eta"] = write_vector(data_of(pack.eta, "eta"), n);
  if (pack.xi) j["xi"] = write_vector(data_of(*pack.xi, "xi"), n);
  if (pack.phi) j["phi"] = write_matrix(data_of(*pack.phi, "phi"), n);
  if (pack.g) j["g"] = write_matrix(data_of(*pack.g, "g"), n);
  if (pack.phi1) j["phi1"] = write_matrix(data_of(*pack.phi1, "phi1"), n);
  if (pack.phi2) j["phi2"] = write_matrix(data_of(*pack.phi2, "phi2"), n);
  json facts = json::object();
  if (pack.facts.kappa) facts["kappa"] = *pack.facts.kappa;
  if (pack.facts.mu) facts["mu"] = *pack.facts.mu;
  if (pack.facts.normal) facts["normal"] = *pack.facts.normal;
  if (!facts.empty()) j["facts"] = facts;
  return j.dump(2);
}

ModelPack resolve_model(const std::string& source) {
  const std::string prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) return builtin(source.substr(prefix.size()));
  return read_model_file(source);
}

}  // namespace contactgeo
