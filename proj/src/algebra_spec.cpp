#include <fstream>
#include <sstream>

#include <json.hpp>

#include "loophom/errors.hpp"
#include "loophom/graded_algebra.hpp"

namespace loophom {

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

Rational coefficient_of(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(v.dump(), 10));
  throw ParseError("coefficient must be a \"p/q\" string, got " + v.dump());
}

int lookup(const GradedBasis& basis, const json& name) {
  if (!name.is_string()) throw ParseError("expected a basis name, got " + name.dump());
  auto i = basis.find(name.get<std::string>());
  if (!i) throw UnknownNameError("unknown basis element '" + name.get<std::string>() + "'");
  return *i;
}

AlgVector combination(const GradedBasis& basis, const json& obj, int expected_degree, const std::string& what) {
  if (!obj.is_object()) throw ParseError(what + ": expected an object of name -> coefficient");
  std::vector<std::pair<int, Rational>> terms;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    auto k = basis.find(it.key());
    if (!k) throw UnknownNameError(what + ": unknown basis element '" + it.key() + "'");
    Rational c = coefficient_of(it.value());
    if (c != 0 && basis.degree(*k) != expected_degree)
      throw DegreeMismatchError(what + ": '" + it.key() + "' has degree " + std::to_string(basis.degree(*k)) +
                                ", expected " + std::to_string(expected_degree));
    terms.emplace_back(*k, c);
  }
  return make_sparse(std::move(terms));
}

}  // namespace

DGA build_dga(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed algebra document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("algebra document must be a JSON object");

  DGAData data;
  try {
    data.name = doc.value("name", std::string("unnamed"));
    const json& basis_json = require(doc, "basis");
    if (!basis_json.is_array()) throw ParseError("'basis' must be an array");
    for (const auto& e : basis_json) {
      if (!require(e, "degree").is_number_integer()) throw ParseError("basis degree must be an integer");
      data.basis.push_back({require(e, "name").get<std::string>(), require(e, "degree").get<int>()});
    }
  } catch (const json::type_error& e) {
    throw ParseError(std::string("malformed basis entry: ") + e.what());
  }
  GradedBasis basis(data.basis);

  data.unit = lookup(basis, require(doc, "unit"));
  const json& top = require(doc, "top_degree");
  if (!top.is_number_integer()) throw ParseError("'top_degree' must be an integer");
  data.top_degree = top.get<int>();

  if (auto it = doc.find("differential"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("'differential' must be an array");
    for (const auto& e : *it) {
      int from = lookup(basis, require(e, "from"));
      auto v = combination(basis, require(e, "to"), basis.degree(from) + 1, "d(" + basis.name(from) + ")");
      if (!data.differential.emplace(from, std::move(v)).second)
        throw ParseError("duplicate differential entry for '" + basis.name(from) + "'");
    }
  }
  if (auto it = doc.find("products"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("'products' must be an array");
    for (const auto& e : *it) {
      int l = lookup(basis, require(e, "left")), r = lookup(basis, require(e, "right"));
      auto v = combination(basis, require(e, "result"), basis.degree(l) + basis.degree(r),
                           basis.name(l) + "*" + basis.name(r));
      if (!data.products.emplace(std::make_pair(l, r), std::move(v)).second)
        throw ParseError("duplicate product entry for " + basis.name(l) + "*" + basis.name(r));
    }
  }
  if (auto it = doc.find("orientation"); it != doc.end() && !it->is_null()) {
    auto v = combination(basis, *it, data.top_degree, "orientation");
    std::map<int, Rational> o;
    for (auto& [i, q] : v) o.emplace(i, q);
    data.orientation = std::move(o);
  }
  if (auto it = doc.find("commutative"); it != doc.end()) {
    if (!it->is_boolean()) throw ParseError("'commutative' must be a boolean");
    data.commutative = it->get<bool>();
  }
  return DGA(std::move(data));
}

DGA load_dga(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return build_dga(ss.str());
}

std::string to_json(const DGA& a) {
  const auto& basis = a.basis();
  auto combo = [&](const AlgVector& v) {
    json o = json::object();
    for (const auto& [i, q] : v) o[basis.name(i)] = format_rational(q);
    return o;
  };
  json doc = json::object();
  doc["name"] = a.name();
  doc["basis"] = json::array();
  for (int i = 0; i < a.dim(); ++i) doc["basis"].push_back({{"name", basis.name(i)}, {"degree", basis.degree(i)}});
  doc["unit"] = basis.name(a.unit());
  doc["differential"] = json::array();
  for (int i = 0; i < a.dim(); ++i)
    if (!a.d(i).empty()) doc["differential"].push_back({{"from", basis.name(i)}, {"to", combo(a.d(i))}});
  doc["products"] = json::array();
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      if (i == a.unit() || j == a.unit() || a.product(i, j).empty()) continue;
      doc["products"].push_back({{"left", basis.name(i)}, {"right", basis.name(j)}, {"result", combo(a.product(i, j))}});
    }
  doc["top_degree"] = a.top_degree();
  if (a.has_orientation()) {
    AlgVector o;
    for (int i = 0; i < a.dim(); ++i)
      if (a.orientation(i) != 0) o.emplace_back(i, a.orientation(i));
    doc["orientation"] = combo(o);
  }
  doc["commutative"] = a.commutative();
  return doc.dump(2) + "\n";
}

}  // namespace loophom
