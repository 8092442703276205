#include <algorithm>
#include <charconv>

#include "loophom/errors.hpp"
#include "loophom/graded_algebra.hpp"

namespace loophom {

DGA sphere(int n) {
  if (n < 2) throw InvalidModelError("sphere(n) needs n >= 2");
  DGAData d;
  d.name = "sphere(" + std::to_string(n) + ")";
  d.basis = {{"1", 0}, {"x", n}};
  d.top_degree = n;
  d.orientation = std::map<int, Rational>{{1, Rational(1)}};
  return DGA(std::move(d));
}

DGA complex_projective(int n) {
  if (n < 1) throw InvalidModelError("complex_projective(n) needs n >= 1");
  DGAData d;
  d.name = "complex_projective(" + std::to_string(n) + ")";
  d.basis.push_back({"1", 0});
  d.basis.push_back({"x", 2});
  for (int k = 2; k <= n; ++k) d.basis.push_back({"x^" + std::to_string(k), 2 * k});
  for (int i = 1; i <= n; ++i)
    for (int j = 1; i + j <= n; ++j) d.products[{i, j}] = unit_vector(i + j);
  d.top_degree = 2 * n;
  d.orientation = std::map<int, Rational>{{n, Rational(1)}};
  return DGA(std::move(d));
}

DGA surface(int genus) {
  if (genus < 1) throw InvalidModelError("surface(g) needs g >= 1");
  DGAData d;
  d.name = "surface(" + std::to_string(genus) + ")";
  d.basis.push_back({"1", 0});
  for (int i = 1; i <= genus; ++i) d.basis.push_back({"a" + std::to_string(i), 1});
  for (int i = 1; i <= genus; ++i) d.basis.push_back({"b" + std::to_string(i), 1});
  const int w = 2 * genus + 1;
  d.basis.push_back({"w", 2});
  for (int i = 1; i <= genus; ++i) {
    d.products[{i, genus + i}] = unit_vector(w);
    d.products[{genus + i, i}] = {{w, Rational(-1)}};
  }
  d.top_degree = 2;
  d.orientation = std::map<int, Rational>{{w, Rational(1)}};
  return DGA(std::move(d));
}

DGA torus(int k) {
  if (k < 1) throw InvalidModelError("torus(k) needs k >= 1");
  if (k > 8) throw InvalidModelError("torus(k) supports k <= 8");
  // Subsets of {1..k} as bitmasks, ordered by size then lexicographically.
  std::vector<unsigned> subsets;
  for (unsigned s = 0; s < (1u << k); ++s) subsets.push_back(s);
  auto elements = [&](unsigned s) {
    std::vector<int> e;
    for (int i = 0; i < k; ++i)
      if (s & (1u << i)) e.push_back(i);
    return e;
  };
  std::stable_sort(subsets.begin(), subsets.end(), [&](unsigned a, unsigned b) {
    auto ea = elements(a), eb = elements(b);
    if (ea.size() != eb.size()) return ea.size() < eb.size();
    return ea < eb;
  });
  std::vector<int> position(1u << k);
  DGAData d;
  d.name = "torus(" + std::to_string(k) + ")";
  for (std::size_t p = 0; p < subsets.size(); ++p) {
    unsigned s = subsets[p];
    position[s] = static_cast<int>(p);
    std::string name;
    for (int i : elements(s)) name += "x" + std::to_string(i + 1);
    d.basis.push_back({name.empty() ? "1" : name, static_cast<int>(elements(s).size())});
  }
  for (unsigned s : subsets)
    for (unsigned t : subsets) {
      if (s == 0 || t == 0 || (s & t)) continue;
      // Sign of sorting the concatenation: count pairs (i in s, j in t) with i > j.
      int inversions = 0;
      for (int i : elements(s))
        for (int j : elements(t))
          if (i > j) ++inversions;
      d.products[{position[s], position[t]}] = {{position[s | t], Rational(parity_sign(inversions))}};
    }
  d.top_degree = k;
  d.orientation = std::map<int, Rational>{{position[(1u << k) - 1], Rational(1)}};
  return DGA(std::move(d));
}

DGA acyclic_extension(const DGA& base, std::optional<int> pair_degree) {
  const int top = base.top_degree();
  const int big = pair_degree.value_or(top + 1);
  if (big < 1) throw InvalidModelError("acyclic_extension needs a pair degree >= 1");
  const int n = base.dim();
  const int cdeg[3] = {0, big, big + 1};
  const char* suffix[3] = {"", "e", "f"};
  auto idx = [n](int i, int c) { return i + c * n; };
  DGAData d;
  d.name = "acyclic_extension(" + base.name() + (pair_degree ? "," + std::to_string(big) : "") + ")";
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < n; ++i) {
      std::string name = base.basis().name(i);
      if (c > 0) name = (i == base.unit()) ? suffix[c] : name + "." + suffix[c];
      d.basis.push_back({name, base.degree(i) + cdeg[c]});
    }
  d.unit = base.unit();
  // (a⊗c1)(b⊗c2) = (-1)^{|c1||b|} ab ⊗ c1c2; only c1 or c2 = 1 survives.
  for (int c1 = 0; c1 < 3; ++c1)
    for (int c2 = 0; c2 < 3; ++c2) {
      if (c1 != 0 && c2 != 0) continue;
      int c = c1 + c2;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (base.product(i, j).empty()) continue;
          if ((i == base.unit() && c1 == 0) || (j == base.unit() && c2 == 0)) continue;  // implied identity
          Rational s(parity_sign(cdeg[c1] * base.degree(j)));
          AlgVector v;
          for (const auto& [k, q] : base.product(i, j)) v.emplace_back(idx(k, c), s * q);
          d.products[{idx(i, c1), idx(j, c2)}] = std::move(v);
        }
    }
  // d(a⊗c) = da⊗c + (-1)^{|a|} a⊗dc, with d(e) = f.
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<int, Rational>> v;
      for (const auto& [k, q] : base.d(i)) v.emplace_back(idx(k, c), q);
      if (c == 1) v.emplace_back(idx(i, 2), Rational(parity_sign(base.degree(i))));
      auto sv = make_sparse(std::move(v));
      if (!sv.empty()) d.differential[idx(i, c)] = std::move(sv);
    }
  d.top_degree = top;
  if (base.has_orientation()) {
    std::map<int, Rational> o;
    for (int i = 0; i < n; ++i)
      if (base.orientation(i) != 0) o.emplace(i, base.orientation(i));
    d.orientation = std::move(o);
  }
  d.commutative = base.commutative();
  return DGA(std::move(d));
}

namespace {

int parse_param(std::string_view s, std::string_view id) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw InvalidModelError("bad parameter '" + std::string(s) + "' in model id '" + std::string(id) + "'");
  return v;
}

}  // namespace

DGA builtin_model(std::string_view id) {
  auto colon = id.find(':');
  std::string_view family = id.substr(0, colon);
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : id.substr(colon + 1);
  if (family == "acyclic" || family == "acyclic_extension") {
    if (rest.empty()) throw InvalidModelError("acyclic extension needs a base model, e.g. acyclic:sphere:2");
    return acyclic_extension(builtin_model(rest));
  }
  if (rest.empty()) throw InvalidModelError("model id '" + std::string(id) + "' needs a parameter, e.g. sphere:3");
  int n = parse_param(rest, id);
  if (family == "sphere") return sphere(n);
  if (family == "cp" || family == "complex_projective") return complex_projective(n);
  if (family == "surface") return surface(n);
  if (family == "torus") return torus(n);
  throw InvalidModelError("unknown model family '" + std::string(family) + "'");
}

}  // namespace loophom
