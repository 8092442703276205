#include "loophom/pi1_oracle.hpp"

#include "loophom/errors.hpp"

namespace loophom {

GroupRingElement GroupRingElement::monomial(Lattice u, const Rational& c) {
  GroupRingElement x;
  if (c != 0) x.terms.emplace(u, c);
  return x;
}

Rational GroupRingElement::augmentation() const {
  Rational s = 0;
  for (const auto& [u, c] : terms) s += c;
  return s;
}

namespace {

void accumulate(std::map<Lattice, Rational>& m, const Lattice& u, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = m.emplace(u, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

// Coefficient of s^k in (1 + s)^m, any integer m.
Rational binomial(int m, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r = r * Rational(m - i) / Rational(i + 1);
  return r;
}

}  // namespace

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  GroupRingElement x = *this;
  for (const auto& [u, c] : o.terms) accumulate(x.terms, u, c);
  return x;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const { return *this + o.scaled(-1); }

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  GroupRingElement x;
  for (const auto& [u, a] : terms)
    for (const auto& [v, b] : o.terms) accumulate(x.terms, {u.first + v.first, u.second + v.second}, a * b);
  return x;
}

GroupRingElement GroupRingElement::scaled(const Rational& c) const {
  GroupRingElement x;
  if (c == 0) return x;
  for (const auto& [u, a] : terms) x.terms.emplace(u, a * c);
  return x;
}

GroupRingElement augmentation_monomial(int a, int b) {
  const GroupRingElement one = GroupRingElement::monomial({0, 0});
  const GroupRingElement s1 = GroupRingElement::monomial({1, 0}) - one;
  const GroupRingElement s2 = GroupRingElement::monomial({0, 1}) - one;
  GroupRingElement x = one;
  for (int i = 0; i < a; ++i) x = x * s1;
  for (int i = 0; i < b; ++i) x = x * s2;
  return x;
}

JadicBasis::JadicBasis(int p) : p_(p) {
  if (p < 1) throw DimensionMismatchError("jadic_basis needs p >= 1");
  for (int total = 0; total < p; ++total)
    for (int a = total; a >= 0; --a) monomials_.emplace_back(a, total - a);
}

SparseVector JadicBasis::reduce(const GroupRingElement& x) const {
  // t_i = 1 + s_i; J^p is spanned by monomials in s of total degree >= p.
  std::vector<std::pair<int, Rational>> out;
  for (std::size_t k = 0; k < monomials_.size(); ++k) {
    auto [a, b] = monomials_[k];
    Rational c = 0;
    for (const auto& [u, q] : x.terms) c += q * binomial(u.first, a) * binomial(u.second, b);
    if (c != 0) out.emplace_back(static_cast<int>(k), c);
  }
  return out;
}

JadicBasis jadic_basis(int p) { return JadicBasis(p); }

GroupRingElement goldman_torus(Lattice u, Lattice v) {
  const int det = u.first * v.second - u.second * v.first;
  return GroupRingElement::monomial({u.first + v.first, u.second + v.second}, det);
}

GroupRingElement goldman_bracket(const GroupRingElement& x, const GroupRingElement& y) {
  GroupRingElement out;
  for (const auto& [u, a] : x.terms)
    for (const auto& [v, b] : y.terms) out = out + goldman_torus(u, v).scaled(a * b);
  return out;
}

namespace {

std::pair<int, int> torus_generators(const DGA& torus2) {
  auto x1 = torus2.basis().find("x1"), x2 = torus2.basis().find("x2");
  if (!x1 || !x2 || torus2.degree(*x1) != 1 || torus2.degree(*x2) != 1 || torus2.basis().of_degree(1).size() != 2)
    throw StructureError("holonomy needs the torus(2) model with generators x1, x2");
  return {*x1, *x2};
}

void tuples(int p, Word& cur, const std::pair<int, int>& gens, std::vector<Word>& out) {
  if (static_cast<int>(cur.size()) == p) {
    out.push_back(cur);
    return;
  }
  for (int x : {gens.first, gens.second}) {
    cur.push_back(x);
    tuples(p, cur, gens, out);
    cur.pop_back();
  }
}

}  // namespace

E1Functional holonomy_functional(const DGA& torus2, const std::vector<Lattice>& loops, int p) {
  if (static_cast<int>(loops.size()) != p || p < 0)
    throw DimensionMismatchError("holonomy_functional: " + std::to_string(loops.size()) + " loops for arity " +
                                 std::to_string(p));
  const auto gens = torus_generators(torus2);
  E1Functional f;
  f.arity = p;
  std::vector<Word> words;
  Word cur;
  tuples(p, cur, gens, words);
  for (const Word& w : words) {
    Rational v = 1;
    for (int k = 0; k < p; ++k) v *= (w[static_cast<std::size_t>(k)] == gens.first) ? loops[static_cast<std::size_t>(k)].first
                                                                                     : loops[static_cast<std::size_t>(k)].second;
    if (v != 0) f.table.emplace(w, v);
  }
  return f;
}

E1Functional holonomy_functional(const std::vector<Lattice>& loops, int p) {
  static const DGA t2 = torus(2);
  return holonomy_functional(t2, loops, p);
}

DualCochain holonomy_class(const DGA& torus2, const GroupRingElement& x, int weight_cutoff) {
  DualCochain out;
  Rational factorial = 1;
  for (int k = 0; k <= weight_cutoff; ++k) {
    if (k > 0) factorial *= k;
    for (const auto& [u, c] : x.terms) {
      auto f = holonomy_functional(torus2, std::vector<Lattice>(static_cast<std::size_t>(k), u), k);
      for (const auto& [w, v] : f.table) add_term(out.values, CochainKey{w, torus2.unit()}, c * v / factorial);
    }
  }
  return out;
}

Pi1Comparison compare_pi1_dimensions(int p, std::optional<int> weight_cutoff) {
  if (p < 1) throw DimensionMismatchError("compare_pi1_dimensions needs p >= 1");
  const int needed = p - 1;
  if (weight_cutoff && *weight_cutoff < needed)
    throw TruncationError("weight cutoff " + std::to_string(*weight_cutoff) + " is too small for p = " +
                          std::to_string(p) + "; use at least " + std::to_string(needed));
  static const DGA t2 = torus(2);
  Pi1Comparison r;
  r.p = p;
  r.weight_cutoff = needed;
  r.group_ring_dimension = jadic_basis(p).dimension();
  r.h0_dimension = H0Space(t2, needed).dim();
  r.match = r.group_ring_dimension == r.h0_dimension;
  return r;
}

}  // namespace loophom
