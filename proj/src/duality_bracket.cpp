#include "loophom/duality_bracket.hpp"

#include <algorithm>

#include "loophom/errors.hpp"

namespace loophom {

namespace {

void require_orientation(const DGA& a) {
  if (!a.has_orientation()) throw MissingOrientationError("algebra '" + a.name() + "' has no orientation");
}

std::map<Word, AlgVector, WordOrder> by_word(const CochainValues& values) {
  std::map<Word, AlgVector, WordOrder> out;
  for (const auto& [k, q] : values) out[k.word].emplace_back(k.element, q);
  return out;
}

}  // namespace

DualCochain poincare_P(const DGA& a, const Cochain& phi) {
  require_orientation(a);
  check_grading(a, phi);
  const int d = a.top_degree();
  DualCochain out;
  out.degree = phi.degree + d;
  for (const auto& [w, x] : by_word(phi.values)) {
    const int q = a.degree(x.front().first);
    for (int b : a.basis().of_degree(d - q)) {
      Rational s = 0;
      for (const auto& [e, c] : x) s += c * a.pairing(b, e);
      if (s != 0) out.values.emplace(CochainKey{w, b}, std::move(s));
    }
  }
  return out;
}

SparseMatrix poincare_matrix(const DGA& a, const SliceBasis& to_a, const SliceBasis& dual) {
  require_orientation(a);
  const int d = a.top_degree();
  if (to_a.variant() != Variant::ToA || dual.variant() != Variant::Dual || dual.degree() != to_a.degree() + d)
    throw DimensionMismatchError("poincare_matrix: slices do not match the degree shift");
  std::vector<SparseVector> rows;
  for (const auto& key : dual.keys()) {
    std::vector<std::pair<int, Rational>> row;
    for (int e : a.basis().of_degree(d - a.degree(key.element))) {
      Rational s = a.pairing(key.element, e);
      if (s == 0) continue;
      if (auto i = to_a.find(CochainKey{key.word, e})) row.emplace_back(*i, s);
    }
    rows.push_back(make_sparse(std::move(row)));
  }
  return SparseMatrix::from_rows(to_a.size(), std::move(rows));
}

PairingInverse::PairingInverse(const DGA& a) : a_(&a) {
  if (!a.has_orientation()) {
    available_ = false;
    return;
  }
  const int d = a.top_degree();
  for (int q = 0; q <= a.basis().max_degree(); ++q) {
    const auto& bs = a.basis().of_degree(q);
    if (bs.empty()) continue;
    const auto& xs = a.basis().of_degree(d - q);
    if (xs.size() != bs.size()) {
      available_ = false;
      return;
    }
    std::vector<std::tuple<int, int, Rational>> t;
    for (std::size_t i = 0; i < bs.size(); ++i)
      for (std::size_t j = 0; j < xs.size(); ++j) {
        Rational s = a.pairing(bs[i], xs[j]);
        if (s != 0) t.emplace_back(static_cast<int>(i), static_cast<int>(j), s);
      }
    const int n = static_cast<int>(bs.size());
    SparseMatrix m = SparseMatrix::from_triplets(n, n, std::move(t));
    std::vector<std::vector<Rational>> inv(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int b = 0; b < n; ++b) {
      auto sol = solve(m, unit_vector(b));
      if (!sol.solution || rank(m) != n) {
        available_ = false;
        return;
      }
      for (const auto& [x, c] : *sol.solution) inv[static_cast<std::size_t>(x)][static_cast<std::size_t>(b)] = c;
    }
    inverse_.emplace(q, std::move(inv));
  }
}

Cochain PairingInverse::apply(const DualCochain& c) const {
  if (!available_) throw NotInImageError("orientation pairing is not perfect at chain level");
  const DGA& a = *a_;
  check_grading(a, c);
  const int d = a.top_degree();
  Cochain out;
  out.degree = c.degree - d;
  for (const auto& [w, v] : by_word(c.values)) {
    const int q = a.degree(v.front().first);
    const auto& bs = a.basis().of_degree(q);
    const auto& xs = a.basis().of_degree(d - q);
    const auto& inv = inverse_.at(q);
    for (std::size_t x = 0; x < xs.size(); ++x) {
      Rational s = 0;
      for (const auto& [b, coef] : v) {
        auto pos = static_cast<std::size_t>(std::find(bs.begin(), bs.end(), b) - bs.begin());
        s += inv[x][pos] * coef;
      }
      if (s != 0) out.values.emplace(CochainKey{w, xs[x]}, std::move(s));
    }
  }
  return out;
}

Cochain poincare_P_inverse(const DGA& a, const DualCochain& c, int weight_cutoff) {
  require_orientation(a);
  check_grading(a, c);
  const int k = c.degree, n = k - a.top_degree();
  TruncatedComplex to_a(a, Variant::ToA, weight_cutoff), dual(a, Variant::Dual, weight_cutoff);
  const SliceBasis& zs = to_a.basis(n);
  const SliceBasis& cs = dual.basis(k);
  const SparseMatrix pm = poincare_matrix(a, zs, cs);
  const SparseMatrix& bd = dual.delta(k + 1);
  const SparseMatrix& da = to_a.delta(n);
  const int n1 = zs.size();
  std::vector<SparseVector> rows;
  for (int r = 0; r < pm.rows(); ++r) {
    SparseVector row = pm.row(r);
    for (const auto& [j, q] : bd.row(r)) row.emplace_back(n1 + j, q);
    rows.push_back(std::move(row));
  }
  for (int r = 0; r < da.rows(); ++r) rows.push_back(da.row(r));
  SparseMatrix system = SparseMatrix::from_rows(n1 + bd.cols(), std::move(rows));
  auto sol = solve(system, cs.to_vector(c.values));
  if (!sol.solution)
    throw NotInImageError("class of degree " + std::to_string(k) + " is not in the image of P at cutoff " +
                          std::to_string(weight_cutoff));
  SparseVector z;
  for (const auto& [j, q] : *sol.solution)
    if (j < n1) z.emplace_back(j, q);
  return Cochain{n, zs.from_vector(z)};
}

DualCochain connes_B(const DGA& a, const DualCochain& phi) {
  check_grading(a, phi);
  DualCochain out;
  out.degree = phi.degree + 1;
  for (const auto& [key, val] : phi.values) {
    if (key.element != a.unit()) continue;
    const Word& v = key.word;
    const std::size_t r = v.size();
    for (std::size_t j = 0; j < r; ++j) {
      Word w(v.begin() + static_cast<std::ptrdiff_t>(j + 1), v.end());
      w.insert(w.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(j));
      const long long tail = bar_degree(a, v, j + 1, r), head = bar_degree(a, v, 0, j);
      add_term(out.values, CochainKey{std::move(w), v[j]}, Rational(parity_sign((tail + 1) * head)) * val);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

H0Space::H0Space(const DGA& a, int weight_cutoff)
    : cutoff_(weight_cutoff), degree0_(a, Variant::Dual, 0, weight_cutoff) {
  if (weight_cutoff < 0) throw TruncationError("weight cutoff must be non-negative");
  SliceBasis degree1(a, Variant::Dual, 1, weight_cutoff);
  delta1_ = delta_matrix(a, degree1, degree0_);
  homology_ = loophom::homology(delta1_, SparseMatrix(0, degree0_.size()));
}

SparseVector H0Space::coordinates(const DualCochain& c) const {
  if (c.degree != 0) throw GradingError("H_0 coordinates need a degree-0 cochain");
  auto coords = homology_.express(degree0_.to_vector(c.values));
  if (!coords) throw StructureError("degree-0 cochain failed to reduce");
  return std::move(*coords);
}

DualCochain H0Space::representative(int i) const {
  return DualCochain{0, degree0_.from_vector(homology_.representatives().at(static_cast<std::size_t>(i)))};
}

DualCochain H0Space::from_coordinates(const SparseVector& coords) const {
  SparseVector v;
  for (const auto& [i, q] : coords) v = add_scaled(v, homology_.representatives().at(static_cast<std::size_t>(i)), q);
  return DualCochain{0, degree0_.from_vector(v)};
}

SymplecticBasis find_symplectic_basis(const DGA& a) {
  const std::string fail = "model '" + a.name() + "' lacks symplectic degree-1 structure";
  if (!a.has_orientation() || a.top_degree() != 2) throw StructureError(fail);
  const auto& ones = a.basis().of_degree(1);
  if (ones.empty()) throw StructureError(fail);
  SymplecticBasis s;
  std::vector<char> used(ones.size(), 0);
  for (std::size_t i = 0; i < ones.size(); ++i) {
    if (used[i]) continue;
    std::size_t j = i + 1;
    while (j < ones.size() && (used[j] || a.pairing(ones[i], ones[j]) == 0)) ++j;
    if (j == ones.size()) throw StructureError(fail);
    used[i] = used[j] = 1;
    if (a.pairing(ones[i], ones[j]) == 1) {
      s.alphas.push_back(ones[i]);
      s.betas.push_back(ones[j]);
    } else if (a.pairing(ones[j], ones[i]) == 1) {
      s.alphas.push_back(ones[j]);
      s.betas.push_back(ones[i]);
    } else {
      throw StructureError(fail);
    }
  }
  const std::size_t g = s.alphas.size();
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      if (a.pairing(s.alphas[i], s.betas[j]) != (i == j ? 1 : 0) || a.pairing(s.alphas[i], s.alphas[j]) != 0 ||
          a.pairing(s.betas[i], s.betas[j]) != 0)
        throw StructureError(fail);
    }
  return s;
}

BracketEngine::BracketEngine(const DGA& a, int weight_cutoff)
    : a_(&a), cutoff_(weight_cutoff), symplectic_(find_symplectic_basis(a)), inverse_(a) {
  if (weight_cutoff < 1) throw TruncationError("bracket needs weight cutoff >= 1 (output lives on F^{m-1})");
  target_ = std::make_shared<H0Space>(a, weight_cutoff - 1);
}

Cochain BracketEngine::lifted_connes(const DualCochain& x) const {
  const DGA& a = *a_;
  if (x.degree != 0) throw GradingError("bracket inputs must be degree-0 classes");
  DualCochain b = connes_B(a, DualCochain{0, truncate(x.values, cutoff_)});
  if (!truncate(delta_to_dual(a, b).values, cutoff_ - 1).empty())
    throw StructureError("Connes image of a degree-0 class is not a cycle");
  Cochain z = inverse_.available() ? inverse_.apply(b) : poincare_P_inverse(a, b, cutoff_ - 1);
  z.values = truncate(z.values, cutoff_ - 1);
  return z;
}

DualCochain BracketEngine::bracket(const DualCochain& x, const DualCochain& y) const {
  return bracket_lifted(lifted_connes(x), lifted_connes(y));
}

DualCochain BracketEngine::bracket_lifted(const Cochain& lx, const Cochain& ly) const {
  const DGA& a = *a_;
  Cochain c = cup(a, lx, ly, cutoff_ - 1);
  DualCochain out = poincare_P(a, c);
  for (auto& [k, q] : out.values) q = -q;
  return out;
}

int filtration_level(const DGA& a, const DualCochain& c, int max_cutoff) {
  for (int k = 0; k <= max_cutoff; ++k)
    if (!H0Space(a, k).is_zero(c)) return k;
  return max_cutoff + 1;
}

// ---------------------------------------------------------------------------

Rational E1Functional::at(const Word& w) const {
  auto it = table.find(w);
  return it == table.end() ? Rational(0) : it->second;
}

namespace {

Word rotate(Word v, int m) {
  std::rotate(v.begin(), v.begin() + m, v.end());
  return v;
}

void all_words(const std::vector<int>& letters, int length, Word& cur, std::vector<Word>& out) {
  if (static_cast<int>(cur.size()) == length) {
    out.push_back(cur);
    return;
  }
  for (int x : letters) {
    cur.push_back(x);
    all_words(letters, length, cur, out);
    cur.pop_back();
  }
}

}  // namespace

E1Functional e1_bracket(const DGA& a, const E1Functional& f, const E1Functional& g, const SymplecticBasis& s) {
  const int p = f.arity, q = g.arity;
  if (p < 1 || q < 1) throw DimensionMismatchError("e1_bracket needs arities p, q >= 1");
  E1Functional out;
  out.arity = p + q - 2;
  std::vector<Word> words;
  Word cur;
  all_words(a.basis().of_degree(1), out.arity, cur, words);
  for (const Word& w : words) {
    Word left(w.begin(), w.begin() + (p - 1)), right(w.begin() + (p - 1), w.end());
    Rational sum = 0;
    for (std::size_t i = 0; i < s.alphas.size(); ++i) {
      Word la{s.alphas[i]}, lb{s.betas[i]}, ra{s.alphas[i]}, rb{s.betas[i]};
      la.insert(la.end(), left.begin(), left.end());
      lb.insert(lb.end(), left.begin(), left.end());
      ra.insert(ra.end(), right.begin(), right.end());
      rb.insert(rb.end(), right.begin(), right.end());
      for (int m = 0; m < p; ++m)
        for (int n = 0; n < q; ++n)
          sum += f.at(rotate(la, m)) * g.at(rotate(rb, n)) - f.at(rotate(lb, m)) * g.at(rotate(ra, n));
    }
    if (sum != 0) out.table.emplace(w, std::move(sum));
  }
  return out;
}

DualCochain e1_lift(const DGA& a, const E1Functional& f) {
  DualCochain out;
  for (const auto& [w, q] : f.table) {
    if (static_cast<int>(w.size()) != f.arity) throw DimensionMismatchError("E1 table entry of wrong arity");
    for (int x : w)
      if (a.degree(x) != 1) throw GradingError("E1 functional entries must use degree-1 letters");
    if (q != 0) out.values.emplace(CochainKey{w, a.unit()}, q);
  }
  return out;
}

E1Term e1_term(const DGA& a, int p) {
  if (p < 0) throw DimensionMismatchError("e1_term needs p >= 0");
  E1Term t;
  t.weight = p;
  auto coh = algebra_cohomology(a);
  const int maxdeg = a.basis().max_degree();

  std::map<int, long long> tensor{{0, 1}};
  for (int k = 0; k < p; ++k) {
    std::map<int, long long> next;
    for (const auto& [s, c] : tensor)
      for (int q = 1; q <= maxdeg; ++q)
        if (coh.betti(q)) next[s + q - 1] += c * coh.betti(q);
    tensor = std::move(next);
  }
  for (const auto& [s, c] : tensor)
    for (int q = 0; q <= maxdeg; ++q)
      if (c != 0 && coh.betti(q) != 0) t.expected[s + q] += static_cast<int>(c * coh.betti(q));

  // Cochains on words of weight exactly p; δ restricted to weight-preserving terms.
  std::map<int, std::vector<CochainKey>> keys;
  auto words = enumerate_words(a, 0, p * std::max(0, maxdeg - 1), p);
  for (const auto& w : words) {
    if (static_cast<int>(w.size()) != p) continue;
    for (int e = 0; e < a.dim(); ++e) keys[bar_degree(a, w) + a.degree(e)].push_back(CochainKey{w, e});
  }
  std::map<int, std::map<CochainKey, int>> index;
  for (auto& [n, ks] : keys) {
    std::sort(ks.begin(), ks.end());
    for (std::size_t i = 0; i < ks.size(); ++i) index[n].emplace(ks[i], static_cast<int>(i));
  }
  auto size_of = [&](int n) { return keys.count(n) ? static_cast<int>(keys[n].size()) : 0; };
  auto delta = [&](int n) {  // degree n -> n - 1
    std::vector<SparseVector> rows;
    if (keys.count(n - 1))
      for (const auto& key : keys[n - 1]) {
        std::vector<std::pair<int, Rational>> row;
        for (const auto& [src, c] : delta_terms(a, Variant::Dual, key))
          if (static_cast<int>(src.word.size()) == p) row.emplace_back(index[n].at(src), c);
        rows.push_back(make_sparse(std::move(row)));
      }
    return SparseMatrix::from_rows(size_of(n), std::move(rows));
  };
  std::vector<int> degrees;
  for (const auto& [n, ks] : keys) degrees.push_back(n);
  for (int n : degrees) {
    int b = homology(delta(n + 1), delta(n)).betti();
    if (b) t.computed[n] = b;
  }
  t.agree = t.expected == t.computed;
  return t;
}

}  // namespace loophom
