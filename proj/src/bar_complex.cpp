#include "loophom/bar_complex.hpp"

#include <algorithm>
#include <sstream>

namespace loophom {

int suspended_degree(const DGA& a, int letter) { return a.degree(letter) - 1; }

int bar_degree(const DGA& a, const Word& w, std::size_t begin, std::size_t end) {
  int s = 0;
  for (std::size_t i = begin; i < end; ++i) s += a.degree(w[i]) - 1;
  return s;
}

int bar_degree(const DGA& a, const Word& w) { return bar_degree(a, w, 0, w.size()); }

std::vector<int> prefix_degrees(const DGA& a, const Word& w) {
  std::vector<int> eps(w.size() + 1, 0);
  for (std::size_t i = 0; i < w.size(); ++i) eps[i + 1] = eps[i] + a.degree(w[i]) - 1;
  return eps;
}

std::string format_word(const DGA& a, const Word& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += a.basis().name(w[i]);
  }
  return s + ")";
}

std::string format_chain(const DGA& a, const BarChain& c) {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, q] : c) {
    if (!first) os << (q < 0 ? " - " : " + ");
    else if (q < 0) os << "-";
    first = false;
    Rational m = abs(q);
    if (m != 1) os << format_rational(m) << "*";
    os << format_word(a, w);
  }
  return os.str();
}

void add_term(BarChain& c, const Word& w, const Rational& q) {
  if (q == 0) return;
  auto [it, inserted] = c.emplace(w, q);
  if (!inserted) {
    it->second += q;
    if (it->second == 0) c.erase(it);
  }
}

BarChain bar_d(const DGA& a, const Word& w) {
  BarChain out;
  const auto eps = prefix_degrees(a, w);
  const std::size_t r = w.size();
  for (std::size_t i = 0; i < r; ++i) {
    const Rational sign(-parity_sign(eps[i]));
    for (const auto& [k, c] : a.d(w[i])) {
      Word v = w;
      v[i] = k;
      add_term(out, v, sign * c);
    }
  }
  for (std::size_t i = 0; i + 1 < r; ++i) {
    const Rational sign(-parity_sign(eps[i + 1]));
    for (const auto& [k, c] : a.product(w[i], w[i + 1])) {
      if (a.degree(k) == 0) continue;  // reduced convention
      Word v;
      v.reserve(r - 1);
      v.insert(v.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      v.push_back(k);
      v.insert(v.end(), w.begin() + static_cast<std::ptrdiff_t>(i + 2), w.end());
      add_term(out, v, sign * c);
    }
  }
  return out;
}

BarChain bar_d(const DGA& a, const BarChain& c) {
  BarChain out;
  for (const auto& [w, q] : c)
    for (const auto& [v, p] : bar_d(a, w)) add_term(out, v, q * p);
  return out;
}

std::vector<std::pair<Word, Word>> bar_coproduct(const Word& w) {
  std::vector<std::pair<Word, Word>> out;
  for (std::size_t i = 0; i <= w.size(); ++i)
    out.emplace_back(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)),
                     Word(w.begin() + static_cast<std::ptrdiff_t>(i), w.end()));
  return out;
}

namespace {

void extend(const DGA& a, Word& cur, int deg, int min_degree, int max_degree, int max_weight,
            std::vector<Word>& out) {
  if (deg >= min_degree) out.push_back(cur);
  if (static_cast<int>(cur.size()) == max_weight) return;
  for (int x : a.letters()) {
    int nd = deg + a.degree(x) - 1;
    if (nd > max_degree) continue;
    cur.push_back(x);
    extend(a, cur, nd, min_degree, max_degree, max_weight, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Word> enumerate_words(const DGA& a, int min_degree, int max_degree, int max_weight) {
  std::vector<Word> out;
  if (max_degree < 0 || max_weight < 0 || min_degree > max_degree) return out;
  Word cur;
  extend(a, cur, 0, min_degree, max_degree, max_weight, out);
  std::sort(out.begin(), out.end(), WordOrder{});
  return out;
}

bool bar_degree_exhausted(const DGA& a, int degree, int max_weight) {
  if (degree < 0 || a.letters().empty()) return true;
  int s = a.min_suspended_degree();
  if (s <= 0) return false;
  return static_cast<long long>(max_weight + 1) * s > degree;
}

namespace {

SparseMatrix bar_d_matrix(const DGA& a, const std::vector<Word>& source, const std::vector<Word>& target) {
  std::unordered_map<Word, int, WordHash> pos;
  for (std::size_t i = 0; i < target.size(); ++i) pos.emplace(target[i], static_cast<int>(i));
  std::vector<std::tuple<int, int, Rational>> t;
  for (std::size_t c = 0; c < source.size(); ++c)
    for (const auto& [v, q] : bar_d(a, source[c])) {
      // d_B never raises weight, so every term is inside the target slice.
      t.emplace_back(pos.at(v), static_cast<int>(c), q);
    }
  return SparseMatrix::from_triplets(static_cast<int>(target.size()), static_cast<int>(source.size()), std::move(t));
}

std::map<int, std::vector<Word>> words_by_degree(const DGA& a, int lo, int hi, int max_weight) {
  std::map<int, std::vector<Word>> by;
  for (int n = lo; n <= hi; ++n) by[n];
  for (auto& w : enumerate_words(a, std::max(lo, 0), hi, max_weight)) by[bar_degree(a, w)].push_back(std::move(w));
  return by;
}

}  // namespace

std::vector<BarSlice> bar_basis(const DGA& a, int min_degree, int max_degree, int max_weight) {
  std::vector<BarSlice> out;
  if (min_degree > max_degree) return out;
  auto by = words_by_degree(a, min_degree, max_degree + 1, max_weight);
  for (int n = min_degree; n <= max_degree; ++n) {
    BarSlice s;
    s.degree = n;
    s.max_weight = max_weight;
    s.basis = by[n];
    s.d_matrix = bar_d_matrix(a, s.basis, by[n + 1]);
    s.complete = bar_degree_exhausted(a, n, max_weight);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<BarHomology> bar_homology(const DGA& a, int min_degree, int max_degree, int max_weight) {
  std::vector<BarHomology> out;
  if (min_degree > max_degree) return out;
  auto slices = bar_basis(a, min_degree - 1, max_degree, max_weight);
  for (std::size_t k = 1; k < slices.size(); ++k) {
    const BarSlice& s = slices[k];
    auto h = homology(slices[k - 1].d_matrix, s.d_matrix);
    BarHomology bh;
    bh.degree = s.degree;
    bh.betti = h.betti();
    bh.exact = bar_degree_exhausted(a, s.degree + 1, max_weight);
    for (const auto& r : h.representatives()) {
      BarChain c;
      for (const auto& [i, q] : r) c.emplace(s.basis[static_cast<std::size_t>(i)], q);
      bh.representatives.push_back(std::move(c));
    }
    out.push_back(std::move(bh));
  }
  return out;
}

void write_bar_slice_tsv(std::ostream& os, const DGA& a, const BarSlice& slice) {
  os << "word\tdegree\tweight\td_B\n";
  for (const auto& w : slice.basis)
    os << format_word(a, w) << '\t' << bar_degree(a, w) << '\t' << w.size() << '\t' << format_chain(a, bar_d(a, w))
       << '\n';
}

}  // namespace loophom
