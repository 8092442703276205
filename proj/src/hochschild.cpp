#include "loophom/hochschild.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include "loophom/errors.hpp"

namespace loophom {

const char* variant_name(Variant v) { return v == Variant::ToA ? "to-A" : "dual"; }

void add_term(CochainValues& values, const CochainKey& key, const Rational& q) {
  if (q == 0) return;
  auto [it, inserted] = values.emplace(key, q);
  if (!inserted) {
    it->second += q;
    if (it->second == 0) values.erase(it);
  }
}

CochainValues add_scaled(const CochainValues& a, const CochainValues& b, const Rational& s) {
  CochainValues out = a;
  for (const auto& [k, q] : b) add_term(out, k, s * q);
  return out;
}

int max_weight(const CochainValues& values) {
  int m = -1;
  for (const auto& [k, q] : values) m = std::max(m, static_cast<int>(k.word.size()));
  return m;
}

CochainValues truncate(const CochainValues& values, int max_w) {
  CochainValues out;
  for (const auto& [k, q] : values)
    if (static_cast<int>(k.word.size()) <= max_w) out.emplace(k, q);
  return out;
}

AlgVector Cochain::value(const Word& w) const {
  AlgVector v;
  for (auto it = values.lower_bound(CochainKey{w, INT_MIN}); it != values.end() && it->first.word == w; ++it)
    v.emplace_back(it->first.element, it->second);
  return v;
}

Rational DualCochain::value(const Word& w, int element) const {
  auto it = values.find(CochainKey{w, element});
  return it == values.end() ? Rational(0) : it->second;
}

int key_degree(const DGA& a, Variant v, const CochainKey& k) {
  int p = bar_degree(a, k.word);
  return v == Variant::ToA ? p - a.degree(k.element) : p + a.degree(k.element);
}

namespace {

void check_values(const DGA& a, Variant v, int degree, const CochainValues& values) {
  for (const auto& [k, q] : values) {
    if (k.element < 0 || k.element >= a.dim()) throw GradingError("cochain entry refers to a missing basis element");
    for (int x : k.word)
      if (x < 0 || x >= a.dim() || a.degree(x) <= 0) throw GradingError("cochain word contains a non-letter");
    if (key_degree(a, v, k) != degree)
      throw GradingError(std::string(variant_name(v)) + " cochain of degree " + std::to_string(degree) +
                         " has an entry on " + format_word(a, k.word) + " of degree " +
                         std::to_string(key_degree(a, v, k)));
  }
}

Word slice_word(const Word& w, std::size_t begin, std::size_t end) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(begin), w.begin() + static_cast<std::ptrdiff_t>(end));
}

}  // namespace

void check_grading(const DGA& a, const Cochain& c) { check_values(a, Variant::ToA, c.degree, c.values); }
void check_grading(const DGA& a, const DualCochain& c) { check_values(a, Variant::Dual, c.degree, c.values); }

Cochain unit_cochain(const DGA& a) {
  Cochain u;
  u.degree = 0;
  u.values.emplace(CochainKey{{}, a.unit()}, Rational(1));
  return u;
}

// ---------------------------------------------------------------------------

namespace {

// Shared by every key over the same word. Terms of δ land on the word itself, on a
// word of d_B(word), or on the word with its first or last letter removed.
struct WordData {
  Word word;
  std::vector<int> eps;
  std::vector<std::pair<Word, Rational>> dw;
  Word tail, head;
};

constexpr int kSelf = -1, kTail = -2, kHead = -3;  // slots; a slot >= 0 indexes dw

WordData word_data(const DGA& a, const Word& w) {
  WordData wd;
  wd.word = w;
  wd.eps = prefix_degrees(a, w);
  for (auto& [u, c] : bar_d(a, w)) wd.dw.emplace_back(u, c);
  if (!w.empty()) {
    wd.tail = slice_word(w, 1, w.size());
    wd.head = slice_word(w, 0, w.size() - 1);
  }
  return wd;
}

const Word& slot_word(const WordData& wd, int slot) {
  if (slot == kSelf) return wd.word;
  if (slot == kTail) return wd.tail;
  if (slot == kHead) return wd.head;
  return wd.dw[static_cast<std::size_t>(slot)].first;
}

// Calls emit(slot, element, coefficient) for every term of δ read at `target`.
template <class Emit>
void for_each_delta_term(const DGA& a, Variant v, const CochainKey& target, const WordData& wd, Emit&& emit) {
  const Word& w = target.word;
  const std::size_t r = w.size();
  const auto& eps = wd.eps;
  const int ndw = static_cast<int>(wd.dw.size());

  if (v == Variant::Dual) {
    const int om = target.element;
    const int s = parity_sign(a.degree(om));
    for (const auto& [k, c] : a.d(om)) emit(kSelf, k, c);
    for (int i = 0; i < ndw; ++i) emit(i, om, s * wd.dw[static_cast<std::size_t>(i)].second);
    if (r >= 1) {
      for (const auto& [k, c] : a.product(om, w[0])) emit(kTail, k, -s * c);
      const int s4 = s * parity_sign(static_cast<long long>(eps[r - 1]) * (a.degree(w[r - 1]) + 1));
      for (const auto& [k, c] : a.product(om, w[r - 1])) emit(kHead, k, s4 * c);
    }
  } else {
    const int val = target.element;
    const int n = eps[r] - a.degree(val) + 1;  // degree of the source cochain
    const int s = parity_sign(n - eps[r]);
    for (const auto& [src, c] : a.d_sources(val)) emit(kSelf, src, s * c);
    for (int i = 0; i < ndw; ++i) emit(i, val, -s * wd.dw[static_cast<std::size_t>(i)].second);
    if (r >= 1) {
      for (const auto& [j, c] : a.left_sources(w[0], val)) emit(kTail, j, s * c);
      const int t = parity_sign(static_cast<long long>(a.degree(w[r - 1]) + 1) * (n + 1));
      for (const auto& [i, c] : a.right_sources(w[r - 1], val)) emit(kHead, i, -t * c);
    }
  }
}

}  // namespace

std::vector<std::pair<CochainKey, Rational>> delta_terms(const DGA& a, Variant v, const CochainKey& target) {
  const WordData wd = word_data(a, target.word);
  CochainValues acc;
  for_each_delta_term(a, v, target, wd, [&](int slot, int element, const Rational& c) {
    add_term(acc, CochainKey{slot_word(wd, slot), element}, c);
  });
  return {acc.begin(), acc.end()};
}

namespace {

// Words w such that some term of δ at (w, ·) reads the entry at word v.
std::set<Word, WordOrder> candidate_words(const DGA& a, const Word& v) {
  std::set<Word, WordOrder> out{v};
  for (int x : a.letters()) {
    Word left{x};
    left.insert(left.end(), v.begin(), v.end());
    out.insert(std::move(left));
    Word right = v;
    right.push_back(x);
    out.insert(std::move(right));
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (const auto& [src, c] : a.d_sources(v[i]))
      if (a.degree(src) > 0) {
        Word u = v;
        u[i] = src;
        out.insert(std::move(u));
      }
    for (int x : a.letters())
      for (const auto& [y, c] : a.left_sources(x, v[i]))
        if (a.degree(y) > 0) {
          Word u(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i));
          u.push_back(x);
          u.push_back(y);
          u.insert(u.end(), v.begin() + static_cast<std::ptrdiff_t>(i + 1), v.end());
          out.insert(std::move(u));
        }
  }
  return out;
}

CochainValues apply_delta(const DGA& a, Variant v, int degree, const CochainValues& phi) {
  std::set<CochainKey> targets;
  std::set<Word, WordOrder> seen;
  for (const auto& [k, q] : phi) {
    if (!seen.insert(k.word).second) continue;
    for (const Word& w : candidate_words(a, k.word)) {
      int p = bar_degree(a, w);
      int qdeg = v == Variant::Dual ? degree - 1 - p : p - (degree - 1);
      for (int e : a.basis().of_degree(qdeg)) targets.insert(CochainKey{w, e});
    }
  }
  CochainValues out;
  for (const auto& t : targets) {
    Rational s = 0;
    for (const auto& [src, c] : delta_terms(a, v, t))
      if (auto it = phi.find(src); it != phi.end()) s += c * it->second;
    if (s != 0) out.emplace(t, std::move(s));
  }
  return out;
}

}  // namespace

Cochain delta_to_A(const DGA& a, const Cochain& phi) {
  check_grading(a, phi);
  return Cochain{phi.degree - 1, apply_delta(a, Variant::ToA, phi.degree, phi.values)};
}

DualCochain delta_to_dual(const DGA& a, const DualCochain& psi) {
  check_grading(a, psi);
  return DualCochain{psi.degree - 1, apply_delta(a, Variant::Dual, psi.degree, psi.values)};
}

Cochain cup(const DGA& a, const Cochain& f, const Cochain& g, std::optional<int> max_w) {
  std::map<Word, AlgVector, WordOrder> fv, gv;
  for (const auto& [k, q] : f.values) fv[k.word].emplace_back(k.element, q);
  for (const auto& [k, q] : g.values) gv[k.word].emplace_back(k.element, q);
  Cochain out;
  out.degree = f.degree + g.degree;
  for (const auto& [u, x] : fv)
    for (const auto& [v, y] : gv) {
      if (max_w && static_cast<int>(u.size() + v.size()) > *max_w) continue;
      const int s = parity_sign(static_cast<long long>(f.degree) * (g.degree + bar_degree(a, v)));
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      for (const auto& [k, c] : a.multiply(x, y)) add_term(out.values, CochainKey{w, k}, s * c);
    }
  return out;
}

// ---------------------------------------------------------------------------

SliceBasis::SliceBasis(const DGA& a, Variant v, int degree, int weight_cutoff)
    : variant_(v), degree_(degree), cutoff_(weight_cutoff) {
  const int maxdeg = a.basis().max_degree();
  local_.assign(static_cast<std::size_t>(a.dim()), 0);
  for (int q = 0; q <= maxdeg; ++q) {
    const auto& of = a.basis().of_degree(q);
    for (std::size_t i = 0; i < of.size(); ++i) local_[static_cast<std::size_t>(of[i])] = static_cast<int>(i);
  }
  std::vector<Word> words = v == Variant::Dual ? enumerate_words(a, std::max(0, degree - maxdeg), degree, weight_cutoff)
                                               : enumerate_words(a, std::max(0, degree), degree + maxdeg, weight_cutoff);
  for (auto& w : words) {
    int p = bar_degree(a, w);
    int q = v == Variant::Dual ? degree - p : p - degree;
    const auto& of = a.basis().of_degree(q);
    if (of.empty()) continue;
    word_start_.emplace(w, size());
    for (int e : of) keys_.push_back(CochainKey{w, e});
  }
}

std::optional<int> SliceBasis::find(const CochainKey& k) const {
  return index_in_block(block_start(k.word), k.word, k.element);
}

std::optional<int> SliceBasis::block_start(const Word& w) const {
  auto it = word_start_.find(w);
  if (it == word_start_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> SliceBasis::index_in_block(std::optional<int> start, const Word& w, int element) const {
  if (!start) return std::nullopt;
  int idx = *start + local_[static_cast<std::size_t>(element)];
  if (idx >= size()) return std::nullopt;
  const CochainKey& k = keys_[static_cast<std::size_t>(idx)];
  if (k.element != element || k.word != w) return std::nullopt;
  return idx;
}

SparseVector SliceBasis::to_vector(const CochainValues& values) const {
  std::vector<std::pair<int, Rational>> out;
  for (const auto& [k, q] : values) {
    if (static_cast<int>(k.word.size()) > cutoff_) continue;
    auto i = find(k);
    if (!i) throw GradingError("cochain entry outside the degree " + std::to_string(degree_) + " slice");
    out.emplace_back(*i, q);
  }
  return make_sparse(std::move(out));
}

CochainValues SliceBasis::from_vector(const SparseVector& v) const {
  CochainValues out;
  for (const auto& [i, q] : v) out.emplace(keys_[static_cast<std::size_t>(i)], q);
  return out;
}

SparseMatrix delta_matrix(const DGA& a, const SliceBasis& source, const SliceBasis& target) {
  if (source.variant() != target.variant() || source.degree() != target.degree() + 1 ||
      source.weight_cutoff() != target.weight_cutoff())
    throw DimensionMismatchError("delta_matrix: slices are not adjacent");
  std::vector<SparseVector> rows;
  rows.reserve(static_cast<std::size_t>(target.size()));
  WordData wd;
  std::vector<std::optional<int>> starts;  // block offset in `source` of each slot word
  auto start_of = [&](int slot) { return starts[static_cast<std::size_t>(slot + 3)]; };
  bool have = false;
  for (const auto& key : target.keys()) {
    if (!have || wd.word != key.word) {
      wd = word_data(a, key.word);
      starts.assign(wd.dw.size() + 3, std::nullopt);
      for (int slot = kHead; slot < static_cast<int>(wd.dw.size()); ++slot)
        starts[static_cast<std::size_t>(slot + 3)] = source.block_start(slot_word(wd, slot));
      have = true;
    }
    std::vector<std::pair<int, Rational>> row;
    for_each_delta_term(a, source.variant(), key, wd, [&](int slot, int element, const Rational& c) {
      auto i = source.index_in_block(start_of(slot), slot_word(wd, slot), element);
      if (!i) throw StructureError("delta term outside the source slice at " + format_word(a, slot_word(wd, slot)));
      row.emplace_back(*i, c);
    });
    rows.push_back(make_sparse(std::move(row)));
  }
  return SparseMatrix::from_rows(source.size(), std::move(rows));
}

bool slice_exhausted(const DGA& a, Variant v, int degree, int weight_cutoff) {
  int pmax = v == Variant::Dual ? degree : degree + a.basis().max_degree();
  return bar_degree_exhausted(a, pmax, weight_cutoff);
}

ComplexSlice assemble_complex(const DGA& a, Variant v, int degree, int weight_cutoff) {
  if (weight_cutoff < 0) throw TruncationError("weight cutoff must be non-negative");
  ComplexSlice s;
  s.variant = v;
  s.degree = degree;
  s.weight_cutoff = weight_cutoff;
  s.basis = SliceBasis(a, v, degree, weight_cutoff);
  SliceBasis below(a, v, degree - 1, weight_cutoff), above(a, v, degree + 1, weight_cutoff);
  s.delta_out = delta_matrix(a, s.basis, below);
  s.delta_in = delta_matrix(a, above, s.basis);
  s.complete = slice_exhausted(a, v, degree + 1, weight_cutoff);
  return s;
}

TruncatedComplex::TruncatedComplex(const DGA& a, Variant v, int weight_cutoff)
    : a_(&a), variant_(v), cutoff_(weight_cutoff) {
  if (weight_cutoff < 0) throw TruncationError("weight cutoff must be non-negative");
}

const SliceBasis& TruncatedComplex::basis(int n) {
  auto it = bases_.find(n);
  if (it == bases_.end()) it = bases_.emplace(n, SliceBasis(*a_, variant_, n, cutoff_)).first;
  return it->second;
}

const SparseMatrix& TruncatedComplex::delta(int n) {
  auto it = deltas_.find(n);
  if (it == deltas_.end()) {
    const SliceBasis& src = basis(n);
    const SliceBasis& dst = basis(n - 1);
    it = deltas_.emplace(n, delta_matrix(*a_, src, dst)).first;
  }
  return it->second;
}

const SubquotientBasis& TruncatedComplex::homology(int n) {
  auto it = homology_.find(n);
  if (it == homology_.end()) {
    const SparseMatrix& din = delta(n + 1);
    const SparseMatrix& dout = delta(n);
    it = homology_.emplace(n, loophom::homology(din, dout)).first;
  }
  return it->second;
}

bool TruncatedComplex::exact(int n) const { return slice_exhausted(*a_, variant_, n + 1, cutoff_); }

// ---------------------------------------------------------------------------

std::string class_name(const HomologyClassId& id) {
  return "[" + std::to_string(id.degree) + ":" + std::to_string(id.index) + "]";
}

const LoopHomologyDegree* LoopHomology::find(int degree) const {
  for (const auto& d : degrees)
    if (d.degree == degree) return &d;
  return nullptr;
}

HomologyWindow::HomologyWindow(const DGA& a, Variant v, int min_degree, int max_degree, int weight_cutoff)
    : complex_(a, v, weight_cutoff), lo_(min_degree), hi_(max_degree) {}

int HomologyWindow::betti(int n) { return complex_.homology(n).betti(); }

CochainValues HomologyWindow::representative(int n, int index) {
  const auto& h = complex_.homology(n);
  return complex_.basis(n).from_vector(h.representatives().at(static_cast<std::size_t>(index)));
}

std::optional<SparseVector> HomologyWindow::express(int n, const CochainValues& values) {
  return complex_.homology(n).express(complex_.basis(n).to_vector(values));
}

LoopHomology loop_homology(const DGA& a, int min_degree, int max_degree, int weight_cutoff) {
  if (min_degree > max_degree) throw DimensionMismatchError("empty degree range");
  HomologyWindow win(a, Variant::ToA, min_degree, max_degree, weight_cutoff);
  LoopHomology out;
  out.weight_cutoff = weight_cutoff;
  for (int n = min_degree; n <= max_degree; ++n) {
    LoopHomologyDegree d;
    d.degree = n;
    d.betti = win.betti(n);
    d.exact = win.complex().exact(n);
    out.exact = out.exact && d.exact;
    for (int i = 0; i < d.betti; ++i) d.representatives.push_back(Cochain{n, win.representative(n, i)});
    out.degrees.push_back(std::move(d));
  }
  for (const auto& x : out.degrees)
    for (const auto& y : out.degrees) {
      int n = x.degree + y.degree;
      for (int i = 0; i < x.betti; ++i)
        for (int j = 0; j < y.betti; ++j) {
          Cochain prod = cup(a, x.representatives[static_cast<std::size_t>(i)],
                             y.representatives[static_cast<std::size_t>(j)], weight_cutoff);
          auto coords = win.express(n, prod.values);
          if (!coords) throw StructureError("cup of representatives is not a cycle (sign bug)");
          out.products.emplace(std::make_pair(HomologyClassId{x.degree, i}, HomologyClassId{y.degree, j}),
                               std::move(*coords));
        }
    }
  if (min_degree <= 0 && 0 <= max_degree) {
    auto coords = win.express(0, unit_cochain(a).values);
    if (coords && coords->size() == 1 && coords->front().second == 1)
      out.identity = HomologyClassId{0, coords->front().first};
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Multilinear evaluation of a cochain on a word whose slots are elements of A.
// Components of degree 0 are dropped (reduced convention).
template <typename Leaf>
void expand_slots(const DGA& a, const std::vector<AlgVector>& slots, Word& cur, const Rational& coeff, std::size_t i,
                  Leaf&& leaf) {
  if (coeff == 0) return;
  if (i == slots.size()) {
    leaf(cur, coeff);
    return;
  }
  for (const auto& [k, c] : slots[i]) {
    if (a.degree(k) == 0) continue;
    cur.push_back(k);
    expand_slots(a, slots, cur, coeff * c, i + 1, leaf);
    cur.pop_back();
  }
}

std::vector<AlgVector> as_slots(const Word& w) {
  std::vector<AlgVector> s;
  for (int x : w) s.push_back(unit_vector(x));
  return s;
}

bool connected_and_closed(const DGA& a) {
  return a.basis().of_degree(0).size() == 1 && a.d(a.unit()).empty();
}

std::vector<Word> words_up_to(const DGA& a, int max_w) {
  if (max_w <= 0) return {};
  int top = 0;
  for (int x : a.letters()) top = std::max(top, a.degree(x) - 1);
  auto all = enumerate_words(a, 0, top * max_w, max_w);
  std::erase_if(all, [](const Word& w) { return w.empty(); });
  return all;
}

// For word w and f, the three families as lists of (slots, argument-side f-action?, sign).
struct FamilyTerm {
  std::vector<AlgVector> slots;
  bool act_on_argument;  // the "(fω)" / "f·φ(w)" term
  int sign;
};

std::vector<std::pair<int, std::vector<FamilyTerm>>> families(const DGA& a, const Word& w, int f) {
  std::vector<std::pair<int, std::vector<FamilyTerm>>> out;
  const auto base = as_slots(w);
  const std::size_t r = w.size();
  const AlgVector df = a.d(f);
  auto times_f = [&](int x) { return a.product(f, x); };
  for (std::size_t j = 0; j + 1 < r; ++j) {
    auto s1 = base, s2 = base, s3 = base;
    s1[j] = times_f(w[j]);
    s2[j + 1] = times_f(w[j + 1]);
    s3.insert(s3.begin() + static_cast<std::ptrdiff_t>(j + 1), df);
    out.push_back({1, {{s1, false, -1}, {s2, false, 1}, {s3, false, 1}}});
  }
  {
    auto s2 = base, s3 = base;
    s2[0] = times_f(w[0]);
    s3.insert(s3.begin(), df);
    out.push_back({2, {{base, true, -1}, {s2, false, 1}, {s3, false, 1}}});
  }
  {
    auto s1 = base, s3 = base;
    s1[r - 1] = times_f(w[r - 1]);
    s3.push_back(df);
    out.push_back({3, {{s1, false, -1}, {base, true, 1}, {s3, false, 1}}});
  }
  return out;
}

}  // namespace

NormalizationResult normalization_check(const DGA& a, const DualCochain& psi) {
  NormalizationResult res;
  if (psi.values.empty() || connected_and_closed(a)) return res;
  for (int f : a.basis().of_degree(0))
    for (const Word& w : words_up_to(a, psi.weight_support()))
      for (const auto& [family, terms] : families(a, w, f))
        for (int om : a.letters()) {
          Rational total = 0;
          for (const auto& t : terms) {
            AlgVector arg = t.act_on_argument ? a.product(f, om) : unit_vector(om);
            Word cur;
            expand_slots(a, t.slots, cur, Rational(t.sign), 0, [&](const Word& u, const Rational& c) {
              for (const auto& [k, q] : arg) total += c * q * psi.value(u, k);
            });
          }
          if (total != 0) {
            res.holds = false;
            res.witnesses.push_back({family, w, f, om, format_rational(total)});
          }
        }
  return res;
}

NormalizationResult normalization_check(const DGA& a, const Cochain& phi) {
  NormalizationResult res;
  if (phi.values.empty() || connected_and_closed(a)) return res;
  for (int f : a.basis().of_degree(0))
    for (const Word& w : words_up_to(a, phi.weight_support()))
      for (const auto& [family, terms] : families(a, w, f)) {
        AlgVector total;
        for (const auto& t : terms) {
          Word cur;
          expand_slots(a, t.slots, cur, Rational(t.sign), 0, [&](const Word& u, const Rational& c) {
            AlgVector val = phi.value(u);
            if (t.act_on_argument) val = a.multiply(unit_vector(f), val);
            total = add_scaled(total, val, c);
          });
        }
        if (!total.empty()) {
          res.holds = false;
          std::string s;
          for (const auto& [k, q] : total) s += (s.empty() ? "" : " ") + format_rational(q) + "*" + a.basis().name(k);
          res.witnesses.push_back({family, w, f, -1, s});
        }
      }
  return res;
}

}  // namespace loophom
