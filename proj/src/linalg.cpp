#include "loophom/linalg.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "loophom/errors.hpp"

namespace loophom {

SparseVector make_sparse(std::vector<std::pair<int, Rational>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector out;
  out.reserve(entries.size());
  for (auto& [i, q] : entries) {
    if (!out.empty() && out.back().first == i)
      out.back().second += q;
    else
      out.emplace_back(i, std::move(q));
  }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  return out;
}

SparseVector add_scaled(const SparseVector& a, const SparseVector& b, const Rational& s) {
  if (s == 0) return a;
  SparseVector out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, s * b[j].second);
      ++j;
    } else {
      Rational q = a[i].second + s * b[j].second;
      if (q != 0) out.emplace_back(a[i].first, std::move(q));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVector scaled(const SparseVector& a, const Rational& s) {
  if (s == 0) return {};
  SparseVector out = a;
  for (auto& e : out) e.second *= s;
  return out;
}

Rational coefficient(const SparseVector& v, int index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const auto& e, int i) { return e.first < i; });
  if (it != v.end() && it->first == index) return it->second;
  return 0;
}

SparseVector unit_vector(int index) { return {{index, Rational(1)}}; }

// ---------------------------------------------------------------------------

SparseMatrix::SparseMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows)) {
  if (rows < 0 || cols < 0) throw DimensionMismatchError("negative matrix dimension");
}

SparseMatrix SparseMatrix::from_triplets(int rows, int cols,
                                         std::vector<std::tuple<int, int, Rational>> entries) {
  SparseMatrix m(rows, cols);
  std::vector<std::vector<std::pair<int, Rational>>> buckets(static_cast<std::size_t>(rows));
  for (auto& [r, c, q] : entries) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw DimensionMismatchError("matrix entry (" + std::to_string(r) + "," + std::to_string(c) +
                                   ") out of range");
    buckets[static_cast<std::size_t>(r)].emplace_back(c, std::move(q));
  }
  for (int r = 0; r < rows; ++r)
    m.data_[static_cast<std::size_t>(r)] = make_sparse(std::move(buckets[static_cast<std::size_t>(r)]));
  return m;
}

SparseMatrix SparseMatrix::from_rows(int cols, std::vector<SparseVector> rows) {
  SparseMatrix m(static_cast<int>(rows.size()), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [c, q] : rows[r])
      if (c < 0 || c >= cols) throw DimensionMismatchError("matrix column out of range");
    m.data_[r] = std::move(rows[r]);
  }
  return m;
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.data_[static_cast<std::size_t>(i)] = unit_vector(i);
  return m;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

Rational SparseMatrix::at(int r, int c) const { return coefficient(row(r), c); }

SparseMatrix SparseMatrix::transposed() const {
  SparseMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, q] : row(r)) t.data_[static_cast<std::size_t>(c)].emplace_back(r, q);
  return t;
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
  std::vector<const Rational*> lookup(static_cast<std::size_t>(cols_), nullptr);
  for (const auto& [c, q] : x) {
    if (c < 0 || c >= cols_) throw DimensionMismatchError("vector index out of range in apply");
    lookup[static_cast<std::size_t>(c)] = &q;
  }
  SparseVector y;
  for (int r = 0; r < rows_; ++r) {
    Rational acc = 0;
    for (const auto& [c, q] : row(r))
      if (const Rational* xc = lookup[static_cast<std::size_t>(c)]) acc += q * *xc;
    if (acc != 0) y.emplace_back(r, std::move(acc));
  }
  return y;
}

namespace {

bool small_integer(const Rational& q) { return q.get_den() == 1 && q.get_num().fits_slong_p(); }

}  // namespace

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionMismatchError("matrix product dimension mismatch");
  SparseMatrix out(rows_, rhs.cols_);
  const auto width = static_cast<std::size_t>(rhs.cols_);
  std::vector<Rational> acc(width);
  std::vector<long> iacc(width, 0);
  std::vector<char> seen(width, 0);
  std::vector<int> touched;
  Rational t;
  for (int r = 0; r < rows_; ++r) {
    touched.clear();
    // Integer rows that do not overflow stay in machine words; otherwise redo the row exactly.
    bool machine = true;
    for (const auto& [k, a] : row(r)) {
      if (!small_integer(a)) {
        machine = false;
        break;
      }
      const long av = a.get_num().get_si();
      for (const auto& [c, b] : rhs.row(k)) {
        if (!small_integer(b)) {
          machine = false;
          break;
        }
        auto cu = static_cast<std::size_t>(c);
        if (!seen[cu]) {
          seen[cu] = 1;
          iacc[cu] = 0;
          touched.push_back(c);
        }
        long p;
        if (__builtin_mul_overflow(av, b.get_num().get_si(), &p) || __builtin_add_overflow(iacc[cu], p, &iacc[cu])) {
          machine = false;
          break;
        }
      }
      if (!machine) break;
    }
    if (!machine) {
      for (int c : touched) seen[static_cast<std::size_t>(c)] = 0;
      touched.clear();
      for (const auto& [k, a] : row(r))
        for (const auto& [c, b] : rhs.row(k)) {
          auto cu = static_cast<std::size_t>(c);
          if (!seen[cu]) {
            seen[cu] = 1;
            acc[cu] = 0;
            touched.push_back(c);
          }
          mpq_mul(t.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
          acc[cu] += t;
        }
    }
    std::sort(touched.begin(), touched.end());
    SparseVector& dst = out.data_[static_cast<std::size_t>(r)];
    for (int c : touched) {
      auto cu = static_cast<std::size_t>(c);
      if (machine) {
        if (iacc[cu] != 0) dst.emplace_back(c, Rational(iacc[cu]));
      } else if (acc[cu] != 0) {
        dst.emplace_back(c, acc[cu]);
      }
      seen[cu] = 0;
    }
  }
  return out;
}

bool SparseMatrix::operator==(const SparseMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

// ---------------------------------------------------------------------------

namespace {

using IntVector = std::vector<std::pair<int, Integer>>;

struct Scaled {
  IntVector v;
  Rational scale;  // v == scale * original
};

Scaled to_integer(const SparseVector& x) {
  Integer l = 1;
  for (const auto& e : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
  Scaled s{{}, Rational(l)};
  s.v.reserve(x.size());
  for (const auto& [i, q] : x) s.v.emplace_back(i, q.get_num() * (l / q.get_den()));
  return s;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& e : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

// a*x - b*y
IntVector combine(const Integer& a, const IntVector& x, const Integer& b, const IntVector& y) {
  IntVector out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      Integer q = a * x[i].second - b * y[j].second;
      if (q != 0) out.emplace_back(x[i].first, std::move(q));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

// Shared reduction loop. Tracks v == lambda*v0 - acc_rows with acc the running
// tag combination (only when track_tags is set).
Echelon::Reduction Echelon::reduce(const SparseVector& v) const {
  Scaled s = to_integer(v);
  IntVector cur = std::move(s.v);
  Rational lambda = s.scale;
  SparseVector acc;
  while (!cur.empty()) {
    int c = cur.front().first;
    int r = pivot_row_[static_cast<std::size_t>(c)];
    if (r < 0) break;
    const Row& row = rows_[static_cast<std::size_t>(r)];
    const Integer& p = row.v.front().second;
    const Integer& a = cur.front().second;
    Integer g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), a.get_mpz_t());
    Integer mv = p / g, mr = a / g;
    cur = combine(mv, cur, mr, row.v);
    lambda *= Rational(mv);
    acc = add_scaled(scaled(acc, Rational(mv)), row.tag, Rational(mr));
    Integer h = content(cur);
    if (h > 1) {
      for (auto& e : cur) e.second /= h;
      lambda /= Rational(h);
      acc = scaled(acc, Rational(1, 1) / Rational(h));
    }
  }
  Reduction out;
  Rational inv = 1 / lambda;
  out.residual.reserve(cur.size());
  for (auto& [i, q] : cur) out.residual.emplace_back(i, Rational(q) * inv);
  out.tag = scaled(acc, inv);
  return out;
}

bool Echelon::insert(const SparseVector& v, const SparseVector& tag) {
  for (const auto& e : v)
    if (e.first < 0 || e.first >= cols_) throw DimensionMismatchError("echelon vector index out of range");
  Reduction red = reduce(v);
  if (red.residual.empty()) return false;
  // residual == v - red.tag-combination; its tag is tag - red.tag. Rescale to a
  // primitive integer row with positive leading entry.
  Scaled s = to_integer(red.residual);
  Integer h = content(s.v);
  Rational factor = s.scale / Rational(h);
  if (s.v.front().second < 0) {
    factor = -factor;
    h = -h;
  }
  for (auto& e : s.v) e.second /= h;
  Row row{std::move(s.v), scaled(add_scaled(tag, red.tag, Rational(-1)), factor)};
  pivot_row_[static_cast<std::size_t>(row.v.front().first)] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(row));
  return true;
}

bool Echelon::contains(const SparseVector& v) const { return reduce(v).residual.empty(); }

std::optional<SparseVector> Echelon::express(const SparseVector& v) const {
  Reduction red = reduce(v);
  if (!red.residual.empty()) return std::nullopt;
  return std::move(red.tag);
}

std::vector<int> Echelon::pivot_columns() const {
  std::vector<int> out;
  for (int c = 0; c < cols_; ++c)
    if (pivot_row_[static_cast<std::size_t>(c)] >= 0) out.push_back(c);
  return out;
}

std::vector<Echelon::ReducedRow> Echelon::reduced_rows() const {
  std::vector<ReducedRow> out;
  out.reserve(rows_.size());
  for (int c : pivot_columns()) {
    const Row& row = rows_[static_cast<std::size_t>(pivot_row_[static_cast<std::size_t>(c)])];
    Rational inv(Integer(1), row.v.front().second);
    ReducedRow rr{c, {}, scaled(row.tag, inv)};
    rr.row.reserve(row.v.size());
    for (const auto& [i, q] : row.v) rr.row.emplace_back(i, Rational(q) * inv);
    out.push_back(std::move(rr));
  }
  std::vector<int> index_of(static_cast<std::size_t>(cols_), -1);
  for (std::size_t k = 0; k < out.size(); ++k) index_of[static_cast<std::size_t>(out[k].pivot)] = static_cast<int>(k);
  for (std::size_t k = out.size(); k-- > 0;) {
    ReducedRow& rr = out[k];
    std::vector<std::pair<int, Rational>> hits;
    for (const auto& [c, q] : rr.row)
      if (c != rr.pivot && index_of[static_cast<std::size_t>(c)] >= 0) hits.emplace_back(c, q);
    for (const auto& [c, q] : hits) {
      const ReducedRow& lower = out[static_cast<std::size_t>(index_of[static_cast<std::size_t>(c)])];
      rr.row = add_scaled(rr.row, lower.row, -q);
      rr.tag = add_scaled(rr.tag, lower.tag, -q);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

EchelonForm reduced_echelon(const SparseMatrix& m) {
  Echelon e(m.cols());
  for (int r = 0; r < m.rows(); ++r) e.insert(m.row(r), unit_vector(r));
  EchelonForm out;
  out.rank = e.rank();
  out.pivot_columns = e.pivot_columns();
  std::vector<SparseVector> rows, tags;
  for (auto& rr : e.reduced_rows()) {
    rows.push_back(std::move(rr.row));
    tags.push_back(std::move(rr.tag));
  }
  out.reduced = SparseMatrix::from_rows(m.cols(), std::move(rows));
  out.transform = SparseMatrix::from_rows(m.rows(), std::move(tags));
  return out;
}

int rank(const SparseMatrix& m) {
  Echelon e(m.cols());
  for (int r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  return e.rank();
}

std::vector<SparseVector> kernel_basis(const SparseMatrix& m) {
  Echelon e(m.cols());
  for (int r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  auto rows = e.reduced_rows();
  std::vector<char> is_pivot(static_cast<std::size_t>(m.cols()), 0);
  for (const auto& rr : rows) is_pivot[static_cast<std::size_t>(rr.pivot)] = 1;
  std::map<int, std::vector<std::pair<int, Rational>>> by_free;
  for (const auto& rr : rows)
    for (const auto& [c, q] : rr.row)
      if (c != rr.pivot) by_free[c].emplace_back(rr.pivot, -q);
  std::vector<SparseVector> out;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<std::pair<int, Rational>> v{{f, Rational(1)}};
    if (auto it = by_free.find(f); it != by_free.end())
      v.insert(v.end(), it->second.begin(), it->second.end());
    out.push_back(make_sparse(std::move(v)));
  }
  return out;
}

SolveResult solve(const SparseMatrix& m, const SparseVector& b) {
  for (const auto& e : b)
    if (e.first < 0 || e.first >= m.rows()) throw DimensionMismatchError("right-hand side index out of range");
  const int aug = m.cols();
  Echelon e(m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    SparseVector row = m.row(r);
    Rational br = coefficient(b, r);
    if (br != 0) row.emplace_back(aug, br);
    e.insert(row, unit_vector(r));
  }
  SolveResult out;
  SparseVector x;
  for (auto& rr : e.reduced_rows()) {
    if (rr.pivot == aug) {
      out.witness = std::move(rr.tag);
      return out;
    }
    Rational v = coefficient(rr.row, aug);
    if (v != 0) x.emplace_back(rr.pivot, std::move(v));
  }
  out.solution = std::move(x);
  return out;
}

// ---------------------------------------------------------------------------

namespace {
int boundary_tag(std::size_t j) { return -1 - static_cast<int>(j); }
}  // namespace

SubquotientBasis homology(const SparseMatrix& d_in, const SparseMatrix& d_out) {
  if (d_in.rows() != d_out.cols())
    throw DimensionMismatchError("homology: d_in has " + std::to_string(d_in.rows()) + " rows but d_out has " +
                                 std::to_string(d_out.cols()) + " columns");
  if (d_in.rows() > 0 && !d_out.multiply(d_in).is_zero())
    throw CompositionNonzeroError("homology: d_out * d_in is nonzero");
  SubquotientBasis h;
  h.ambient_ = d_in.rows();
  h.cycles_ = kernel_basis(d_out);
  auto solver = std::make_shared<Echelon>(h.ambient_);
  SparseMatrix cols = d_in.transposed();
  for (int c = 0; c < cols.rows(); ++c) {
    const SparseVector& v = cols.row(c);
    if (v.empty()) continue;
    if (solver->insert(v, unit_vector(boundary_tag(h.boundaries_.size())))) h.boundaries_.push_back(v);
  }
  for (const auto& z : h.cycles_)
    if (solver->insert(z, unit_vector(static_cast<int>(h.representatives_.size())))) h.representatives_.push_back(z);
  h.solver_ = std::move(solver);
  return h;
}

std::optional<SubquotientBasis::Decomposition> SubquotientBasis::decompose(const SparseVector& z) const {
  if (!solver_) {
    if (z.empty()) return Decomposition{};
    return std::nullopt;
  }
  auto tag = solver_->express(z);
  if (!tag) return std::nullopt;
  Decomposition d;
  for (auto& [i, q] : *tag) {
    if (i >= 0)
      d.coords.emplace_back(i, std::move(q));
    else
      d.boundary_coords.emplace_back(-1 - i, std::move(q));
  }
  std::sort(d.boundary_coords.begin(), d.boundary_coords.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return d;
}

std::optional<SparseVector> SubquotientBasis::express(const SparseVector& z) const {
  auto d = decompose(z);
  if (!d) return std::nullopt;
  return std::move(d->coords);
}

bool SubquotientBasis::is_boundary(const SparseVector& z) const {
  auto c = express(z);
  return c && c->empty();
}

}  // namespace loophom
