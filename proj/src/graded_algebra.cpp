#include "loophom/graded_algebra.hpp"

#include <algorithm>
#include <sstream>

#include "loophom/errors.hpp"

namespace loophom {

GradedBasis::GradedBasis(std::vector<BasisElement> elements) : elements_(std::move(elements)) {
  for (int i = 0; i < size(); ++i) {
    const auto& e = (*this)[i];
    if (e.degree < 0) throw DegreeMismatchError("basis element '" + e.name + "' has negative degree");
    if (e.name.empty()) throw ParseError("basis element with empty name");
    if (!index_.emplace(e.name, i).second) throw ParseError("duplicate basis name '" + e.name + "'");
    max_degree_ = std::max(max_degree_, e.degree);
  }
  by_degree_.resize(static_cast<std::size_t>(max_degree_) + 1);
  for (int i = 0; i < size(); ++i) by_degree_[static_cast<std::size_t>(degree(i))].push_back(i);
}

std::optional<int> GradedBasis::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<int>& GradedBasis::of_degree(int q) const {
  static const std::vector<int> empty;
  if (q < 0 || q >= static_cast<int>(by_degree_.size())) return empty;
  return by_degree_[static_cast<std::size_t>(q)];
}

// ---------------------------------------------------------------------------

namespace {

void check_vector(const AlgVector& v, int n, const std::string& where) {
  for (const auto& [i, q] : v)
    if (i < 0 || i >= n) throw StructureError(where + ": basis index " + std::to_string(i) + " out of range");
}

}  // namespace

DGA::DGA(DGAData data) : data_(std::move(data)), basis_(data_.basis) {
  const int n = basis_.size();
  if (n == 0) throw InvalidModelError("algebra has an empty basis");
  if (data_.unit < 0 || data_.unit >= n) throw InvalidModelError("unit index out of range");
  if (basis_.degree(data_.unit) != 0) throw InvalidModelError("unit must have degree 0");
  if (data_.top_degree < 0) throw InvalidModelError("top degree must be non-negative");

  d_.assign(static_cast<std::size_t>(n), {});
  for (auto& [i, v] : data_.differential) {
    if (i < 0 || i >= n) throw StructureError("differential source out of range");
    check_vector(v, n, "differential");
    d_[static_cast<std::size_t>(i)] = make_sparse(v);
    if (!d_[static_cast<std::size_t>(i)].empty()) has_d_ = true;
  }

  mult_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), {});
  for (int i = 0; i < n; ++i) {
    mult_[index(data_.unit, i)] = unit_vector(i);
    mult_[index(i, data_.unit)] = unit_vector(i);
  }
  for (auto& [key, v] : data_.products) {
    auto [i, j] = key;
    if (i < 0 || i >= n || j < 0 || j >= n) throw StructureError("product factor out of range");
    check_vector(v, n, "product");
    mult_[index(i, j)] = make_sparse(v);
  }

  orientation_.assign(static_cast<std::size_t>(n), Rational(0));
  if (data_.orientation)
    for (auto& [i, q] : *data_.orientation) {
      if (i < 0 || i >= n) throw StructureError("orientation index out of range");
      orientation_[static_cast<std::size_t>(i)] = q;
    }

  for (int i = 0; i < n; ++i)
    if (basis_.degree(i) > 0) {
      letters_.push_back(i);
      int s = basis_.degree(i) - 1;
      if (min_susp_ < 0 || s < min_susp_) min_susp_ = s;
    }

  d_sources_.assign(static_cast<std::size_t>(n), {});
  left_sources_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), {});
  right_sources_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), {});
  for (int i = 0; i < n; ++i)
    for (const auto& [k, c] : d(i)) d_sources_[static_cast<std::size_t>(k)].emplace_back(i, c);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [k, c] : product(i, j)) {
        left_sources_[index(i, k)].emplace_back(j, c);
        right_sources_[index(j, k)].emplace_back(i, c);
      }
}

AlgVector DGA::multiply(const AlgVector& a, const AlgVector& b) const {
  std::vector<std::pair<int, Rational>> acc;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b)
      for (const auto& [k, c] : product(i, j)) acc.emplace_back(k, x * y * c);
  return make_sparse(std::move(acc));
}

AlgVector DGA::apply_d(const AlgVector& a) const {
  std::vector<std::pair<int, Rational>> acc;
  for (const auto& [i, x] : a)
    for (const auto& [k, c] : d(i)) acc.emplace_back(k, x * c);
  return make_sparse(std::move(acc));
}

Rational DGA::orientation(int i) const { return orientation_[static_cast<std::size_t>(i)]; }

Rational DGA::orientation(const AlgVector& a) const {
  Rational s = 0;
  for (const auto& [i, q] : a) s += q * orientation(i);
  return s;
}

Rational DGA::pairing(int i, int j) const { return orientation(product(i, j)); }

// ---------------------------------------------------------------------------

namespace {

std::string format_element(const DGA& a, const AlgVector& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, q] : v) {
    if (!first) os << (q < 0 ? " - " : " + ");
    else if (q < 0) os << "-";
    first = false;
    Rational m = abs(q);
    if (m != 1) os << format_rational(m) << "*";
    os << a.basis().name(i);
  }
  return os.str();
}

AlgVector difference(const AlgVector& x, const AlgVector& y) { return add_scaled(x, y, Rational(-1)); }

struct Reporter {
  const DGA& a;
  ValidationReport report;
  void add(std::string rule, std::vector<int> witness, std::string discrepancy) {
    Violation v{std::move(rule), {}, std::move(discrepancy)};
    for (int i : witness) v.witness.push_back(a.basis().name(i));
    report.violations.push_back(std::move(v));
    report.passed = false;
  }
};

}  // namespace

ValidationReport validate_dga(const DGA& a) {
  Reporter rep{a, {}};
  const int n = a.dim();
  const auto& basis = a.basis();

  for (int i : basis.of_degree(0))
    if (i != a.unit()) rep.add("connected", {i}, "degree-0 element besides the unit");

  for (int i = 0; i < n; ++i)
    for (const auto& [k, c] : a.d(i))
      if (basis.degree(k) != basis.degree(i) + 1)
        rep.add("grading-differential", {i, k}, "d(" + basis.name(i) + ") = " + format_element(a, a.d(i)));

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [k, c] : a.product(i, j))
        if (basis.degree(k) != basis.degree(i) + basis.degree(j)) {
          rep.add("grading-product", {i, j}, basis.name(i) + "*" + basis.name(j) + " = " +
                                                 format_element(a, a.product(i, j)));
          break;
        }

  for (int i = 0; i < n; ++i) {
    auto dd = a.apply_d(a.d(i));
    if (!dd.empty()) rep.add("d-squared", {i}, "d(d(" + basis.name(i) + ")) = " + format_element(a, dd));
  }

  for (int i = 0; i < n; ++i) {
    auto left = a.product(a.unit(), i), right = a.product(i, a.unit());
    AlgVector e = unit_vector(i);
    if (left != e || right != e)
      rep.add("unit", {a.unit(), i}, "1*" + basis.name(i) + " = " + format_element(a, left) + ", " +
                                         basis.name(i) + "*1 = " + format_element(a, right));
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      AlgVector lhs = a.apply_d(a.product(i, j));
      AlgVector rhs = add_scaled(a.multiply(a.d(i), unit_vector(j)), a.multiply(unit_vector(i), a.d(j)),
                                 Rational(parity_sign(basis.degree(i))));
      if (lhs != rhs) rep.add("leibniz", {i, j}, "difference " + format_element(a, difference(lhs, rhs)));
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        AlgVector lhs = a.multiply(a.product(i, j), unit_vector(k));
        AlgVector rhs = a.multiply(unit_vector(i), a.product(j, k));
        if (lhs != rhs) rep.add("associativity", {i, j, k}, "difference " + format_element(a, difference(lhs, rhs)));
      }

  if (a.commutative())
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        AlgVector rhs = scaled(a.product(j, i), Rational(parity_sign(basis.degree(i) * basis.degree(j))));
        if (a.product(i, j) != rhs)
          rep.add("commutativity", {i, j}, "difference " + format_element(a, difference(a.product(i, j), rhs)));
      }

  if (a.has_orientation()) {
    for (int i = 0; i < n; ++i)
      if (a.orientation(i) != 0 && basis.degree(i) != a.top_degree())
        rep.add("orientation-degree", {i}, "orientation nonzero off the top degree");
    for (int i = 0; i < n; ++i) {
      Rational s = a.orientation(a.d(i));
      if (s != 0) rep.add("orientation-exact", {i}, "orientation(d " + basis.name(i) + ") = " + format_rational(s));
    }
    // Duality on cohomology is only meaningful once the structure is sound.
    if (rep.report.passed) {
      auto pairing = orientation_pairing(a);
      for (const auto& b : pairing.blocks)
        if (!b.nondegenerate)
          rep.add("poincare-duality", {}, "cohomology pairing in degree " + std::to_string(b.degree) + " has rank " +
                                              std::to_string(b.cohomology_rank) + " on " +
                                              std::to_string(b.cohomology_rows) + "x" +
                                              std::to_string(b.cohomology_cols));
    }
  }
  return rep.report;
}

// ---------------------------------------------------------------------------

int AlgebraCohomology::betti(int q) const {
  auto it = by_degree.find(q);
  return it == by_degree.end() ? 0 : it->second.betti();
}

std::vector<AlgVector> AlgebraCohomology::representatives(const DGA& a, int q) const {
  std::vector<AlgVector> out;
  auto it = by_degree.find(q);
  if (it == by_degree.end()) return out;
  const auto& slot = a.basis().of_degree(q);
  for (const auto& r : it->second.representatives()) {
    AlgVector v;
    for (const auto& [i, c] : r) v.emplace_back(slot[static_cast<std::size_t>(i)], c);
    out.push_back(make_sparse(std::move(v)));
  }
  return out;
}

namespace {

// Matrix of d: A^q -> A^{q+1} in local positions.
SparseMatrix algebra_d_matrix(const DGA& a, int q) {
  const auto& src = a.basis().of_degree(q);
  const auto& dst = a.basis().of_degree(q + 1);
  std::vector<int> pos(static_cast<std::size_t>(a.dim()), -1);
  for (std::size_t k = 0; k < dst.size(); ++k) pos[static_cast<std::size_t>(dst[k])] = static_cast<int>(k);
  std::vector<std::tuple<int, int, Rational>> t;
  for (std::size_t c = 0; c < src.size(); ++c)
    for (const auto& [k, v] : a.d(src[c])) {
      int r = pos[static_cast<std::size_t>(k)];
      if (r < 0) throw GradingError("differential of '" + a.basis().name(src[c]) + "' leaves degree " + std::to_string(q + 1));
      t.emplace_back(r, static_cast<int>(c), v);
    }
  return SparseMatrix::from_triplets(static_cast<int>(dst.size()), static_cast<int>(src.size()), std::move(t));
}

}  // namespace

AlgebraCohomology algebra_cohomology(const DGA& a) {
  AlgebraCohomology h;
  for (int q = 0; q <= a.basis().max_degree(); ++q) {
    if (a.basis().of_degree(q).empty()) continue;
    h.by_degree.emplace(q, homology(algebra_d_matrix(a, q - 1), algebra_d_matrix(a, q)));
  }
  return h;
}

OrientationPairing orientation_pairing(const DGA& a) {
  if (!a.has_orientation()) throw MissingOrientationError("algebra '" + a.name() + "' has no orientation");
  OrientationPairing out;
  const int d = a.top_degree();
  auto coh = algebra_cohomology(a);
  for (int q = 0; q <= d; ++q) {
    PairingBlock b;
    b.degree = q;
    b.rows = a.basis().of_degree(q);
    b.cols = a.basis().of_degree(d - q);
    if (b.rows.empty() && b.cols.empty()) continue;
    for (int i : b.rows) {
      std::vector<Rational> row;
      for (int j : b.cols) row.push_back(a.pairing(i, j));
      b.matrix.push_back(std::move(row));
    }
    auto left = coh.representatives(a, q), right = coh.representatives(a, d - q);
    b.cohomology_rows = static_cast<int>(left.size());
    b.cohomology_cols = static_cast<int>(right.size());
    std::vector<std::tuple<int, int, Rational>> t;
    for (std::size_t i = 0; i < left.size(); ++i)
      for (std::size_t j = 0; j < right.size(); ++j)
        t.emplace_back(static_cast<int>(i), static_cast<int>(j), a.orientation(a.multiply(left[i], right[j])));
    b.cohomology_rank = rank(SparseMatrix::from_triplets(b.cohomology_rows, b.cohomology_cols, std::move(t)));
    b.nondegenerate = b.cohomology_rank == b.cohomology_rows && b.cohomology_rank == b.cohomology_cols;
    if (!b.nondegenerate)
      out.warnings.push_back("degenerate pairing on cohomology in degree " + std::to_string(q));
    out.blocks.push_back(std::move(b));
  }
  return out;
}

}  // namespace loophom
