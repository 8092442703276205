#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "loophom/rational.hpp"

namespace loophom {

// Sorted by index, no explicit zeros.
using SparseVector = std::vector<std::pair<int, Rational>>;

SparseVector make_sparse(std::vector<std::pair<int, Rational>> entries);  // sorts, merges, drops zeros
SparseVector add_scaled(const SparseVector& a, const SparseVector& b, const Rational& s);  // a + s*b
SparseVector scaled(const SparseVector& a, const Rational& s);
Rational coefficient(const SparseVector& v, int index);
SparseVector unit_vector(int index);

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols);

  // Duplicate positions are summed; insertion order does not matter.
  static SparseMatrix from_triplets(int rows, int cols, std::vector<std::tuple<int, int, Rational>> entries);
  static SparseMatrix from_rows(int cols, std::vector<SparseVector> rows);
  static SparseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const SparseVector& row(int r) const { return data_[static_cast<std::size_t>(r)]; }
  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }
  Rational at(int r, int c) const;

  SparseMatrix transposed() const;
  SparseVector apply(const SparseVector& x) const;
  SparseMatrix multiply(const SparseMatrix& rhs) const;  // (*this) * rhs

  bool operator==(const SparseMatrix& other) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SparseVector> data_;
};

// Incremental row echelon form over the integers. Rows are kept primitive with a
// positive leading entry. Each stored row may carry a rational tag vector that is
// transformed alongside it, which is how we express vectors in terms of chosen
// generators without materializing a transform matrix.
class Echelon {
 public:
  explicit Echelon(int cols) : cols_(cols), pivot_row_(static_cast<std::size_t>(cols), -1) {}

  // Returns true when v is independent of the stored rows (and stores it).
  bool insert(const SparseVector& v, const SparseVector& tag = {});
  bool contains(const SparseVector& v) const;
  // Combination of tags reproducing v, or nullopt when v is outside the row span.
  std::optional<SparseVector> express(const SparseVector& v) const;
  // Residual after reduction together with the tag combination already removed;
  // the residual is zero iff v is in the span. Used to build inconsistency witnesses.
  struct Reduction {
    SparseVector residual;
    SparseVector tag;  // v - sum(tag_i * row_i) == residual
  };
  Reduction reduce(const SparseVector& v) const;

  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  std::vector<int> pivot_columns() const;

  struct ReducedRow {
    int pivot;
    SparseVector row;  // pivot entry is 1, zero in every other pivot column
    SparseVector tag;
  };
  // Ordered by pivot column.
  std::vector<ReducedRow> reduced_rows() const;

 private:
  using IntVector = std::vector<std::pair<int, Integer>>;
  struct Row {
    IntVector v;
    SparseVector tag;
  };
  int cols_;
  std::vector<int> pivot_row_;
  std::vector<Row> rows_;
};

struct EchelonForm {
  int rank = 0;
  std::vector<int> pivot_columns;
  SparseMatrix reduced;    // rank x cols, reduced row echelon form
  SparseMatrix transform;  // rank x rows, transform * M == reduced
};

EchelonForm reduced_echelon(const SparseMatrix& m);
int rank(const SparseMatrix& m);
std::vector<SparseVector> kernel_basis(const SparseMatrix& m);

struct SolveResult {
  std::optional<SparseVector> solution;
  // When inconsistent: y with y^T M = 0 and y^T b != 0.
  SparseVector witness;
};

SolveResult solve(const SparseMatrix& m, const SparseVector& b);

// Homology at the middle of C_{in} --d_in--> C --d_out--> C_{out}.
class SubquotientBasis {
 public:
  SubquotientBasis() = default;

  int dimension() const { return ambient_; }
  int betti() const { return static_cast<int>(representatives_.size()); }
  const std::vector<SparseVector>& cycle_basis() const { return cycles_; }
  const std::vector<SparseVector>& boundary_basis() const { return boundaries_; }
  const std::vector<SparseVector>& representatives() const { return representatives_; }

  // Coordinates of a cycle on the representatives, modulo boundaries. nullopt when
  // z is not in span(cycles).
  std::optional<SparseVector> express(const SparseVector& z) const;
  // Full decomposition: z = sum(coords_i * rep_i) + sum(boundary_coords_j * boundary_j).
  struct Decomposition {
    SparseVector coords;
    SparseVector boundary_coords;
  };
  std::optional<Decomposition> decompose(const SparseVector& z) const;
  bool is_boundary(const SparseVector& z) const;

 private:
  friend SubquotientBasis homology(const SparseMatrix& d_in, const SparseMatrix& d_out);
  int ambient_ = 0;
  std::vector<SparseVector> cycles_;
  std::vector<SparseVector> boundaries_;
  std::vector<SparseVector> representatives_;
  std::shared_ptr<const Echelon> solver_;
};

SubquotientBasis homology(const SparseMatrix& d_in, const SparseMatrix& d_out);

}  // namespace loophom
