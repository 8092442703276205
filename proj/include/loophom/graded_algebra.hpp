#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "loophom/linalg.hpp"
#include "loophom/rational.hpp"

namespace loophom {

struct BasisElement {
  std::string name;
  int degree = 0;
};

class GradedBasis {
 public:
  GradedBasis() = default;
  explicit GradedBasis(std::vector<BasisElement> elements);

  int size() const { return static_cast<int>(elements_.size()); }
  const BasisElement& operator[](int i) const { return elements_[static_cast<std::size_t>(i)]; }
  int degree(int i) const { return (*this)[i].degree; }
  const std::string& name(int i) const { return (*this)[i].name; }
  std::optional<int> find(std::string_view name) const;
  int max_degree() const { return max_degree_; }
  const std::vector<int>& of_degree(int q) const;
  const std::vector<BasisElement>& elements() const { return elements_; }

 private:
  std::vector<BasisElement> elements_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> by_degree_;
  int max_degree_ = 0;
};

// Element of A as coefficients on basis indices.
using AlgVector = SparseVector;

// Raw, unchecked description of a DGA. Products involving the unit that are not
// listed are taken to be the identity.
struct DGAData {
  std::string name;
  std::vector<BasisElement> basis;
  int unit = 0;
  std::map<int, AlgVector> differential;
  std::map<std::pair<int, int>, AlgVector> products;
  int top_degree = 0;
  std::optional<std::map<int, Rational>> orientation;
  bool commutative = true;
};

class DGA {
 public:
  // Checks shape only (indices in range, unit has degree 0). Axioms are validate_dga's job.
  explicit DGA(DGAData data);

  const std::string& name() const { return data_.name; }
  const GradedBasis& basis() const { return basis_; }
  int dim() const { return basis_.size(); }
  int degree(int i) const { return basis_.degree(i); }
  int unit() const { return data_.unit; }
  int top_degree() const { return data_.top_degree; }
  bool commutative() const { return data_.commutative; }
  const DGAData& data() const { return data_; }

  const AlgVector& d(int i) const { return d_[static_cast<std::size_t>(i)]; }
  const AlgVector& product(int i, int j) const { return mult_[index(i, j)]; }
  AlgVector multiply(const AlgVector& a, const AlgVector& b) const;
  AlgVector apply_d(const AlgVector& a) const;

  bool has_orientation() const { return data_.orientation.has_value(); }
  Rational orientation(int i) const;
  Rational orientation(const AlgVector& a) const;
  // orientation(b_i * b_j)
  Rational pairing(int i, int j) const;

  // Letters of the reduced bar construction: positive-degree basis elements.
  const std::vector<int>& letters() const { return letters_; }
  bool has_differential() const { return has_d_; }
  bool simply_connected() const { return basis_.of_degree(1).empty(); }
  // Smallest suspended letter degree, or -1 when there are no letters.
  int min_suspended_degree() const { return min_susp_; }

  // Transposed structure used by pull-style formulas.
  // (source, c) with d(source) containing c * target.
  const std::vector<std::pair<int, Rational>>& d_sources(int target) const {
    return d_sources_[static_cast<std::size_t>(target)];
  }
  // (j, c) with product(left, j) containing c * target.
  const std::vector<std::pair<int, Rational>>& left_sources(int left, int target) const {
    return left_sources_[index(left, target)];
  }
  // (i, c) with product(i, right) containing c * target.
  const std::vector<std::pair<int, Rational>>& right_sources(int right, int target) const {
    return right_sources_[index(right, target)];
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(basis_.size()) + static_cast<std::size_t>(j);
  }

  DGAData data_;
  GradedBasis basis_;
  std::vector<AlgVector> d_;
  std::vector<AlgVector> mult_;
  std::vector<Rational> orientation_;
  std::vector<int> letters_;
  bool has_d_ = false;
  int min_susp_ = -1;
  std::vector<std::vector<std::pair<int, Rational>>> d_sources_;
  std::vector<std::vector<std::pair<int, Rational>>> left_sources_;
  std::vector<std::vector<std::pair<int, Rational>>> right_sources_;
};

// --- ingestion ---------------------------------------------------------------

// Parses an AlgebraSpec JSON document. Checks names and grading; does not check axioms.
DGA build_dga(std::string_view json_text);
DGA load_dga(const std::string& path);
std::string to_json(const DGA& a);

// --- validation --------------------------------------------------------------

struct Violation {
  std::string rule;
  std::vector<std::string> witness;  // basis element names
  std::string discrepancy;
};

struct ValidationReport {
  bool passed = true;
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
};

ValidationReport validate_dga(const DGA& a);

// --- builtin models ------------------------------------------------------------

DGA sphere(int n);
DGA complex_projective(int n);
DGA surface(int genus);
DGA torus(int k);
// base ⊗ span{1, e, f} with de = f, all products among e, f zero. |e| defaults to
// top_degree(base) + 1.
DGA acyclic_extension(const DGA& base, std::optional<int> pair_degree = std::nullopt);

// "sphere:3", "cp:2", "complex_projective:2", "surface:2", "torus:2",
// "acyclic:sphere:2", "acyclic_extension:surface:1".
DGA builtin_model(std::string_view id);

// --- cohomology of A and the orientation pairing ---------------------------------

struct AlgebraCohomology {
  // Degree q -> homology of A^{q-1} -> A^q -> A^{q+1}, vectors in A-basis indices
  // restricted to degree q (local positions index of_degree(q)).
  std::map<int, SubquotientBasis> by_degree;
  int betti(int q) const;
  // Representative q-classes as elements of A.
  std::vector<AlgVector> representatives(const DGA& a, int q) const;
};

AlgebraCohomology algebra_cohomology(const DGA& a);

struct PairingBlock {
  int degree = 0;                   // q
  std::vector<int> rows, cols;      // basis indices of degree q and d - q
  std::vector<std::vector<Rational>> matrix;
  int cohomology_rank = 0;
  int cohomology_rows = 0;
  int cohomology_cols = 0;
  bool nondegenerate = true;
};

struct OrientationPairing {
  std::vector<PairingBlock> blocks;
  std::vector<std::string> warnings;
};

OrientationPairing orientation_pairing(const DGA& a);

}  // namespace loophom
