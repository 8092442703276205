#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "loophom/hochschild.hpp"

namespace loophom {

// P(φ)(w)(b) = orientation(b ∧ φ(w)); degree n -> n + top_degree.
DualCochain poincare_P(const DGA& a, const Cochain& phi);
// Matrix of P from a to-A slice of degree n to the dual slice of degree n + d.
SparseMatrix poincare_matrix(const DGA& a, const SliceBasis& to_a, const SliceBasis& dual);

// Chain-level inverse of P, available when the orientation pairing is perfect on A
// itself (cohomology-ring models).
class PairingInverse {
 public:
  explicit PairingInverse(const DGA& a);
  bool available() const { return available_; }
  // Throws NotInImageError when unavailable.
  Cochain apply(const DualCochain& c) const;

 private:
  const DGA* a_;
  bool available_ = true;
  // q -> inverse of [pairing(b, x)] for b in degree q, x in degree d - q; rows
  // indexed by x, columns by b.
  std::map<int, std::vector<std::vector<Rational>>> inverse_;
};

// Homology-level inverse: a to-A cycle z of degree n = |c| - d with P(z) - c a
// boundary, all inside the given truncation. Throws NotInImageError otherwise.
Cochain poincare_P_inverse(const DGA& a, const DualCochain& c, int weight_cutoff);

// B(φ)(w)(ω) = Σ_k ± φ(w_{k+1..}, ω, w_{..k})(1); drops weight by one, raises degree by one.
DualCochain connes_B(const DGA& a, const DualCochain& phi);

// H_0 of Hom(F^m B(A), A∨).
class H0Space {
 public:
  H0Space(const DGA& a, int weight_cutoff);

  int weight_cutoff() const { return cutoff_; }
  int dim() const { return homology_.betti(); }
  const SliceBasis& basis() const { return degree0_; }
  const SubquotientBasis& homology() const { return homology_; }
  const SparseMatrix& boundary_map() const { return delta1_; }

  // Coordinates of a degree-0 cochain (entries above the cutoff ignored).
  SparseVector coordinates(const DualCochain& c) const;
  bool is_zero(const DualCochain& c) const { return coordinates(c).empty(); }
  DualCochain representative(int i) const;
  DualCochain from_coordinates(const SparseVector& coords) const;

 private:
  int cutoff_;
  SliceBasis degree0_;
  SparseMatrix delta1_;
  SubquotientBasis homology_;
};

struct SymplecticBasis {
  std::vector<int> alphas;
  std::vector<int> betas;
};

// Pairs degree-1 basis elements with orientation(α_i β_j) = δ_ij and all other
// degree-1 pairings zero. Throws StructureError if the model has no such basis.
SymplecticBasis find_symplectic_basis(const DGA& a);

// Bracket on H_0 of the truncated dual complex: inputs on F^m, output on F^{m-1}.
class BracketEngine {
 public:
  BracketEngine(const DGA& a, int weight_cutoff);

  int weight_cutoff() const { return cutoff_; }
  const H0Space& target() const { return *target_; }
  const SymplecticBasis& symplectic() const { return symplectic_; }

  // -P(P^{-1} B x ∪ P^{-1} B y), as a degree-0 cochain on F^{m-1}.
  DualCochain bracket(const DualCochain& x, const DualCochain& y) const;
  SparseVector bracket_coordinates(const DualCochain& x, const DualCochain& y) const {
    return target_->coordinates(bracket(x, y));
  }
  // P^{-1} B x restricted to F^{m-1}. Callers bracketing many pairs lift once and
  // use bracket_lifted.
  Cochain lifted_connes(const DualCochain& x) const;
  DualCochain bracket_lifted(const Cochain& lx, const Cochain& ly) const;

 private:
  const DGA* a_;
  int cutoff_;
  SymplecticBasis symplectic_;
  PairingInverse inverse_;
  std::shared_ptr<H0Space> target_;
};

// Smallest k such that c is nonzero in H_0(F^k), or max_cutoff + 1 when c
// vanishes on every truncation up to max_cutoff. A class in J^p has level >= p.
int filtration_level(const DGA& a, const DualCochain& c, int max_cutoff);

// --- associated graded ----------------------------------------------------------------

struct E1Functional {
  int arity = 0;
  std::map<Word, Rational, WordOrder> table;  // words of degree-1 basis indices
  bool operator==(const E1Functional& o) const { return arity == o.arity && table == o.table; }
  Rational at(const Word& w) const;
};

E1Functional e1_bracket(const DGA& a, const E1Functional& f, const E1Functional& g, const SymplecticBasis& s);

// Degree-0 cochain supported on words of length exactly f.arity.
DualCochain e1_lift(const DGA& a, const E1Functional& f);

struct E1Term {
  int weight = 0;
  std::map<int, int> expected;  // total degree -> dim Hom(⊗^p sH^+(A), H(A)∨)
  std::map<int, int> computed;  // total degree -> dim H(Hom(F^p/F^{p-1}, A∨))
  bool agree = false;
};

E1Term e1_term(const DGA& a, int p);

}  // namespace loophom
