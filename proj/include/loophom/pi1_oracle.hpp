#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "loophom/duality_bracket.hpp"

namespace loophom {

using Lattice = std::pair<int, int>;

// Rational combination of elements t^u of the group ring of Z^2.
struct GroupRingElement {
  std::map<Lattice, Rational> terms;

  static GroupRingElement monomial(Lattice u, const Rational& c = 1);
  Rational augmentation() const;
  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement scaled(const Rational& c) const;
  bool is_zero() const { return terms.empty(); }
  bool operator==(const GroupRingElement& o) const { return terms == o.terms; }
};

// (t1 - 1)^a (t2 - 1)^b
GroupRingElement augmentation_monomial(int a, int b);

// Basis {(t1-1)^a (t2-1)^b : a + b < p} of Q[Z^2]/J^p.
class JadicBasis {
 public:
  explicit JadicBasis(int p);
  int modulus() const { return p_; }
  int dimension() const { return static_cast<int>(monomials_.size()); }
  const std::vector<std::pair<int, int>>& monomials() const { return monomials_; }
  // Coordinates of x mod J^p on the monomial basis.
  SparseVector reduce(const GroupRingElement& x) const;
  bool in_ideal(const GroupRingElement& x) const { return reduce(x).empty(); }

 private:
  int p_;
  std::vector<std::pair<int, int>> monomials_;
};

JadicBasis jadic_basis(int p);

// [u, v] = det(u, v) t^{u+v}, extended bilinearly.
GroupRingElement goldman_torus(Lattice u, Lattice v);
GroupRingElement goldman_bracket(const GroupRingElement& x, const GroupRingElement& y);

// Tuple (x_{i_1}, ..., x_{i_p}) -> product of winding numbers of loop_k around x_{i_k}.
// Keys use the basis indices of torus(2)'s degree-1 generators.
E1Functional holonomy_functional(const DGA& torus2, const std::vector<Lattice>& loops, int p);
E1Functional holonomy_functional(const std::vector<Lattice>& loops, int p);

// Degree-0 class of Σ c_u t^u in H_0(F^m): iterated integrals along straight loops,
// word w of length k getting Π windings / k!.
DualCochain holonomy_class(const DGA& torus2, const GroupRingElement& x, int weight_cutoff);

struct Pi1Comparison {
  int p = 0;
  int weight_cutoff = 0;  // truncation actually used: p - 1
  int group_ring_dimension = 0;
  int h0_dimension = 0;
  bool match = false;
};

// Q[Z^2]/J^p against H_0(Hom(F^{p-1}B(A), A∨)) over torus(2). Throws TruncationError
// when the available cutoff is below p - 1.
Pi1Comparison compare_pi1_dimensions(int p, std::optional<int> weight_cutoff = std::nullopt);

}  // namespace loophom
