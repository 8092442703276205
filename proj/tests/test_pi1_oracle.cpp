#include <doctest.h>

#include "support/oracle.hpp"

using namespace loophom;

namespace {

// (t^u - 1) as a group ring element
GroupRingElement shifted(Lattice u) {
  return GroupRingElement::monomial(u) - GroupRingElement::monomial({0, 0});
}

}  // namespace

TEST_CASE("jadic basis dimensions") {
  CHECK(jadic_basis(1).dimension() == 1);
  CHECK(jadic_basis(2).dimension() == 3);
  CHECK(jadic_basis(4).dimension() == 10);
  CHECK_THROWS_AS(jadic_basis(0), DimensionMismatchError);
}

TEST_CASE("jadic reduction") {
  auto b = jadic_basis(3);
  CHECK(b.in_ideal(augmentation_monomial(2, 1)));
  CHECK(b.in_ideal(augmentation_monomial(0, 3)));
  CHECK_FALSE(b.in_ideal(augmentation_monomial(1, 1)));
  // t1^{-1} - 1 = -(t1 - 1) + (t1 - 1)^2 - ... mod J^3
  auto r = b.reduce(shifted({-1, 0}));
  auto expected = b.reduce(augmentation_monomial(1, 0).scaled(-1) + augmentation_monomial(2, 0));
  CHECK(r == expected);
  CHECK(GroupRingElement::monomial({3, -2}, 5).augmentation() == 5);
}

TEST_CASE("goldman_torus examples") {
  CHECK(goldman_torus({1, 0}, {0, 1}) == GroupRingElement::monomial({1, 1}, 1));
  CHECK(goldman_torus({1, 0}, {2, 0}).is_zero());
  CHECK(goldman_torus({0, 1}, {1, 0}) == GroupRingElement::monomial({1, 1}, -1));
}

TEST_CASE("property: Goldman antisymmetry and Jacobi on lattice classes") {
  std::vector<Lattice> pts;
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n) pts.emplace_back(m, n);
  for (const auto& u : pts)
    for (const auto& v : pts) CHECK((goldman_torus(u, v) + goldman_torus(v, u)).is_zero());
  // Jacobi over a coarser grid of triples (all |coords| <= 3 would be 7^6 checks per pair)
  std::vector<Lattice> small;
  for (int m = -3; m <= 3; m += 2)
    for (int n = -3; n <= 3; ++n) small.emplace_back(m, n);
  for (const auto& u : small)
    for (const auto& v : pts)
      for (const auto& w : small) {
        auto U = GroupRingElement::monomial(u), V = GroupRingElement::monomial(v), W = GroupRingElement::monomial(w);
        auto j = goldman_bracket(U, goldman_bracket(V, W)) + goldman_bracket(V, goldman_bracket(W, U)) +
                 goldman_bracket(W, goldman_bracket(U, V));
        CHECK(j.is_zero());
      }
}

TEST_CASE("property: [J^p, J^q] lies in J^{p+q-2}") {
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q) {
      if (p + q - 2 < 1) continue;
      auto basis = jadic_basis(p + q - 2);
      for (int a = 0; a <= p; ++a)
        for (int c = 0; c <= q; ++c) {
          auto x = augmentation_monomial(a, p - a), y = augmentation_monomial(c, q - c);
          INFO("p=" << p << " q=" << q << " a=" << a << " c=" << c);
          CHECK(basis.in_ideal(goldman_bracket(x, y)));
        }
    }
}

TEST_CASE("holonomy functional examples") {
  auto f = holonomy_functional({{1, 0}}, 1);
  CHECK(f.at({1}) == 1);
  CHECK(f.at({2}) == 0);
  auto g = holonomy_functional({{1, 0}, {0, 1}}, 2);
  CHECK(g.table.size() == 1);
  CHECK(g.at({1, 2}) == 1);
  auto h = holonomy_functional({{2, 3}}, 1);
  CHECK(h.at({1}) == 2);
  CHECK(h.at({2}) == 3);
  CHECK_THROWS_AS(holonomy_functional({{1, 0}}, 2), DimensionMismatchError);
  CHECK_THROWS_AS(holonomy_functional(sphere(3), {{1, 0}}, 1), StructureError);
}

TEST_CASE("property: holonomy is multiplicative on concatenated tuples") {
  std::vector<Lattice> pts{{1, 0}, {0, 1}, {-1, 2}, {2, 3}, {0, 0}};
  for (const auto& u : pts)
    for (const auto& v : pts)
      for (const auto& w : pts) {
        auto full = holonomy_functional({u, v, w}, 3);
        auto left = holonomy_functional({u}, 1);
        auto right = holonomy_functional({v, w}, 2);
        for (int a : {1, 2})
          for (int b : {1, 2})
            for (int c : {1, 2}) CHECK(full.at({a, b, c}) == left.at({a}) * right.at({b, c}));
      }
}

TEST_CASE("holonomy classes respect the group ring") {
  auto t2 = torus(2);
  const int m = 3;
  H0Space h(t2, m);
  auto basis = jadic_basis(m + 1);
  // J^{m+1} maps to zero and the map is injective on the truncation.
  for (int a = 0; a <= m + 1; ++a) CHECK(h.is_zero(holonomy_class(t2, augmentation_monomial(a, m + 1 - a), m)));
  std::vector<SparseVector> images;
  for (const auto& [a, b] : basis.monomials()) images.push_back(h.coordinates(holonomy_class(t2, augmentation_monomial(a, b), m)));
  std::vector<std::tuple<int, int, Rational>> t;
  for (std::size_t c = 0; c < images.size(); ++c)
    for (const auto& [r, q] : images[c]) t.emplace_back(r, static_cast<int>(c), q);
  CHECK(rank(SparseMatrix::from_triplets(h.dim(), static_cast<int>(images.size()), std::move(t))) == basis.dimension());
}

TEST_CASE("compare_pi1_dimensions") {
  for (auto [p, dim] : {std::pair{1, 1}, {3, 6}, {5, 15}}) {
    auto r = compare_pi1_dimensions(p);
    CHECK(r.group_ring_dimension == dim);
    CHECK(r.h0_dimension == dim);
    CHECK(r.match);
  }
  CHECK_THROWS_AS(compare_pi1_dimensions(3, 1), TruncationError);
  CHECK(compare_pi1_dimensions(3, 5).weight_cutoff == 2);
}
