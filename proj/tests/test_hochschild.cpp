#include <doctest.h>

#include "support/oracle.hpp"

using namespace loophom;

namespace {

Cochain to_a(int degree, std::initializer_list<std::tuple<Word, int, int>> entries) {
  Cochain c;
  c.degree = degree;
  for (const auto& [w, e, q] : entries) add_term(c.values, CochainKey{w, e}, Rational(q));
  return c;
}

DualCochain dual(int degree, std::initializer_list<std::tuple<Word, int, int>> entries) {
  DualCochain c;
  c.degree = degree;
  for (const auto& [w, e, q] : entries) add_term(c.values, CochainKey{w, e}, Rational(q));
  return c;
}

Cochain random_cochain(const DGA& a, int degree, int cutoff, std::mt19937& rng) {
  return Cochain{degree, oracle::random_values(SliceBasis(a, Variant::ToA, degree, cutoff), rng, 0.3)};
}

// A⁰ = span{1, e} with e² = e, de = -y, e·y = y, y·e = 0: a two-point-like test
// algebra where the normalization equations have content.
DGA two_point() {
  DGAData d;
  d.name = "two-point";
  d.basis = {{"1", 0}, {"e", 0}, {"y", 1}};
  d.products[{1, 1}] = unit_vector(1);
  d.products[{1, 2}] = unit_vector(2);
  d.products[{2, 1}] = {};
  d.products[{2, 2}] = {};
  d.differential[1] = {{2, Rational(-1)}};
  d.top_degree = 1;
  d.commutative = false;
  return DGA(d);
}

}  // namespace

TEST_CASE("delta examples over sphere(3)") {
  auto s3 = sphere(3);
  const int x = 1;
  CHECK(delta_to_A(s3, unit_cochain(s3)).values.empty());
  CHECK(delta_to_A(s3, to_a(2, {{{x}, 0, 1}})).values.empty());
  CHECK(delta_to_A(s3, Cochain{5, {}}).values.empty());
  CHECK(delta_to_dual(s3, dual(0, {{{}, 0, 1}})).values.empty());
  CHECK(delta_to_dual(s3, DualCochain{}).values.empty());

  auto psi = dual(5, {{{x}, x, 1}});
  auto d = delta_to_dual(s3, psi);
  CHECK(d.degree == 4);
  for (const auto& [k, q] : d.values) CHECK(k.word == Word{x, x});
  CHECK(delta_to_dual(s3, d).values.empty());
}

TEST_CASE("delta rejects ill-graded cochains") {
  auto s3 = sphere(3);
  CHECK_THROWS_AS(delta_to_A(s3, to_a(1, {{{1}, 0, 1}})), GradingError);
  CHECK_THROWS_AS(delta_to_dual(s3, dual(0, {{{1}, 1, 1}})), GradingError);
}

TEST_CASE("cup examples") {
  auto s3 = sphere(3);
  auto u = unit_cochain(s3);
  auto phi = to_a(2, {{{1}, 0, 3}, {{1, 1}, 1, -1}});
  phi.values.erase(CochainKey{{1, 1}, 1});  // keep it homogeneous: ((x,x) -> x) has degree 1
  CHECK(cup(s3, u, phi) == phi);
  CHECK(cup(s3, phi, u) == phi);
  auto a = to_a(-3, {{{}, 1, 1}});
  CHECK(cup(s3, a, a).values.empty());
}

TEST_CASE("assemble_complex examples") {
  auto s3 = sphere(3);
  auto c = assemble_complex(s3, Variant::ToA, -3, 4);
  CHECK(c.basis.size() == 1);
  CHECK(c.basis[0] == CochainKey{{}, 1});
  CHECK(c.complete);
  CHECK(assemble_complex(s3, Variant::ToA, -2, 4).basis.size() == 0);
  auto t = assemble_complex(torus(2), Variant::Dual, 0, 3);
  CHECK(t.basis.size() == 15);
  CHECK_FALSE(t.complete);
  CHECK_THROWS_AS(assemble_complex(s3, Variant::ToA, 0, -1), TruncationError);
}

TEST_CASE("delta matrix equals pointwise delta") {
  for (const auto& a : {sphere(2), surface(1), torus(2), acyclic_extension(sphere(2))}) {
    for (Variant v : {Variant::ToA, Variant::Dual})
      for (int n = -2; n <= 3; ++n) {
        SliceBasis src(a, v, n, 3), dst(a, v, n - 1, 3);
        auto m = delta_matrix(a, src, dst);
        for (int i = 0; i < src.size(); ++i) {
          CochainValues one;
          add_term(one, src[i], 1);
          CochainValues image = v == Variant::ToA ? delta_to_A(a, Cochain{n, one}).values
                                                  : delta_to_dual(a, DualCochain{n, one}).values;
          SparseVector col;
          for (int r = 0; r < m.rows(); ++r)
            if (m.at(r, i) != 0) col.emplace_back(r, m.at(r, i));
          CHECK(dst.to_vector(image) == col);
        }
      }
  }
}

TEST_CASE("loop homology of sphere(3) and the dual pipeline") {
  auto s3 = sphere(3);
  auto lh = loop_homology(s3, -3, 5, 8);
  std::vector<int> betti;
  for (const auto& d : lh.degrees) betti.push_back(d.betti);
  CHECK(betti == std::vector<int>{1, 0, 1, 1, 1, 1, 1, 1, 1});
  CHECK(lh.exact);
  REQUIRE(lh.identity);
  CHECK(*lh.identity == HomologyClassId{0, 0});

  // Poincaré duality moves to-A degree n to dual degree n + 3.
  HomologyWindow dualwin(s3, Variant::Dual, 0, 8, 8);
  for (int n = -3; n <= 5; ++n) CHECK(dualwin.betti(n + 3) == lh.find(n)->betti);
}

TEST_CASE("loop homology of sphere(2): identity and a square-zero class") {
  auto lh = loop_homology(sphere(2), -2, 4, 7);
  REQUIRE(lh.identity);
  const auto* low = lh.find(-2);
  REQUIRE(low);
  REQUIRE(low->betti == 1);
  CHECK(lh.products.at({{-2, 0}, {-2, 0}}).empty());
  for (const auto& d : lh.degrees) CHECK(d.betti == 1);
}

TEST_CASE("property: graded commutativity on homology") {
  for (const auto& a : {sphere(3), sphere(2), complex_projective(2)}) {
    INFO(a.name());
    auto lh = loop_homology(a, -a.top_degree(), 4, 8);
    for (const auto& [key, coords] : lh.products) {
      const auto& [x, y] = key;
      if (x.degree + y.degree < -a.top_degree() || x.degree + y.degree > 4) continue;
      auto swapped = lh.products.at({y, x});
      CHECK(coords == scaled(swapped, parity_sign(static_cast<long long>(x.degree) * y.degree)));
    }
  }
}

TEST_CASE("property: delta squared vanishes on random cochains") {
  std::mt19937 rng(11);
  for (const auto& a : oracle::builtin_roster()) {
    INFO(a.name());
    const int cutoff = a.simply_connected() ? 5 : 3;
    for (int n = -a.top_degree(); n <= 4; ++n) {
      Cochain phi = random_cochain(a, n, cutoff, rng);
      CHECK(delta_to_A(a, delta_to_A(a, phi)).values.empty());
      DualCochain psi{n, oracle::random_values(SliceBasis(a, Variant::Dual, n, cutoff), rng, 0.3)};
      CHECK(delta_to_dual(a, delta_to_dual(a, psi)).values.empty());
    }
  }
}

TEST_CASE("property: Leibniz, associativity and filtration of cup") {
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> pick(-3, 3);
  for (const auto& a : oracle::builtin_roster()) {
    INFO(a.name());
    const int cutoff = a.simply_connected() ? 4 : 2;
    for (int trial = 0; trial < 12; ++trial) {
      int n1 = pick(rng), n2 = pick(rng), n3 = pick(rng);
      auto f = random_cochain(a, n1, cutoff, rng), g = random_cochain(a, n2, cutoff, rng),
           h = random_cochain(a, n3, cutoff, rng);
      auto lhs = delta_to_A(a, cup(a, f, g));
      auto r1 = cup(a, delta_to_A(a, f), g), r2 = cup(a, f, delta_to_A(a, g));
      CHECK(lhs.values == add_scaled(r1.values, r2.values, parity_sign(n1)));
      CHECK(cup(a, cup(a, f, g), h) == cup(a, f, cup(a, g, h)));
      if (!f.values.empty() && !g.values.empty())
        CHECK(cup(a, f, g).weight_support() <= f.weight_support() + g.weight_support());
      // δ on F^m depends only on values on F^m
      CHECK(truncate(delta_to_A(a, Cochain{n1, truncate(f.values, 1)}).values, 1) ==
            truncate(delta_to_A(a, f).values, 1));
    }
  }
}

TEST_CASE("normalization") {
  auto s3 = sphere(3);
  CHECK(normalization_check(s3, dual(5, {{{1}, 1, 1}})).holds);
  CHECK(normalization_check(s3, DualCochain{}).holds);
  CHECK(normalization_check(surface(1), unit_cochain(surface(1))).holds);

  auto tp = two_point();
  CHECK(validate_dga(tp).violations.size() == 1);  // only the connectedness rule
  auto bad = dual(1, {{{2, 2}, 2, 1}});
  auto r = normalization_check(tp, bad);
  CHECK_FALSE(r.holds);
  bool family2 = false;
  for (const auto& w : r.witnesses)
    if (w.family == 2) {
      family2 = true;
      CHECK(w.value == "-1");
    }
  CHECK(family2);
  CHECK(normalization_check(tp, DualCochain{}).holds);
}

TEST_CASE("E1 term dimensions match the cohomology count") {
  for (const auto& a : oracle::builtin_roster())
    for (int p = 0; p <= 2; ++p) {
      INFO(a.name() << " p=" << p);
      CHECK(e1_term(a, p).agree);
    }
  auto s2 = e1_term(surface(2), 0);
  CHECK(s2.computed == std::map<int, int>{{0, 1}, {1, 4}, {2, 1}});
  CHECK(e1_term(torus(2), 1).computed.at(0) == 2);
  auto sp = e1_term(sphere(3), 2);
  CHECK(sp.computed == std::map<int, int>{{4, 1}, {7, 1}});
}
