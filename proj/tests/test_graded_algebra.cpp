#include <doctest.h>

#include <algorithm>

#include "support/oracle.hpp"

using namespace loophom;

namespace {

bool has_rule(const ValidationReport& r, const std::string& rule) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

const char* kExterior3 = R"({
  "name": "ext3",
  "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 3}],
  "unit": "1", "differential": [], "products": [], "top_degree": 3,
  "orientation": {"x": "1"}, "commutative": true
})";

}  // namespace

TEST_CASE("build_dga: exterior algebra on one odd generator") {
  DGA a = build_dga(kExterior3);
  CHECK(a.dim() == 2);
  CHECK(a.degree(1) == 3);
  CHECK_FALSE(a.has_differential());
  CHECK(a.product(1, 1).empty());
  CHECK(validate_dga(a).passed);
}

TEST_CASE("build_dga: truncated polynomial algebra") {
  DGA a = build_dga(R"({
    "name": "trunc", "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 2}, {"name": "x2", "degree": 4}],
    "unit": "1", "differential": [],
    "products": [{"left": "x", "right": "x", "result": {"x2": "1"}}],
    "top_degree": 4, "orientation": {"x2": "1"}, "commutative": true})");
  CHECK(a.dim() == 3);
  CHECK(a.top_degree() == 4);
  CHECK(validate_dga(a).passed);
}

TEST_CASE("build_dga: errors") {
  CHECK_THROWS_AS(build_dga("{not json"), ParseError);
  CHECK_THROWS_AS(build_dga(R"({"name": "a", "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 3}],
    "unit": "1", "products": [{"left": "x", "right": "x", "result": {"y": "1"}}], "top_degree": 3})"),
                  UnknownNameError);
  CHECK_THROWS_AS(build_dga(R"({"name": "a", "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 2},
    {"name": "y", "degree": 3}], "unit": "1",
    "products": [{"left": "x", "right": "x", "result": {"y": "1"}}], "top_degree": 3})"),
                  DegreeMismatchError);
  CHECK_THROWS_AS(build_dga(R"({"name": "a", "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 2}],
    "unit": "1", "differential": [{"from": "x", "to": {"x": "1"}}], "top_degree": 2})"),
                  DegreeMismatchError);
  CHECK_THROWS_AS(build_dga(R"({"name": "a", "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": -1}],
    "unit": "1", "top_degree": 2})"),
                  DegreeMismatchError);
  CHECK_THROWS_AS(build_dga(R"({"name": "a", "basis": [{"name": "1", "degree": 0}], "unit": "1", "top_degree": 0,
    "orientation": {"1": "2/4"}})"),
                  ParseError);
}

TEST_CASE("json round trip preserves structure") {
  for (const auto& a : oracle::builtin_roster()) {
    DGA b = build_dga(to_json(a));
    REQUIRE(b.dim() == a.dim());
    for (int i = 0; i < a.dim(); ++i) {
      CHECK(b.basis().name(i) == a.basis().name(i));
      CHECK(b.d(i) == a.d(i));
      for (int j = 0; j < a.dim(); ++j) CHECK(b.product(i, j) == a.product(i, j));
      CHECK(b.orientation(i) == a.orientation(i));
    }
  }
}

TEST_CASE("validate_dga: corrupted product is reported with a witness") {
  DGAData d = sphere(3).data();
  d.products[{1, 1}] = unit_vector(0);  // x * x = 1
  auto r = validate_dga(DGA(d));
  CHECK_FALSE(r.passed);
  CHECK(has_rule(r, "grading-product"));
  bool witnessed = false;
  for (const auto& v : r.violations)
    if (v.rule == "grading-product" && v.witness == std::vector<std::string>{"x", "x"}) witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("validate_dga: each axiom has a tripwire") {
  SUBCASE("associativity") {
    DGAData d = complex_projective(3).data();
    d.products[{1, 2}] = scaled(d.products[{1, 2}], 2);  // x * x^2 = 2 x^3 but (x * x) * x = x^3
    CHECK(has_rule(validate_dga(DGA(d)), "associativity"));
  }
  SUBCASE("commutativity") {
    auto r = validate_dga(load_dga(std::string(LOOPHOM_SOURCE_DIR) + "/models/broken.json"));
    CHECK(has_rule(r, "commutativity"));
  }
  SUBCASE("d squared and leibniz") {
    // Λ(x1, y2, z3) with dx = y, dy = z would break d² and Leibniz.
    DGAData d;
    d.name = "bad";
    d.basis = {{"1", 0}, {"x", 1}, {"y", 2}, {"z", 3}};
    d.differential[1] = unit_vector(2);
    d.differential[2] = unit_vector(3);
    d.top_degree = 3;
    auto r = validate_dga(DGA(d));
    CHECK(has_rule(r, "d-squared"));
  }
  SUBCASE("connected") {
    DGAData d;
    d.name = "two points";
    d.basis = {{"1", 0}, {"e", 0}};
    d.products[{1, 1}] = unit_vector(1);
    CHECK(has_rule(validate_dga(DGA(d)), "connected"));
  }
  SUBCASE("degenerate orientation") {
    DGAData d = sphere(2).data();
    d.orientation = std::map<int, Rational>{};
    CHECK_FALSE(validate_dga(DGA(d)).passed);
  }
}

TEST_CASE("builtin models") {
  auto s3 = sphere(3);
  CHECK(s3.dim() == 2);
  CHECK(s3.top_degree() == 3);
  auto s1 = surface(1);
  REQUIRE(s1.dim() == 4);
  const int al = *s1.basis().find("a1"), be = *s1.basis().find("b1"), w = *s1.basis().find("w");
  CHECK(s1.product(al, be) == unit_vector(w));
  CHECK(s1.product(be, al) == scaled(unit_vector(w), -1));
  CHECK(s1.orientation(w) == 1);
  CHECK_THROWS_AS(sphere(1), InvalidModelError);
  CHECK_THROWS_AS(builtin_model("klein:2"), InvalidModelError);
  CHECK_THROWS_AS(builtin_model("sphere"), InvalidModelError);
  CHECK(builtin_model("cp:2").dim() == 3);
  CHECK(builtin_model("torus:3").dim() == 8);
  for (const auto& a : oracle::builtin_roster()) {
    INFO(a.name());
    CHECK(validate_dga(a).passed);
  }
}

TEST_CASE("acyclic extension has the cohomology of its base") {
  for (const auto& base : {sphere(2), sphere(3), surface(1), surface(2), torus(2), complex_projective(2)}) {
    auto ext = acyclic_extension(base);
    INFO(ext.name());
    CHECK(ext.dim() == 3 * base.dim());
    CHECK(validate_dga(ext).passed);
    auto hb = algebra_cohomology(base), he = algebra_cohomology(ext);
    for (int q = 0; q <= ext.basis().max_degree(); ++q) CHECK(hb.betti(q) == he.betti(q));
  }
  CHECK(acyclic_extension(sphere(2)).dim() == 6);
  auto low = acyclic_extension(surface(1), 1);
  CHECK(validate_dga(low).passed);
}

TEST_CASE("orientation pairing matrices") {
  auto s3 = orientation_pairing(sphere(3));
  REQUIRE_FALSE(s3.blocks.empty());
  CHECK(s3.blocks[0].degree == 0);
  CHECK(s3.blocks[0].matrix == std::vector<std::vector<Rational>>{{Rational(1)}});

  auto t2 = orientation_pairing(torus(2));
  for (const auto& b : t2.blocks)
    if (b.degree == 1) CHECK(b.matrix == std::vector<std::vector<Rational>>{{0, 1}, {-1, 0}});

  auto s2 = orientation_pairing(surface(2));
  for (const auto& b : s2.blocks)
    if (b.degree == 1) {
      REQUIRE(b.matrix.size() == 4);
      CHECK(oracle::dense_rank(b.matrix) == 4);
      // a_i b_j = δ_ij, a_i a_j = b_i b_j = 0
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          CHECK(b.matrix[i][2 + j] == (i == j ? 1 : 0));
          CHECK(b.matrix[i][j] == 0);
          CHECK(b.matrix[2 + i][2 + j] == 0);
        }
    }

  DGAData d = sphere(3).data();
  d.orientation.reset();
  CHECK_THROWS_AS(orientation_pairing(DGA(d)), MissingOrientationError);

  for (const auto& a : oracle::builtin_roster()) {
    INFO(a.name());
    auto p = orientation_pairing(a);
    CHECK(p.warnings.empty());
    for (const auto& b : p.blocks) CHECK(b.nondegenerate);
  }
}

TEST_CASE("property: Leibniz and associativity on random elements") {
  std::mt19937 rng(3);
  for (const auto& a : oracle::builtin_roster()) {
    for (int trial = 0; trial < 20; ++trial) {
      auto rand_elem = [&](int q) {
        AlgVector v;
        for (int i : a.basis().of_degree(q)) v.emplace_back(i, oracle::small_rational(rng));
        return make_sparse(v);
      };
      std::uniform_int_distribution<int> deg(0, a.basis().max_degree());
      int p = deg(rng), q = deg(rng), r = deg(rng);
      auto x = rand_elem(p), y = rand_elem(q), z = rand_elem(r);
      CHECK(a.multiply(a.multiply(x, y), z) == a.multiply(x, a.multiply(y, z)));
      auto lhs = a.apply_d(a.multiply(x, y));
      auto rhs = add_scaled(a.multiply(a.apply_d(x), y), a.multiply(x, a.apply_d(y)), parity_sign(p));
      CHECK(lhs == rhs);
      CHECK(a.apply_d(a.apply_d(x)).empty());
    }
  }
}
