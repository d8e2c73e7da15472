#include "msect/exact_core.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

using namespace msect;

TEST_CASE("inner products") {
  CHECK(inner({1, 1}, {-2, 11}) == 9);
  CHECK(inner({1, 0}, {0, 1}) == 0);
  CHECK(inner({7, 1}, {2, 1}) == 15);
  CHECK_THROWS_AS(inner({1, 2}, {1, 2, 3}), DimensionMismatch);
}

TEST_CASE("vectors need dimension two") {
  CHECK_THROWS_AS(IntVector({5}), std::invalid_argument);
  CHECK(IntVector({0, 0}).is_zero());
}

TEST_CASE("gram invariants") {
  auto g = gram_invariants({1, 1}, {-2, 11});
  CHECK(g.p == 9);
  CHECK(g.na == 2);
  CHECK(g.nb == 125);
  CHECK(g.s2 == 169);

  g = gram_invariants({1, 1, 1}, {-11, 6, 23});
  CHECK(g.p == 18);
  CHECK(g.na == 3);
  CHECK(g.nb == 686);
  CHECK(g.s2 == 1734);

  g = gram_invariants({1, 0}, {0, 1});
  CHECK(g.p == 0);
  CHECK(g.s2 == 1);

  CHECK_THROWS_AS(gram_invariants({0, 0}, {1, 2}), ZeroVector);
}

TEST_CASE("primitive reduction keeps direction") {
  auto r = primitive_reduce({26, 52});
  CHECK(r.vector == IntVector{1, 2});
  CHECK(r.scale == 26);

  r = primitive_reduce({-4, 22});
  CHECK(r.vector == IntVector{-2, 11});
  CHECK(r.scale == 2);

  r = primitive_reduce({51, 102, 153});
  CHECK(r.vector == IntVector{1, 2, 3});
  CHECK(r.scale == 51);

  CHECK(primitive({-3, -6}) == IntVector{-1, -2});
  CHECK_THROWS_AS(primitive_reduce({0, 0, 0}), ZeroVector);
}

TEST_CASE("primitive reduction properties") {
  oracle::Generator gen(11);
  for (int i = 0; i < 300; ++i) {
    const IntVector v = Integer(gen.uniform(1, 40)) * gen.vector(gen.uniform(2, 5), 60);
    const auto r = primitive_reduce(v);
    CHECK(r.scale > 0);
    CHECK(r.scale * r.vector == v);
    CHECK(r.vector.is_primitive());
    CHECK(primitive(r.vector) == r.vector);
  }
}

TEST_CASE("plane coordinates") {
  auto pc = plane_coords({1, 1}, {-2, 11}, {1, 2});
  REQUIRE(pc);
  CHECK(pc->lambda == Rational(15, 13));
  CHECK(pc->mu == Rational(1, 13));

  CHECK_FALSE(plane_coords({1, 0, 0}, {0, 1, 0}, {0, 0, 1}));

  pc = plane_coords({1, 1, 1}, {-59, 1, 61}, {1, 2, 3});
  REQUIRE(pc);
  // Re-substitute by hand.
  for (std::size_t i = 0; i < 3; ++i) {
    const long a[] = {1, 1, 1}, b[] = {-59, 1, 61}, c[] = {1, 2, 3};
    CHECK(pc->lambda * a[i] + pc->mu * b[i] == c[i]);
  }

  CHECK_THROWS_AS(plane_coords({1, 2}, {2, 4}, {1, 0}), DependentPair);
  CHECK_THROWS_AS(plane_coords({1, 2}, {2, 5}, {1, 0, 0}), DimensionMismatch);
}

TEST_CASE("plane coordinates re-substitute and detect dependence") {
  oracle::Generator gen(12);
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = gen.uniform(2, 4);
    const IntVector a = gen.vector(dim, 20), b = gen.vector(dim, 20);
    const Integer s2 = gram_invariants(a, b).s2;
    CHECK(s2 >= 0);
    CHECK((s2 == 0) == dependent(a, b));
    if (s2 == 0) continue;

    const IntVector c = Integer(gen.uniform(-9, 9)) * a + Integer(gen.uniform(-9, 9)) * b;
    if (c.is_zero()) continue;
    const auto pc = plane_coords(a, b, c);
    REQUIRE(pc);
    for (std::size_t k = 0; k < dim; ++k) CHECK(pc->lambda * a[k] + pc->mu * b[k] == c[k]);
  }
}

TEST_CASE("tangent class") {
  const IntVector a{1, 1}, b{-2, 11};
  auto tc = tangent_class(a, b, {1, 2});
  REQUIRE(tc.tan_over_s);
  CHECK(*tc.tan_over_s == Rational(1, 39));
  CHECK(tc.cos_sign == 1);
  CHECK(tc.sin_sign == 1);

  tc = tangent_class(a, b, a);
  CHECK(tc == TangentClass{Rational(0), 1, 0});

  tc = tangent_class(a, b, b);
  REQUIRE(tc.tan_over_s);
  CHECK(*tc.tan_over_s == Rational(1, 9));

  // Perpendicular to a within the plane: cosine vanishes.
  tc = tangent_class(a, b, {-1, 1});
  CHECK_FALSE(tc.tan_over_s);
  CHECK(tc.cos_sign == 0);
  CHECK(tc.sin_sign == 1);

  CHECK_THROWS_AS(tangent_class({1, 0, 0}, {0, 1, 0}, {0, 0, 1}), std::domain_error);
}

TEST_CASE("tangent class of a is zero for every independent pair") {
  oracle::Generator gen(13);
  for (int i = 0; i < 100; ++i) {
    auto [a, b] = gen.pair(gen.uniform(2, 4), 30, false);
    CHECK(tangent_class(a, b, a) == TangentClass{Rational(0), 1, 0});
  }
}

TEST_CASE("angle equality") {
  CHECK(angles_equal({7, 1}, {2, 1}, {2, 1}, {1, 1}));
  CHECK_FALSE(angles_equal({1, 0}, {0, 1}, {1, 0}, {1, 1}));
  CHECK(angles_equal({1, 1, 1}, {1, 2, 3}, {1, 2, 3}, {-1, 5, 11}));
  // Supplementary angles share |cos| but not its sign.
  CHECK_FALSE(angles_equal({1, 0}, {1, 1}, {1, 0}, {-1, 1}));
  CHECK_THROWS_AS(angles_equal({0, 0}, {1, 0}, {1, 0}, {1, 0}), ZeroVector);
}

TEST_CASE("angle equality is an equivalence invariant under positive scaling") {
  oracle::Generator gen(14);
  for (int i = 0; i < 200; ++i) {
    const IntVector u = gen.vector(2, 6), v = gen.vector(2, 6);
    const IntVector x = gen.vector(2, 6), y = gen.vector(2, 6);
    CHECK(angles_equal(u, v, u, v));
    CHECK(angles_equal(u, v, x, y) == angles_equal(x, y, u, v));
    const Integer k(gen.uniform(1, 7)), l(gen.uniform(1, 7));
    CHECK(angles_equal(u, v, x, y) == angles_equal(k * u, v, x, l * y));
    // Transitivity through a rotated copy: (u,v) and (v,u) always match.
    if (angles_equal(u, v, x, y)) CHECK(angles_equal(v, u, y, x));
  }
}
