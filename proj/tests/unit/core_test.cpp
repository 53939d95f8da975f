#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <trion/core.hpp>
#include <trion/errors.hpp>

using namespace trion;

TEST_SUITE("core") {

TEST_CASE("dimension parameters") {
  DimensionParams d2(2.0);
  CHECK(d2.sigma() == 0.5);
  CHECK(DimensionParams(3.5).sigma() == 1.25);
  CHECK_THROWS_AS(DimensionParams(1.0), DomainError);
  CHECK_THROWS_AS(DimensionParams(0.5), DomainError);
  CHECK_THROWS_AS(DimensionParams(NAN), DomainError);
}

TEST_CASE("one-centre energy") {
  CHECK(one_center_ground_energy(DimensionParams(2.0)) == -2.0);
  CHECK(one_center_ground_energy(DimensionParams(3.0)) == -0.5);
  CHECK(one_center_ground_energy(DimensionParams(5.0)) == -0.125);
  double prev = -INFINITY;
  for (double d = 1.05; d < 30.0; d += 0.05) {
    double e = one_center_ground_energy(DimensionParams(d));
    CHECK(e > prev);
    prev = e;
  }
}

TEST_CASE("term shift") {
  DimensionParams d2(2.0), d3(3.0);
  CHECK(shift_term(-2.0, 1e6, d2) == doctest::Approx(1e-6).epsilon(1e-9));
  CHECK(shift_term(-8.0, 1e-12, d2) > 1e11);
  // d = 3 term minimum round trip
  double V = -0.102635, R = 1.99719;
  double U = unshift_term(V, R, d3);
  CHECK(U == doctest::Approx(V - 1.0 / R - 0.5).epsilon(1e-15));
  CHECK(shift_term(U, R, d3) == doctest::Approx(V).epsilon(1e-14));
  for (double d : {1.3, 2.0, 2.7, 4.0})
    for (double r : {1e-3, 0.7, 13.0, 1e4})
      for (double v : {-3.0, -1e-4, 0.5}) {
        DimensionParams dim(d);
        // rounding is set by the largest of the three added terms
        double scale = std::max({1.0 / r, 2.0 / ((d - 1.0) * (d - 1.0)), std::abs(v)});
        CHECK(shift_term(unshift_term(v, r, dim), r, dim) == doctest::Approx(v).epsilon(1e-14).scale(scale));
      }
  CHECK_THROWS_AS(shift_term(-2.0, 0.0, d2), DomainError);
  CHECK_THROWS_AS(shift_term(-2.0, -1.0, d2), DomainError);
}

TEST_CASE("symmetry labels") {
  CHECK(sign(Symmetry::Symmetric) == 1);
  CHECK(sign(Symmetry::Antisymmetric) == -1);
  CHECK(parse_symmetry("s") == Symmetry::Symmetric);
  CHECK(parse_symmetry("antisymmetric") == Symmetry::Antisymmetric);
  CHECK(parse_symmetry(to_string(Symmetry::Antisymmetric)) == Symmetry::Antisymmetric);
  CHECK_THROWS_AS(parse_symmetry("x"), ConfigError);
}

TEST_CASE("term curve") {
  DimensionParams d2(2.0);
  CHECK_THROWS_AS(TermCurve(Symmetry::Symmetric, d2, {}, TermSource::Variational), DomainError);
  CHECK_THROWS_AS(TermCurve(Symmetry::Symmetric, d2, {{1, 0, 0}, {1, 0, 0}}, TermSource::Variational),
                  DomainError);
  TermCurve c(Symmetry::Symmetric, d2, {{1, 0, 1.0}, {2, 0, -1.0}, {3, 0, -0.5}, {4, 0, 0.5}},
              TermSource::Variational);
  auto z = zero_crossings(c);
  REQUIRE(z.size() == 2);
  CHECK(z[0] == doctest::Approx(1.5));
  CHECK(z[1] == doctest::Approx(3.5));
}

}
