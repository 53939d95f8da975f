#include <doctest.h>

#include <cmath>
#include <trion/errors.hpp>
#include <trion/multipoles.hpp>

using namespace trion;

namespace {
const HydrogenState kStates[] = {HydrogenState::Ground, HydrogenState::RadialExcited,
                                 HydrogenState::PState};
}

TEST_SUITE("multipoles") {

TEST_CASE("closed forms at integer dimension") {
  DimensionParams d2(2.0), d3(3.0), d4(4.0), d5(5.0);
  CHECK(quadrupole(HydrogenState::Ground, d3) == 0.0);
  CHECK(quadrupole(HydrogenState::Ground, d2) == doctest::Approx(3.0 / 16.0).epsilon(1e-15));
  CHECK(quadrupole(HydrogenState::PState, d3) == doctest::Approx(24.0).epsilon(1e-15));
  CHECK(octupole(HydrogenState::Ground, d3) == 0.0);
  CHECK(octupole(HydrogenState::Ground, d5) == 0.0);
  CHECK(octupole(HydrogenState::Ground, d2) == doctest::Approx(135.0 / 2048.0).epsilon(1e-15));
  CHECK(octupole(HydrogenState::Ground, d4) < 0.0);
}

TEST_CASE("general even moment") {
  // The quadrupole operator is 3z^2 - r^2 = 2 r^2 P_2, the general moments use r^k P_k.
  for (double d : {2.0, 2.5, 3.0, 4.0})
    CHECK(even_multipole_ground(1, DimensionParams(d)) ==
          doctest::Approx(0.5 * quadrupole(HydrogenState::Ground, DimensionParams(d))).epsilon(1e-14));
  for (int n = 1; n <= 3; ++n) {
    for (int d = 3; d <= 2 * n + 1; d += 2) CHECK(even_multipole_ground(n, DimensionParams(d)) == 0.0);
    for (int d = 2; d <= 12; d += 2) CHECK(even_multipole_ground(n, DimensionParams(d)) != 0.0);
    CHECK(std::abs(even_multipole_ground(n, DimensionParams(1.0 + 1e-7))) < 1e-6);
  }
  CHECK_THROWS_AS(even_multipole_ground(0, DimensionParams(2.0)), DomainError);
}

TEST_CASE("quadrupole sign and growth") {
  for (double d : {1.2, 1.5, 2.0, 2.9}) CHECK(quadrupole(HydrogenState::Ground, DimensionParams(d)) > 0.0);
  for (double d : {3.1, 4.0, 7.0, 20.0}) CHECK(quadrupole(HydrogenState::Ground, DimensionParams(d)) < 0.0);
  auto q = [](double d) { return std::abs(quadrupole(HydrogenState::Ground, DimensionParams(d))); };
  double s1 = std::log2(q(20.0) / q(10.0)), s2 = std::log2(q(40.0) / q(20.0));
  CHECK(s2 < s1);
  CHECK(s2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("quadrature references") {
  CHECK(dipole_squared(HydrogenState::Ground, DimensionParams(2.0)) == doctest::Approx(3.0 / 16.0).epsilon(1e-10));
  CHECK(dipole_squared(HydrogenState::Ground, DimensionParams(3.0)) == doctest::Approx(1.0).epsilon(1e-10));
  for (auto s : kStates)
    for (double d : {1.5, 2.0, 3.0, 5.0}) CHECK(dipole_squared(s, DimensionParams(d)) > 0.0);
  CHECK(2.0 * moment_oracle(2, HydrogenState::Ground, DimensionParams(2.0)) ==
        doctest::Approx(3.0 / 16.0).epsilon(1e-8));
  CHECK(std::abs(moment_oracle(2, HydrogenState::Ground, DimensionParams(3.0))) < 1e-10);
  CHECK(moment_oracle(4, HydrogenState::PState, DimensionParams(3.0)) ==
        doctest::Approx(octupole(HydrogenState::PState, DimensionParams(3.0))).epsilon(1e-8));
}

TEST_CASE("closed forms agree with quadrature") {
  for (double d : {1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 7.0}) {
    DimensionParams dim(d);
    CAPTURE(d);
    for (auto s : kStates) {
      double q = quadrupole(s, dim), oq = 2.0 * moment_oracle(2, s, dim);
      if (q == 0.0) CHECK(std::abs(oq) <= 1e-10);
      else CHECK(oq == doctest::Approx(q).epsilon(1e-8));
    }
    for (auto s : {HydrogenState::Ground, HydrogenState::PState}) {
      double o = octupole(s, dim), oo = moment_oracle(4, s, dim);
      if (o == 0.0) CHECK(std::abs(oo) <= 1e-10);
      else CHECK(oo == doctest::Approx(o).epsilon(1e-8));
    }
    double q6 = even_multipole_ground(3, dim), o6 = moment_oracle(6, HydrogenState::Ground, dim);
    if (q6 == 0.0) CHECK(std::abs(o6) <= 1e-10);
    else CHECK(o6 == doctest::Approx(q6).epsilon(1e-8));
  }
}

TEST_CASE("state energies") {
  for (double d : {1.5, 2.0, 3.0, 4.5}) {
    DimensionParams dim(d);
    const double sig = dim.sigma();
    CHECK(state_energy(HydrogenState::Ground, dim) == doctest::Approx(-1.0 / (2.0 * sig * sig)));
    CHECK(state_energy(HydrogenState::PState, dim) == doctest::Approx(-2.0 / ((d + 1.0) * (d + 1.0))));
    for (auto s : kStates)
      CHECK(energy_oracle(s, dim) == doctest::Approx(state_energy(s, dim)).epsilon(1e-8));
  }
}

TEST_CASE("state names") {
  CHECK(parse_state("ground") == HydrogenState::Ground);
  CHECK(parse_state("excited") == HydrogenState::RadialExcited);
  CHECK(parse_state("p") == HydrogenState::PState);
  CHECK_THROWS_AS(parse_state("d"), ConfigError);
}

}
