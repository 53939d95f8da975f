#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <trion/errors.hpp>
#include <trion/rational.hpp>
#include <trion/vibrational.hpp>

#include "oracle.hpp"

using namespace trion;

namespace {

TermFunction sym_term() { return term_function(published_approximant(Symmetry::Symmetric)); }
TermFunction anti_term() { return term_function(published_approximant(Symmetry::Antisymmetric)); }

}  // namespace

TEST_SUITE("vibrational") {

TEST_CASE("effective potential") {
  auto t = sym_term();
  VibrationalProblem p{10.0, 1.0, Symmetry::Symmetric, t, true};
  CHECK(effective_potential(p, 0.7) == doctest::Approx(t(0.7) - 0.25 / 10.5 / 0.49).epsilon(1e-15));
  p.include_centripetal = false;
  CHECK(effective_potential(p, 0.7) == t(0.7));
  p.Z = 0.5;
  CHECK(effective_potential(p, 0.7) == doctest::Approx(t(0.7) + 1.0 / 0.7).epsilon(1e-15));
  CHECK_THROWS_AS(effective_potential(p, 0.0), DomainError);
  CHECK_THROWS_AS(count_bound_states({-1.0, 1.0, Symmetry::Symmetric, t, true}), DomainError);
}

TEST_CASE("circular well") {
  // mu = m + 1/2 = 1; levels frozen from an independent Bessel root search
  const double V0 = 30.0, a = 1.0, m = 0.5;
  auto ref = oracle::circular_well_levels(V0, a, m + 0.5);
  REQUIRE(ref.size() == 2);
  CHECK(ref[0] == doctest::Approx(-25.8969931932394).epsilon(1e-13));
  CHECK(ref[1] == doctest::Approx(-9.381740568998197).epsilon(1e-13));
  TermFunction well = [=](double R) { return R < a ? -V0 : 0.0; };
  auto s = solve_spectrum({m, 1.0, Symmetry::Symmetric, well, true}, -V0 - 1.0);
  REQUIRE(s.levels.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(s.levels[i] - ref[i]) <= 1e-8);
}

TEST_CASE("level counts near the first symmetric threshold") {
  auto t = sym_term();
  CHECK(count_bound_states({6.01 * 1.03, 1.0, Symmetry::Symmetric, t, true}) == 2);
  CHECK(count_bound_states({6.01 * 0.97, 1.0, Symmetry::Symmetric, t, true}) == 1);
  CHECK(count_bound_states({60.0, 1.0, Symmetry::Antisymmetric, anti_term(), true}) == 1);
  auto tiny = solve_spectrum({0.1, 1.0, Symmetry::Symmetric, t, true}, -1.0);
  CHECK(tiny.n_found == 1);
  for (double m : {1e-3, 0.1, 1.0, 10.0})
    CHECK(count_bound_states({m, 1.0, Symmetry::Symmetric, t, true}) >= 1);
}

TEST_CASE("spectrum is sorted and negative") {
  auto s = solve_spectrum({200.0, 1.0, Symmetry::Symmetric, sym_term(), true}, -1.0);
  REQUIRE(s.n_found >= 3);
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    CHECK(s.levels[i] < 0.0);
    if (i) CHECK(s.levels[i] > s.levels[i - 1]);
  }
  CHECK_THROWS_AS(solve_spectrum({200.0, 1.0, Symmetry::Symmetric, sym_term(), true}, 0.0), DomainError);
}

TEST_CASE("threshold consistency") {
  auto t = sym_term();
  for (int n : {1, 2}) {
    double mc = critical_mass(t, Symmetry::Symmetric, n);
    CAPTURE(n);
    CHECK(solve_spectrum({mc * (1 + 1e-3), 1.0, Symmetry::Symmetric, t, true}, -1.0).n_found == n + 1);
    CHECK(solve_spectrum({mc * (1 - 1e-3), 1.0, Symmetry::Symmetric, t, true}, -1.0).n_found == n);
  }
  CHECK(critical_mass(t, Symmetry::Symmetric, 0) == 0.0);
  CHECK(critical_mass(t, Symmetry::Symmetric, 1) == doctest::Approx(6.01).epsilon(0.03));
  CHECK_THROWS_AS(critical_mass(t, Symmetry::Symmetric, -1), DomainError);
}

TEST_CASE("counts are monotone in mass and charge") {
  for (auto sym : {Symmetry::Symmetric, Symmetry::Antisymmetric}) {
    auto t = sym == Symmetry::Symmetric ? sym_term() : anti_term();
    int prev = 0;
    for (double m = 1.0; m < 5000.0; m *= 1.7) {
      int c = count_bound_states({m, 1.0, sym, t, true});
      CHECK(c >= prev);
      prev = c;
    }
    prev = 0;
    for (double Z = 0.6; Z <= 1.0; Z += 0.05) {
      int c = count_bound_states({400.0, Z, sym, t, true});
      CHECK(c >= prev);
      prev = c;
    }
    CHECK_THROWS_AS(count_bound_states({400.0, 1.2, sym, t, true}), CountUncertainError);
  }
}

TEST_CASE("critical charge at large mass") {
  auto s = z_critical_large_m(sym_term());
  CHECK(s.Z == doctest::Approx(0.64686).epsilon(1e-3 / 0.64686));
  CHECK(s.R == doctest::Approx(0.89).epsilon(0.02 / 0.89));
  auto a = z_critical_large_m(anti_term());
  CHECK(a.Z == doctest::Approx(0.9976).epsilon(2e-3 / 0.9976));
  CHECK(a.R == doctest::Approx(5.7).epsilon(0.2 / 5.7));
  CHECK_THROWS_AS(z_critical_large_m([](double R) { return 1.0 / R; }), SearchError);
}

TEST_CASE("stability curves") {
  auto t = sym_term();
  std::vector<double> ms{10.0, 30.0, 100.0, 1000.0, 10000.0};
  auto c0 = stability_curve(t, Symmetry::Symmetric, 0, ms);
  REQUIRE(c0.samples.size() == ms.size());
  for (std::size_t i = 1; i < c0.samples.size(); ++i) CHECK(c0.samples[i].Z <= c0.samples[i - 1].Z);
  auto zc = z_critical_large_m(t).Z;
  CHECK(c0.samples.back().Z > zc);
  CHECK(c0.samples.back().Z == doctest::Approx(zc).epsilon(0.05));

  // any Z > 1 binds every level: below the critical mass the point is skipped,
  // just above it the threshold charge approaches 1
  const double mc = critical_mass(t, Symmetry::Symmetric, 1);
  std::vector<double> near{0.98 * mc, 1.001 * mc, 1.05 * mc, 8.0, 12.0};
  auto c1 = stability_curve(t, Symmetry::Symmetric, 1, near);
  CHECK(c1.failures.size() == 1);
  REQUIRE(c1.samples.size() == near.size() - 1);
  CHECK(c1.samples[0].Z <= 1.0);
  CHECK(c1.samples[0].Z > 0.99);
  CHECK(c1.samples[1].Z < 1.0);
  for (std::size_t i = 1; i < c1.samples.size(); ++i) CHECK(c1.samples[i].Z <= c1.samples[i - 1].Z);
}

TEST_CASE("quasiclassical estimates") {
  double Js = quasiclassical_J(sym_term());
  CHECK(std::pow(std::numbers::pi / Js, 2) == doctest::Approx(2.89).epsilon(1e-2 / 2.89));
  double Ja = quasiclassical_J(anti_term());
  CHECK(std::pow(std::numbers::pi / Ja, 2) == doctest::Approx(129.845).epsilon(0.01));
  CHECK(mcrit_approx(3, Symmetry::Symmetric) == doctest::Approx(36.22).epsilon(1e-14));
  CHECK(mcrit_approx(1, Symmetry::Antisymmetric) == doctest::Approx(328.2).epsilon(1e-14));
  CHECK(mcrit_quasiclassical(5, 1.84785) == doctest::Approx(86.7).epsilon(2e-3));
  CHECK_THROWS(quasiclassical_J([](double) { return 1.0; }));
}

TEST_CASE("interpolated term") {
  std::vector<TermPoint> pts;
  for (int i = 1; i <= 40; ++i) {
    double R = 0.1 * i;
    pts.push_back({R, 0.0, std::sin(R)});
  }
  auto f = interpolated_term(TermCurve(Symmetry::Symmetric, DimensionParams(2.0), pts, TermSource::Variational));
  CHECK(std::abs(f(1.234) - std::sin(1.234)) < 1e-4);
  CHECK_THROWS_AS(f(0.05), DomainError);
}

TEST_CASE("interpolated term on a mixed-spacing grid") {
  auto g = [](double R) { return 1.0 / R - 2.0 + 2.0 / (1.0 + R); };
  std::vector<TermPoint> pts;
  for (int i = 1; i < 100; ++i) pts.push_back({0.02 * i, 0.0, g(0.02 * i)});
  for (int i = 20; i <= 300; ++i) pts.push_back({0.1 * i, 0.0, g(0.1 * i)});
  auto f = interpolated_term(TermCurve(Symmetry::Symmetric, DimensionParams(2.0), pts, TermSource::Variational));
  double worst = 0.0;
  for (double R = 0.3; R < 30.0; R += 0.0137) worst = std::max(worst, std::abs(f(R) - g(R)));
  CHECK(worst < 1e-4);
}

}
