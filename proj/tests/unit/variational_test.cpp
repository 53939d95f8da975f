#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <trion/errors.hpp>
#include <trion/variational.hpp>

#include "oracle.hpp"

using namespace trion;

namespace {

double full_norm(double d) { return 2.0 * std::pow(std::numbers::pi, 0.5 * d); }

oracle::Pair random_pair(std::mt19937_64& rng, double d, int s) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto expo = [&] { return std::pow(10.0, -1.0 + 2.0 * u(rng)); };
  auto fn = [&] {
    BasisFunction f{expo(), expo(), 0.0};
    if (u(rng) < 0.5) f.offset = 0.8 * u(rng) / std::sqrt(f.b);
    return f;
  };
  return {fn(), fn(), 0.2 + 3.8 * u(rng), d, s};
}

Symmetry sym_of(int s) { return s > 0 ? Symmetry::Symmetric : Symmetry::Antisymmetric; }

}  // namespace

TEST_SUITE("variational") {

TEST_CASE("closed-form elements at the united point") {
  DimensionParams d2(2.0);
  BasisFunction f{1.0, 1.0};
  CHECK(overlap_element(f, f, 0.0, d2, Symmetry::Symmetric) == doctest::Approx(1.0).epsilon(1e-15));
  // f = 2 e^{-r^2}: (1/2) int |grad f|^2 = 2 pi, over the norm 2 pi
  CHECK(kinetic_element(f, f, 0.0, d2, Symmetry::Symmetric) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(oracle::kinetic({f, f, 0.0, 2.0, 1}) / full_norm(2.0) == doctest::Approx(1.0).epsilon(1e-10));
  // antisymmetric overlap approaches the symmetric one far apart
  BasisFunction g{0.7, 2.0};
  CHECK(overlap_element(g, f, 40.0, d2, Symmetry::Antisymmetric) ==
        doctest::Approx(overlap_element(g, f, 40.0, d2, Symmetry::Symmetric)).epsilon(1e-15));
}

TEST_CASE("united-point attraction is twice the one-centre value") {
  // int e^{-2 a r^2}/r over R^d = Omega_d Gamma(sigma) / (2 (2a)^sigma)
  for (double d : {2.0, 2.5, 3.0, 4.0})
    for (double a : {0.3, 1.0, 7.0}) {
      DimensionParams dim(d);
      const double sig = dim.sigma();
      double omega = 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
      double one = 4.0 * omega * std::tgamma(sig) / (2.0 * std::pow(2.0 * a, sig));
      BasisFunction f{a, a};
      CHECK(potential_integral(f, f, 0.0, dim, Symmetry::Symmetric) * full_norm(d) ==
            doctest::Approx(2.0 * one).epsilon(1e-10));
    }
}

TEST_CASE("elements against direct quadrature") {
  std::mt19937_64 rng(20240611);
  for (double d : {2.0, 3.0})
    for (int draw = 0; draw < 50; ++draw) {
      int s = draw % 2 ? -1 : 1;
      auto p = random_pair(rng, d, s);
      DimensionParams dim(d);
      auto sym = sym_of(s);
      CAPTURE(d);
      CAPTURE(draw);
      const double n = full_norm(d);
      double S = overlap_element(p.f, p.g, p.R, dim, sym) * n;
      double T = kinetic_element(p.f, p.g, p.R, dim, sym) * n;
      double V = potential_integral(p.f, p.g, p.R, dim, sym) * n;
      double M = r2_element(p.f, p.g, p.R, dim, sym) * n;
      CHECK(S == doctest::Approx(oracle::overlap(p)).epsilon(1e-8));
      CHECK(T == doctest::Approx(oracle::kinetic(p)).epsilon(1e-8));
      CHECK(V == doctest::Approx(oracle::attraction(p)).epsilon(1e-8));
      CHECK(M == doctest::Approx(oracle::r2(p)).epsilon(1e-8));
    }
}

TEST_CASE("element symmetry and mirror invariance") {
  std::mt19937_64 rng(7);
  for (double d : {2.0, 3.0, 5.5})
    for (int draw = 0; draw < 20; ++draw) {
      int s = draw % 2 ? -1 : 1;
      auto p = random_pair(rng, d, s);
      DimensionParams dim(d);
      auto sym = sym_of(s);
      CHECK(overlap_element(p.f, p.g, p.R, dim, sym) ==
            doctest::Approx(overlap_element(p.g, p.f, p.R, dim, sym)).epsilon(1e-14));
      CHECK(kinetic_element(p.f, p.g, p.R, dim, sym) ==
            doctest::Approx(kinetic_element(p.g, p.f, p.R, dim, sym)).epsilon(1e-14));
      CHECK(potential_integral(p.f, p.g, p.R, dim, sym) ==
            doctest::Approx(potential_integral(p.g, p.f, p.R, dim, sym)).epsilon(1e-12));
      BasisFunction f{p.f.a, p.f.b}, g{p.g.a, p.g.b};
      CHECK(potential_integral(f, g, p.R, dim, sym) ==
            doctest::Approx(potential_integral(f, g, -p.R, dim, sym)).epsilon(1e-12));
      CHECK(overlap_element(f, g, p.R, dim, sym) ==
            doctest::Approx(overlap_element(f, g, -p.R, dim, sym)).epsilon(1e-14));
    }
}

TEST_CASE("basis construction") {
  DimensionParams d2(2.0);
  auto one = build_basis(d2, Symmetry::Symmetric, 1.0, BasisConfig::tensor(1, 1, {1, 1}, {1, 1}));
  REQUIRE(one.size() == 1);
  CHECK(one.functions()[0] == BasisFunction{1.0, 1.0, 0.0});

  auto grid = build_basis(d2, Symmetry::Symmetric, 1.0,
                          BasisConfig::tensor(6, 6, {0.05, 50.0}, {0.05, 50.0}));
  REQUIRE(grid.size() == 36);
  const double q = std::pow(1000.0, 0.2);
  auto g = geometric_grid({0.05, 50.0}, 6);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] / g[i - 1] == doctest::Approx(q).epsilon(1e-13));
  CHECK_THROWS_AS(build_basis(d2, Symmetry::Symmetric, 1.0, BasisConfig::tensor(0, 6, {1, 2}, {1, 2})),
                  ConfigError);
  CHECK_THROWS_AS(BasisSet({{1, 1}, {1, 1}}, Symmetry::Symmetric, 1.0, d2), DomainError);
  CHECK_THROWS_AS(build_basis(d2, Symmetry::Symmetric, 1.0, BasisConfig::tensor(2, 2, {2, 1}, {1, 2})),
                  ConfigError);

  auto a = build_basis(d2, Symmetry::Symmetric, 0.7, BasisConfig::standard());
  auto b = build_basis(d2, Symmetry::Symmetric, 0.7, BasisConfig::standard());
  CHECK(a.functions() == b.functions());
}

TEST_CASE("generalized eigenproblem") {
  MatrixPair one{Eigen::MatrixXd::Constant(1, 1, -3.0), Eigen::MatrixXd::Constant(1, 1, 2.0)};
  CHECK(solve_lowest(one).E0 == doctest::Approx(-1.5).epsilon(1e-15));
  MatrixPair zero{Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2)};
  CHECK_THROWS_AS(solve_lowest(zero), SingularBasisError);

  DimensionParams d2(2.0);
  auto cfg = BasisConfig::tensor(3, 3, {0.2, 20.0}, {0.2, 20.0});
  auto base = build_basis(d2, Symmetry::Symmetric, 1.0, cfg);
  auto m = assemble(base);
  auto ref = solve_lowest(m);
  // repeat function 4: S becomes exactly singular
  const Eigen::Index K = m.H.rows();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(K));
  for (Eigen::Index i = 0; i < K; ++i) idx[static_cast<std::size_t>(i)] = i;
  idx.push_back(4);
  MatrixPair m2{m.H(idx, idx), m.S(idx, idx)};
  auto dup = solve_lowest(m2);
  CHECK(dup.E0 == doctest::Approx(ref.E0).epsilon(1e-10));
  CHECK(dup.pruned_modes >= 1);
  CHECK(ref.residual <= 1e-8);
}

TEST_CASE("assembled matrices are symmetric") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.5);
  std::vector<BasisFunction> fs;
  while (fs.size() < 36) fs.push_back({std::pow(10.0, u(rng)), std::pow(10.0, u(rng))});
  for (auto sym : {Symmetry::Symmetric, Symmetry::Antisymmetric}) {
    auto m = assemble(BasisSet(fs, sym, 1.3, DimensionParams(2.0)));
    CHECK((m.H - m.H.transpose()).norm() <= 1e-12 * m.H.norm());
    CHECK((m.S - m.S.transpose()).norm() <= 1e-12 * m.S.norm());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.S);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10 * m.S.norm());
  }
}

TEST_CASE("nested bases lower the energy") {
  DimensionParams d2(2.0);
  for (auto sym : {Symmetry::Symmetric, Symmetry::Antisymmetric}) {
    auto full = build_basis(d2, sym, 1.0, BasisConfig::standard()).functions();
    double prev = INFINITY;
    for (std::size_t k = 4; k <= full.size(); k += 4) {
      std::vector<BasisFunction> sub(full.begin(), full.begin() + static_cast<long>(k));
      auto r = solve_lowest(assemble(BasisSet(sub, sym, 1.0, d2)));
      CHECK(r.E0 <= prev + 1e-12);
      prev = r.E0;
    }
  }
}

TEST_CASE("united-atom limit and tabulated points") {
  DimensionParams d2(2.0), d3(3.0);
  CHECK(compute_term(0.0, d2, Symmetry::Symmetric).U == doctest::Approx(-8.0).epsilon(1e-3 / 8.0));
  CHECK(compute_term(0.0, d2, Symmetry::Antisymmetric).U ==
        doctest::Approx(-8.0 / 9.0).epsilon(1e-3 * 9.0 / 8.0));
  CHECK(compute_term(1.99719, d3, Symmetry::Symmetric).V == doctest::Approx(-0.102635).epsilon(1e-4 / 0.102635));
  CHECK(compute_term(5.59, d2, Symmetry::Antisymmetric).V == doctest::Approx(-4.235e-4).epsilon(0.1));
}

TEST_CASE("symmetric term lies below the antisymmetric one") {
  DimensionParams d2(2.0);
  for (double R : {0.05, 0.3, 1.0, 2.5, 4.0, 6.5}) {
    CAPTURE(R);
    CHECK(compute_term(R, d2, Symmetry::Symmetric).U <= compute_term(R, d2, Symmetry::Antisymmetric).U);
  }
}

TEST_CASE("large-R remainder is of order R^-3") {
  DimensionParams d2(2.0);
  for (double R : {8.0, 11.0, 15.0}) {
    double U = compute_term(R, d2, Symmetry::Symmetric).U;
    CHECK(std::abs(U + 2.0 + 1.0 / R) * R * R * R <= 3.0 / 32.0 + 0.05);
  }
}

TEST_CASE("light-particle distance far apart") {
  // the particle sits on either centre with equal weight:
  // <r^2> -> <r^2>_atom + R^2 / 2
  DimensionParams d2(2.0);
  const double atom = oracle::hydrogen_ground_r2(2.0);
  CHECK(atom == doctest::Approx(3.0 / 8.0).epsilon(1e-10));
  for (auto sym : {Symmetry::Symmetric, Symmetry::Antisymmetric}) {
    double R = 12.0;
    double r31 = mean_square_r31(d2, sym, BasisConfig::standard(), R);
    CHECK(r31 * r31 == doctest::Approx(atom + 0.5 * R * R).epsilon(1e-3));
  }
  double Rm = 0.51357;
  CHECK(mean_square_r31(d2, Symmetry::Symmetric, BasisConfig::standard(), Rm) > Rm);
}

TEST_CASE("scan reports every node") {
  DimensionParams d2(2.0);
  std::vector<double> grid{0.2, 0.3, 0.4};
  auto sc = scan_term(grid, d2, Symmetry::Symmetric);
  REQUIRE(sc.points.size() == 3);
  CHECK(sc.failures.empty());
  auto c = sc.curve();
  auto z = zero_crossings(c);
  REQUIRE(z.size() == 1);
  CHECK(z[0] > 0.2);
  CHECK(z[0] < 0.3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(sc.points[i].U == compute_term(grid[i], d2, Symmetry::Symmetric).U);
}

}
