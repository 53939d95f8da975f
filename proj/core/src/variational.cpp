#include "trion/variational.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "trion/errors.hpp"
#include "trion/parallel.hpp"
#include "trion/quadrature.hpp"

namespace trion {

namespace {

// Gaussian product of one lobe of f_i with one lobe of f_j:
// w * K * exp(-b (z - P)^2), separation of the two lobe centres dz.
struct LobeProduct {
  double w;
  double K;
  double P;
  double dz;
};

std::array<LobeProduct, 4> lobe_products(const BasisFunction& fi, const BasisFunction& fj,
                                         double R, Symmetry sym) {
  const double s = sign(sym);
  const double ci[2] = {-fi.offset, -R + fi.offset};
  const double cj[2] = {-fj.offset, -R + fj.offset};
  const double w[2] = {1.0, s};
  const double b = fi.b + fj.b, mu = fi.b * fj.b / b;
  std::array<LobeProduct, 4> out{};
  int k = 0;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      double dz = ci[p] - cj[q];
      out[k++] = {w[p] * w[q], std::exp(-mu * dz * dz), (fi.b * ci[p] + fj.b * cj[q]) / b, dz};
    }
  return out;
}

double norm_factor(double a, double b, const DimensionParams& dim) {
  return 1.0 / (std::pow(a, dim.sigma()) * std::sqrt(b));
}

bool plain(const BasisFunction& fi, const BasisFunction& fj) {
  return fi.offset == 0.0 && fj.offset == 0.0;
}

// 1 + s e^{-x} without cancellation for s = -1
double one_plus_s_exp(double x, double s) { return s > 0 ? 1.0 + std::exp(-x) : -std::expm1(-x); }

}  // namespace

double overlap_element(const BasisFunction& fi, const BasisFunction& fj, double R,
                       const DimensionParams& dim, Symmetry sym) {
  const double a = fi.a + fj.a, b = fi.b + fj.b;
  if (plain(fi, fj)) {
    double mu = fi.b * fj.b / b;
    return one_plus_s_exp(mu * R * R, sign(sym)) * norm_factor(a, b, dim);
  }
  double sum = 0.0;
  for (const auto& t : lobe_products(fi, fj, R, sym)) sum += t.w * t.K;
  return 0.5 * sum * norm_factor(a, b, dim);
}

double kinetic_element(const BasisFunction& fi, const BasisFunction& fj, double R,
                       const DimensionParams& dim, Symmetry sym) {
  const double a = fi.a + fj.a, b = fi.b + fj.b;
  const double mu = fi.b * fj.b / b;
  const double tr = (dim.d() - 1.0) * fi.a * fj.a / a;
  const double nf = norm_factor(a, b, dim);
  if (plain(fi, fj)) {
    const double s = sign(sym), x = mu * R * R;
    double longi = s > 0 ? 1.0 + (1.0 - 2.0 * x) * std::exp(-x)
                         : -std::expm1(-x) + 2.0 * x * std::exp(-x);
    return nf * (tr * one_plus_s_exp(x, s) + mu * longi);
  }
  double sum = 0.0;
  for (const auto& t : lobe_products(fi, fj, R, sym))
    sum += t.w * t.K * (tr + mu * (1.0 - 2.0 * mu * t.dz * t.dz));
  return 0.5 * sum * nf;
}

double r2_element(const BasisFunction& fi, const BasisFunction& fj, double R,
                  const DimensionParams& dim, Symmetry sym) {
  const double a = fi.a + fj.a, b = fi.b + fj.b;
  double sum = 0.0;
  for (const auto& t : lobe_products(fi, fj, R, sym))
    sum += t.w * t.K * ((dim.d() - 1.0) / (2.0 * a) + t.P * t.P + 1.0 / (2.0 * b));
  return 0.5 * sum * norm_factor(a, b, dim);
}

double potential_integral(const BasisFunction& fi, const BasisFunction& fj, double R,
                          const DimensionParams& dim, Symmetry sym) {
  const double a = fi.a + fj.a, b = fi.b + fj.b;
  const double d = dim.d(), sig = dim.sigma();

  // Each lobe product is attracted by both nuclei (z = 0 and z = -R):
  // coefficient c_k = w K, Boys exponent beta_k = b Q^2 in u.
  std::array<double, 8> c{}, beta{};
  int n = 0;
  double scale = 0.0;
  for (const auto& t : lobe_products(fi, fj, R, sym)) {
    if (t.K == 0.0) continue;
    for (double C : {0.0, -R}) {
      double Q = t.P - C;
      c[n] = t.w * t.K;
      beta[n] = b * Q * Q;
      scale += std::abs(c[n]);
      ++n;
    }
  }
  if (n == 0) return 0.0;

  // 1/r = (2/sqrt(pi)) int exp(-t^2 r^2) dt and u^2 = t^2/(b + t^2) give
  // 2 int_0^1 (1-u^2)^{(d-3)/2} D(u)^{-sigma} e^{-beta u^2} du / sqrt(pi).
  // Gauss-Kronrod panels cover [0, u_last]; the end panel [u_last, 1], where
  // (1-u^2)^{(d-3)/2} is singular or non-analytic unless d is odd, goes to
  // tanh-sinh with 1-u carried separately.
  auto core = [&](double u2) {
    double D = a * (1.0 - u2) + b * u2;
    double e = 0.0;
    for (int k = 0; k < n; ++k) e += c[k] * std::exp(-beta[k] * u2);
    return std::pow(D, -sig) * e;
  };
  auto f_w = [&](double u, double w) {  // w = 1 - u
    return std::pow(w * (1.0 + u), 0.5 * (d - 3.0)) * core(u * u);
  };

  std::vector<double> bu{0.0, 0.5};
  auto add_u = [&](double u) {
    if (u > 0.0 && u < 1.0) bu.push_back(u);
  };
  for (int k = 0; k < n; ++k)
    if (beta[k] > 1.0)
      for (double m : {0.5, 2.0, 6.0}) add_u(m / std::sqrt(beta[k]));
  if (b > 4.0 * a) add_u(std::sqrt(a / (b - a)));
  if (a > 4.0 * b) add_u(std::sqrt(1.0 - b / a));
  // near-coincident breaks leave slivers whose error estimates are spurious
  std::sort(bu.begin(), bu.end());
  {
    std::vector<double> m{0.0};
    for (double x : bu)
      if (x - m.back() > 0.02 * x && 1.0 - x > 0.02) m.push_back(x);
    bu = std::move(m);
  }
  const double u0 = bu.back();

  const double abs_tol = 1e-12 * scale * std::pow(std::max(a, b), -sig);
  auto r1 = integrate_panels([&](double u) { return f_w(u, 1.0 - u); }, bu, 1e-10, 0.5 * abs_tol);
  const double h = 0.5 * (1.0 - u0);
  auto end_panel = [&](double z, double zc) {
    double w = z > 0.0 ? h * zc : h * (1.0 - z);
    return h * f_w(1.0 - w, w);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  double err = 0.0, l1 = 0.0;
  double end_value = ts.integrate(end_panel, 1e-11, &err, &l1);
  if (!std::isfinite(end_value) || err > std::max(0.5 * abs_tol, 1e-10 * l1))
    throw NumericError("end-point quadrature did not converge", err);
  QuadratureResult r2{end_value, err};
  return (r1.value + r2.value) / std::sqrt(std::numbers::pi);
}

MatrixPair assemble(const BasisSet& basis) {
  const auto& fs = basis.functions();
  const Eigen::Index K = static_cast<Eigen::Index>(fs.size());
  MatrixPair m{Eigen::MatrixXd(K, K), Eigen::MatrixXd(K, K)};
  for (Eigen::Index i = 0; i < K; ++i)
    for (Eigen::Index j = i; j < K; ++j) {
      const auto& fi = fs[i];
      const auto& fj = fs[j];
      double s = overlap_element(fi, fj, basis.R(), basis.dim(), basis.symmetry());
      double t = kinetic_element(fi, fj, basis.R(), basis.dim(), basis.symmetry());
      double v = potential_integral(fi, fj, basis.R(), basis.dim(), basis.symmetry());
      m.S(i, j) = m.S(j, i) = s;
      m.H(i, j) = m.H(j, i) = t - v;
    }
  return m;
}

EigenResult solve_lowest(const MatrixPair& pair, double prune) {
  const Eigen::Index K = pair.S.rows();
  if (K == 0 || pair.S.cols() != K || pair.H.rows() != K || pair.H.cols() != K)
    throw DomainError("solve_lowest needs square matrices of equal size");

  double dmax = pair.S.diagonal().maxCoeff();
  if (!(dmax > 0.0)) throw SingularBasisError("overlap matrix has no positive diagonal");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < K; ++i)
    if (pair.S(i, i) > 1e-14 * dmax) keep.push_back(i);
  const Eigen::Index k = static_cast<Eigen::Index>(keep.size());

  Eigen::VectorXd dinv(k);
  for (Eigen::Index i = 0; i < k; ++i) dinv(i) = 1.0 / std::sqrt(pair.S(keep[i], keep[i]));
  Eigen::MatrixXd Ss(k, k), Hs(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      Ss(i, j) = pair.S(keep[i], keep[j]) * dinv(i) * dinv(j);
      Hs(i, j) = pair.H(keep[i], keep[j]) * dinv(i) * dinv(j);
    }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Ss);
  if (es.info() != Eigen::Success) throw NumericError("overlap diagonalisation failed", 0.0);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double lmax = lam(k - 1);
  Eigen::Index first = 0;
  while (first < k && !(lam(first) > prune * lmax)) ++first;
  const Eigen::Index m = k - first;
  if (m == 0) throw SingularBasisError("all overlap modes pruned");

  Eigen::MatrixXd X = es.eigenvectors().rightCols(m);
  for (Eigen::Index j = 0; j < m; ++j) X.col(j) /= std::sqrt(lam(first + j));
  Eigen::MatrixXd Hp = X.transpose() * Hs * X;
  Hp = 0.5 * (Hp + Hp.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eh(Hp);
  if (eh.info() != Eigen::Success) throw NumericError("Hamiltonian diagonalisation failed", 0.0);

  EigenResult r;
  r.E0 = eh.eigenvalues()(0);
  Eigen::VectorXd cs = X * eh.eigenvectors().col(0);
  r.residual = (Hs * cs - r.E0 * Ss * cs).norm() / (Hs.norm() * cs.norm());
  r.coeffs = Eigen::VectorXd::Zero(K);
  for (Eigen::Index i = 0; i < k; ++i) r.coeffs(keep[i]) = cs(i) * dinv(i);
  r.pruned_modes = static_cast<int>(first);
  r.dropped_functions = static_cast<int>(K - k);
  r.condition = lmax / lam(first);
  return r;
}

namespace {

double lowest_energy(double R, const DimensionParams& dim, Symmetry sym, const BasisConfig& c) {
  auto basis = build_basis(dim, sym, R, c);
  return solve_lowest(assemble(basis), c.prune_threshold).E0;
}

}  // namespace

TermPoint compute_term(double R, const DimensionParams& dim, Symmetry sym,
                       const BasisConfig& config) {
  if (!(R >= 0.0) || !std::isfinite(R)) throw DomainError("compute_term needs finite R >= 0");
  double U;
  if (R == 0.0 && sym == Symmetry::Antisymmetric) {
    try {
      U = lowest_energy(0.0, dim, sym, config);
    } catch (const SingularBasisError&) {
      // plain two-lobe functions vanish identically at R = 0; extrapolate
      // the even small-R expansion from h and 2h
      const double h = 1e-3;
      U = (4.0 * lowest_energy(h, dim, sym, config) - lowest_energy(2 * h, dim, sym, config)) /
          3.0;
    }
  } else {
    U = lowest_energy(R, dim, sym, config);
  }
  double V = R > 0.0 ? shift_term(U, R, dim) : std::numeric_limits<double>::infinity();
  return {R, U, V};
}

TermCurve ScanResult::curve() const {
  return TermCurve(symmetry, dim, points, TermSource::Variational);
}

ScanResult scan_term(std::span<const double> grid, const DimensionParams& dim, Symmetry sym,
                     const BasisConfig& config) {
  if (grid.empty()) throw ConfigError("empty R grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || !std::isfinite(grid[i]))
      throw ConfigError("R grid must be finite and non-negative");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ConfigError("R grid must be strictly ascending");
  }
  struct Slot {
    TermPoint p{};
    std::string error;
  };
  auto slots = parallel_map(grid.size(), [&](std::size_t i) {
    Slot s;
    try {
      s.p = compute_term(grid[i], dim, sym, config);
    } catch (const std::exception& e) {
      s.error = e.what();
    }
    return s;
  });
  ScanResult out{{}, {}, sym, dim};
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].error.empty()) out.points.push_back(slots[i].p);
    else out.failures.push_back({grid[i], slots[i].error});
  }
  return out;
}

Minimum find_minimum(const DimensionParams& dim, Symmetry sym, const BasisConfig& config,
                     Bracket br, double r_tol) {
  if (!(br.lo > 0.0) || !(br.hi > br.lo)) throw ConfigError("invalid minimum bracket");
  auto V = [&](double R) { return compute_term(R, dim, sym, config).V; };
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = br.lo, hi = br.hi;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = V(x1), f2 = V(x2);
  const double flo = V(lo), fhi = V(hi);
  if (!(std::min(f1, f2) < std::min(flo, fhi)))
    throw BracketError("no interior minimum of V in [" + std::to_string(br.lo) + ", " +
                       std::to_string(br.hi) + "]");
  while (hi - lo > r_tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = V(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = V(x2);
    }
  }
  double R = 0.5 * (lo + hi);
  if (R - br.lo < r_tol || br.hi - R < r_tol)
    throw BracketError("minimum sits on the bracket boundary");
  return {R, V(R)};
}

double find_term_zero(const DimensionParams& dim, Symmetry sym, const BasisConfig& config,
                      Bracket br, double r_tol) {
  auto V = [&](double R) { return compute_term(R, dim, sym, config).V; };
  double flo = V(br.lo), fhi = V(br.hi);
  if ((flo < 0.0) == (fhi < 0.0)) throw BracketError("V does not change sign in bracket");
  std::uintmax_t iters = 100;
  auto tol = [r_tol](double a, double b) { return std::abs(b - a) <= r_tol; };
  auto [a, b] = boost::math::tools::toms748_solve(V, br.lo, br.hi, flo, fhi, tol, iters);
  return 0.5 * (a + b);
}

double mean_square_r31(const DimensionParams& dim, Symmetry sym, const BasisConfig& config,
                       double R) {
  auto basis = build_basis(dim, sym, R, config);
  auto pair = assemble(basis);
  auto res = solve_lowest(pair, config.prune_threshold);
  const auto& fs = basis.functions();
  const Eigen::Index K = static_cast<Eigen::Index>(fs.size());
  Eigen::MatrixXd M(K, K);
  for (Eigen::Index i = 0; i < K; ++i)
    for (Eigen::Index j = i; j < K; ++j)
      M(i, j) = M(j, i) = r2_element(fs[i], fs[j], R, dim, sym);
  const auto& c = res.coeffs;
  return std::sqrt(c.dot(M * c) / c.dot(pair.S * c));
}

}  // namespace trion
