#include "trion/rational.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "trion/errors.hpp"
#include "trion/parallel.hpp"

namespace trion {

namespace {

constexpr double kTail[4] = {-3.0 / 32.0, -21.0 / 256.0, -135.0 / 2048.0, -159.0 / 1024.0};

int n_trailing(Symmetry v) { return v == Symmetry::Symmetric ? 4 : 2; }

double short_range_shift(Symmetry v) { return v == Symmetry::Symmetric ? -6.0 : 10.0 / 9.0; }

double exp_term(int n, double R) {
  return 32.0 * std::pow(R, n + 1) * std::exp(-2.0 * R - 1.0) / std::numbers::pi;
}

double horner(std::span<const double> c, double x) {
  double s = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) s = s * x + c[i];
  return s;
}

}  // namespace

std::vector<int> free_b_indices(int n, Symmetry v) {
  std::vector<int> idx;
  for (int i = 4; i <= n - 2 - n_trailing(v); ++i) idx.push_back(i);
  return idx;
}

std::vector<double> apply_constraints(std::span<const double> a, Symmetry v,
                                      std::span<const double> free_b) {
  const int n = static_cast<int>(a.size()) - 1;
  const int nt = n_trailing(v);
  // b_0..b_3 and b_{n-2}..b_{n-1-nt} must not overlap
  if (n - 1 - nt < 4)
    throw ConstraintError("denominator degree " + std::to_string(n) +
                          " is too low for the constraint set");
  auto fidx = free_b_indices(n, v);
  if (!free_b.empty() && free_b.size() != fidx.size())
    throw ConstraintError("expected " + std::to_string(fidx.size()) + " free b coefficients");
  const double c = short_range_shift(v);
  std::vector<double> b(n - 1, 0.0);
  b[0] = a[0];
  b[1] = a[1] + c * a[0];
  b[2] = a[2] + c * a[1];
  b[3] = 1.0;
  for (int j = 0; j < nt; ++j) {
    // b_{n-2-j} = sum_{k=0..j} tail_k a_{n-j+k}
    double s = 0.0;
    for (int k = 0; k <= j; ++k) s += kTail[k] * a[n - j + k];
    b[n - 2 - j] = s;
  }
  for (std::size_t i = 0; i < free_b.size(); ++i) b[fidx[i]] = free_b[i];
  return b;
}

double constraint_violation(const RationalApprox& ap) {
  if (static_cast<int>(ap.a.size()) != ap.n + 1 || static_cast<int>(ap.b.size()) != ap.n - 1)
    return std::numeric_limits<double>::infinity();
  std::vector<double> fb;
  for (int i : free_b_indices(ap.n, ap.variant)) fb.push_back(ap.b[i]);
  auto ref = apply_constraints(ap.a, ap.variant, fb);
  double worst = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i)
    worst = std::max(worst, std::abs(ref[i] - ap.b[i]) / std::max(1.0, std::abs(ref[i])));
  return worst;
}

RationalApprox make_approx(Symmetry v, std::vector<double> a, std::span<const double> free_b,
                           std::optional<double> b_exp) {
  RationalApprox ap;
  ap.variant = v;
  ap.n = static_cast<int>(a.size()) - 1;
  ap.b = apply_constraints(a, v, free_b);
  ap.a = std::move(a);
  if (v == Symmetry::Antisymmetric) ap.b_exp = b_exp.value_or(0.0);
  return ap;
}

double denominator(const RationalApprox& ap, double R) { return horner(ap.a, R); }

double evaluate(const RationalApprox& ap, double R) {
  if (!(R > 0.0)) throw DomainError("approximant needs R > 0");
  if (R <= 1.0) {
    double num = horner(ap.b, R);
    if (ap.b_exp && *ap.b_exp != 0.0) num += *ap.b_exp * exp_term(ap.n, R);
    double den = R * horner(ap.a, R);
    if (den == 0.0 || !std::isfinite(den)) throw PoleError("approximant denominator vanishes", R);
    return num / den;
  }
  // scaled by the leading powers so that large R cannot overflow
  const double x = 1.0 / R;
  const int nb = static_cast<int>(ap.b.size()) - 1, na = static_cast<int>(ap.a.size()) - 1;
  std::vector<double> rb(ap.b.rbegin(), ap.b.rend()), ra(ap.a.rbegin(), ap.a.rend());
  double num = horner(rb, x);
  if (ap.b_exp && *ap.b_exp != 0.0)
    num += *ap.b_exp * 32.0 / std::numbers::pi *
           std::exp((ap.n + 1 - nb) * std::log(R) - 2.0 * R - 1.0);
  double den = horner(ra, x);
  if (den == 0.0 || !std::isfinite(den)) throw PoleError("approximant denominator vanishes", R);
  return num / den * std::pow(R, nb - na - 1);
}

std::optional<double> find_pole(const RationalApprox& ap, double lo, double hi, int samples) {
  double q = std::log(hi / lo) / (samples - 1);
  double prev = denominator(ap, lo);
  if (!(prev > 0.0)) return lo;
  for (int i = 1; i < samples; ++i) {
    double R = lo * std::exp(q * i);
    double d = denominator(ap, R);
    if (!(d > 0.0)) return R;
    prev = d;
  }
  return std::nullopt;
}

RationalApprox published_approximant(Symmetry v) {
  if (v == Symmetry::Symmetric)
    return make_approx(v, {0.13241, 1.84394, 4.12047, 1.30497, 1.29747, 0.03477, -0.00581,
                           0.19956, -0.06119, 0.01156});
  const double free_b[2] = {-2.1696, 0.4898};
  return make_approx(v,
                     {1.5067, 0.9674, 1.3044, 0.073, 2.5425, 0.8491, -0.3083, -3.4974, 3.0725,
                      0.072605},
                     free_b, 1.8518);
}

double chi2(const RationalApprox& ap, const TermCurve& curve, std::optional<FitWindow> w) {
  double s = 0.0;
  for (const auto& p : curve.points()) {
    if (w && (p.R < w->lo || p.R > w->hi)) continue;
    if (!std::isfinite(p.V) || !(p.R > 0.0)) continue;
    double r = evaluate(ap, p.R) - p.V;
    s += r * r;
  }
  return s;
}

namespace {

// p = [a_0..a_n, free b..., b_exp (antisymmetric)]. N is affine in p, D linear.
struct Model {
  Symmetry variant;
  int n;
  std::vector<int> fidx;
  Eigen::MatrixXd db_da;  // (n-1) x (n+1)
  Eigen::VectorXd b0;     // b for a = 0, free = 0

  Model(Symmetry v, int n_) : variant(v), n(n_), fidx(free_b_indices(n_, v)) {
    std::vector<double> z(n + 1, 0.0);
    auto base = apply_constraints(z, v);
    b0 = Eigen::Map<Eigen::VectorXd>(base.data(), n - 1);
    db_da.resize(n - 1, n + 1);
    for (int k = 0; k <= n; ++k) {
      z.assign(n + 1, 0.0);
      z[k] = 1.0;
      auto bk = apply_constraints(z, v);
      for (int i = 0; i < n - 1; ++i) db_da(i, k) = bk[i] - b0(i);
    }
  }
  bool has_exp() const { return variant == Symmetry::Antisymmetric; }
  int size() const { return n + 1 + static_cast<int>(fidx.size()) + (has_exp() ? 1 : 0); }

  RationalApprox approx(const Eigen::VectorXd& p) const {
    std::vector<double> a(p.data(), p.data() + n + 1);
    std::vector<double> fb(p.data() + n + 1, p.data() + n + 1 + fidx.size());
    std::optional<double> be;
    if (has_exp()) be = p(size() - 1);
    return make_approx(variant, std::move(a), fb, be);
  }

  Eigen::VectorXd params(const RationalApprox& ap) const {
    Eigen::VectorXd p(size());
    for (int k = 0; k <= n; ++k) p(k) = ap.a[k];
    for (std::size_t i = 0; i < fidx.size(); ++i) p(n + 1 + i) = ap.b[fidx[i]];
    if (has_exp()) p(size() - 1) = ap.b_exp.value_or(0.0);
    return p;
  }

  // dN/dp_j and dD/dp_j at R, plus the constant part of N
  void partials(double R, Eigen::Ref<Eigen::VectorXd> dN, Eigen::Ref<Eigen::VectorXd> dD,
                double& N0) const {
    Eigen::VectorXd pw(n + 2);
    pw(0) = 1.0;
    for (int i = 1; i < n + 2; ++i) pw(i) = pw(i - 1) * R;
    dN.setZero();
    dD.setZero();
    for (int k = 0; k <= n; ++k) {
      dN(k) = db_da.col(k).dot(pw.head(n - 1));
      dD(k) = pw(k);
    }
    for (std::size_t i = 0; i < fidx.size(); ++i) dN(n + 1 + i) = pw(fidx[i]);
    if (has_exp()) dN(size() - 1) = exp_term(n, R);
    N0 = b0.dot(pw.head(n - 1));
  }
};

struct Residuals : Eigen::DenseFunctor<double> {
  const Model& model;
  const std::vector<double>& R;
  const std::vector<double>& V;

  Residuals(const Model& m, const std::vector<double>& r, const std::vector<double>& v)
      : Eigen::DenseFunctor<double>(m.size(), static_cast<int>(r.size())), model(m), R(r), V(v) {}

  int operator()(const InputType& p, ValueType& f) const {
    Eigen::VectorXd dN(model.size()), dD(model.size());
    for (std::size_t i = 0; i < R.size(); ++i) {
      double N0;
      model.partials(R[i], dN, dD, N0);
      double den = R[i] * dD.dot(p);
      f(i) = (N0 + dN.dot(p)) / den - V[i];
      if (!std::isfinite(f(i))) f(i) = 1e10;
    }
    return 0;
  }

  int df(const InputType& p, JacobianType& J) const {
    Eigen::VectorXd dN(model.size()), dD(model.size());
    for (std::size_t i = 0; i < R.size(); ++i) {
      double N0;
      model.partials(R[i], dN, dD, N0);
      double den = R[i] * dD.dot(p);
      double v = (N0 + dN.dot(p)) / den;
      J.row(i) = ((dN - v * R[i] * dD) / den).transpose();
      if (!J.row(i).allFinite()) J.row(i).setZero();
    }
    return 0;
  }
};

// Sanathanan-Koerner iteration on the linearised residual V R D - N.
Eigen::VectorXd linearised_start(const Model& m, const std::vector<double>& R,
                                 const std::vector<double>& V) {
  const int np = m.size(), nr = static_cast<int>(R.size());
  Eigen::VectorXd p = Eigen::VectorXd::Zero(np);
  Eigen::VectorXd w = Eigen::VectorXd::Ones(nr);
  Eigen::VectorXd dN(np), dD(np);
  for (int it = 0; it < 12; ++it) {
    Eigen::MatrixXd A(nr, np);
    Eigen::VectorXd rhs(nr);
    for (int i = 0; i < nr; ++i) {
      double N0;
      m.partials(R[i], dN, dD, N0);
      A.row(i) = w(i) * (V[i] * R[i] * dD - dN).transpose();
      rhs(i) = w(i) * N0;
    }
    Eigen::VectorXd scale = A.colwise().norm().transpose();
    for (int j = 0; j < np; ++j)
      if (scale(j) > 0) A.col(j) /= scale(j);
      else scale(j) = 1.0;
    Eigen::VectorXd q = A.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
    p = q.cwiseQuotient(scale);
    bool ok = true;
    for (int i = 0; i < nr; ++i) {
      double N0;
      m.partials(R[i], dN, dD, N0);
      double den = R[i] * dD.dot(p);
      if (!(std::abs(den) > 0.0) || !std::isfinite(den)) ok = false;
      else w(i) = 1.0 / std::abs(den);
    }
    if (!ok) break;
    w /= w.maxCoeff();
  }
  return p;
}

}  // namespace

FitResult fit(const TermCurve& curve, Symmetry variant, const FitOptions& opt) {
  if (opt.n < 7) throw ConfigError("fit needs denominator degree n >= 7");
  if (opt.starts < 1) throw ConfigError("fit needs at least one start");
  std::vector<double> R, V;
  for (const auto& p : curve.points())
    if (p.R >= opt.window.lo && p.R <= opt.window.hi && std::isfinite(p.V) && p.R > 0.0) {
      R.push_back(p.R);
      V.push_back(p.V);
    }
  Model model(variant, opt.n);
  if (static_cast<int>(R.size()) < model.size())
    throw ConfigError("fit window holds " + std::to_string(R.size()) + " points, need at least " +
                      std::to_string(model.size()));

  // start 0: linearised solve, then the optional user start, then random a
  std::vector<Eigen::VectorXd> starts;
  Eigen::VectorXd lin = linearised_start(model, R, V);
  starts.push_back(lin);
  if (opt.initial) {
    if (opt.initial->variant != variant || opt.initial->n != opt.n)
      throw ConfigError("initial approximant does not match the fit variant or degree");
    starts.push_back(model.params(*opt.initial));
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> u(-2.0, 1.0);
  while (static_cast<int>(starts.size()) < opt.starts) {
    Eigen::VectorXd p = lin;
    for (int k = 0; k <= opt.n; ++k) p(k) = std::pow(10.0, u(rng));
    starts.push_back(p);
  }

  struct Outcome {
    Eigen::VectorXd p;
    double chi2 = std::numeric_limits<double>::infinity();
    bool ok = false;
  };
  auto outcomes = parallel_map(starts.size(), [&](std::size_t s) {
    Outcome o;
    Residuals fn(model, R, V);
    Eigen::VectorXd p = starts[s];
    Eigen::LevenbergMarquardt<Residuals> lm(fn);
    lm.setMaxfev(opt.max_evaluations);
    lm.setXtol(1e-15);
    lm.setFtol(1e-18);
    lm.setGtol(0.0);
    lm.minimize(p);
    Eigen::VectorXd f(R.size());
    fn(p, f);
    o.p = p;
    o.chi2 = f.squaredNorm();
    o.ok = std::isfinite(o.chi2);
    if (o.ok) {
      auto ap = model.approx(p);
      o.ok = !find_pole(ap).has_value();
    }
    return o;
  });

  int best = -1;
  double best_any = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < outcomes.size(); ++s) {
    best_any = std::min(best_any, outcomes[s].chi2);
    if (outcomes[s].ok && (best < 0 || outcomes[s].chi2 < outcomes[best].chi2))
      best = static_cast<int>(s);
  }
  if (best < 0) throw FitError("no start produced a pole-free approximant", best_any);

  FitResult r;
  r.approx = model.approx(outcomes[best].p);
  r.report.chi2 = outcomes[best].chi2;
  r.report.window = opt.window;
  r.report.n_points = static_cast<int>(R.size());
  r.report.converged = true;
  r.report.best_start = best;
  return r;
}

}  // namespace trion
