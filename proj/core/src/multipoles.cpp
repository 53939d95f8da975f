#include "trion/multipoles.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "trion/errors.hpp"

namespace trion {

namespace bq = boost::math::quadrature;

std::string_view to_string(HydrogenState s) {
  switch (s) {
    case HydrogenState::Ground: return "ground";
    case HydrogenState::RadialExcited: return "excited";
    case HydrogenState::PState: return "p";
  }
  throw DomainError("unknown hydrogen state");
}

HydrogenState parse_state(std::string_view t) {
  if (t == "ground" || t == "g" || t == "1s") return HydrogenState::Ground;
  if (t == "excited" || t == "radial" || t == "2s") return HydrogenState::RadialExcited;
  if (t == "p" || t == "P" || t == "2p") return HydrogenState::PState;
  throw ConfigError("unknown state '" + std::string(t) + "' (ground, excited, p)");
}

double quadrupole(HydrogenState state, const DimensionParams& dim) {
  const double d = dim.d();
  switch (state) {
    case HydrogenState::Ground: return (3 - d) * (1 + d) * (d - 1) * (d - 1) / 16;
    case HydrogenState::RadialExcited: return (d + 1) * (d + 1) * (d + 11) * (3 - d) / 16;
    case HydrogenState::PState: return (d + 1) * (d + 1) * (d + 3) * (7 - d) / 16;
  }
  throw DomainError("unknown hydrogen state");
}

double octupole(HydrogenState state, const DimensionParams& dim) {
  const double d = dim.d();
  const double dp4 = std::pow(d + 1, 4);
  switch (state) {
    case HydrogenState::Ground:
      return 3 * std::pow(d - 1, 4) * (1 + d) * (9 - d * d) * (5 - d) / 2048;
    case HydrogenState::RadialExcited: return 3 * dp4 * (d + 29) * (9 - d * d) * (5 - d) / 128;
    case HydrogenState::PState: return 3 * dp4 * (d + 5) * (9 - d * d) * (21 - d) / 2048;
  }
  throw DomainError("unknown hydrogen state");
}

double even_multipole_ground(int n, const DimensionParams& dim) {
  if (n < 1) throw DomainError("even multipole order needs n >= 1");
  const double d = dim.d();
  double v = 1.0;
  for (int k = 1; k <= 2 * n - 1; k += 2) v *= k;  // (2n-1)!!
  v /= std::pow(2.0, 5 * n) * std::tgamma(n + 1.0);
  v *= std::pow(d - 1, 2 * n) * (d + 1);
  for (int k = 3; k <= 2 * n - 1; k += 2) v *= k * k - d * d;
  return v * (2 * n + 1 - d);
}

namespace {

double kappa(HydrogenState s, const DimensionParams& dim) {
  return s == HydrogenState::Ground ? 1.0 / dim.sigma() : 1.0 / (dim.sigma() + 1.0);
}

// radial factor f(r) = g(r) e^{-kr}; returns g and, on request, the
// derivative of f divided by e^{-kr}. The P state carries r cos(theta).
double shape(HydrogenState s, const DimensionParams& dim, double r, double* deriv = nullptr) {
  const double k = kappa(s, dim);
  switch (s) {
    case HydrogenState::Ground:
      if (deriv) *deriv = -k;
      return 1.0;
    case HydrogenState::RadialExcited: {
      const double c = 1.0 / (dim.sigma() * (dim.sigma() + 1.0));
      if (deriv) *deriv = -c - k * (1.0 - c * r);
      return 1.0 - c * r;
    }
    case HydrogenState::PState:
      if (deriv) *deriv = 1.0 - k * r;
      return r;
  }
  return 0.0;
}

// r^p e^{-2kr} without overflow at the far end of the quadrature
double measure(HydrogenState s, const DimensionParams& dim, double r, double p) {
  return std::exp(p * std::log(r) - 2.0 * kappa(s, dim) * r);
}

double density(HydrogenState s, const DimensionParams& dim, double r, double p) {
  double g = shape(s, dim, r);
  return measure(s, dim, r, p) * g * g;
}

double radial_integral(const std::function<double(double)>& f) {
  bq::exp_sinh<double> q;
  double err = 0.0, l1 = 0.0;
  double v = q.integrate(f, 1e-13, &err, &l1);
  if (!std::isfinite(v) || err > 1e-11 * l1) throw NumericError("radial quadrature failed", err);
  return v;
}

// int_0^pi sin^{d-2} t g(cos t) dt in extended precision: moments that vanish
// by symmetry multiply this by radial factors of order 10^7
long double angular_integral(const DimensionParams& dim,
                             const std::function<long double(long double)>& g) {
  bq::tanh_sinh<long double> q;
  long double err = 0.0L, l1 = 0.0L;
  const long double p = dim.d() - 2.0L, pi = std::numbers::pi_v<long double>;
  auto f = [&](long double t, long double tc) {
    // tc = pi - t near the right endpoint keeps sin accurate there
    long double s = t < 0.5L * pi ? std::sin(t) : std::sin(tc);
    return std::pow(s, p) * g(std::cos(t));
  };
  long double v = q.integrate(f, 0.0L, pi, 1e-16L, &err, &l1);
  if (!std::isfinite(v) || err > 1e-13L * l1) throw NumericError("angular quadrature failed", err);
  return v;
}

long double angular_weight(HydrogenState s, long double c) {
  return s == HydrogenState::PState ? c * c : 1.0L;
}

struct Norms {
  double radial;
  long double angular;
};

Norms norms(HydrogenState s, const DimensionParams& dim) {
  const double d = dim.d();
  double nr = radial_integral([&](double r) { return density(s, dim, r, d - 1); });
  long double na = angular_integral(dim, [&](long double c) { return angular_weight(s, c); });
  return {nr, na};
}

}  // namespace

double moment_oracle(int k, HydrogenState s, const DimensionParams& dim) {
  if (k < 1) throw DomainError("moment order needs k >= 1");
  const double d = dim.d();
  auto n = norms(s, dim);
  double rk = radial_integral([&](double r) { return density(s, dim, r, d - 1 + k); });
  long double ak = angular_integral(dim, [&](long double c) {
    return angular_weight(s, c) * boost::math::legendre_p(k, c);
  });
  return static_cast<double>((rk / n.radial) * (ak / n.angular));
}

double dipole_squared(HydrogenState s, const DimensionParams& dim) {
  const double d = dim.d();
  auto n = norms(s, dim);
  double r2 = radial_integral([&](double r) { return density(s, dim, r, d + 1); });
  long double c2 =
      angular_integral(dim, [&](long double c) { return angular_weight(s, c) * c * c; });
  return static_cast<double>((r2 / n.radial) * (c2 / n.angular));
}

double energy_oracle(HydrogenState s, const DimensionParams& dim) {
  const double d = dim.d();
  auto n = norms(s, dim);
  double grad_r = radial_integral([&](double r) {
    double gp = 0.0;
    shape(s, dim, r, &gp);
    return measure(s, dim, r, d - 1) * gp * gp;
  });
  double coul = radial_integral([&](double r) { return density(s, dim, r, d - 2); });
  double kin = 0.5 * grad_r / n.radial;
  if (s == HydrogenState::PState) {
    // psi = f(r) cos(theta) with f = r e^{-kr}: |grad psi|^2 adds f^2 sin^2/r^2
    double ang =
        static_cast<double>(angular_integral(dim, [](long double c) { return 1.0L - c * c; }));
    double tang = radial_integral([&](double r) { return density(s, dim, r, d - 3); });
    kin += 0.5 * (tang / n.radial) * (ang / static_cast<double>(n.angular));
  }
  return kin - coul / n.radial;
}

double state_energy(HydrogenState s, const DimensionParams& dim) {
  const double k = kappa(s, dim);
  return -0.5 * k * k;
}

}  // namespace trion
