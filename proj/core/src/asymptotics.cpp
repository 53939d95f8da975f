#include "trion/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "trion/errors.hpp"
#include "trion/multipoles.hpp"

namespace trion {

namespace {

void require_positive(double R) {
  if (!(R > 0.0)) throw DomainError("asymptotic series need R > 0");
}

}  // namespace

std::array<double, 7> large_R_coefficients(const DimensionParams& dim) {
  const double s = dim.sigma(), s2 = s * s, s4 = s2 * s2, s6 = s4 * s2;
  return {-1.0 / (2.0 * s2),
          -1.0,
          0.0,
          -0.5 * s2 * (1.0 - s2),
          -0.125 * s4 * (1.0 + s) * (5.0 + 4.0 * s),
          -0.375 * s4 * (1.0 - s2) * (4.0 - s2),
          -0.25 * s6 * (1.0 + s) * (28.0 + 5.0 * s - 14.0 * s2 - 4.0 * s2 * s)};
}

AsymptoticEval large_R_term(double R, const DimensionParams& dim) {
  require_positive(R);
  auto c = large_R_coefficients(dim);
  double v = 0.0, x = 1.0;
  for (int k = 0; k <= 6; ++k, x /= R) v += c[k] * x;
  // no 1/R^7 term is available; the last included one stands in
  return {v, 6, std::abs(c[6]) / std::pow(R, 6)};
}

double vs_large_R_2d_exponential(double R) {
  return -32.0 / (std::numbers::pi * std::numbers::e) * std::exp(-2.0 * R);
}

AsymptoticEval vs_large_R_2d(double R) {
  require_positive(R);
  const double r3 = R * R * R;
  double last = -159.0 / 1024.0 / (r3 * r3);
  double v = -3.0 / 32.0 / r3 - 21.0 / 256.0 / (r3 * R) - 135.0 / 2048.0 / (r3 * R * R) + last +
             vs_large_R_2d_exponential(R);
  return {v, 6, std::abs(last)};
}

AsymptoticEval splitting(double R, const DimensionParams& dim) {
  require_positive(R);
  const double s = dim.sigma();
  double lead = 16.0 / (s * s * s * std::tgamma(s)) * std::pow(R / (2.0 * s), s) *
                std::exp(-R / s - s);
  double corr = lead * s / (2.0 * R);
  return {lead + corr, 1, std::abs(corr)};
}

AsymptoticEval stark_series(double R, const DimensionParams& dim) {
  require_positive(R);
  const double s = dim.sigma(), s2 = s * s, s4 = s2 * s2;
  const double r4 = R * R * R * R;
  double c4 = -0.125 * s4 * (1.0 + s) * (5.0 + 4.0 * s);
  double c8 = -s4 * s4 * s2 * (1.0 + s) * (192.0 * s2 * s + 933.0 * s2 + 1550.0 * s + 880.0);
  double t8 = c8 / (r4 * r4);
  return {-0.5 * s2 + c4 / r4 + t8, 8, std::abs(t8)};
}

double short_R_symmetric_2d(double R) {
  require_positive(R);
  return -8.0 + 64.0 * R * R * std::log(0.5 * std::exp(kEulerGamma) * R);
}

double short_R_antisymmetric_2d(double R) { return -8.0 / 9.0 - 80.0 / 9.0 * R * R; }

double short_R_excited_symmetric_2d(double R) {
  require_positive(R);
  return -8.0 / 9.0 + 64.0 / 27.0 * R * R * std::log(1.5 * std::exp(kEulerGamma + 1.0) * R);
}

VdwComparison vdw_leading_2d() {
  DimensionParams d2(2.0);
  double q = quadrupole(HydrogenState::Ground, d2);
  double z2 = dipole_squared(HydrogenState::Ground, d2);
  return {0.75 * q * q + z2 * q, 123.0 / 1024.0, q, z2};
}

}  // namespace trion
