#pragma once

#include <array>

#include "trion/core.hpp"

namespace trion {

inline constexpr double kEulerGamma = 0.57721566490153286061;

struct AsymptoticEval {
  double value;
  int truncation_order;
  double estimated_error;
};

// Coefficients c_0..c_6 of U_0(R) = sum c_k / R^k.
std::array<double, 7> large_R_coefficients(const DimensionParams& dim);
AsymptoticEval large_R_term(double R, const DimensionParams& dim);
// Shifted symmetric d = 2 term: four power terms and the exponential tail.
AsymptoticEval vs_large_R_2d(double R);
double vs_large_R_2d_exponential(double R);
// Exchange splitting U_a - U_s at large R.
AsymptoticEval splitting(double R, const DimensionParams& dim);
AsymptoticEval stark_series(double R, const DimensionParams& dim);

double short_R_symmetric_2d(double R);
double short_R_antisymmetric_2d(double R);
double short_R_excited_symmetric_2d(double R);

struct VdwComparison {
  double assembled;  // (3/4) Q2^2 + <z^2> Q2 from the moment formulas
  double printed;    // 123/1024
  double quadrupole;
  double dipole_squared;
};
VdwComparison vdw_leading_2d();

}  // namespace trion
