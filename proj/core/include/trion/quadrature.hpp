#pragma once

#include <functional>
#include <span>

namespace trion {

struct QuadratureResult {
  double value;
  double error;
};

// Adaptive Gauss-Kronrod over consecutive panels [breaks[i], breaks[i+1]].
// Throws NumericError when the summed error estimate exceeds
// max(abs_tol, rel_tol * L1), L1 the integral of |f|.
QuadratureResult integrate_panels(const std::function<double(double)>& f,
                                  std::span<const double> breaks, double rel_tol = 1e-10,
                                  double abs_tol = 1e-12);

// [a, inf) via exp-sinh.
QuadratureResult integrate_half_line(const std::function<double(double)>& f, double a,
                                     double rel_tol = 1e-10);

}  // namespace trion
