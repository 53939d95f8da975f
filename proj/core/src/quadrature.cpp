#include "trion/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "trion/errors.hpp"

namespace trion {

namespace bq = boost::math::quadrature;

QuadratureResult integrate_panels(const std::function<double(double)>& f,
                                  std::span<const double> breaks, double rel_tol,
                                  double abs_tol) {
  double sum = 0.0, err = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double a = breaks[i], b = breaks[i + 1];
    if (!(b > a)) continue;
    double e = 0.0, l = 0.0;
    sum += bq::gauss_kronrod<double, 15>::integrate(f, a, b, 10, rel_tol, &e, &l);
    err += e;
    l1 += l;
  }
  // relative to the L1 norm so that cancelling integrands are judged fairly
  if (!std::isfinite(sum) || err > std::max(abs_tol, rel_tol * l1))
    throw NumericError("panel quadrature did not converge (error " + std::to_string(err) + ")",
                       err);
  return {sum, err};
}

QuadratureResult integrate_half_line(const std::function<double(double)>& f, double a,
                                     double rel_tol) {
  bq::exp_sinh<double> integrator;
  double err = 0.0, l1 = 0.0;
  double v = integrator.integrate([&](double t) { return f(a + t); }, rel_tol, &err, &l1);
  if (!std::isfinite(v) || err > rel_tol * std::max(l1, 1e-300) * 10.0)
    throw NumericError("half-line quadrature did not converge", err);
  return {v, err};
}

}  // namespace trion
