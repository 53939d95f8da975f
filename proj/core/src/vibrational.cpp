#include "trion/vibrational.hpp"

#include <algorithm>
#include <array>
#include <boost/math/interpolators/makima.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "trion/errors.hpp"
#include "trion/parallel.hpp"

namespace trion {

namespace odeint = boost::numeric::odeint;

TermFunction term_function(const RationalApprox& approx) {
  return [approx](double R) { return evaluate(approx, R); };
}

// Interpolates R*V, which stays bounded at short range; global rational
// interpolants misbehave on the mixed-spacing scan grids.
TermFunction interpolated_term(const TermCurve& curve) {
  std::vector<double> x, y;
  for (const auto& p : curve.points())
    if (p.R > 0.0 && std::isfinite(p.V)) {
      x.push_back(p.R);
      y.push_back(p.R * p.V);
    }
  if (x.size() < 4) throw DomainError("interpolation needs at least four finite points");
  const double lo = x.front(), hi = x.back();
  using Makima = boost::math::interpolators::makima<std::vector<double>>;
  auto spline = std::make_shared<Makima>(std::move(x), std::move(y));
  return [spline, lo, hi](double R) {
    if (R < lo || R > hi) throw DomainError("R outside the sampled term range");
    return (*spline)(R) / R;
  };
}

double effective_potential(const VibrationalProblem& p, double R) {
  if (!(R > 0.0)) throw DomainError("effective potential needs R > 0");
  double v = (1.0 / p.Z - 1.0) / R + p.term(R);
  if (p.include_centripetal) v -= 0.25 / (p.m + 0.5) / (R * R);
  return v;
}

namespace {

void check_problem(const VibrationalProblem& p) {
  if (!(p.m > 0.0) || !std::isfinite(p.m)) throw DomainError("mass ratio must be positive");
  if (!(p.Z > 0.0) || !std::isfinite(p.Z)) throw DomainError("charge must be positive");
  if (!p.term) throw DomainError("vibrational problem has no term");
}

// chi(t), t = ln R, with chi'' = W chi and
// W = (m+1/2) R^2 (V_eff - epsilon) + 1/4, the 2D radial equation at zero
// angular momentum after u = sqrt(R) chi.
struct Radial {
  const VibrationalProblem& p;
  double eps;
  double W(double t) const {
    double R = std::exp(t);
    return (p.m + 0.5) * R * R * (effective_potential(p, R) - eps) + 0.25;
  }
};

struct Shot {
  int nodes = 0;
  double y = 1.0, dy = 0.0;
  double W = 0.0;
  double R = 0.0;
  bool settled = false;  // forbidden region reached with |chi| growing
};

// One more zero beyond the current point for chi = A e^{lt} + B e^{-lt}
// (l = sqrt W), or the linear continuation when W = 0.
int tail_zero(const Shot& s) {
  double l = std::sqrt(std::max(s.W, 0.0));
  return s.y * (s.dy + l * s.y) < 0.0 ? 1 : 0;
}

// Outermost ln R where W <= 0 on a log grid up to R_cap.
double outer_turning_point(const Radial& sys, double t0, double t_cap) {
  const int n = 4000;
  double turn = t0;
  for (int i = 0; i <= n; ++i) {
    double t = t0 + (t_cap - t0) * i / n;
    if (sys.W(t) <= 0.0) turn = t0 + (t_cap - t0) * std::min(i + 1, n) / n;
  }
  return turn;
}

// Integrates outward, stopping at each checkpoint to hand the state to
// visit(); visit returns false to stop.
template <class Visit>
Shot shoot(const Radial& sys, const SolverSettings& st, std::span<const double> checkpoints,
           Visit&& visit) {
  const double t0 = std::log(st.R_inner), t_cap = std::log(st.R_cap);
  const double t_turn = outer_turning_point(sys, t0, t_cap);
  const double W0 = sys.p.include_centripetal ? 0.0 : 0.25;
  using State = std::array<double, 2>;
  State x{1.0, std::sqrt(W0)};
  auto rhs = [&](const State& s, State& ds, double t) {
    ds[0] = s[1];
    ds[1] = sys.W(t) * s[0];
  };
  auto stepper = odeint::make_controlled(st.abs_tol, st.rel_tol, odeint::runge_kutta_dopri5<State>());
  double t = t0, dt = 1e-3;
  Shot shot;
  std::size_t next_cp = 0;
  auto fill = [&] {
    shot.y = x[0];
    shot.dy = x[1];
    shot.W = sys.W(t);
    shot.R = std::exp(t);
  };
  while (true) {
    double t_stop = next_cp < checkpoints.size() ? std::log(checkpoints[next_cp]) : t_cap;
    if (t >= t_stop - 1e-12) {
      fill();
      if (next_cp >= checkpoints.size()) return shot;
      if (!visit(shot)) return shot;
      ++next_cp;
      continue;
    }
    dt = std::min({dt, t_stop - t, 0.25});
    double y_prev = x[0];
    int fails = 0;
    while (stepper.try_step(rhs, x, t, dt) == odeint::fail) {
      if (++fails > 500) throw NumericError("radial integration step size underflow", dt);
    }
    if ((x[0] > 0.0) != (y_prev > 0.0) && x[0] != 0.0) ++shot.nodes;
    double mag = std::abs(x[0]) + std::abs(x[1]);
    if (mag > 1e150) {
      x[0] *= 1e-150;
      x[1] *= 1e-150;
    }
    if (t > t_turn && x[0] * x[1] > 0.0) {
      // W > 0 from here on and |chi| increases: no further zeros
      fill();
      shot.settled = true;
      return shot;
    }
  }
}

}  // namespace

int count_bound_states(const VibrationalProblem& p, const SolverSettings& st) {
  check_problem(p);
  // the terms decay faster than 1/R, so (1/Z - 1)/R < 0 binds without limit
  if (p.Z > 1.0)
    throw CountUncertainError("Z > 1 leaves an attractive Coulomb tail: the count is unbounded", 0,
                              std::numeric_limits<int>::max());
  Radial sys{p, 0.0};
  std::vector<double> cps;
  for (double r : st.R_outer)
    if (r < st.R_cap) cps.push_back(r);
  for (double r = cps.empty() ? 1e3 : cps.back() * 100.0; r < st.R_cap; r *= 100.0)
    cps.push_back(r);
  std::vector<int> counts;
  const std::size_t need = std::max<std::size_t>(2, std::min<std::size_t>(st.R_outer.size(), 3));
  bool stable = false;
  Shot last = shoot(sys, st, cps, [&](const Shot& s) {
    counts.push_back(s.nodes + tail_zero(s));
    std::size_t k = counts.size();
    if (k >= need && counts[k - 1] == counts[k - 2]) {
      stable = true;
      return false;
    }
    return true;
  });
  if (last.settled) return last.nodes;
  if (stable) return counts.back();
  counts.push_back(last.nodes + tail_zero(last));
  std::size_t k = counts.size();
  if (k >= 2 && counts[k - 1] == counts[k - 2]) return counts.back();
  auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  throw CountUncertainError("bound-state count did not settle under R_max escalation", *lo, *hi);
}

int count_below(const VibrationalProblem& p, double eps, const SolverSettings& st) {
  check_problem(p);
  if (!(eps < 0.0)) throw DomainError("count_below needs epsilon < 0");
  Radial sys{p, eps};
  Shot s = shoot(sys, st, {}, [](const Shot&) { return true; });
  return s.settled ? s.nodes : s.nodes + tail_zero(s);
}

SpectrumResult solve_spectrum(const VibrationalProblem& p, double eps_floor,
                              const SolverSettings& st) {
  check_problem(p);
  if (!(eps_floor < 0.0)) throw DomainError("spectrum floor must be negative");
  const int total = count_bound_states(p, st);
  const int below_floor = count_below(p, eps_floor, st);
  SpectrumResult r;
  r.R_max_used = st.R_cap;
  // shallowest resolvable level magnitude
  const double tiny = 1e-18;
  for (int k = below_floor; k < total; ++k) {
    // level k lies where count_below first reaches k+1; bisect in log|eps|
    double lo = std::abs(eps_floor), hi = tiny;  // |eps|: count(lo) <= k, count(hi) >= k+1
    if (count_below(p, -hi, st) < k + 1) {
      r.levels.push_back(-hi);
      continue;
    }
    while (lo / hi - 1.0 > 1e-11) {
      double mid = std::sqrt(lo * hi);
      if (count_below(p, -mid, st) >= k + 1) hi = mid;
      else lo = mid;
    }
    r.levels.push_back(-std::sqrt(lo * hi));
  }
  std::sort(r.levels.begin(), r.levels.end());
  r.n_found = static_cast<int>(r.levels.size());
  return r;
}

double critical_mass(const TermFunction& term, Symmetry sym, int n, double Z, bool centripetal,
                     double rel_width, const SolverSettings& st) {
  if (n < 0) throw DomainError("state index must be non-negative");
  auto bound = [&](double m) {
    VibrationalProblem p{m, Z, sym, term, centripetal};
    return count_bound_states(p, st) >= n + 1;
  };
  if (bound(1e-9)) return 0.0;
  double hi = 1.0;
  while (!bound(hi)) {
    hi *= 2.0;
    if (hi > 1e8) throw SearchError("no critical mass below 1e8");
  }
  double lo = hi == 1.0 ? 1e-9 : hi / 2.0;
  while (hi / lo - 1.0 > rel_width) {
    double mid = std::sqrt(lo * hi);
    if (bound(mid)) hi = mid;
    else lo = mid;
  }
  return std::sqrt(lo * hi);
}

CriticalCharge z_critical_large_m(const TermFunction& term, double R_lo, double R_hi) {
  const int n = 2000;
  const double q = std::log(R_hi / R_lo) / n;
  auto g = [&](double t) {
    double R = std::exp(t);
    return R * term(R);
  };
  int best = 0;
  double gmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    double v = g(std::log(R_lo) + q * i);
    if (v < gmin) gmin = v, best = i;
  }
  if (!(gmin < 0.0)) throw SearchError("term is nowhere attractive enough: R V(R) >= 0");
  if (best == 0 || best == n) throw SearchError("minimum of R V(R) lies on the search boundary");
  auto [t, v] = boost::math::tools::brent_find_minima(
      g, std::log(R_lo) + q * (best - 1), std::log(R_lo) + q * (best + 1), 50);
  return {1.0 / (1.0 - v), std::exp(t)};
}

StabilityCurve stability_curve(const TermFunction& term, Symmetry sym, int n,
                               std::span<const double> m_grid, bool centripetal,
                               const SolverSettings& st) {
  for (std::size_t i = 1; i < m_grid.size(); ++i)
    if (!(m_grid[i] > m_grid[i - 1])) throw ConfigError("mass grid must be strictly ascending");
  struct Slot {
    bool ok = false;
    double Z = 0.0;
    std::string error;
  };
  auto slots = parallel_map(m_grid.size(), [&](std::size_t i) {
    Slot s;
    const double m = m_grid[i];
    auto bound = [&](double Z) {
      VibrationalProblem p{m, Z, sym, term, centripetal};
      return count_bound_states(p, st) >= n + 1;
    };
    try {
      if (!bound(1.0)) {
        s.error = "m=" + std::to_string(m) + ": level " + std::to_string(n) +
                  " is unbound at Z=1; for Z>1 the Coulomb tail binds every level";
        return s;
      }
      double lo = 0.5, hi = 1.0;
      while (bound(lo)) {
        hi = lo;
        lo *= 0.5;
        if (lo < 1e-4) throw SearchError("no threshold charge above 1e-4");
      }
      while (hi - lo > 1e-7) {
        double mid = 0.5 * (lo + hi);
        if (bound(mid)) hi = mid;
        else lo = mid;
      }
      s.ok = true;
      s.Z = hi;
    } catch (const std::exception& e) {
      s.error = "m=" + std::to_string(m) + ": " + e.what();
    }
    return s;
  });
  StabilityCurve c{n, sym, {}, {}};
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].ok) c.samples.push_back({m_grid[i], slots[i].Z});
    else c.failures.push_back(slots[i].error);
  }
  return c;
}

double quasiclassical_J(const TermFunction& term, double R_lo, double R_hi) {
  const int n = 4000;
  const double q = std::log(R_hi / R_lo) / n;
  std::vector<double> R(n + 1), V(n + 1);
  for (int i = 0; i <= n; ++i) {
    R[i] = R_lo * std::exp(q * i);
    V[i] = term(R[i]);
  }
  auto root = [&](int i) {
    std::uintmax_t it = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(50);
    auto [a, b] = boost::math::tools::toms748_solve(term, R[i - 1], R[i], V[i - 1], V[i], tol, it);
    return 0.5 * (a + b);
  };
  // negative intervals [a, b]; b = inf when V stays negative past R_hi
  std::vector<std::pair<double, double>> spans;
  double start = V[0] < 0.0 ? R_lo : -1.0;
  for (int i = 1; i <= n; ++i) {
    if (V[i - 1] >= 0.0 && V[i] < 0.0) start = root(i);
    if (V[i - 1] < 0.0 && V[i] >= 0.0) {
      spans.push_back({start, root(i)});
      start = -1.0;
    }
  }
  if (start > 0.0) spans.push_back({start, std::numeric_limits<double>::infinity()});
  if (spans.empty()) throw SearchError("term has no negative region");

  auto f = [&](double R) { return std::sqrt(std::max(-term(R), 0.0)); };
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  double J = 0.0;
  for (auto [a, b] : spans) {
    double err = 0.0;
    if (std::isfinite(b)) {
      J += ts.integrate(f, a, b, 1e-10, &err);
    } else {
      J += ts.integrate(f, a, 2.0 * a, 1e-10, &err);
      double e2 = 0.0;
      J += es.integrate([&](double x) { return f(2.0 * a + x); }, 1e-10, &e2);
      err += e2;
    }
    if (err > 1e-8 * std::max(1.0, J)) throw NumericError("quasiclassical integral inaccurate", err);
  }
  return J;
}

double mcrit_approx(int n, Symmetry sym) {
  if (n < 0) throw DomainError("state index must be non-negative");
  if (sym == Symmetry::Symmetric) return 2.47 * (n + 1) * (n + 1) - 3.3;
  return 138.6 * n * (n + 1) + 51.0;
}

double mcrit_quasiclassical(int n, double J) {
  const double r = std::numbers::pi / J;
  return r * r * n * (n + 1);
}

}  // namespace trion
