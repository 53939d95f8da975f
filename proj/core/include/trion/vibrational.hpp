#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "trion/core.hpp"
#include "trion/rational.hpp"

namespace trion {

using TermFunction = std::function<double(double)>;

TermFunction term_function(const RationalApprox& approx);
// Barycentric rational interpolation of a sampled curve; throws outside its range.
TermFunction interpolated_term(const TermCurve& curve);

struct VibrationalProblem {
  double m;
  double Z = 1.0;
  Symmetry symmetry = Symmetry::Symmetric;
  TermFunction term;
  bool include_centripetal = true;
};

struct SpectrumResult {
  std::vector<double> levels;
  int n_found = 0;
  double R_max_used = 0.0;
};

struct StabilitySample {
  double m;
  double Z;
};

struct StabilityCurve {
  int n;
  Symmetry symmetry;
  std::vector<StabilitySample> samples;
  std::vector<std::string> failures;  // per-mass diagnostics for skipped points
};

struct SolverSettings {
  double R_inner = 1e-9;
  std::vector<double> R_outer{1e3, 1e5, 1e7};  // escalation ladder for the epsilon = 0 count
  double R_cap = 1e11;
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
};

// (1/Z - 1)/R + V(R) - [1/(4(m+1/2))]/R^2 (last term only with centripetal).
double effective_potential(const VibrationalProblem& p, double R);

// Nodes of the regular zero-energy solution on (0, R_outer) plus one when the
// asymptotic continuation still crosses zero.
int count_bound_states(const VibrationalProblem& p, const SolverSettings& s = {});
// Number of levels below epsilon < 0.
int count_below(const VibrationalProblem& p, double epsilon, const SolverSettings& s = {});

SpectrumResult solve_spectrum(const VibrationalProblem& p, double epsilon_floor,
                              const SolverSettings& s = {});

// Smallest m with at least n+1 levels; 0 when the level exists for every m.
double critical_mass(const TermFunction& term, Symmetry symmetry, int n, double Z = 1.0,
                     bool include_centripetal = true, double rel_width = 1e-4,
                     const SolverSettings& s = {});

struct CriticalCharge {
  double Z;
  double R;
};
// min over R of 1/(1 - R V(R))
CriticalCharge z_critical_large_m(const TermFunction& term, double R_lo = 1e-3,
                                  double R_hi = 1e3);

// Threshold charge per mass: level n exists for Z above the returned value.
StabilityCurve stability_curve(const TermFunction& term, Symmetry symmetry, int n,
                               std::span<const double> m_grid, bool include_centripetal = true,
                               const SolverSettings& s = {});

// int sqrt(-V) dR over V < 0
double quasiclassical_J(const TermFunction& term, double R_lo = 1e-3, double R_hi = 1e4);

// square laws: 2.47 (n+1)^2 - 3.3 (symmetric), 138.6 n(n+1) + 51 (antisymmetric)
double mcrit_approx(int n, Symmetry symmetry);
double mcrit_quasiclassical(int n, double J);

}  // namespace trion
