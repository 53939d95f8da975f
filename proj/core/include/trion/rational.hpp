#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trion/core.hpp"

namespace trion {

// V(R) = [sum_i b_i R^i + b_exp 32 R^{n+1} e^{-2R-1}/pi] / [R sum_k a_k R^k]
// The exponential numerator term is only present for the antisymmetric variant.
struct RationalApprox {
  Symmetry variant = Symmetry::Symmetric;
  int n = 9;
  std::vector<double> a;  // a_0..a_n
  std::vector<double> b;  // b_0..b_{n-2}
  std::optional<double> b_exp;
};

// Numerator coefficients not fixed by the constraints.
std::vector<int> free_b_indices(int n, Symmetry variant);

// b from a (and the free b values, in free_b_indices order). Short range:
// b0 = a0, b1 = a1 + c a0, b2 = a2 + c a1, b3 = 1 with c = -6 (symmetric) or
// 10/9 (antisymmetric). Long range: the -3/32, -21/256, -135/2048, -159/1024
// tail fixes b_{n-2}..b_{n-5} (symmetric) or b_{n-2}, b_{n-3} (antisymmetric).
std::vector<double> apply_constraints(std::span<const double> a, Symmetry variant,
                                      std::span<const double> free_b = {});
// Largest violation of the constraint relations, relative to max(1, |b_i|).
double constraint_violation(const RationalApprox& approx);

RationalApprox make_approx(Symmetry variant, std::vector<double> a,
                           std::span<const double> free_b = {},
                           std::optional<double> b_exp = std::nullopt);

double evaluate(const RationalApprox& approx, double R);
double denominator(const RationalApprox& approx, double R);  // sum a_k R^k
// First sign change of the denominator on a log grid over [lo, hi].
std::optional<double> find_pole(const RationalApprox& approx, double lo = 1e-3, double hi = 1e3,
                                int samples = 10000);

// Coefficients of the published d = 2 approximants.
RationalApprox published_approximant(Symmetry variant);

struct FitWindow {
  double lo = 0.1;
  double hi = 6.5;
};

struct FitOptions {
  int n = 9;
  std::uint64_t seed = 0;
  int starts = 16;
  FitWindow window{};
  int max_evaluations = 4000;
  std::optional<RationalApprox> initial;  // extra start, tried first
};

struct FitReport {
  double chi2 = 0.0;
  FitWindow window{};
  int n_points = 0;
  bool converged = false;
  int best_start = -1;
};

struct FitResult {
  RationalApprox approx;
  FitReport report;
};

double chi2(const RationalApprox& approx, const TermCurve& curve,
            std::optional<FitWindow> window = std::nullopt);
FitResult fit(const TermCurve& curve, Symmetry variant, const FitOptions& options = {});

}  // namespace trion
