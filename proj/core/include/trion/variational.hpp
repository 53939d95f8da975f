#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "trion/core.hpp"

namespace trion {

// e^{-a x^2} (e^{-b (z+offset)^2} + s e^{-b (z+R-offset)^2}), x the (d-1)
// transverse coordinates. Nuclei sit at z = 0 and z = -R; a positive offset
// pulls both lobes toward the bond midpoint.
struct BasisFunction {
  double a;
  double b;
  double offset = 0.0;
  friend bool operator==(const BasisFunction&, const BasisFunction&) = default;
};

struct ExponentRange {
  double lo;
  double hi;
};

struct BasisConfig {
  // a_i x b_j tensor grid of plain (offset 0) functions
  int k_transverse = 0;
  int k_longitudinal = 0;
  ExponentRange a_range{0.05, 50.0};
  ExponentRange b_range{0.05, 50.0};

  // even-tempered isotropic ladder (a = b)
  int k_isotropic = 30;
  ExponentRange isotropic_range{0.003, 3e7};
  // ladder neighbours (e_k, e_{k+1}) and (e_{k+1}, e_k) for e_k in this window
  ExponentRange anisotropic_window{0.01, 100.0};
  // isotropic ladder members in this window, displaced by gamma/sqrt(e)
  ExponentRange floating_window{0.01, 300.0};
  std::vector<double> floating_offsets{0.3, 0.8};

  double prune_threshold = 1e-10;

  static BasisConfig standard() { return {}; }
  static BasisConfig tensor(int k_transverse, int k_longitudinal, ExponentRange a,
                            ExponentRange b);
};

class BasisSet {
 public:
  BasisSet(std::vector<BasisFunction> functions, Symmetry symmetry, double R,
           DimensionParams dim);
  const std::vector<BasisFunction>& functions() const { return functions_; }
  std::size_t size() const { return functions_.size(); }
  Symmetry symmetry() const { return symmetry_; }
  double R() const { return R_; }
  const DimensionParams& dim() const { return dim_; }

 private:
  std::vector<BasisFunction> functions_;
  Symmetry symmetry_;
  double R_;
  DimensionParams dim_;
};

struct MatrixPair {
  Eigen::MatrixXd H;
  Eigen::MatrixXd S;
};

struct EigenResult {
  double E0;
  Eigen::VectorXd coeffs;
  int pruned_modes = 0;
  int dropped_functions = 0;  // zero-norm functions removed before the solve
  double condition = 0.0;     // kept max/min overlap eigenvalue after scaling
  double residual = 0.0;      // |(H - E0 S)c| / (|H| |c|) in the scaled basis
};

// Geometric progression of n values over [lo, hi].
std::vector<double> geometric_grid(ExponentRange r, int n);

BasisSet build_basis(const DimensionParams& dim, Symmetry symmetry, double R,
                     const BasisConfig& config);

// All elements share the omitted factor 2 pi^{d/2}. potential_integral is the
// attraction to both nuclei with positive sign, so H = T - I.
double overlap_element(const BasisFunction& fi, const BasisFunction& fj, double R,
                       const DimensionParams& dim, Symmetry symmetry);
double kinetic_element(const BasisFunction& fi, const BasisFunction& fj, double R,
                       const DimensionParams& dim, Symmetry symmetry);
double potential_integral(const BasisFunction& fi, const BasisFunction& fj, double R,
                          const DimensionParams& dim, Symmetry symmetry);
// <r^2> about the nucleus at z = 0, same normalisation as the overlap.
double r2_element(const BasisFunction& fi, const BasisFunction& fj, double R,
                  const DimensionParams& dim, Symmetry symmetry);

MatrixPair assemble(const BasisSet& basis);
EigenResult solve_lowest(const MatrixPair& pair, double prune_threshold = 1e-10);

TermPoint compute_term(double R, const DimensionParams& dim, Symmetry symmetry,
                       const BasisConfig& config = BasisConfig::standard());

struct PointFailure {
  double R;
  std::string message;
};

struct ScanResult {
  std::vector<TermPoint> points;
  std::vector<PointFailure> failures;
  Symmetry symmetry;
  DimensionParams dim;
  TermCurve curve() const;  // throws when every point failed
};

ScanResult scan_term(std::span<const double> R_grid, const DimensionParams& dim,
                     Symmetry symmetry, const BasisConfig& config = BasisConfig::standard());

struct Bracket {
  double lo;
  double hi;
};

struct Minimum {
  double R;
  double V;
};

Minimum find_minimum(const DimensionParams& dim, Symmetry symmetry, const BasisConfig& config,
                     Bracket bracket, double r_tol = 1e-4);
// Root of V(R) inside the bracket.
double find_term_zero(const DimensionParams& dim, Symmetry symmetry, const BasisConfig& config,
                      Bracket bracket, double r_tol = 1e-7);
// sqrt(<r^2>) between the light particle and one nucleus.
double mean_square_r31(const DimensionParams& dim, Symmetry symmetry, const BasisConfig& config,
                       double R);

}  // namespace trion
