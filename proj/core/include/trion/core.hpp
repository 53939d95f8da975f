#pragma once

#include <string_view>
#include <vector>

namespace trion {

class DimensionParams {
 public:
  explicit DimensionParams(double d);
  double d() const { return d_; }
  double sigma() const { return sigma_; }
  friend bool operator==(const DimensionParams&, const DimensionParams&) = default;

 private:
  double d_;
  double sigma_;
};

enum class Symmetry { Symmetric, Antisymmetric };

constexpr int sign(Symmetry s) { return s == Symmetry::Symmetric ? 1 : -1; }
std::string_view to_string(Symmetry s);
// accepts s/a, symmetric/antisymmetric
Symmetry parse_symmetry(std::string_view text);

struct TermPoint {
  double R;
  double U;
  double V;
};

enum class TermSource { Variational, Asymptotic, Approximant };
std::string_view to_string(TermSource s);

class TermCurve {
 public:
  TermCurve(Symmetry symmetry, DimensionParams dim, std::vector<TermPoint> points,
            TermSource source);

  Symmetry symmetry() const { return symmetry_; }
  const DimensionParams& dim() const { return dim_; }
  const std::vector<TermPoint>& points() const { return points_; }
  TermSource source() const { return source_; }
  std::size_t size() const { return points_.size(); }

 private:
  Symmetry symmetry_;
  DimensionParams dim_;
  std::vector<TermPoint> points_;
  TermSource source_;
};

// U(inf) = -1/(2 sigma^2)
double one_center_ground_energy(const DimensionParams& dim);
// V = U - U(inf) + 1/R
double shift_term(double U, double R, const DimensionParams& dim);
double unshift_term(double V, double R, const DimensionParams& dim);

// Zero crossings of V by linear interpolation between samples.
std::vector<double> zero_crossings(const TermCurve& curve);

}  // namespace trion
