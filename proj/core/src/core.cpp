#include "trion/core.hpp"

#include <cmath>
#include <string>

#include "trion/errors.hpp"

namespace trion {

DimensionParams::DimensionParams(double d) : d_(d), sigma_(0.5 * (d - 1.0)) {
  if (!std::isfinite(d) || !(d > 1.0))
    throw DomainError("dimension must satisfy d > 1, got " + std::to_string(d));
}

std::string_view to_string(Symmetry s) {
  return s == Symmetry::Symmetric ? "symmetric" : "antisymmetric";
}

Symmetry parse_symmetry(std::string_view t) {
  if (t == "s" || t == "symmetric" || t == "+1" || t == "1") return Symmetry::Symmetric;
  if (t == "a" || t == "antisymmetric" || t == "-1") return Symmetry::Antisymmetric;
  throw ConfigError("unknown symmetry '" + std::string(t) + "' (expected s or a)");
}

std::string_view to_string(TermSource s) {
  switch (s) {
    case TermSource::Variational: return "variational";
    case TermSource::Asymptotic: return "asymptotic";
    case TermSource::Approximant: return "approximant";
  }
  return "?";
}

TermCurve::TermCurve(Symmetry symmetry, DimensionParams dim, std::vector<TermPoint> points,
                     TermSource source)
    : symmetry_(symmetry), dim_(dim), points_(std::move(points)), source_(source) {
  if (points_.empty()) throw DomainError("term curve is empty");
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i].R > points_[i - 1].R))
      throw DomainError("term curve R values must be strictly increasing");
}

double one_center_ground_energy(const DimensionParams& dim) {
  double s = dim.sigma();
  return -1.0 / (2.0 * s * s);
}

double shift_term(double U, double R, const DimensionParams& dim) {
  if (!(R > 0.0)) throw DomainError("shift_term needs R > 0");
  return U - one_center_ground_energy(dim) + 1.0 / R;
}

double unshift_term(double V, double R, const DimensionParams& dim) {
  if (!(R > 0.0)) throw DomainError("unshift_term needs R > 0");
  return V + one_center_ground_energy(dim) - 1.0 / R;
}

std::vector<double> zero_crossings(const TermCurve& curve) {
  std::vector<double> out;
  const auto& p = curve.points();
  for (std::size_t i = 1; i < p.size(); ++i) {
    double v0 = p[i - 1].V, v1 = p[i].V;
    if (!std::isfinite(v0) || !std::isfinite(v1)) continue;
    if (v0 == 0.0) out.push_back(p[i - 1].R);
    else if ((v0 < 0.0) != (v1 < 0.0) && v1 != 0.0)
      out.push_back(p[i - 1].R + (p[i].R - p[i - 1].R) * v0 / (v0 - v1));
  }
  if (p.back().V == 0.0) out.push_back(p.back().R);
  return out;
}

}  // namespace trion
