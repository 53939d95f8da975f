#include <algorithm>
#include <cmath>

#include "trion/errors.hpp"
#include "trion/variational.hpp"

namespace trion {

namespace {

void check_range(ExponentRange r, const char* name) {
  if (!(r.lo > 0.0) || !std::isfinite(r.hi) || r.hi < r.lo)
    throw ConfigError(std::string("invalid exponent range ") + name);
}

bool in_window(double e, ExponentRange w) {
  return e >= w.lo * (1 - 1e-9) && e <= w.hi * (1 + 1e-9);
}

}  // namespace

BasisConfig BasisConfig::tensor(int kt, int kl, ExponentRange a, ExponentRange b) {
  BasisConfig c;
  c.k_transverse = kt;
  c.k_longitudinal = kl;
  c.a_range = a;
  c.b_range = b;
  c.k_isotropic = 0;
  c.floating_offsets.clear();
  return c;
}

std::vector<double> geometric_grid(ExponentRange r, int n) {
  check_range(r, "for geometric grid");
  if (n < 1) throw ConfigError("geometric grid needs at least one point");
  if (n == 1) return {std::sqrt(r.lo * r.hi)};
  std::vector<double> g(n);
  double q = std::log(r.hi / r.lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = r.lo * std::exp(q * i);
  g.back() = r.hi;
  return g;
}

BasisSet::BasisSet(std::vector<BasisFunction> functions, Symmetry symmetry, double R,
                   DimensionParams dim)
    : functions_(std::move(functions)), symmetry_(symmetry), R_(R), dim_(dim) {
  if (functions_.empty()) throw ConfigError("basis set is empty");
  if (!(R >= 0.0) || !std::isfinite(R)) throw DomainError("basis needs finite R >= 0");
  for (std::size_t i = 0; i < functions_.size(); ++i) {
    const auto& f = functions_[i];
    if (!(f.a > 0.0) || !(f.b > 0.0) || !std::isfinite(f.a) || !std::isfinite(f.b) ||
        !std::isfinite(f.offset))
      throw DomainError("basis exponents must be positive and finite");
    for (std::size_t j = 0; j < i; ++j)
      if (functions_[j] == f) throw DomainError("duplicate basis function");
  }
}

BasisSet build_basis(const DimensionParams& dim, Symmetry symmetry, double R,
                     const BasisConfig& c) {
  std::vector<BasisFunction> fs;
  auto add = [&](BasisFunction f) {
    if (std::find(fs.begin(), fs.end(), f) == fs.end()) fs.push_back(f);
  };
  if (c.k_transverse > 0 || c.k_longitudinal > 0) {
    if (c.k_transverse < 1 || c.k_longitudinal < 1)
      throw ConfigError("tensor grid needs both k_transverse and k_longitudinal >= 1");
    for (double a : geometric_grid(c.a_range, c.k_transverse))
      for (double b : geometric_grid(c.b_range, c.k_longitudinal)) add({a, b, 0.0});
  }
  if (c.k_isotropic > 0) {
    auto ladder = geometric_grid(c.isotropic_range, c.k_isotropic);
    check_range(c.anisotropic_window, "anisotropic_window");
    check_range(c.floating_window, "floating_window");
    for (double e : ladder) add({e, e, 0.0});
    for (std::size_t k = 0; k + 1 < ladder.size(); ++k)
      if (in_window(ladder[k], c.anisotropic_window)) {
        add({ladder[k], ladder[k + 1], 0.0});
        add({ladder[k + 1], ladder[k], 0.0});
      }
    for (double e : ladder)
      if (in_window(e, c.floating_window))
        for (double g : c.floating_offsets) {
          if (!(g > 0.0)) throw ConfigError("floating offsets must be positive");
          add({e, e, g / std::sqrt(e)});
        }
  }
  if (fs.empty()) throw ConfigError("basis configuration produces no functions");
  return BasisSet(std::move(fs), symmetry, R, dim);
}

}  // namespace trion
