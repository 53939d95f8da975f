#pragma once

#include <string_view>

#include "trion/core.hpp"

namespace trion {

// Ground e^{-r/sigma}; RadialExcited (1 - r/(sigma(sigma+1))) e^{-r/(sigma+1)};
// PState z e^{-r/(sigma+1)}.
enum class HydrogenState { Ground, RadialExcited, PState };

std::string_view to_string(HydrogenState s);
HydrogenState parse_state(std::string_view text);

// <3z^2 - r^2>
double quadrupole(HydrogenState state, const DimensionParams& dim);
// <r^4 P_4(cos theta)>
double octupole(HydrogenState state, const DimensionParams& dim);
// <r^{2n} P_{2n}(cos theta)> in the ground state
double even_multipole_ground(int n, const DimensionParams& dim);
// <z^2>, by quadrature
double dipole_squared(HydrogenState state, const DimensionParams& dim);

// <r^k P_k(cos theta)> by radial x angular quadrature with the measure
// r^{d-1} sin^{d-2}(theta).
double moment_oracle(int k, HydrogenState state, const DimensionParams& dim);
// <H> = <|grad psi|^2>/2 - <1/r>, by the same quadrature.
double energy_oracle(HydrogenState state, const DimensionParams& dim);
// Exact eigenvalue of the state.
double state_energy(HydrogenState state, const DimensionParams& dim);

}  // namespace trion
