#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "trion/core.hpp"
#include "trion/rational.hpp"
#include "trion/vibrational.hpp"

namespace trion {

inline constexpr std::string_view kVersion = "0.3.0";

struct CsvMeta {
  std::string command;
  std::string config_hash;
};

// %.{digits}g
std::string format_number(double v, int digits = 12);
// FNV-1a 64-bit, hex
std::string config_hash(std::string_view canonical_config);

void write_term_csv(std::ostream& os, const TermCurve& curve, const CsvMeta& meta);
// Skips '#' lines, expects the R,U,V header.
TermCurve read_term_csv(std::istream& is, Symmetry symmetry, const DimensionParams& dim,
                        TermSource source = TermSource::Variational);

void write_spectrum_csv(std::ostream& os, const SpectrumResult& s, const CsvMeta& meta);
void write_stability_csv(std::ostream& os, const StabilityCurve& c, const CsvMeta& meta);

// {variant, n, a[], b[], b_exp} with 17 significant digits
std::string rational_to_json(const RationalApprox& approx);
RationalApprox rational_from_json(std::string_view text);

}  // namespace trion
