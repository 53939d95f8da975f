#include "trion/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "trion/errors.hpp"

namespace trion {

std::string format_number(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string config_hash(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

namespace {

void write_meta(std::ostream& os, const CsvMeta& m) {
  os << "# command=" << m.command << " version=" << kVersion << " config=" << m.config_hash
     << "\n";
}

}  // namespace

void write_term_csv(std::ostream& os, const TermCurve& curve, const CsvMeta& meta) {
  write_meta(os, meta);
  os << "R,U,V\n";
  for (const auto& p : curve.points())
    os << format_number(p.R) << ',' << format_number(p.U) << ',' << format_number(p.V) << '\n';
}

TermCurve read_term_csv(std::istream& is, Symmetry sym, const DimensionParams& dim,
                        TermSource source) {
  std::string line;
  bool header = false;
  std::vector<TermPoint> pts;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "R,U,V") throw ConfigError("term CSV header must be R,U,V");
      header = true;
      continue;
    }
    TermPoint p{};
    std::istringstream ss(line);
    char c1 = 0, c2 = 0;
    if (!(ss >> p.R >> c1 >> p.U >> c2) || c1 != ',' || c2 != ',')
      throw ConfigError("malformed term CSV line " + std::to_string(lineno));
    std::string rest;
    ss >> rest;
    // inf/nan are legal at R = 0
    p.V = std::strtod(rest.c_str(), nullptr);
    pts.push_back(p);
  }
  if (!header) throw ConfigError("term CSV has no header");
  return TermCurve(sym, dim, std::move(pts), source);
}

void write_spectrum_csv(std::ostream& os, const SpectrumResult& s, const CsvMeta& meta) {
  write_meta(os, meta);
  os << "n,epsilon\n";
  for (std::size_t i = 0; i < s.levels.size(); ++i)
    os << i << ',' << format_number(s.levels[i]) << '\n';
}

void write_stability_csv(std::ostream& os, const StabilityCurve& c, const CsvMeta& meta) {
  write_meta(os, meta);
  os << "m,Z\n";
  for (const auto& p : c.samples) os << format_number(p.m) << ',' << format_number(p.Z) << '\n';
}

std::string rational_to_json(const RationalApprox& ap) {
  auto list = [](const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_number(v[i], 17);
    return s + "]";
  };
  std::string s = "{\n";
  s += "  \"variant\": \"" + std::string(to_string(ap.variant)) + "\",\n";
  s += "  \"n\": " + std::to_string(ap.n) + ",\n";
  s += "  \"a\": " + list(ap.a) + ",\n";
  s += "  \"b\": " + list(ap.b) + ",\n";
  s += "  \"b_exp\": " + (ap.b_exp ? format_number(*ap.b_exp, 17) : std::string("null")) + "\n}\n";
  return s;
}

RationalApprox rational_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("approximant JSON: ") + e.what());
  }
  try {
    RationalApprox ap;
    ap.variant = parse_symmetry(j.at("variant").get<std::string>());
    ap.n = j.at("n").get<int>();
    ap.a = j.at("a").get<std::vector<double>>();
    ap.b = j.at("b").get<std::vector<double>>();
    if (j.contains("b_exp") && !j["b_exp"].is_null()) ap.b_exp = j["b_exp"].get<double>();
    if (static_cast<int>(ap.a.size()) != ap.n + 1 || static_cast<int>(ap.b.size()) != ap.n - 1)
      throw ConfigError("approximant JSON coefficient counts do not match n");
    return ap;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("approximant JSON: ") + e.what());
  }
}

}  // namespace trion
