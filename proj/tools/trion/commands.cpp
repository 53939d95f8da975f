#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <sstream>

#include <trion/asymptotics.hpp>
#include <trion/errors.hpp>
#include <trion/io.hpp>
#include <trion/multipoles.hpp>
#include <trion/rational.hpp>
#include <trion/variational.hpp>
#include <trion/vibrational.hpp>

#include "validation.hpp"

namespace trion::cli {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

// "-" is standard output
class Output {
 public:
  explicit Output(const std::string& path) {
    require(!path.empty(), "missing output path");
    if (path == "-") return;
    file_.open(path);
    require(file_.good(), "cannot open " + path + " for writing");
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RationalApprox load_approx(const std::string& path, Symmetry expected) {
  auto ap = rational_from_json(slurp(path));
  require(ap.variant == expected,
          path + " holds a " + std::string(to_string(ap.variant)) + " approximant");
  return ap;
}

RationalApprox approx_for(Symmetry s, const TermSourceFlags& f) {
  const std::string& path = s == Symmetry::Symmetric ? f.approx_s : f.approx_a;
  return path.empty() ? published_approximant(s) : load_approx(path, s);
}

json terms_json(const TermSourceFlags& f) {
  return {{"approx_s", f.approx_s.empty() ? "published" : config_hash(slurp(f.approx_s))},
          {"approx_a", f.approx_a.empty() ? "published" : config_hash(slurp(f.approx_a))}};
}

CsvMeta meta(const std::string& command, const json& config) {
  return {command, config_hash(config.dump())};
}

BasisConfig basis_config(const BasisFlags& b) {
  require(b.k_isotropic >= 1, "k-isotropic must be positive");
  require(b.iso_min > 0.0 && b.iso_max > b.iso_min, "isotropic exponent range must be ascending");
  require(b.prune > 0.0 && b.prune < 1.0, "prune threshold must lie in (0, 1)");
  BasisConfig c = BasisConfig::standard();
  c.k_isotropic = b.k_isotropic;
  c.isotropic_range = {b.iso_min, b.iso_max};
  if (b.no_floating) c.floating_offsets.clear();
  c.prune_threshold = b.prune;
  return c;
}

json basis_json(const BasisFlags& b) {
  return {{"k_isotropic", b.k_isotropic},
          {"iso_min", b.iso_min},
          {"iso_max", b.iso_max},
          {"floating", !b.no_floating},
          {"prune", b.prune}};
}

FitWindow parse_window(const std::string& w) {
  auto colon = w.find(':');
  require(colon != std::string::npos, "window must look like lo:hi");
  FitWindow f{};
  try {
    f.lo = std::stod(w.substr(0, colon));
    f.hi = std::stod(w.substr(colon + 1));
  } catch (const std::exception&) {
    throw ConfigError("window must look like lo:hi");
  }
  require(f.lo > 0.0 && f.hi > f.lo, "window needs 0 < lo < hi");
  return f;
}

struct StateLabel {
  Symmetry symmetry;
  int n;
  std::string text;
};

std::vector<StateLabel> parse_states(const std::string& list) {
  std::vector<StateLabel> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    require(item.size() >= 2 && (item[0] == 's' || item[0] == 'a'),
            "state labels look like s0 or a3, got '" + item + "'");
    int n = -1;
    try {
      std::size_t used = 0;
      n = std::stoi(item.substr(1), &used);
      require(used == item.size() - 1, "bad state label '" + item + "'");
    } catch (const std::invalid_argument&) {
      throw ConfigError("bad state label '" + item + "'");
    }
    require(n >= 0, "state index must be non-negative");
    out.push_back({item[0] == 's' ? Symmetry::Symmetric : Symmetry::Antisymmetric, n, item});
  }
  require(!out.empty(), "no states requested");
  return out;
}

}  // namespace

int run_term_scan(const ScanOptions& o) {
  DimensionParams dim(o.dim);
  Symmetry sym = parse_symmetry(o.symmetry);
  require(!o.output.empty(), "term scan needs an output path (-o)");
  require(o.rmin >= 0.0 && o.rmax >= o.rmin, "need 0 <= rmin <= rmax");
  require(o.step > 0.0, "step must be positive");
  auto cfg = basis_config(o.basis);
  const auto n = static_cast<std::size_t>(std::floor((o.rmax - o.rmin) / o.step + 1e-9)) + 1;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = o.rmin + o.step * static_cast<double>(i);

  json config = {{"dim", o.dim},   {"symmetry", std::string(to_string(sym))},
                 {"rmin", o.rmin}, {"rmax", o.rmax},
                 {"step", o.step}, {"basis", basis_json(o.basis)}};
  Output out(o.output);
  auto scan = scan_term(grid, dim, sym, cfg);
  for (const auto& f : scan.failures)
    std::cerr << "R=" << format_number(f.R) << ": " << f.message << "\n";
  if (scan.points.empty()) {
    std::cerr << "every point failed\n";
    return kComputeError;
  }
  write_term_csv(out.stream(), scan.curve(), meta("term scan", config));
  return scan.failures.empty() ? kOk : kPartial;
}

int run_fit(const FitCliOptions& o) {
  DimensionParams dim(o.dim);
  Symmetry sym = parse_symmetry(o.symmetry);
  require(!o.input.empty(), "fit needs an input term CSV (-i)");
  require(!o.output.empty(), "fit needs an output path (-o)");
  require(o.n >= 2, "numerator/denominator order must be at least 2");
  require(o.starts >= 1, "need at least one start");
  require(o.max_evaluations >= 1, "max-evaluations must be positive");
  FitOptions fo;
  fo.n = o.n;
  fo.seed = o.seed;
  fo.starts = o.starts;
  fo.window = parse_window(o.window);
  fo.max_evaluations = o.max_evaluations;
  std::ifstream in(o.input);
  require(in.good(), "cannot read " + o.input);
  TermCurve curve = read_term_csv(in, sym, dim);

  json report = {{"symmetry", std::string(to_string(sym))},
                 {"dim", o.dim},
                 {"n", o.n},
                 {"seed", o.seed},
                 {"starts", o.starts},
                 {"window", {fo.window.lo, fo.window.hi}}};
  auto emit_report = [&] {
    if (o.report.empty() || o.report == "-") {
      std::cout << report.dump(2) << "\n";
    } else {
      Output r(o.report);
      r.stream() << report.dump(2) << "\n";
    }
  };
  try {
    auto r = fit(curve, sym, fo);
    report["chi2"] = r.report.chi2;
    report["n_points"] = r.report.n_points;
    report["converged"] = r.report.converged;
    report["best_start"] = r.report.best_start;
    report["constraint_violation"] = constraint_violation(r.approx);
    Output out(o.output);
    out.stream() << rational_to_json(r.approx) << "\n";
    emit_report();
    return kOk;
  } catch (const FitError& e) {
    report["converged"] = false;
    report["chi2"] = e.best_chi2();
    report["error"] = e.what();
    emit_report();
    std::cerr << "fit failed: " << e.what() << "\n";
    return kComputeError;
  }
}

int run_diagram(const DiagramOptions& o) {
  auto states = parse_states(o.states);
  require(!o.out_dir.empty(), "diagram needs an output directory (--out-dir)");
  std::vector<double> masses = o.masses;
  if (masses.empty()) {
    require(o.m_count >= 1, "m-count must be positive");
    require(o.m_min > 0.0 && o.m_max >= o.m_min, "need 0 < m-min <= m-max");
    for (int i = 0; i < o.m_count; ++i)
      masses.push_back(o.m_count == 1 ? o.m_min
                                      : o.m_min * std::pow(o.m_max / o.m_min,
                                                           static_cast<double>(i) / (o.m_count - 1)));
  }
  for (std::size_t i = 0; i < masses.size(); ++i) {
    require(masses[i] > 0.0, "masses must be positive");
    require(i == 0 || masses[i] > masses[i - 1], "mass grid must be strictly ascending");
  }
  const bool centripetal = !o.no_centripetal;
  const auto ap_s = approx_for(Symmetry::Symmetric, o.terms);
  const auto ap_a = approx_for(Symmetry::Antisymmetric, o.terms);
  json config = {{"states", o.states},
                 {"masses", masses},
                 {"centripetal", centripetal},
                 {"terms", terms_json(o.terms)}};
  const auto m = meta("diagram", config);
  std::filesystem::create_directories(o.out_dir);

  bool partial = false;
  json asym = {{"horizontal", json::object()}, {"vertical", json::object()},
               {"skipped_masses", json::object()}};
  for (Symmetry s : {Symmetry::Symmetric, Symmetry::Antisymmetric}) {
    bool wanted = false;
    for (const auto& st : states) wanted = wanted || st.symmetry == s;
    if (!wanted) continue;
    try {
      auto z = z_critical_large_m(term_function(s == Symmetry::Symmetric ? ap_s : ap_a));
      asym["horizontal"][std::string(to_string(s))] = {{"Z", z.Z}, {"R", z.R}};
    } catch (const std::exception& e) {
      std::cerr << "critical charge (" << to_string(s) << "): " << e.what() << "\n";
      partial = true;
    }
  }
  for (const auto& st : states) {
    auto term = term_function(st.symmetry == Symmetry::Symmetric ? ap_s : ap_a);
    try {
      double mc = critical_mass(term, st.symmetry, st.n, 1.0, centripetal);
      asym["vertical"][st.text] = mc;
      std::vector<double> grid;
      for (double mm : masses)
        if (mm > mc) grid.push_back(mm);
      asym["skipped_masses"][st.text] = masses.size() - grid.size();
      auto curve = stability_curve(term, st.symmetry, st.n, grid, centripetal);
      for (const auto& f : curve.failures) std::cerr << st.text << ": " << f << "\n";
      partial = partial || !curve.failures.empty();
      Output out((std::filesystem::path(o.out_dir) / (st.text + ".csv")).string());
      write_stability_csv(out.stream(), curve, m);
    } catch (const std::exception& e) {
      std::cerr << st.text << ": " << e.what() << "\n";
      partial = true;
    }
  }
  Output out((std::filesystem::path(o.out_dir) / "asymptotes.json").string());
  out.stream() << asym.dump(2) << "\n";
  return partial ? kPartial : kOk;
}

int run_validate(const ValidateOptions& o) {
  std::vector<int> ids = o.criteria;
  if (ids.empty()) {
    if (o.quick) {
      ids = validation::quick_subset();
    } else {
      for (int i = 1; i <= validation::kCriteria; ++i) ids.push_back(i);
    }
  }
  for (int id : ids) require(id >= 1 && id <= validation::kCriteria, "unknown criterion");
  validation::Options vo;
  vo.seed = o.seed;
  if (!o.terms.approx_s.empty()) vo.approx_s = load_approx(o.terms.approx_s, Symmetry::Symmetric);
  if (!o.terms.approx_a.empty())
    vo.approx_a = load_approx(o.terms.approx_a, Symmetry::Antisymmetric);
  std::ostream& table = o.json == "-" ? std::cerr : std::cout;

  validation::Runner runner(vo);
  std::vector<validation::Criterion> results;
  bool all = true;
  for (int id : ids) {
    auto c = runner.run(id);
    table << std::setw(2) << id << "  " << (c.pass() ? "PASS" : "FAIL") << "  " << std::fixed
          << std::setprecision(1) << std::setw(6) << c.seconds << "s  " << c.title << "\n"
          << std::defaultfloat;
    for (const auto& k : c.checks) {
      if (k.pass) continue;
      table << "      " << k.name << ": " << format_number(k.measured, 8) << " vs "
            << format_number(k.expected, 8) << " +- " << format_number(k.tolerance, 3);
      if (!k.note.empty()) table << " (" << k.note << ")";
      table << "\n";
    }
    all = all && c.pass();
    results.push_back(std::move(c));
  }
  if (!o.json.empty()) {
    Output out(o.json);
    out.stream() << validation::report_json(results).dump(2) << "\n";
  }
  return all ? kOk : kPartial;
}

int run_multipole(const MultipoleOptions& o) {
  HydrogenState state = parse_state(o.state);
  require(o.k >= 1, "k must be positive");
  require(!o.dims.empty(), "no dimensions given");
  require(o.format == "csv" || o.format == "json", "format is csv or json");
  json rows = json::array();
  for (double d : o.dims) {
    DimensionParams dim(d);
    std::optional<double> closed;
    double numeric = moment_oracle(o.k, state, dim);
    if (o.k == 2) {
      // reported as <3z^2 - r^2>
      closed = quadrupole(state, dim);
      numeric *= 2.0;
    } else if (o.k == 4) {
      closed = octupole(state, dim);
    } else if (o.k % 2 == 0 && state == HydrogenState::Ground) {
      closed = even_multipole_ground(o.k / 2, dim);
    }
    rows.push_back({{"d", d},
                    {"closed_form", closed ? json(*closed) : json()},
                    {"quadrature", numeric}});
  }
  Output out(o.output);
  if (o.format == "json") {
    out.stream() << rows.dump(2) << "\n";
    return kOk;
  }
  json config = {{"state", std::string(to_string(state))}, {"k", o.k}, {"dims", o.dims}};
  out.stream() << "# command=multipole version=" << kVersion
               << " config=" << config_hash(config.dump()) << "\nd,closed_form,quadrature\n";
  for (const auto& r : rows)
    out.stream() << format_number(r["d"].get<double>()) << ','
                 << (r["closed_form"].is_null() ? "" : format_number(r["closed_form"].get<double>()))
                 << ',' << format_number(r["quadrature"].get<double>()) << "\n";
  return kOk;
}

int run_asymptotics(const AsymptoticsOptions& o) {
  DimensionParams dim(o.dim);
  Output out(o.output);
  if (o.vdw) {
    auto v = vdw_leading_2d();
    json j = {{"assembled", v.assembled},
              {"printed", v.printed},
              {"quadrupole", v.quadrupole},
              {"dipole_squared", v.dipole_squared}};
    out.stream() << j.dump(2) << "\n";
    return kOk;
  }
  require(!o.R.empty(), "no R values given");
  for (double R : o.R) require(R > 0.0, "R must be positive");
  const bool two = o.dim == 2.0;
  json config = {{"dim", o.dim}, {"R", o.R}};
  auto& os = out.stream();
  os << "# command=asymptotics version=" << kVersion << " config=" << config_hash(config.dump())
     << "\nR,large_R,large_R_error,splitting,stark";
  if (two) os << ",vs_2d,vs_2d_exponential,short_s,short_a,short_s_excited";
  os << "\n";
  for (double R : o.R) {
    auto L = large_R_term(R, dim);
    os << format_number(R) << ',' << format_number(L.value) << ','
       << format_number(L.estimated_error) << ',' << format_number(splitting(R, dim).value) << ','
       << format_number(stark_series(R, dim).value);
    if (two)
      os << ',' << format_number(vs_large_R_2d(R).value) << ','
         << format_number(vs_large_R_2d_exponential(R)) << ','
         << format_number(short_R_symmetric_2d(R)) << ','
         << format_number(short_R_antisymmetric_2d(R)) << ','
         << format_number(short_R_excited_symmetric_2d(R));
    os << "\n";
  }
  return kOk;
}

int run_spectrum(const SpectrumOptions& o) {
  Symmetry sym = parse_symmetry(o.symmetry);
  require(o.m > 0.0, "mass ratio must be positive");
  require(o.Z > 0.0, "charge must be positive");
  require(o.floor <= 0.0, "floor must be negative (or 0 for automatic)");
  auto term = term_function(approx_for(sym, o.terms));
  double floor = o.floor;
  if (floor == 0.0) {
    // levels of the planar problem lie above the minimum of the potential
    double vmin = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      double R = 1e-3 * std::pow(1e6, i / 4000.0);
      vmin = std::min(vmin, term(R) + (1.0 / o.Z - 1.0) / R);
    }
    floor = std::min(1.1 * vmin, -1e-12);
  }
  VibrationalProblem p{o.m, o.Z, sym, term, !o.no_centripetal};
  json config = {{"m", o.m},         {"Z", o.Z},         {"symmetry", std::string(to_string(sym))},
                 {"floor", floor},   {"centripetal", !o.no_centripetal},
                 {"terms", terms_json(o.terms)}};
  Output out(o.output);
  auto s = solve_spectrum(p, floor);
  write_spectrum_csv(out.stream(), s, meta("spectrum", config));
  std::cerr << s.n_found << " levels\n";
  return kOk;
}

int run_critical_mass(const CriticalMassOptions& o) {
  Symmetry sym = parse_symmetry(o.symmetry);
  require(!o.n.empty(), "no state index given");
  for (int n : o.n) require(n >= 0, "state index must be non-negative");
  require(o.Z > 0.0, "charge must be positive");
  require(o.rel_width > 0.0 && o.rel_width < 1.0, "rel-width must lie in (0, 1)");
  auto term = term_function(approx_for(sym, o.terms));
  json config = {{"n", o.n},
                 {"symmetry", std::string(to_string(sym))},
                 {"Z", o.Z},
                 {"centripetal", !o.no_centripetal},
                 {"rel_width", o.rel_width},
                 {"terms", terms_json(o.terms)}};
  Output out(o.output);
  auto& os = out.stream();
  os << "# command=critical-mass version=" << kVersion << " config=" << config_hash(config.dump())
     << "\nn,m_crit\n";
  for (int n : o.n)
    os << n << ',' << format_number(critical_mass(term, sym, n, o.Z, !o.no_centripetal, o.rel_width))
       << "\n";
  return kOk;
}

}  // namespace trion::cli
