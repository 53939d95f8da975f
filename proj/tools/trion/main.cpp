#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include <trion/errors.hpp>
#include <trion/io.hpp>

#include "commands.hpp"

namespace {

using nlohmann::json;
using namespace trion::cli;

std::vector<std::string> keys_of(const CLI::Option* opt) {
  std::vector<std::string> keys = opt->get_lnames();
  for (const auto& s : opt->get_snames()) keys.push_back(s);
  for (auto& k : keys)
    for (char& c : k)
      if (c == '-') c = '_';
  return keys;
}

std::string as_arg(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

// Values from --config fill every option the command line left unset.
void merge_config(CLI::App* app, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw trion::ConfigError("cannot read config " + path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw trion::ConfigError("config " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw trion::ConfigError("config must be a JSON object");
  json flat;
  for (auto& [k, v] : cfg.items()) {
    std::string key = k;
    for (char& c : key)
      if (c == '-') c = '_';
    flat[key] = v;
  }
  for (CLI::Option* opt : app->get_options()) {
    if (opt->count() > 0 || opt->get_single_name() == "config" || opt->get_single_name() == "help")
      continue;
    auto it = flat.end();
    for (const auto& k : keys_of(opt))
      if (it == flat.end()) it = flat.find(k);
    if (it == flat.end()) continue;
    if (it->is_array()) {
      for (const auto& e : *it) opt->add_result(as_arg(e));
    } else if (opt->get_type_size() == 0) {
      if (it->is_boolean() && !it->get<bool>()) continue;
      opt->add_result("true");
    } else {
      opt->add_result(as_arg(*it));
    }
    opt->run_callback();
    flat.erase(it);
  }
  for (auto& [k, v] : flat.items()) std::cerr << "config: ignoring unknown key '" << k << "'\n";
}

void add_basis_flags(CLI::App* c, BasisFlags& b) {
  c->add_option("--k-isotropic", b.k_isotropic, "isotropic ladder size")->capture_default_str();
  c->add_option("--iso-min", b.iso_min, "smallest isotropic exponent")->capture_default_str();
  c->add_option("--iso-max", b.iso_max, "largest isotropic exponent")->capture_default_str();
  c->add_flag("--no-floating", b.no_floating, "drop the displaced functions");
  c->add_option("--prune", b.prune, "relative overlap eigenvalue cut")->capture_default_str();
}

void add_term_flags(CLI::App* c, TermSourceFlags& t) {
  c->add_option("--approx-s", t.approx_s, "symmetric approximant JSON");
  c->add_option("--approx-a", t.approx_a, "antisymmetric approximant JSON");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-body Coulomb terms, multipoles and vibrational stability"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(trion::kVersion));
  std::string config;
  app.add_option("--config", config, "JSON file with option values");

  ScanOptions scan;
  auto* term = app.add_subcommand("term", "adiabatic terms");
  term->require_subcommand(1);
  term->fallthrough();
  auto* scan_cmd = term->add_subcommand("scan", "variational term on an R grid");
  scan_cmd->add_option("--dim", scan.dim, "dimension")->capture_default_str();
  scan_cmd->add_option("--symmetry", scan.symmetry, "s or a")->capture_default_str();
  scan_cmd->add_option("--rmin", scan.rmin)->capture_default_str();
  scan_cmd->add_option("--rmax", scan.rmax)->capture_default_str();
  scan_cmd->add_option("--step", scan.step)->capture_default_str();
  scan_cmd->add_option("-o,--output", scan.output, "CSV path or -");
  add_basis_flags(scan_cmd, scan.basis);

  FitCliOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "fit the constrained rational approximant");
  fit_cmd->add_option("-i,--input", fit.input, "term CSV");
  fit_cmd->add_option("--dim", fit.dim)->capture_default_str();
  fit_cmd->add_option("--symmetry", fit.symmetry)->capture_default_str();
  fit_cmd->add_option("--window", fit.window, "lo:hi")->capture_default_str();
  fit_cmd->add_option("-n,--order", fit.n)->capture_default_str();
  fit_cmd->add_option("--seed", fit.seed)->capture_default_str();
  fit_cmd->add_option("--starts", fit.starts)->capture_default_str();
  fit_cmd->add_option("--max-evaluations", fit.max_evaluations)->capture_default_str();
  fit_cmd->add_option("-o,--output", fit.output, "approximant JSON path or -");
  fit_cmd->add_option("--report", fit.report, "fit report JSON (stdout by default)");

  DiagramOptions diagram;
  auto* diagram_cmd = app.add_subcommand("diagram", "stability diagram Z_n(m)");
  diagram_cmd->add_option("--states", diagram.states, "comma list like s0,a1")->capture_default_str();
  diagram_cmd->add_option("--masses", diagram.masses, "explicit mass grid");
  diagram_cmd->add_option("--m-min", diagram.m_min)->capture_default_str();
  diagram_cmd->add_option("--m-max", diagram.m_max)->capture_default_str();
  diagram_cmd->add_option("--m-count", diagram.m_count)->capture_default_str();
  diagram_cmd->add_flag("--no-centripetal", diagram.no_centripetal);
  diagram_cmd->add_option("--out-dir", diagram.out_dir);
  add_term_flags(diagram_cmd, diagram.terms);

  ValidateOptions validate;
  auto* validate_cmd = app.add_subcommand("validate", "run the acceptance criteria");
  validate_cmd->add_flag("--quick", validate.quick, "only the fast criteria");
  validate_cmd->add_option("--criteria", validate.criteria, "criterion ids")->delimiter(',');
  validate_cmd->add_option("--json", validate.json, "report path or -");
  validate_cmd->add_option("--seed", validate.seed)->capture_default_str();
  add_term_flags(validate_cmd, validate.terms);

  MultipoleOptions mp;
  auto* mp_cmd = app.add_subcommand("multipole", "hydrogen-like multipole moments");
  mp_cmd->add_option("--state", mp.state, "ground, excited or p")->capture_default_str();
  mp_cmd->add_option("-k,--k", mp.k, "multipole order")->capture_default_str();
  mp_cmd->add_option("--dims", mp.dims)->delimiter(',')->capture_default_str();
  mp_cmd->add_option("--format", mp.format, "csv or json")->capture_default_str();
  mp_cmd->add_option("-o,--output", mp.output)->capture_default_str();

  AsymptoticsOptions as;
  auto* as_cmd = app.add_subcommand("asymptotics", "large and short R series");
  as_cmd->add_option("--dim", as.dim)->capture_default_str();
  as_cmd->add_option("-R", as.R)->delimiter(',')->capture_default_str();
  as_cmd->add_flag("--vdw", as.vdw, "leading van der Waals coefficient");
  as_cmd->add_option("-o,--output", as.output)->capture_default_str();

  SpectrumOptions sp;
  auto* sp_cmd = app.add_subcommand("spectrum", "vibrational levels");
  sp_cmd->add_option("-m,--m,--mass", sp.m)->capture_default_str();
  sp_cmd->add_option("-Z,--Z,--charge", sp.Z)->capture_default_str();
  sp_cmd->add_option("--symmetry", sp.symmetry)->capture_default_str();
  sp_cmd->add_flag("--no-centripetal", sp.no_centripetal);
  sp_cmd->add_option("--floor", sp.floor, "lowest energy searched (0: automatic)");
  sp_cmd->add_option("-o,--output", sp.output)->capture_default_str();
  add_term_flags(sp_cmd, sp.terms);

  CriticalMassOptions cm;
  auto* cm_cmd = app.add_subcommand("critical-mass", "smallest mass binding level n");
  cm_cmd->add_option("-n,--n", cm.n)->delimiter(',')->capture_default_str();
  cm_cmd->add_option("--symmetry", cm.symmetry)->capture_default_str();
  cm_cmd->add_option("-Z,--Z,--charge", cm.Z)->capture_default_str();
  cm_cmd->add_flag("--no-centripetal", cm.no_centripetal);
  cm_cmd->add_option("--rel-width", cm.rel_width)->capture_default_str();
  cm_cmd->add_option("-o,--output", cm.output)->capture_default_str();
  add_term_flags(cm_cmd, cm.terms);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    if (cmd == term) cmd = scan_cmd;
    if (!config.empty()) merge_config(cmd, config);
    if (cmd == scan_cmd) return run_term_scan(scan);
    if (cmd == fit_cmd) return run_fit(fit);
    if (cmd == diagram_cmd) return run_diagram(diagram);
    if (cmd == validate_cmd) return run_validate(validate);
    if (cmd == mp_cmd) return run_multipole(mp);
    if (cmd == as_cmd) return run_asymptotics(as);
    if (cmd == sp_cmd) return run_spectrum(sp);
    if (cmd == cm_cmd) return run_critical_mass(cm);
  } catch (const CLI::ParseError& e) {
    std::cerr << "config: " << e.what() << "\n";
    return kConfigError;
  } catch (const trion::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const trion::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputeError;
  }
  return kConfigError;
}
