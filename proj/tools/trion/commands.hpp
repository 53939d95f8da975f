#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace trion::cli {

enum Exit : int { kOk = 0, kConfigError = 1, kPartial = 2, kComputeError = 3 };

struct BasisFlags {
  int k_isotropic = 30;
  double iso_min = 0.003;
  double iso_max = 3e7;
  bool no_floating = false;
  double prune = 1e-10;
};

struct ScanOptions {
  double dim = 2.0;
  std::string symmetry = "s";
  double rmin = 0.1;
  double rmax = 6.5;
  double step = 0.05;
  std::string output;
  BasisFlags basis;
};

struct FitCliOptions {
  std::string input;
  double dim = 2.0;
  std::string symmetry = "s";
  std::string window = "0.1:6.5";
  int n = 9;
  std::uint64_t seed = 0;
  int starts = 16;
  int max_evaluations = 4000;
  std::string output;
  std::string report;
};

struct TermSourceFlags {
  std::string approx_s;  // approximant JSON files; published coefficients when empty
  std::string approx_a;
};

struct DiagramOptions {
  std::string states = "s0,s1,s2,s3,s4,s5,a0,a1,a2,a3,a4";
  std::vector<double> masses;  // explicit grid, overrides the log grid
  double m_min = 1.0;
  double m_max = 1e4;
  int m_count = 25;
  bool no_centripetal = false;
  std::string out_dir;
  TermSourceFlags terms;
};

struct ValidateOptions {
  bool quick = false;
  std::vector<int> criteria;
  std::string json;
  std::uint64_t seed = 0;
  TermSourceFlags terms;
};

struct MultipoleOptions {
  std::string state = "ground";
  int k = 2;
  std::vector<double> dims{2.0, 3.0, 4.0};
  std::string format = "csv";
  std::string output = "-";
};

struct AsymptoticsOptions {
  double dim = 2.0;
  std::vector<double> R{8.0, 10.0, 12.0};
  bool vdw = false;
  std::string output = "-";
};

struct SpectrumOptions {
  double m = 1836.152701;
  double Z = 1.0;
  std::string symmetry = "s";
  bool no_centripetal = false;
  double floor = 0.0;  // 0: below the deepest point of the term
  std::string output = "-";
  TermSourceFlags terms;
};

struct CriticalMassOptions {
  std::vector<int> n{0};
  std::string symmetry = "s";
  double Z = 1.0;
  bool no_centripetal = false;
  double rel_width = 1e-4;
  std::string output = "-";
  TermSourceFlags terms;
};

int run_term_scan(const ScanOptions& o);
int run_fit(const FitCliOptions& o);
int run_diagram(const DiagramOptions& o);
int run_validate(const ValidateOptions& o);
int run_multipole(const MultipoleOptions& o);
int run_asymptotics(const AsymptoticsOptions& o);
int run_spectrum(const SpectrumOptions& o);
int run_critical_mass(const CriticalMassOptions& o);

}  // namespace trion::cli
