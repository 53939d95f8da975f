#pragma once

#include <json.hpp>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <trion/rational.hpp>
#include <trion/variational.hpp>

namespace trion::validation {

struct Check {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;  // absolute; 0 for exact and boolean checks
  bool pass = false;
  std::string note;
};

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool pass() const;
};

struct Options {
  BasisConfig basis = BasisConfig::standard();
  std::uint64_t seed = 0;
  // terms for the vibrational criteria; the published coefficients when unset
  std::optional<RationalApprox> approx_s;
  std::optional<RationalApprox> approx_a;
};

inline constexpr int kCriteria = 12;

std::string title(int id);
// Criteria that only exercise oracles and closed forms (a minute or less).
std::vector<int> quick_subset();

// Runs criteria in order, sharing intermediate results (term minima) between them.
class Runner {
 public:
  explicit Runner(Options options = {});
  Criterion run(int id);

 private:
  struct Cache;
  Options opt_;
  std::shared_ptr<Cache> cache_;
};

nlohmann::json to_json(const Criterion& c);
nlohmann::json report_json(const std::vector<Criterion>& results);

}  // namespace trion::validation
