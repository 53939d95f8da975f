// One line per criterion; failing checks are listed underneath.
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <trion/io.hpp>

#include "validation.hpp"

int main(int argc, char** argv) {
  using namespace trion::validation;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty())
    for (int i = 1; i <= kCriteria; ++i) ids.push_back(i);

  Runner runner;
  int failed = 0;
  for (int id : ids) {
    Criterion c;
    try {
      c = runner.run(id);
    } catch (const std::exception& e) {
      std::cout << "criterion " << id << " FAIL  " << e.what() << "\n";
      ++failed;
      continue;
    }
    std::cout << "criterion " << std::setw(2) << id << ' ' << (c.pass() ? "PASS" : "FAIL") << "  "
              << c.title << "\n";
    for (const auto& k : c.checks) {
      std::cout << "    " << (k.pass ? "ok  " : "FAIL") << ' ' << k.name << ": "
                << trion::format_number(k.measured, 8);
      if (k.tolerance > 0.0 || k.expected != 0.0)
        std::cout << " expected " << trion::format_number(k.expected, 8) << " +- "
                  << trion::format_number(k.tolerance, 3);
      if (!k.note.empty()) std::cout << " (" << k.note << ")";
      std::cout << "\n";
    }
    failed += !c.pass();
  }
  std::cout << (ids.size() - static_cast<std::size_t>(failed)) << "/" << ids.size()
            << " criteria pass\n";
  return failed ? 1 : 0;
}
