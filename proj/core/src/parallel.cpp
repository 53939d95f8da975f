#include "trion/parallel.hpp"

#include <cstdlib>
#include <string>

namespace trion {

int thread_count() {
  if (const char* env = std::getenv("TRION_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
    }
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace trion
