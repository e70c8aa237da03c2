#include "specgap/parallel.hpp"

#include <cstdlib>
#include <string>

namespace specgap {

unsigned default_workers() {
  if (const char* env = std::getenv("SPECGAP_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace specgap
