#include "thermoform/parallel.hpp"

#include <cstdlib>
#include <string>

namespace thermoform {

unsigned resolve_thread_count() {
  unsigned count = 0;
  if (const char* env = std::getenv("THERMOFORM_THREADS")) {
    try {
      const long parsed = std::stol(env);
      if (parsed > 0) count = static_cast<unsigned>(parsed);
    } catch (...) {
      count = 0;  // unparsable values fall back to auto
    }
  }
  if (count == 0) count = std::thread::hardware_concurrency();
  return count == 0 ? 1 : count;
}

}  // namespace thermoform
