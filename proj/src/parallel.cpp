#include "semcom/parallel.hpp"

#include <cstdlib>
#include <string>

namespace semcom {

unsigned default_threads() {
  if (const char* env = std::getenv("SEMCOM_EE_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace semcom
