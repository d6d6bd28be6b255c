#include "fqb/parallel.hpp"

#include <cstdlib>
#include <string>

namespace fqb {

unsigned default_workers() {
  if (const char* env = std::getenv("FQB_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to hardware default
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace fqb
