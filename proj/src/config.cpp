#include "logkfl/config.hpp"

#include <cstdlib>
#include <string>

namespace logkfl {

namespace {

std::uint64_t initial_bound() {
  if (const char* env = std::getenv("LOGKFL_SIZE_BOUND")) {
    try {
      unsigned long long v = std::stoull(std::string(env));
      if (v > 0) return static_cast<std::uint64_t>(v);
    } catch (...) {
      // ignore unparsable values, keep the default
    }
  }
  return std::uint64_t(1) << 20;
}

std::uint64_t g_bound = initial_bound();

}  // namespace

std::uint64_t size_bound() { return g_bound; }
void set_size_bound(std::uint64_t bound) { g_bound = bound; }

}  // namespace logkfl
