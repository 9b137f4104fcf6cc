#include "wtf/parallel.hpp"

#include <atomic>

namespace wtf {

namespace {
std::atomic<unsigned> g_max_threads{0};
}

void set_max_threads(unsigned n) noexcept { g_max_threads.store(n); }

unsigned max_threads() noexcept {
  const unsigned cap = g_max_threads.load();
  if (cap != 0) return cap;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace wtf
