#include "eqmorse/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace eqmorse::kernels {

namespace {

std::atomic<bool>& flag() {
  static std::atomic<bool> on{[] {
    const char* env = std::getenv("EQMORSE_SERIAL");
    return !(env != nullptr && std::strcmp(env, "0") != 0);
  }()};
  return on;
}

}  // namespace

bool parallel_enabled() { return flag().load(std::memory_order_relaxed); }

void set_parallel(bool on) { flag().store(on, std::memory_order_relaxed); }

}  // namespace eqmorse::kernels
