#include "zjkit/config.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "zjkit/error.hpp"

namespace zjkit {
namespace {

std::size_t initial_bound() {
  if (const char* env = std::getenv("ZJKIT_ORDER_BOUND")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultOrderBound;
}

std::atomic<std::size_t>& bound_storage() {
  static std::atomic<std::size_t> b{initial_bound()};
  return b;
}

}  // namespace

std::size_t order_bound() { return bound_storage().load(std::memory_order_relaxed); }

void set_order_bound(std::size_t bound) {
  bound_storage().store(bound, std::memory_order_relaxed);
}

void require_within_bound(std::size_t order, const char* what) {
  if (order > order_bound()) {
    throw BoundExceeded(std::string(what) + ": order " + std::to_string(order) +
                        " exceeds bound " + std::to_string(order_bound()));
  }
}

}  // namespace zjkit
