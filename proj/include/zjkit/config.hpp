#pragma once

#include <cstddef>

namespace zjkit {

inline constexpr std::size_t kDefaultOrderBound = 512;

/// Largest group order any operation will build or enumerate. Defaults to
/// 512 and can be overridden with the ZJKIT_ORDER_BOUND environment variable
/// or set_order_bound().
std::size_t order_bound();
void set_order_bound(std::size_t bound);

/// Throws BoundExceeded when `order` is above order_bound().
void require_within_bound(std::size_t order, const char* what);

}  // namespace zjkit
