#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zjkit/section.hpp"

namespace zjkit {

/// Cheap isomorphism invariants compared before any search.
struct Fingerprint {
  std::size_t order = 0;
  std::vector<std::size_t> order_histogram;  // [k] = #elements of order k
  std::size_t center_size = 0;
  std::size_t derived_size = 0;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const GroupTable& g);

/// An isomorphism g1 -> g2 when one exists. Fingerprints first, then
/// backtracking over images of a small generating set of g1.
std::optional<GroupMap> find_isomorphism(const GroupPtr& g1, const GroupPtr& g2);
bool is_isomorphic(const GroupPtr& g1, const GroupPtr& g2);

}  // namespace zjkit
