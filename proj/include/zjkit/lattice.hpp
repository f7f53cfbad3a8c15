#pragma once

#include <memory>
#include <vector>

#include "zjkit/subgroup.hpp"

namespace zjkit {

using SubgroupList = std::shared_ptr<const std::vector<Subgroup>>;

/// Every subgroup of G, duplicate-free, ordered by size then lexicographically.
/// Throws BoundExceeded when |G| exceeds order_bound().
std::vector<Subgroup> all_subgroups(const GroupPtr& g);

/// Every subgroup of X (as subgroups of X's parent table), same ordering.
/// Built by cyclic extension; solvable X only adjoins elements normalizing the
/// current subgroup with prime-power image, other X adjoin every prime-power
/// element. Results are memoized per thread.
SubgroupList subgroups_of(const Subgroup& x);

/// Subgroups of X that are normal in X.
std::vector<Subgroup> normal_subgroups_of(const Subgroup& x);

/// Maximal proper subgroups of X.
std::vector<Subgroup> maximal_subgroups_of(const Subgroup& x);

/// Drop this thread's lattice memo.
void clear_lattice_cache();

}  // namespace zjkit
