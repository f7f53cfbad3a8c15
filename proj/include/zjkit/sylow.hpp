#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zjkit/subgroup.hpp"

namespace zjkit {

bool is_p_group(const Subgroup& h, std::uint64_t p);
/// |h| coprime to p
bool is_p_prime_group(const Subgroup& h, std::uint64_t p);

/// A Sylow p-subgroup of H: the lexicographically least among all
/// H-conjugates of the one found by successive extension. Trivial when p does
/// not divide |H|.
Subgroup sylow(const Subgroup& h, std::uint64_t p);
Subgroup sylow(const GroupPtr& g, std::uint64_t p);

/// All Sylow p-subgroups of H, sorted lexicographically.
std::vector<Subgroup> all_sylows(const Subgroup& h, std::uint64_t p);

/// O_p(H): largest normal p-subgroup.
Subgroup p_core(const Subgroup& h, std::uint64_t p);
/// O_{p'}(H): largest normal p'-subgroup.
Subgroup p_prime_core(const Subgroup& h, std::uint64_t p);
/// O_{p',p}(H): preimage of O_p(H / O_{p'}(H)).
Subgroup p_prime_p_core(const Subgroup& h, std::uint64_t p);

/// Least x in `ambient` (by element index) with V^x contained in P.
/// V must be a p-subgroup and P a Sylow p-subgroup of ambient.
Elem conjugate_into(const Subgroup& ambient, const Subgroup& v, const Subgroup& p);
/// Every x in ambient with V^x contained in P, increasing.
std::vector<Elem> all_conjugators_into(const Subgroup& ambient, const Subgroup& v,
                                       const Subgroup& p);

}  // namespace zjkit
