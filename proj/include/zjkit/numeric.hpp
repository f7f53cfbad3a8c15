#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace zjkit {

bool is_prime(std::uint64_t n);

/// Largest power of p dividing n.
std::uint64_t p_part(std::uint64_t n, std::uint64_t p);

/// Distinct prime divisors of n in increasing order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// The prime p with n = p^k (k >= 1); nullopt for 1 and non-prime-powers.
std::optional<std::uint64_t> prime_of_power(std::uint64_t n);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// log_p(n) for n a power of p.
unsigned log_p(std::uint64_t n, std::uint64_t p);

}  // namespace zjkit
