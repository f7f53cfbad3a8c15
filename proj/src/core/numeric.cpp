#include "zjkit/numeric.hpp"

namespace zjkit {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t p_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::optional<std::uint64_t> prime_of_power(std::uint64_t n) {
  auto ps = prime_divisors(n);
  if (ps.size() != 1) return std::nullopt;
  return ps.front();
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

unsigned log_p(std::uint64_t n, std::uint64_t p) {
  unsigned k = 0;
  while (n > 1) {
    n /= p;
    ++k;
  }
  return k;
}

}  // namespace zjkit
