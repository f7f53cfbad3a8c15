#include "zjkit/group_table.hpp"

#include <atomic>
#include <numeric>
#include <string>

#include "zjkit/error.hpp"

namespace zjkit {
namespace {

std::uint64_t next_table_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

GroupTable::GroupTable(std::string name, std::size_t order, std::vector<Elem> mul,
                       std::vector<Elem> gens)
    : name_(std::move(name)), n_(order), id_(next_table_id()), mul_(std::move(mul)),
      gens_(std::move(gens)) {
  if (n_ == 0) throw ParseError(name_ + ": empty group");
  if (mul_.size() != n_ * n_) throw ParseError(name_ + ": table is not order x order");

  for (std::size_t a = 0; a < n_; ++a) {
    if (mul_[a] != a || mul_[a * n_] != a)
      throw ParseError(name_ + ": index 0 is not a two-sided identity");
  }

  // Latin square: each row and column a permutation.
  std::vector<std::uint32_t> seen(n_, 0);
  std::uint32_t stamp = 0;
  for (std::size_t a = 0; a < n_; ++a) {
    ++stamp;
    for (std::size_t b = 0; b < n_; ++b) {
      Elem v = mul_[a * n_ + b];
      if (v >= n_ || seen[v] == stamp)
        throw ParseError(name_ + ": row " + std::to_string(a) + " is not a permutation");
      seen[v] = stamp;
    }
  }
  for (std::size_t b = 0; b < n_; ++b) {
    ++stamp;
    for (std::size_t a = 0; a < n_; ++a) {
      Elem v = mul_[a * n_ + b];
      if (seen[v] == stamp)
        throw ParseError(name_ + ": column " + std::to_string(b) + " is not a permutation");
      seen[v] = stamp;
    }
  }

  rmul_.resize(n_ * n_);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) rmul_[b * n_ + a] = mul_[a * n_ + b];

  inv_.assign(n_, 0);
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      if (mul_[a * n_ + b] == 0) {
        inv_[a] = static_cast<Elem>(b);
        break;
      }
    }
    if (mul_[inv_[a] * n_ + a] != 0)
      throw ParseError(name_ + ": element " + std::to_string(a) + " has no two-sided inverse");
  }

  orders_.assign(n_, 1);
  for (std::size_t a = 1; a < n_; ++a) {
    std::uint32_t k = 1;
    Elem x = static_cast<Elem>(a);
    while (x != 0) {
      x = mul_[x * n_ + a];
      ++k;
      if (k > n_) throw ParseError(name_ + ": element without finite order (not associative)");
    }
    orders_[a] = k;
  }

  for (Elem g : gens_)
    if (g >= n_) throw ParseError(name_ + ": generator index out of range");
}

Elem GroupTable::power(Elem x, long long k) const noexcept {
  const long long ord = orders_[x];
  k %= ord;
  if (k < 0) k += ord;
  Elem r = 0;
  for (long long i = 0; i < k; ++i) r = mul(r, x);
  return r;
}

bool GroupTable::verify_associativity() const {
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) {
      const Elem ab = mul_[a * n_ + b];
      for (std::size_t c = 0; c < n_; ++c)
        if (mul_[ab * n_ + c] != mul_[a * n_ + mul_[b * n_ + c]]) return false;
    }
  return true;
}

std::uint64_t GroupTable::exponent() const {
  std::uint64_t e = 1;
  for (auto o : orders_) e = std::lcm(e, static_cast<std::uint64_t>(o));
  return e;
}

void conjugate_elements(const GroupTable& t, std::span<const Elem> xs, Elem g,
                        std::span<Elem> out) {
  const auto& k = simd::active();
  // x^g = (g^-1 x) g : one gather through row(g^-1), one through col(g).
  k.gather_u32(out.data(), t.row(t.inv(g)).data(), xs.data(), xs.size());
  k.gather_u32(out.data(), t.col(g).data(), out.data(), xs.size());
}

}  // namespace zjkit
