#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "zjkit/element_set.hpp"

namespace zjkit {

/// A finite group as a Cayley table over dense element indices. Index 0 is
/// the identity. Immutable once constructed.
class GroupTable {
 public:
  /// `mul` is row-major: mul[a * order + b] = a*b. Validates the identity,
  /// the Latin-square property and two-sided inverses; associativity is
  /// checked separately by verify_associativity().
  GroupTable(std::string name, std::size_t order, std::vector<Elem> mul,
             std::vector<Elem> gens = {});

  std::size_t order() const noexcept { return n_; }
  const std::string& name() const noexcept { return name_; }
  /// Unique per table for the life of the process; used as a cache key.
  std::uint64_t id() const noexcept { return id_; }

  Elem mul(Elem a, Elem b) const noexcept { return mul_[a * n_ + b]; }
  Elem inv(Elem a) const noexcept { return inv_[a]; }
  /// x^g = g^-1 x g
  Elem conj(Elem x, Elem g) const noexcept { return rmul_[g * n_ + mul_[inv_[g] * n_ + x]]; }
  /// [x, y] = x^-1 y^-1 x y
  Elem comm(Elem x, Elem y) const noexcept { return mul(inv_[x], conj(x, y)); }
  Elem power(Elem x, long long k) const noexcept;
  std::uint32_t element_order(Elem x) const noexcept { return orders_[x]; }

  /// Left multiplication by a: row(a)[x] = a*x.
  std::span<const Elem> row(Elem a) const noexcept { return {mul_.data() + a * n_, n_}; }
  /// Right multiplication by b: col(b)[x] = x*b.
  std::span<const Elem> col(Elem b) const noexcept { return {rmul_.data() + b * n_, n_}; }

  /// Generators recorded at construction (possibly empty).
  std::span<const Elem> generators() const noexcept { return gens_; }

  /// Exhaustive O(n^3) check.
  bool verify_associativity() const;

  /// Exponent: lcm of element orders.
  std::uint64_t exponent() const;

 private:
  std::string name_;
  std::size_t n_;
  std::uint64_t id_;
  std::vector<Elem> mul_;
  std::vector<Elem> rmul_;  // transposed table
  std::vector<Elem> inv_;
  std::vector<std::uint32_t> orders_;
  std::vector<Elem> gens_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

/// Conjugate a list of elements by g in one pass: out[i] = xs[i]^g.
void conjugate_elements(const GroupTable& g_table, std::span<const Elem> xs, Elem g,
                        std::span<Elem> out);

}  // namespace zjkit
