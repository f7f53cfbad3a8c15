#pragma once

#include <compare>
#include <mutex>
#include <optional>
#include <memory>
#include <span>
#include <vector>

#include "zjkit/element_set.hpp"
#include "zjkit/group_table.hpp"

namespace zjkit {

/// A subgroup of a GroupTable: a membership mask plus the sorted element
/// list. Cheap to copy (shared immutable state).
class Subgroup {
  struct Impl {
    GroupPtr parent;
    ElementSet mask;
    std::vector<Elem> elements;
    mutable std::vector<Elem> gens;
    mutable std::once_flag gens_once;
  };

 public:
  Subgroup() = default;

  static Subgroup whole(GroupPtr g);
  static Subgroup trivial(GroupPtr g);
  /// `mask` must already be closed under the group law (not re-checked).
  /// `gens`, when given, must generate it.
  static Subgroup from_closed(GroupPtr g, ElementSet mask, std::vector<Elem> gens = {});

  bool valid() const noexcept { return static_cast<bool>(impl_); }
  const GroupPtr& parent() const noexcept { return impl_->parent; }
  const GroupTable& table() const noexcept { return *impl_->parent; }

  std::size_t size() const noexcept { return impl_->elements.size(); }
  bool contains(Elem e) const noexcept { return impl_->mask.contains(e); }
  const ElementSet& mask() const noexcept { return impl_->mask; }
  std::span<const Elem> elements() const noexcept { return impl_->elements; }
  bool is_trivial() const noexcept { return size() == 1; }

  /// A small generating set (greedy; computed on first use, thread-safe).
  std::span<const Elem> generators() const;

  bool is_subgroup_of(const Subgroup& o) const noexcept {
    return impl_->mask.is_subset_of(o.impl_->mask);
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) noexcept {
    return a.impl_->parent->id() == b.impl_->parent->id() && a.impl_->mask == b.impl_->mask;
  }
  /// Lexicographic on the sorted element sequence.
  friend std::strong_ordering operator<=>(const Subgroup& a, const Subgroup& b) noexcept;

 private:
  explicit Subgroup(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Order by size, then lexicographically. The canonical listing order.
bool size_then_lex_less(const Subgroup& a, const Subgroup& b);

struct SubgroupHash {
  std::size_t operator()(const Subgroup& s) const noexcept { return s.mask().hash(); }
};

// --- generation -----------------------------------------------------------

Subgroup closure(const GroupPtr& g, std::span<const Elem> seed);
Subgroup closure(const GroupPtr& g, const ElementSet& seed);
/// <H, x>
Subgroup extend(const Subgroup& h, Elem x);
/// <A, B>
Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup intersection(const Subgroup& a, const Subgroup& b);
/// The set {ab : a in A, b in B}.
ElementSet product_set(const Subgroup& a, const Subgroup& b);
/// AB as a subgroup; throws Error when AB is not a subgroup.
Subgroup product_subgroup(const Subgroup& a, const Subgroup& b);

// --- structure ------------------------------------------------------------

bool is_abelian(const Subgroup& h);
/// True iff k is a normal subgroup of h (k must lie in h).
bool is_normal_in(const Subgroup& k, const Subgroup& h);
std::uint64_t exponent(const Subgroup& h);

/// { g in ambient : g s = s g for all s in S }
Subgroup centralizer(const Subgroup& ambient, std::span<const Elem> s);
Subgroup centralizer(const Subgroup& ambient, const Subgroup& s);
Subgroup center(const Subgroup& h);
/// { g in ambient : S^g = S }
Subgroup normalizer(const Subgroup& ambient, const Subgroup& s);
/// Elements of ambient that map the set S onto itself.
Subgroup set_stabilizer(const Subgroup& ambient, const ElementSet& s);

/// <[x, y] : x in X, y in Y>
Subgroup commutator_subgroup(const Subgroup& x, const Subgroup& y);
Subgroup derived_subgroup(const Subgroup& h);
/// Nilpotency class via the lower central series; nullopt if not nilpotent.
std::optional<unsigned> nilpotency_class(const Subgroup& h);
bool is_solvable(const Subgroup& h);

Subgroup conjugate(const Subgroup& s, Elem g);
ElementSet conjugate_set(const GroupTable& t, const ElementSet& s, Elem g);
/// Smallest normal subgroup of ambient containing S.
Subgroup normal_closure(const Subgroup& ambient, const Subgroup& s);
Subgroup normal_closure(const Subgroup& ambient, std::span<const Elem> s);

/// Conjugacy classes of `ambient` acting on its own elements. class_of[x] is
/// the class index for x in ambient (classes numbered by least element) and
/// -1 outside.
struct ConjugacyClasses {
  std::vector<int> class_of;
  std::vector<std::vector<Elem>> classes;
};
ConjugacyClasses conjugacy_classes(const Subgroup& ambient);

}  // namespace zjkit
