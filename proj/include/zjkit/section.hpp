#pragma once

#include <limits>
#include <vector>

#include "zjkit/subgroup.hpp"

namespace zjkit {

inline constexpr Elem kNoImage = std::numeric_limits<Elem>::max();

/// A homomorphism between two tables, stored as the image of every source
/// element.
struct GroupMap {
  GroupPtr source;
  GroupPtr target;
  std::vector<Elem> images;

  /// Exhaustive check of images[ab] = images[a] images[b].
  bool is_homomorphism() const;
  bool is_bijective() const;
};

/// The quotient H/K of a parent table, with K normal in H. Quotient elements
/// are cosets numbered by their least parent element, so the identity coset
/// is element 0.
class Section {
 public:
  const Subgroup& top() const noexcept { return top_; }
  const Subgroup& bottom() const noexcept { return bottom_; }
  const GroupPtr& quotient() const noexcept { return quotient_; }
  std::size_t order() const noexcept { return quotient_->order(); }

  /// Coset of a parent element of top(); kNoImage outside top().
  Elem project(Elem x) const noexcept { return projection_[x]; }
  /// Least parent element of the coset q.
  Elem representative(Elem q) const noexcept { return reps_[q]; }

  /// Image of a subgroup L with bottom() <= L <= top(), or of any subgroup of
  /// top() (giving LK/K).
  Subgroup image(const Subgroup& l) const;
  ElementSet image(const ElementSet& s) const;
  /// Full preimage in the parent of a subgroup of the quotient.
  Subgroup preimage(const Subgroup& q) const;
  /// Indexed by parent element; kNoImage outside top().
  const std::vector<Elem>& projection() const noexcept { return projection_; }

 private:
  friend Section quotient(const Subgroup& h, const Subgroup& k);
  Subgroup top_;
  Subgroup bottom_;
  GroupPtr quotient_;
  std::vector<Elem> projection_;
  std::vector<Elem> reps_;
};

/// H/K. Throws NotNormal when K is not a normal subgroup of H.
Section quotient(const Subgroup& h, const Subgroup& k);

/// H as a standalone table (H/1) together with its embedding.
Section induced(const Subgroup& h);

}  // namespace zjkit
