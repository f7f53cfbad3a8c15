#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "zjkit/simd/kernels.hpp"

namespace zjkit {

using Elem = std::uint32_t;

/// Dense bitset over the element indices {0..universe-1} of one group.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static ElementSet of(std::size_t universe, std::span<const Elem> elems) {
    ElementSet s(universe);
    for (Elem e : elems) s.insert(e);
    return s;
  }
  static ElementSet full(std::size_t universe) {
    ElementSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(static_cast<Elem>(i));
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool contains(Elem e) const noexcept {
    return (words_[e >> 6] >> (e & 63u)) & 1u;
  }
  void insert(Elem e) noexcept { words_[e >> 6] |= std::uint64_t{1} << (e & 63u); }
  void erase(Elem e) noexcept { words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63u)); }

  std::size_t count() const noexcept {
    return simd::active().popcount_words(words_.data(), words_.size());
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool is_subset_of(const ElementSet& o) const noexcept {
    return simd::active().subset_words(words_.data(), o.words_.data(), words_.size());
  }
  bool intersects(const ElementSet& o) const noexcept {
    return simd::active().intersects_words(words_.data(), o.words_.data(), words_.size());
  }

  ElementSet& operator&=(const ElementSet& o) noexcept {
    simd::active().and_words(words_.data(), words_.data(), o.words_.data(), words_.size());
    return *this;
  }
  ElementSet& operator|=(const ElementSet& o) noexcept {
    simd::active().or_words(words_.data(), words_.data(), o.words_.data(), words_.size());
    return *this;
  }
  // set difference
  ElementSet& operator-=(const ElementSet& o) noexcept {
    simd::active().andnot_words(words_.data(), words_.data(), o.words_.data(), words_.size());
    return *this;
  }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

  friend bool operator==(const ElementSet& a, const ElementSet& b) noexcept {
    return a.universe_ == b.universe_ &&
           simd::active().equal_words(a.words_.data(), b.words_.data(), a.words_.size());
  }

  /// Least element, or universe() when empty.
  Elem first() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return static_cast<Elem>(w * 64 + std::countr_zero(words_[w]));
    return static_cast<Elem>(universe_);
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(static_cast<Elem>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<Elem> to_vector() const {
    std::vector<Elem> out;
    out.reserve(count());
    for_each([&](Elem e) { out.push_back(e); });
    return out;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ universe_;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

}  // namespace zjkit
