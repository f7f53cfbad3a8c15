#include <bit>

#include "zjkit/simd/kernels.hpp"

namespace zjkit::simd {
namespace {

void and_words(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
               std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_words(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] | b[i];
}

void andnot_words(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & ~b[i];
}

bool subset_words(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool equal_words(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool intersects_words(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

std::size_t popcount_words(const std::uint64_t* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

void gather_u32(std::uint32_t* dst, const std::uint32_t* table, const std::uint32_t* idx,
                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = table[idx[i]];
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{"scalar",     and_words,        or_words,
                         andnot_words, subset_words,     equal_words,
                         intersects_words, popcount_words, gather_u32};
  return k;
}

}  // namespace zjkit::simd
