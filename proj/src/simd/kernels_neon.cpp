// Compiled on AArch64 only.
#include <arm_neon.h>

#include "zjkit/simd/kernels.hpp"

namespace zjkit::simd {
namespace {

void and_words(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
               std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_words(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vorrq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void andnot_words(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                  std::size_t n) {
  std::size_t i = 0;
  // vbicq(x, y) = x & ~y
  for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

inline bool any_bits(uint64x2_t v) { return (vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1)) != 0; }

bool subset_words(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    if (any_bits(vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return false;
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool equal_words(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    if (any_bits(veorq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return false;
  for (; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool intersects_words(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    if (any_bits(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return true;
  for (; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

std::size_t popcount_words(const std::uint64_t* a, std::size_t n) {
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(vld1q_u64(a + i)));
    c += vaddvq_u8(bytes);
  }
  for (; i < n; ++i) c += static_cast<std::size_t>(__builtin_popcountll(a[i]));
  return c;
}

// NEON has no gather; the scalar loop is the right code here.
void gather_u32(std::uint32_t* dst, const std::uint32_t* table, const std::uint32_t* idx,
                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = table[idx[i]];
}

}  // namespace

const Kernels* neon_kernels_impl() {
  static const Kernels k{"neon",       and_words,        or_words,
                         andnot_words, subset_words,     equal_words,
                         intersects_words, popcount_words, gather_u32};
  return &k;
}

}  // namespace zjkit::simd
