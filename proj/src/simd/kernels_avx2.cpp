// Compiled with -mavx2 on x86-64 only; never called unless the CPU reports
// AVX2 at runtime.
#include <immintrin.h>

#include <bit>

#include "zjkit/simd/kernels.hpp"

namespace zjkit::simd {
namespace {

inline __m256i load(const std::uint64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}
inline void store(std::uint64_t* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

void and_words(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
               std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_and_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_words(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_or_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void andnot_words(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                  std::size_t n) {
  std::size_t i = 0;
  // _mm256_andnot_si256(x, y) = ~x & y
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_andnot_si256(load(b + i), load(a + i)));
  for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

bool subset_words(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i stray = _mm256_andnot_si256(load(b + i), load(a + i));
    if (!_mm256_testz_si256(stray, stray)) return false;
  }
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool equal_words(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i diff = _mm256_xor_si256(load(a + i), load(b + i));
    if (!_mm256_testz_si256(diff, diff)) return false;
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool intersects_words(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    if (!_mm256_testz_si256(load(a + i), load(b + i))) return true;
  for (; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

std::size_t popcount_words(const std::uint64_t* a, std::size_t n) {
  // No vector popcount below AVX-512; the hardware scalar instruction is
  // already one per word.
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(_mm_popcnt_u64(a[i]));
  return c;
}

void gather_u32(std::uint32_t* dst, const std::uint32_t* table, const std::uint32_t* idx,
                std::size_t n) {
  std::size_t i = 0;
  const int* base = reinterpret_cast<const int*>(table);
  for (; i + 8 <= n; i += 8) {
    __m256i vi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(idx + i));
    __m256i v = _mm256_i32gather_epi32(base, vi, 4);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), v);
  }
  for (; i < n; ++i) dst[i] = table[idx[i]];
}

}  // namespace

const Kernels* avx2_kernels_impl() {
  static const Kernels k{"avx2",       and_words,        or_words,
                         andnot_words, subset_words,     equal_words,
                         intersects_words, popcount_words, gather_u32};
  return &k;
}

}  // namespace zjkit::simd
