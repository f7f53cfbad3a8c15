#pragma once

// Word-level kernels behind ElementSet and the table gathers used for
// conjugation. A scalar reference set is always available; vector variants
// are compiled per architecture and picked once at startup.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace zjkit::simd {

struct Kernels {
  const char* name;

  void (*and_words)(std::uint64_t* dst, const std::uint64_t* a,
                    const std::uint64_t* b, std::size_t n);
  void (*or_words)(std::uint64_t* dst, const std::uint64_t* a,
                   const std::uint64_t* b, std::size_t n);
  // dst = a & ~b
  void (*andnot_words)(std::uint64_t* dst, const std::uint64_t* a,
                       const std::uint64_t* b, std::size_t n);
  // true iff every bit of a is set in b
  bool (*subset_words)(const std::uint64_t* a, const std::uint64_t* b,
                       std::size_t n);
  bool (*equal_words)(const std::uint64_t* a, const std::uint64_t* b,
                      std::size_t n);
  bool (*intersects_words)(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t n);
  std::size_t (*popcount_words)(const std::uint64_t* a, std::size_t n);
  // dst[i] = table[idx[i]]
  void (*gather_u32)(std::uint32_t* dst, const std::uint32_t* table,
                     const std::uint32_t* idx, std::size_t n);
};

const Kernels& scalar_kernels();

/// nullptr when the variant was not compiled in or the CPU lacks support.
const Kernels* avx2_kernels();
const Kernels* neon_kernels();

/// The kernel set every ElementSet operation routes through. Chosen on first
/// use: the widest supported variant, unless ZJKIT_SIMD=scalar is set.
const Kernels& active();

/// Force a variant by name ("scalar", "avx2", "neon"). Returns false and
/// leaves the selection unchanged when that variant is unavailable.
bool select(std::string_view name);

}  // namespace zjkit::simd
