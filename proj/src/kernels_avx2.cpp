/* AVX2 variants of the mod-p vector kernels.  This translation unit is
 * compiled with -mavx2; nothing here runs unless the dispatcher in
 * kernels.cpp has confirmed CPU support.
 *
 * Products use Shoup's trick: with cs = floor(c * 2^32 / p) precomputed,
 * t = lo32(c*x) - lo32(hi32(cs*x) * p) lies in [0, 2p) and is congruent to
 * c*x mod p, because hi32(cs*x) is either the true quotient floor(c*x/p) or
 * one less (valid whenever c < p < 2^31 and x < 2^32).  The final reduction
 * from [0, 2p) is branchless: min_u32(t, t - p) picks t when t < p (the
 * subtraction wraps to a huge value) and t - p otherwise. */

#include "hyperirr/kernels.hpp"

#include <immintrin.h>

namespace hyperirr::kernels {
namespace {

inline __m256i load(const std::uint32_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void store(std::uint32_t* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

// Lane-wise high 32 bits of the 64-bit products a[i] * b[i].
inline __m256i mulhi_u32(__m256i a, __m256i b) {
  __m256i even = _mm256_mul_epu32(a, b);
  __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), _mm256_srli_epi64(b, 32));
  even = _mm256_srli_epi64(even, 32);
  odd = _mm256_and_si256(odd, _mm256_set1_epi64x(static_cast<long long>(0xFFFFFFFF00000000ULL)));
  return _mm256_or_si256(even, odd);
}

// min_u32(v, v - p): reduces v in [0, 2p) to [0, p).
inline __m256i reduce_once(__m256i v, __m256i vp) {
  return _mm256_min_epu32(v, _mm256_sub_epi32(v, vp));
}

// (c * x) mod p for 8 lanes, given broadcast c, its Shoup companion, and p.
inline __m256i mulmod(__m256i vx, __m256i vc, __m256i vcs, __m256i vp) {
  __m256i hi = mulhi_u32(vcs, vx);
  __m256i lo = _mm256_mullo_epi32(vc, vx);
  __m256i t = _mm256_sub_epi32(lo, _mm256_mullo_epi32(hi, vp));
  return reduce_once(t, vp);
}

inline std::uint32_t shoup_of(std::uint32_t c, std::uint32_t p) {
  return std::uint32_t((std::uint64_t(c) << 32) / p);
}

void add_avx2(std::uint32_t* dst, const std::uint32_t* a, const std::uint32_t* b,
              std::size_t n, std::uint32_t p) {
  const __m256i vp = _mm256_set1_epi32(int(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8)
    store(dst + i, reduce_once(_mm256_add_epi32(load(a + i), load(b + i)), vp));
  for (; i < n; ++i) {
    std::uint32_t s = a[i] + b[i];
    dst[i] = s >= p ? s - p : s;
  }
}

void sub_avx2(std::uint32_t* dst, const std::uint32_t* a, const std::uint32_t* b,
              std::size_t n, std::uint32_t p) {
  const __m256i vp = _mm256_set1_epi32(int(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i s = _mm256_sub_epi32(_mm256_add_epi32(load(a + i), vp), load(b + i));
    store(dst + i, reduce_once(s, vp));
  }
  for (; i < n; ++i) {
    std::uint32_t s = a[i] + p - b[i];
    dst[i] = s >= p ? s - p : s;
  }
}

void axpy_avx2(std::uint32_t* acc, const std::uint32_t* x, std::uint32_t c,
               std::size_t n, std::uint32_t p) {
  if (c == 0) return;
  const __m256i vp = _mm256_set1_epi32(int(p));
  const __m256i vc = _mm256_set1_epi32(int(c));
  const __m256i vcs = _mm256_set1_epi32(int(shoup_of(c, p)));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i t = mulmod(load(x + i), vc, vcs, vp);
    store(acc + i, reduce_once(_mm256_add_epi32(load(acc + i), t), vp));
  }
  for (; i < n; ++i) {
    std::uint32_t t = std::uint32_t((std::uint64_t(c) * x[i]) % p);
    std::uint32_t s = acc[i] + t;
    acc[i] = s >= p ? s - p : s;
  }
}

void scale_avx2(std::uint32_t* dst, const std::uint32_t* x, std::uint32_t c,
                std::size_t n, std::uint32_t p) {
  const __m256i vp = _mm256_set1_epi32(int(p));
  const __m256i vc = _mm256_set1_epi32(int(c));
  const __m256i vcs = _mm256_set1_epi32(int(shoup_of(c, p)));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) store(dst + i, mulmod(load(x + i), vc, vcs, vp));
  for (; i < n; ++i) dst[i] = std::uint32_t((std::uint64_t(c) * x[i]) % p);
}

const ModOps kAvx2Ops = {"avx2", add_avx2, sub_avx2, axpy_avx2, scale_avx2};

} // namespace

namespace detail {
const ModOps* avx2_kernel_table() { return &kAvx2Ops; }
} // namespace detail

} // namespace hyperirr::kernels
