#pragma once

#include <cstddef>
#include <cstdint>

namespace hyperirr::kernels {

/* Vector kernels for arrays of residues mod a prime p < 2^31, stored as
 * uint32_t values in [0, p).  These are the inner loops of prime-field
 * polynomial arithmetic.  Two implementations ship: a scalar reference
 * (plain 64-bit remainder) and an AVX2 variant using Shoup multiplication;
 * the active one is chosen at startup from CPU capabilities (overridable via
 * the HYPERIRR_KERNEL environment variable, values "scalar" or "avx2").
 *
 * Contracts, for all entry points: inputs already reduced mod p, n may be 0,
 * scalar c reduced mod p.  add/sub/scale tolerate dst aliasing an input;
 * axpy requires acc and x to be distinct arrays. */
struct ModOps {
  const char* name;
  // dst[i] = (a[i] + b[i]) mod p
  void (*add)(std::uint32_t* dst, const std::uint32_t* a, const std::uint32_t* b,
              std::size_t n, std::uint32_t p);
  // dst[i] = (a[i] - b[i]) mod p
  void (*sub)(std::uint32_t* dst, const std::uint32_t* a, const std::uint32_t* b,
              std::size_t n, std::uint32_t p);
  // acc[i] = (acc[i] + c * x[i]) mod p
  void (*axpy)(std::uint32_t* acc, const std::uint32_t* x, std::uint32_t c,
               std::size_t n, std::uint32_t p);
  // dst[i] = (c * x[i]) mod p
  void (*scale)(std::uint32_t* dst, const std::uint32_t* x, std::uint32_t c,
                std::size_t n, std::uint32_t p);
};

/// The portable reference implementation (always available).
const ModOps& scalar_ops();

/// The AVX2 implementation, or nullptr when the CPU (or build) lacks AVX2.
const ModOps* avx2_ops();

/// The implementation selected for this process.
const ModOps& active_ops();

} // namespace hyperirr::kernels
