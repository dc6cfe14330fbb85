#include "hyperirr/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

#include "hyperirr/errors.hpp"

namespace hyperirr::kernels {

namespace {

void add_scalar(std::uint32_t* dst, const std::uint32_t* a, const std::uint32_t* b,
                std::size_t n, std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t s = a[i] + b[i]; // < 2p < 2^32
    dst[i] = s >= p ? s - p : s;
  }
}

void sub_scalar(std::uint32_t* dst, const std::uint32_t* a, const std::uint32_t* b,
                std::size_t n, std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t s = a[i] + p - b[i];
    dst[i] = s >= p ? s - p : s;
  }
}

void axpy_scalar(std::uint32_t* acc, const std::uint32_t* x, std::uint32_t c,
                 std::size_t n, std::uint32_t p) {
  if (c == 0) return;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t t = std::uint32_t((std::uint64_t(c) * x[i]) % p);
    std::uint32_t s = acc[i] + t;
    acc[i] = s >= p ? s - p : s;
  }
}

void scale_scalar(std::uint32_t* dst, const std::uint32_t* x, std::uint32_t c,
                  std::size_t n, std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i)
    dst[i] = std::uint32_t((std::uint64_t(c) * x[i]) % p);
}

const ModOps kScalarOps = {"scalar", add_scalar, sub_scalar, axpy_scalar, scale_scalar};

const ModOps& select_active() {
  const char* req = std::getenv("HYPERIRR_KERNEL");
  if (req != nullptr) {
    if (std::strcmp(req, "scalar") == 0) return kScalarOps;
    if (std::strcmp(req, "avx2") == 0) {
      const ModOps* v = avx2_ops();
      if (v == nullptr)
        raise(ErrorKind::InvalidArgument,
              "HYPERIRR_KERNEL=avx2 requested but AVX2 is unavailable");
      return *v;
    }
    raise(ErrorKind::InvalidArgument,
          std::string("HYPERIRR_KERNEL: unknown value \"") + req +
              "\" (expected \"scalar\" or \"avx2\")");
  }
  const ModOps* v = avx2_ops();
  return v != nullptr ? *v : kScalarOps;
}

} // namespace

const ModOps& scalar_ops() { return kScalarOps; }

#if defined(HYPERIRR_HAVE_AVX2_TU)
namespace detail {
const ModOps* avx2_kernel_table(); // defined in the -mavx2 translation unit
}

const ModOps* avx2_ops() {
  // The capability check lives here, outside the -mavx2 unit, so it is safe
  // to call on any x86-64 CPU.
  static const ModOps* table =
      __builtin_cpu_supports("avx2") ? detail::avx2_kernel_table() : nullptr;
  return table;
}
#else
const ModOps* avx2_ops() { return nullptr; }
#endif

const ModOps& active_ops() {
  static const ModOps& chosen = select_active();
  return chosen;
}

} // namespace hyperirr::kernels
