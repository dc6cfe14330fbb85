#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hyperirr/kernels.hpp"

using namespace hyperirr::kernels;

namespace {

// Primes chosen to stress boundaries: tiny, odd sizes, and the largest
// allowed (p < 2^31).
const std::uint32_t kPrimes[] = {2,      3,          5,         17,
                                 257,    65537,      1000003,   2147483647u};

std::vector<std::uint32_t> random_residues(std::mt19937_64& rng, std::size_t n,
                                           std::uint32_t p) {
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = std::uint32_t(rng() % p);
  return v;
}

// Slow but obviously-correct models.
std::uint32_t model_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return std::uint32_t((std::uint64_t(a) + b) % p);
}
std::uint32_t model_sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return std::uint32_t((std::uint64_t(a) + p - b) % p);
}
std::uint32_t model_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return std::uint32_t(std::uint64_t(a) * b % p);
}

void check_ops_against_model(const ModOps& ops) {
  std::mt19937_64 rng(20240817);
  for (std::uint32_t p : kPrimes) {
    for (std::size_t n : {0u, 1u, 3u, 7u, 8u, 9u, 16u, 31u, 40u, 100u, 257u}) {
      auto a = random_residues(rng, n, p);
      auto b = random_residues(rng, n, p);
      std::uint32_t c = std::uint32_t(rng() % p);

      std::vector<std::uint32_t> got(n), want(n);

      ops.add(got.data(), a.data(), b.data(), n, p);
      for (std::size_t i = 0; i < n; ++i) want[i] = model_add(a[i], b[i], p);
      CHECK(got == want);

      ops.sub(got.data(), a.data(), b.data(), n, p);
      for (std::size_t i = 0; i < n; ++i) want[i] = model_sub(a[i], b[i], p);
      CHECK(got == want);

      ops.scale(got.data(), a.data(), c, n, p);
      for (std::size_t i = 0; i < n; ++i) want[i] = model_mul(c, a[i], p);
      CHECK(got == want);

      std::vector<std::uint32_t> acc = b;
      ops.axpy(acc.data(), a.data(), c, n, p);
      for (std::size_t i = 0; i < n; ++i)
        want[i] = model_add(b[i], model_mul(c, a[i], p), p);
      CHECK(acc == want);

      // aliasing: dst == a for add/sub/scale
      std::vector<std::uint32_t> inplace = a;
      ops.add(inplace.data(), inplace.data(), b.data(), n, p);
      for (std::size_t i = 0; i < n; ++i) want[i] = model_add(a[i], b[i], p);
      CHECK(inplace == want);
    }

    // extreme residues: p-1 everywhere, c = p-1
    const std::size_t n = 24;
    std::vector<std::uint32_t> hi(n, p - 1), got(n), acc(n, p - 1);
    ops.add(got.data(), hi.data(), hi.data(), n, p);
    for (auto v : got) CHECK(v == model_add(p - 1, p - 1, p));
    ops.axpy(acc.data(), hi.data(), p - 1, n, p);
    for (auto v : acc)
      CHECK(v == model_add(p - 1, model_mul(p - 1, p - 1, p), p));
  }
}

} // namespace

TEST_CASE("scalar kernels match the arithmetic model") {
  check_ops_against_model(scalar_ops());
}

TEST_CASE("avx2 kernels match the arithmetic model") {
  const ModOps* v = avx2_ops();
  if (v == nullptr) {
    MESSAGE("AVX2 unavailable on this machine; variant not exercised");
    return;
  }
  check_ops_against_model(*v);
}

TEST_CASE("avx2 and scalar agree on random batches") {
  const ModOps* v = avx2_ops();
  if (v == nullptr) {
    MESSAGE("AVX2 unavailable on this machine; equivalence not exercised");
    return;
  }
  const ModOps& s = scalar_ops();
  std::mt19937_64 rng(987654321);
  for (int round = 0; round < 200; ++round) {
    std::uint32_t p = kPrimes[rng() % (sizeof(kPrimes) / sizeof(kPrimes[0]))];
    std::size_t n = 1 + rng() % 300;
    auto a = random_residues(rng, n, p);
    auto b = random_residues(rng, n, p);
    std::uint32_t c = std::uint32_t(rng() % p);

    std::vector<std::uint32_t> r1(n), r2(n);
    s.add(r1.data(), a.data(), b.data(), n, p);
    v->add(r2.data(), a.data(), b.data(), n, p);
    CHECK(r1 == r2);
    s.sub(r1.data(), a.data(), b.data(), n, p);
    v->sub(r2.data(), a.data(), b.data(), n, p);
    CHECK(r1 == r2);
    s.scale(r1.data(), a.data(), c, n, p);
    v->scale(r2.data(), a.data(), c, n, p);
    CHECK(r1 == r2);
    std::vector<std::uint32_t> acc1 = b, acc2 = b;
    s.axpy(acc1.data(), a.data(), c, n, p);
    v->axpy(acc2.data(), a.data(), c, n, p);
    CHECK(acc1 == acc2);
  }
}

TEST_CASE("active kernel selection is sane") {
  const ModOps& act = active_ops();
  CHECK((std::string(act.name) == "scalar" || std::string(act.name) == "avx2"));
  if (avx2_ops() == nullptr) CHECK(std::string(act.name) == "scalar");
}
