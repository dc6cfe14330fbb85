#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hyperirr/errors.hpp"

namespace hyperirr::numtheory {

struct PrimePower {
  mpz_class prime;
  unsigned exponent = 0;
};

/* Complete factorization of a positive integer: primes strictly increasing,
 * every exponent >= 1.  The factorization of 1 has no entries. */
struct Factorization {
  std::vector<PrimePower> parts;

  /// Reconstructs the factored integer.
  mpz_class value() const;

  bool has_prime(const mpz_class& p) const;
  unsigned exponent_of(const mpz_class& p) const;

  /// Distinct primes, increasing.
  std::vector<mpz_class> primes() const;
};

/// Factors n >= 1: trial division by primes below 10^6, then Pollard-Brent rho
/// with deterministic parameters on whatever survives.  Results are cached
/// (thread-safe); see set_factor_cache().
Factorization factor(const mpz_class& n);

/// Deterministic Miller-Rabin.  The fixed base set is exact for n below
/// 3.317e24; above that, extra fixed bases keep the answer deterministic and
/// reliable far beyond the sizes this library targets.
bool is_prime(const mpz_class& n);

/// Moebius function: 0 if n has a squared prime factor, else (-1)^(#primes).
int moebius(const mpz_class& n);

mpz_class euler_phi(const mpz_class& n);

/// Carmichael function: exponent of the unit group mod n.
mpz_class carmichael(const mpz_class& n);

/// All positive divisors, sorted increasing.
std::vector<mpz_class> divisors(const mpz_class& n);
std::vector<std::uint64_t> divisors_u64(std::uint64_t n);

/// q = p^k with p prime, k >= 1?  Returns (p, k) or nullopt.
std::optional<std::pair<mpz_class, unsigned>> as_prime_power(const mpz_class& q);

struct OrderValue {
  mpz_class value;   // the multiplicative order
  mpz_class modulus; // r
  mpz_class base;    // a, as given (not reduced)
};

/// Order of a in (Z/rZ)^*.  Requires gcd(a, r) == 1 (throws NotCoprime
/// otherwise, which also rejects a == 0 mod r for r > 1).  mult_order(a, 1)
/// is 1.  Computed structurally: order modulo each prime p | r by stripping
/// prime factors of p-1 from the exponent, lifted to p^k one power at a time,
/// then combined by lcm — never by scanning exponents.
OrderValue mult_order(const mpz_class& a, const mpz_class& r);

/// Largest power of the prime s dividing t (the "s-part").  t >= 1.
mpz_class s_part(const mpz_class& t, const mpz_class& s);

/// t divided by its s-part (the "s'-part"): the largest divisor coprime to s.
mpz_class s_coprime_part(const mpz_class& t, const mpz_class& s);

/// Enables/disables the internal factorization cache (on by default).
/// Disabling also clears it.
void set_factor_cache(bool enabled);

/// Sorted primes below 10^6 (built once, lazily).
const std::vector<std::uint32_t>& small_primes();

} // namespace hyperirr::numtheory
