#include "hyperirr/numtheory.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace hyperirr::numtheory {

namespace {

constexpr std::uint32_t kTrialBound = 1'000'000;

std::vector<std::uint32_t> build_small_primes() {
  std::vector<bool> composite(kTrialBound, false);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i < kTrialBound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = std::uint64_t(i) * i; j < kTrialBound; j += i)
      composite[std::size_t(j)] = true;
  }
  return primes;
}

std::string str(const mpz_class& v) { return v.get_str(); }

/* ---- primality ---------------------------------------------------------- */

// True if a witnesses compositeness of odd n = d * 2^r + 1.
bool mr_composite_witness(const mpz_class& n, const mpz_class& nm1,
                          const mpz_class& d, mp_bitcnt_t r,
                          unsigned long base) {
  mpz_class a(base), x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == nm1) return false;
  for (mp_bitcnt_t i = 1; i < r; ++i) {
    x = (x * x) % n;
    if (x == nm1) return false;
  }
  return true;
}

// The 12-prime base set decides primality exactly for n < 3.317e24.
constexpr unsigned long kCoreBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
constexpr unsigned long kExtraBases[] = {41,  43,  47,  53,  59,  61,  67,  71,
                                         73,  79,  83,  89,  97,  101, 103, 107,
                                         109, 113, 127, 131, 137, 139, 149, 151,
                                         157, 163, 167, 173};

const mpz_class& mr_core_limit() {
  static const mpz_class limit("3317044064679887385961981");
  return limit;
}

/* ---- Pollard rho (Brent variant) ---------------------------------------- */

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return std::uint64_t((unsigned __int128)(a) * b % n);
}

// One Brent round with polynomial x^2 + c; returns a nontrivial factor or n.
std::uint64_t brent_round_u64(std::uint64_t n, std::uint64_t c) {
  const std::uint64_t m = 128;
  std::uint64_t y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
  do {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
    for (std::uint64_t k = 0; k < r && g == 1; k += m) {
      ys = y;
      const std::uint64_t lim = std::min(m, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        y = (mulmod_u64(y, y, n) + c) % n;
        q = mulmod_u64(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
    }
    r *= 2;
  } while (g == 1);
  if (g == n) {
    // The batched gcd collapsed; replay one step at a time.
    do {
      ys = (mulmod_u64(ys, ys, n) + c) % n;
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

std::uint64_t rho_u64(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t g = brent_round_u64(n, c);
    if (g != n) return g;
  }
}

mpz_class brent_round_mpz(const mpz_class& n, unsigned long c) {
  const unsigned long m = 128;
  mpz_class y = 2, q = 1, g = 1, x, ys, diff;
  unsigned long r = 1;
  auto step = [&](mpz_class& v) {
    v = (v * v + c) % n;
  };
  do {
    x = y;
    for (unsigned long i = 0; i < r; ++i) step(y);
    for (unsigned long k = 0; k < r && g == 1; k += m) {
      ys = y;
      const unsigned long lim = std::min(m, r - k);
      for (unsigned long i = 0; i < lim; ++i) {
        step(y);
        diff = x - y;
        mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
        q = (q * diff) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    }
    r *= 2;
  } while (g == 1);
  if (g == n) {
    do {
      step(ys);
      diff = x - ys;
      mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

mpz_class rho_mpz(const mpz_class& n) {
  for (unsigned long c = 1;; ++c) {
    mpz_class g = brent_round_mpz(n, c);
    if (g != n) return g;
  }
}

/* ---- factorization core -------------------------------------------------- */

Factorization factor_uncached(const mpz_class& n) {
  Factorization out;
  mpz_class rest = n;
  for (std::uint32_t p : small_primes()) {
    if (mpz_cmp_ui(rest.get_mpz_t(), 1) == 0) break;
    // Once p^2 exceeds the remainder, the remainder itself is prime.
    if (mpz_cmp_ui(rest.get_mpz_t(), std::uint64_t(p) * p) < 0) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      unsigned e = 0;
      do {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
      out.parts.push_back({mpz_class(p), e});
    }
  }

  if (rest != 1) {
    std::vector<mpz_class> big, stack{rest};
    while (!stack.empty()) {
      mpz_class v = stack.back();
      stack.pop_back();
      if (is_prime(v)) {
        big.push_back(v);
        continue;
      }
      mpz_class d = mpz_fits_ulong_p(v.get_mpz_t())
                        ? mpz_class(rho_u64(v.get_ui()))
                        : rho_mpz(v);
      stack.push_back(d);
      stack.push_back(v / d);
    }
    std::sort(big.begin(), big.end());
    for (std::size_t i = 0; i < big.size();) {
      std::size_t j = i;
      while (j < big.size() && big[j] == big[i]) ++j;
      out.parts.push_back({big[i], unsigned(j - i)});
      i = j;
    }
  }

  std::sort(out.parts.begin(), out.parts.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return out;
}

/* ---- cache --------------------------------------------------------------- */

struct FactorCache {
  std::mutex mu;
  std::map<mpz_class, Factorization> entries;
  bool enabled = true;
  static constexpr std::size_t kMaxEntries = 1u << 17;
};

FactorCache& factor_cache() {
  static FactorCache cache;
  return cache;
}

} // namespace

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = build_small_primes();
  return primes;
}

void set_factor_cache(bool enabled) {
  FactorCache& c = factor_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  c.enabled = enabled;
  if (!enabled) c.entries.clear();
}

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  for (unsigned long p : kCoreBases) {
    if (mpz_cmp_ui(n.get_mpz_t(), p) == 0) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  mpz_class nm1 = n - 1, d = nm1;
  mp_bitcnt_t r = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
  for (unsigned long a : kCoreBases)
    if (mr_composite_witness(n, nm1, d, r, a)) return false;
  if (n >= mr_core_limit()) {
    for (unsigned long a : kExtraBases)
      if (mr_composite_witness(n, nm1, d, r, a)) return false;
  }
  return true;
}

Factorization factor(const mpz_class& n) {
  if (n < 1)
    raise(ErrorKind::InvalidArgument, "factor: n must be >= 1, got " + str(n));
  if (n == 1) return {};

  FactorCache& cache = factor_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    if (cache.enabled) {
      auto it = cache.entries.find(n);
      if (it != cache.entries.end()) return it->second;
    }
  }

  Factorization result = factor_uncached(n);

  {
    std::lock_guard<std::mutex> lock(cache.mu);
    if (cache.enabled) {
      if (cache.entries.size() >= FactorCache::kMaxEntries) cache.entries.clear();
      cache.entries.emplace(n, result);
    }
  }
  return result;
}

mpz_class Factorization::value() const {
  mpz_class v = 1;
  for (const PrimePower& pp : parts) {
    mpz_class q;
    mpz_pow_ui(q.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    v *= q;
  }
  return v;
}

bool Factorization::has_prime(const mpz_class& p) const {
  return exponent_of(p) != 0;
}

unsigned Factorization::exponent_of(const mpz_class& p) const {
  for (const PrimePower& pp : parts)
    if (pp.prime == p) return pp.exponent;
  return 0;
}

std::vector<mpz_class> Factorization::primes() const {
  std::vector<mpz_class> out;
  out.reserve(parts.size());
  for (const PrimePower& pp : parts) out.push_back(pp.prime);
  return out;
}

int moebius(const mpz_class& n) {
  Factorization f = factor(n);
  for (const PrimePower& pp : f.parts)
    if (pp.exponent > 1) return 0;
  return f.parts.size() % 2 == 0 ? 1 : -1;
}

mpz_class euler_phi(const mpz_class& n) {
  Factorization f = factor(n);
  mpz_class v = 1;
  for (const PrimePower& pp : f.parts) {
    mpz_class q;
    mpz_pow_ui(q.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent - 1);
    v *= q * (pp.prime - 1);
  }
  return v;
}

mpz_class carmichael(const mpz_class& n) {
  Factorization f = factor(n);
  mpz_class v = 1;
  for (const PrimePower& pp : f.parts) {
    mpz_class part;
    if (pp.prime == 2) {
      if (pp.exponent == 1)      part = 1;
      else if (pp.exponent == 2) part = 2;
      else {
        mpz_pow_ui(part.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent - 2);
      }
    } else {
      mpz_pow_ui(part.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent - 1);
      part *= pp.prime - 1;
    }
    mpz_lcm(v.get_mpz_t(), v.get_mpz_t(), part.get_mpz_t());
  }
  return v;
}

std::vector<mpz_class> divisors(const mpz_class& n) {
  Factorization f = factor(n);
  std::vector<mpz_class> out{1};
  for (const PrimePower& pp : f.parts) {
    const std::size_t base = out.size();
    mpz_class q = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      q *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> divisors_u64(std::uint64_t n) {
  std::vector<mpz_class> ds = divisors(mpz_class(static_cast<unsigned long>(n)));
  std::vector<std::uint64_t> out;
  out.reserve(ds.size());
  for (const mpz_class& d : ds) out.push_back(d.get_ui());
  return out;
}

std::optional<std::pair<mpz_class, unsigned>> as_prime_power(const mpz_class& q) {
  if (q < 2) return std::nullopt;
  Factorization f = factor(q);
  if (f.parts.size() != 1) return std::nullopt;
  return std::make_pair(f.parts[0].prime, f.parts[0].exponent);
}

OrderValue mult_order(const mpz_class& a, const mpz_class& r) {
  if (r < 1)
    raise(ErrorKind::InvalidArgument, "mult_order: modulus must be >= 1, got " + str(r));
  if (a < 0)
    raise(ErrorKind::InvalidArgument, "mult_order: base must be >= 0, got " + str(a));
  if (r == 1) return {1, r, a};

  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), r.get_mpz_t());
  if (g != 1)
    raise(ErrorKind::NotCoprime,
          "mult_order: gcd(" + str(a) + ", " + str(r) + ") = " + str(g) + " != 1");

  Factorization rf = factor(r);
  mpz_class order = 1;
  for (const PrimePower& pp : rf.parts) {
    // Order modulo the prime: start from p-1 and strip prime factors of p-1
    // as long as a^(d/s) stays 1.
    mpz_class d = pp.prime - 1;
    for (const mpz_class& s : factor(pp.prime - 1).primes()) {
      while (mpz_divisible_p(d.get_mpz_t(), s.get_mpz_t())) {
        mpz_class cand = d / s, x;
        mpz_powm(x.get_mpz_t(), a.get_mpz_t(), cand.get_mpz_t(), pp.prime.get_mpz_t());
        if (x != 1) break;
        d = cand;
      }
    }
    // Lift to p^e: at each step the order either stays or picks up a factor p.
    mpz_class pk = pp.prime;
    for (unsigned j = 2; j <= pp.exponent; ++j) {
      pk *= pp.prime;
      mpz_class x;
      mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), pk.get_mpz_t());
      if (x != 1) d *= pp.prime;
    }
    mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), d.get_mpz_t());
  }
  return {order, r, a};
}

mpz_class s_part(const mpz_class& t, const mpz_class& s) {
  if (t < 1)
    raise(ErrorKind::InvalidArgument, "s_part: t must be >= 1, got " + str(t));
  if (!is_prime(s))
    raise(ErrorKind::NotPrime, "s_part: s = " + str(s) + " is not prime");
  mpz_class rest = t, part = 1;
  while (mpz_divisible_p(rest.get_mpz_t(), s.get_mpz_t())) {
    rest /= s;
    part *= s;
  }
  return part;
}

mpz_class s_coprime_part(const mpz_class& t, const mpz_class& s) {
  return t / s_part(t, s);
}

} // namespace hyperirr::numtheory
