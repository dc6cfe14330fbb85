#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace hyperirr::hyper {

/* Existence verdict for "some monic irreducible f of degree m has the
 * property that f(x^t) gains an irreducible factor of degree e".  The two
 * independent criteria are both recorded so callers (and tests) can see that
 * they agree. */
struct ExistenceReport {
  mpz_class q;
  std::uint64_t m = 0, t = 0, e = 0;
  mpz_class gcd_tq;                          // gcd(t, q)
  std::optional<mpz_class> order_value;      // ord of q mod (q^m-1)t, when coprime
  bool exists = false;
  /* Filled only in the full-composition case e = m*t: the divisibility
   * criterion gcd(t,4) * (product of distinct odd primes of t) | q^m - 1. */
  std::optional<mpz_class> divisibility_witness;
  std::optional<bool> witness_divides;
};

struct Reduction {
  mpz_class s;              // odd prime peeled from t
  std::uint64_t t_reduced;  // t with every factor of s removed
};

struct CountReport {
  mpz_class q;
  std::uint64_t m = 0, t = 0, e = 0;
  mpz_class count;
  mpq_class lower_bound, upper_bound;  // exact rationals, zero when count = 0
  std::vector<std::uint64_t> J;        // the divisor set entering the count formula
  std::optional<Reduction> reduction;  // present when e < m*t forced a t-reduction
};

/// Number of monic irreducible polynomials != x of degree m over F_q:
/// (1/m) * sum over d | m of mu(d) * (q^(m/d) - 1).
mpz_class gauss_count(const mpz_class& q, std::uint64_t m);

/// Existence of a monic irreducible f (deg m, f != x) such that f(x^t) has an
/// irreducible factor of degree e.  Only the range e > m*t/2 is decidable
/// here; smaller e is rejected.
ExistenceReport exists_factor(const mpz_class& q, std::uint64_t m, std::uint64_t t,
                              std::uint64_t e);

/// The fully-composed case e = m*t: f(x^t) itself irreducible.  Evaluates the
/// order criterion and the divisibility criterion and insists they agree.
ExistenceReport exists_hyper(const mpz_class& q, std::uint64_t m, std::uint64_t t);

/// { j : j | m, gcd((q^m-1)/(q^(m/j)-1), t) = 1 }, sorted ascending.
std::vector<std::uint64_t> compute_J(const mpz_class& q, std::uint64_t m,
                                     std::uint64_t t);

/// Exact count of monic irreducible f (deg m, f != x) with f(x^t) irreducible:
/// (phi(t)/(m t)) * sum over j in J of mu(j)(q^(m/j) - 1), with the exact
/// rational sandwich phi(t)(q^m-1)/(t(m+1)) <= count <= phi(t)(q^m-1)/(t m).
/// Refuses (NonExistence) when no such f exists.
CountReport count_hyper(const mpz_class& q, std::uint64_t m, std::uint64_t t);

/// Total counting function for e > m*t/2: zero when existence fails; the
/// count_hyper value when e = m*t; otherwise reduces t by the forced odd prime
/// s = t/gcd(e/m, t) and counts with t_reduced, recording the reduction.
CountReport count_almost(const mpz_class& q, std::uint64_t m, std::uint64_t t,
                         std::uint64_t e);

} // namespace hyperirr::hyper
