#include "hyperirr/hyper.hpp"

#include <algorithm>
#include <numeric>

#include "hyperirr/errors.hpp"
#include "hyperirr/numtheory.hpp"

namespace hyperirr::hyper {

namespace {

using std::uint64_t;

void check_prime_power(const mpz_class& q) {
  if (!numtheory::as_prime_power(q))
    raise(ErrorKind::NotPrimePower, "q = " + q.get_str() + " is not a prime power");
}

mpz_class pow_q(const mpz_class& q, uint64_t m) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(m));
  return r;
}

uint64_t checked_mt(uint64_t m, uint64_t t) {
  if (m == 0 || t == 0) raise(ErrorKind::InvalidArgument, "m and t must be >= 1");
  if (m > UINT64_MAX / t) raise(ErrorKind::InvalidArgument, "m*t overflows");
  return m * t;
}

/* gcd(t,4) times the product of the distinct odd primes of t. */
mpz_class odd_radical_witness(uint64_t t) {
  mpz_class tz(static_cast<unsigned long>(t));
  mpz_class w = gcd(tz, mpz_class(4));
  for (const mpz_class& p : numtheory::factor(tz).primes())
    if (p % 2 == 1) w *= p;
  return w;
}

} // namespace

mpz_class gauss_count(const mpz_class& q, uint64_t m) {
  check_prime_power(q);
  if (m == 0) raise(ErrorKind::InvalidArgument, "degree m must be >= 1");
  mpz_class sum = 0;
  for (uint64_t d : numtheory::divisors_u64(m)) {
    int mu = numtheory::moebius(mpz_class(static_cast<unsigned long>(d)));
    if (mu == 0) continue;
    sum += mu * (pow_q(q, m / d) - 1);
  }
  if (!mpz_divisible_ui_p(sum.get_mpz_t(), static_cast<unsigned long>(m)))
    raise(ErrorKind::InternalInconsistency, "irreducible-count sum not divisible by m");
  return sum / static_cast<unsigned long>(m);
}

ExistenceReport exists_factor(const mpz_class& q, uint64_t m, uint64_t t, uint64_t e) {
  check_prime_power(q);
  const uint64_t mt = checked_mt(m, t);
  if (e == 0) raise(ErrorKind::InvalidArgument, "factor degree e must be >= 1");
  if (2 * e <= mt)
    raise(ErrorKind::HypothesisViolated,
          "factor degree e = " + std::to_string(e) + " must exceed m*t/2 = " +
              std::to_string(mt) + "/2");

  ExistenceReport rep;
  rep.q = q;
  rep.m = m;
  rep.t = t;
  rep.e = e;
  rep.gcd_tq = gcd(mpz_class(static_cast<unsigned long>(t)), q);
  if (rep.gcd_tq == 1) {
    const mpz_class modulus = (pow_q(q, m) - 1) * static_cast<unsigned long>(t);
    rep.order_value = numtheory::mult_order(q, modulus).value;
    rep.exists = (*rep.order_value == static_cast<unsigned long>(e));
  } else {
    rep.exists = false;
  }
  if (e == mt) {
    rep.divisibility_witness = odd_radical_witness(t);
    rep.witness_divides =
        mpz_divisible_p(mpz_class(pow_q(q, m) - 1).get_mpz_t(),
                        rep.divisibility_witness->get_mpz_t()) != 0;
  }
  return rep;
}

ExistenceReport exists_hyper(const mpz_class& q, uint64_t m, uint64_t t) {
  ExistenceReport rep = exists_factor(q, m, t, checked_mt(m, t));
  if (rep.exists != *rep.witness_divides)
    raise(ErrorKind::InternalInconsistency,
          "order criterion and divisibility criterion disagree at q=" + q.get_str() +
              " m=" + std::to_string(m) + " t=" + std::to_string(t));
  return rep;
}

std::vector<uint64_t> compute_J(const mpz_class& q, uint64_t m, uint64_t t) {
  check_prime_power(q);
  checked_mt(m, t);
  const mpz_class qm1 = pow_q(q, m) - 1;
  const mpz_class tz(static_cast<unsigned long>(t));
  std::vector<uint64_t> J;
  for (uint64_t j : numtheory::divisors_u64(m)) {
    const mpz_class quotient = qm1 / (pow_q(q, m / j) - 1); // exact: m/j | m
    if (gcd(quotient, tz) == 1) J.push_back(j);
  }
  std::sort(J.begin(), J.end());
  return J;
}

CountReport count_hyper(const mpz_class& q, uint64_t m, uint64_t t) {
  ExistenceReport ex = exists_hyper(q, m, t);
  if (!ex.exists)
    raise(ErrorKind::NonExistence,
          "no fully-composed witness exists at q=" + q.get_str() + " m=" +
              std::to_string(m) + " t=" + std::to_string(t) +
              "; the count formula does not apply");

  CountReport rep;
  rep.q = q;
  rep.m = m;
  rep.t = t;
  rep.e = m * t;
  rep.J = compute_J(q, m, t);

  const mpz_class phi_t = numtheory::euler_phi(mpz_class(static_cast<unsigned long>(t)));
  mpz_class sum = 0;
  for (uint64_t j : rep.J) {
    int mu = numtheory::moebius(mpz_class(static_cast<unsigned long>(j)));
    if (mu == 0) continue;
    sum += mu * (pow_q(q, m / j) - 1);
  }
  const mpz_class denom =
      mpz_class(static_cast<unsigned long>(m)) * static_cast<unsigned long>(t);
  const mpz_class numer = phi_t * sum;
  if (!mpz_divisible_p(numer.get_mpz_t(), denom.get_mpz_t()))
    raise(ErrorKind::NonIntegralFormula,
          "count formula is non-integral at q=" + q.get_str() + " m=" +
              std::to_string(m) + " t=" + std::to_string(t));
  rep.count = numer / denom;

  const mpz_class qm1 = pow_q(q, m) - 1;
  rep.lower_bound =
      mpq_class(phi_t * qm1, mpz_class(static_cast<unsigned long>(t)) *
                                 (mpz_class(static_cast<unsigned long>(m)) + 1));
  rep.upper_bound = mpq_class(phi_t * qm1, denom);
  rep.lower_bound.canonicalize();
  rep.upper_bound.canonicalize();
  return rep;
}

CountReport count_almost(const mpz_class& q, uint64_t m, uint64_t t, uint64_t e) {
  ExistenceReport ex = exists_factor(q, m, t, e); // validates inputs + hypothesis
  const uint64_t mt = m * t;
  if (!ex.exists) {
    CountReport rep;
    rep.q = q;
    rep.m = m;
    rep.t = t;
    rep.e = e;
    rep.count = 0;
    rep.J = compute_J(q, m, t);
    return rep;
  }
  if (e == mt) return count_hyper(q, m, t);

  // strictly-between case: the factor degree forces a single odd prime s whose
  // full power divides out of t
  if (e % m != 0)
    raise(ErrorKind::InternalInconsistency,
          "existence holds but m does not divide e (q=" + q.get_str() + ")");
  const uint64_t k = e / m;
  const uint64_t s = t / std::gcd(k, t);
  const mpz_class sz(static_cast<unsigned long>(s));
  if (s % 2 == 0 || !numtheory::is_prime(sz))
    raise(ErrorKind::InternalInconsistency,
          "forced reduction value s = " + std::to_string(s) + " is not an odd prime");
  if (mpz_divisible_p(mpz_class(pow_q(q, m) - 1).get_mpz_t(), sz.get_mpz_t()))
    raise(ErrorKind::InternalInconsistency,
          "forced odd prime s = " + std::to_string(s) + " divides q^m - 1");

  const mpz_class t_red_z =
      numtheory::s_coprime_part(mpz_class(static_cast<unsigned long>(t)), sz);
  const uint64_t t_red = mpz_get_ui(t_red_z.get_mpz_t());

  ExistenceReport ex_red = exists_hyper(q, m, t_red);
  if (!ex_red.exists)
    raise(ErrorKind::InternalInconsistency,
          "reduced parameter t' = " + std::to_string(t_red) +
              " unexpectedly fails existence");

  CountReport rep = count_hyper(q, m, t_red);
  rep.t = t;
  rep.e = e;
  rep.reduction = Reduction{sz, t_red};
  return rep;
}

} // namespace hyperirr::hyper
