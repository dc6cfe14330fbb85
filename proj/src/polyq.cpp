#include "hyperirr/polyq.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <random>
#include <sstream>

#include "hyperirr/errors.hpp"
#include "hyperirr/kernels.hpp"
#include "hyperirr/numtheory.hpp"

namespace hyperirr::polyq {

namespace {

using std::size_t;
using std::uint32_t;
using std::uint64_t;

const Field& need_field(const Poly& a) {
  if (!a.attached()) raise(ErrorKind::InvalidArgument, "polynomial has no field attached");
  return *a.field();
}

const Field& need_same(const Poly& a, const Poly& b) {
  const Field& fa = need_field(a);
  const Field& fb = need_field(b);
  if (!fa.same_as(fb)) raise(ErrorKind::FieldMismatch, "polynomials over different fields");
  return fa;
}

/* Write the base-p digit expansion of index into k consecutive words. */
void index_to_words(uint32_t* dst, uint64_t index, uint32_t p, unsigned k) {
  for (unsigned i = 0; i < k; ++i) {
    dst[i] = static_cast<uint32_t>(index % p);
    index /= p;
  }
}

} // namespace

// ---------------------------------------------------------------------------
// Poly basics

void Poly::normalize() {
  if (!f_) { w_.clear(); return; }
  const unsigned k = f_->ext_degree();
  while (w_.size() >= k && f_->el_is_zero(w_.data() + w_.size() - k))
    w_.resize(w_.size() - k);
}

Poly Poly::zero(FieldPtr f) {
  if (!f) raise(ErrorKind::InvalidArgument, "null field");
  return Poly(std::move(f), {});
}

Poly Poly::one(FieldPtr f) {
  if (!f) raise(ErrorKind::InvalidArgument, "null field");
  std::vector<uint32_t> w(f->ext_degree(), 0);
  f->el_set_one(w.data());
  return Poly(std::move(f), std::move(w));
}

Poly Poly::x(FieldPtr f) {
  if (!f) raise(ErrorKind::InvalidArgument, "null field");
  const unsigned k = f->ext_degree();
  std::vector<uint32_t> w(2 * k, 0);
  f->el_set_one(w.data() + k);
  return Poly(std::move(f), std::move(w));
}

Poly Poly::constant(const GFElement& c) {
  if (!c.attached()) raise(ErrorKind::InvalidArgument, "constant has no field attached");
  Poly r(c.field(), c.coeffs());
  r.normalize();
  return r;
}

Poly Poly::from_elements(const std::vector<GFElement>& coeffs) {
  if (coeffs.empty()) raise(ErrorKind::InvalidArgument, "empty coefficient list");
  FieldPtr f = coeffs.front().field();
  if (!f) raise(ErrorKind::InvalidArgument, "coefficient has no field attached");
  const unsigned k = f->ext_degree();
  std::vector<uint32_t> w;
  w.reserve(coeffs.size() * k);
  for (const GFElement& c : coeffs) {
    if (!c.attached() || !c.field()->same_as(*f))
      raise(ErrorKind::FieldMismatch, "coefficients over different fields");
    w.insert(w.end(), c.coeffs().begin(), c.coeffs().end());
  }
  Poly r(std::move(f), std::move(w));
  r.normalize();
  return r;
}

Poly Poly::from_words(FieldPtr f, std::vector<uint32_t> words) {
  if (!f) raise(ErrorKind::InvalidArgument, "null field");
  const unsigned k = f->ext_degree();
  if (words.size() % k != 0)
    raise(ErrorKind::InvalidArgument, "word count not a multiple of the extension degree");
  for (uint32_t v : words)
    if (v >= f->characteristic())
      raise(ErrorKind::InvalidArgument, "coefficient word out of range");
  Poly r(std::move(f), std::move(words));
  r.normalize();
  return r;
}

Poly Poly::monic_from_index(FieldPtr f, unsigned degree, uint64_t index) {
  if (!f) raise(ErrorKind::InvalidArgument, "null field");
  if (degree == 0) raise(ErrorKind::InvalidArgument, "monic_from_index needs degree >= 1");
  const unsigned k = f->ext_degree();
  const uint32_t p = f->characteristic();
  std::vector<uint32_t> w((degree + 1) * static_cast<size_t>(k), 0);
  for (unsigned i = 0; i < degree; ++i) {
    index_to_words(w.data() + static_cast<size_t>(i) * k, index % f->size(), p, k);
    index /= f->size();
  }
  if (index != 0) raise(ErrorKind::InvalidArgument, "index exceeds q^degree");
  f->el_set_one(w.data() + static_cast<size_t>(degree) * k);
  return Poly(std::move(f), std::move(w));
}

long Poly::degree() const {
  if (!f_) return -1;
  return static_cast<long>(w_.size() / f_->ext_degree()) - 1;
}

bool Poly::is_one() const {
  if (!f_) return false;
  return w_.size() == f_->ext_degree() && coeff(0).is_one();
}

bool Poly::is_monic() const {
  return !is_zero() && leading().is_one();
}

bool Poly::is_x() const {
  return degree() == 1 && coeff(0).is_zero() && coeff(1).is_one();
}

GFElement Poly::coeff(size_t i) const {
  const Field& f = need_field(*this);
  const unsigned k = f.ext_degree();
  if (i >= w_.size() / k) return f.zero();
  return f.from_coeffs(std::vector<uint32_t>(w_.begin() + static_cast<long>(i * k),
                                             w_.begin() + static_cast<long>((i + 1) * k)));
}

GFElement Poly::leading() const {
  if (is_zero()) raise(ErrorKind::ZeroElement, "zero polynomial has no leading coefficient");
  return coeff(static_cast<size_t>(degree()));
}

GFElement Poly::eval(const GFElement& at) const {
  const Field& f = need_field(*this);
  if (!at.attached() || !at.field()->same_as(f))
    raise(ErrorKind::FieldMismatch, "evaluation point from a different field");
  const unsigned k = f.ext_degree();
  std::vector<uint32_t> acc(k, 0);
  for (size_t i = w_.size() / k; i-- > 0;) {
    f.el_mul(acc.data(), acc.data(), at.coeffs().data());
    f.el_add(acc.data(), acc.data(), w_.data() + i * k);
  }
  return f.from_coeffs(acc);
}

Poly Poly::make_monic() const {
  const Field& f = need_field(*this);
  if (is_zero()) raise(ErrorKind::ZeroElement, "cannot normalize the zero polynomial");
  if (is_monic()) return *this;
  const unsigned k = f.ext_degree();
  GFElement il = leading().inverse();
  Poly r = *this;
  if (k == 1) {
    const kernels::ModOps& ops = kernels::active_ops();
    ops.scale(r.w_.data(), r.w_.data(), il.coeffs()[0],
               r.w_.size(), f.characteristic());
  } else {
    for (size_t i = 0; i < r.w_.size(); i += k)
      f.el_mul(r.w_.data() + i, r.w_.data() + i, il.coeffs().data());
  }
  return r;
}

Poly Poly::derivative() const {
  const Field& f = need_field(*this);
  if (w_.empty()) return *this;
  const unsigned k = f.ext_degree();
  const uint32_t p = f.characteristic();
  const size_t n = w_.size() / k;
  std::vector<uint32_t> w((n - 1) * static_cast<size_t>(k), 0);
  for (size_t i = 1; i < n; ++i) {
    const uint64_t c = i % p; // multiplying by i is F_p-scalar, so word-wise
    for (unsigned j = 0; j < k; ++j)
      w[(i - 1) * k + j] = static_cast<uint32_t>(c * w_[i * k + j] % p);
  }
  Poly r(f_, std::move(w));
  r.normalize();
  return r;
}

// ---------------------------------------------------------------------------
// Arithmetic

Poly operator+(const Poly& a, const Poly& b) {
  const Field& f = need_same(a, b);
  const unsigned k = f.ext_degree();
  const size_t na = a.w_.size(), nb = b.w_.size();
  std::vector<uint32_t> w(std::max(na, nb), 0);
  const size_t common = std::min(na, nb);
  if (k == 1) {
    kernels::active_ops().add(w.data(), a.w_.data(), b.w_.data(), common,
                               f.characteristic());
  } else {
    for (size_t i = 0; i < common; i += k)
      f.el_add(w.data() + i, a.w_.data() + i, b.w_.data() + i);
  }
  const std::vector<uint32_t>& tail = na > nb ? a.w_ : b.w_;
  std::copy(tail.begin() + static_cast<long>(common), tail.end(),
            w.begin() + static_cast<long>(common));
  Poly r(a.f_, std::move(w));
  r.normalize();
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  const Field& f = need_same(a, b);
  const unsigned k = f.ext_degree();
  const uint32_t p = f.characteristic();
  const size_t na = a.w_.size(), nb = b.w_.size();
  std::vector<uint32_t> w(std::max(na, nb), 0);
  const size_t common = std::min(na, nb);
  if (k == 1) {
    kernels::active_ops().sub(w.data(), a.w_.data(), b.w_.data(), common, p);
  } else {
    for (size_t i = 0; i < common; i += k)
      f.el_sub(w.data() + i, a.w_.data() + i, b.w_.data() + i);
  }
  if (na > nb) {
    std::copy(a.w_.begin() + static_cast<long>(common), a.w_.end(),
              w.begin() + static_cast<long>(common));
  } else {
    for (size_t i = common; i < nb; ++i)
      w[i] = b.w_[i] == 0 ? 0 : p - b.w_[i];
  }
  Poly r(a.f_, std::move(w));
  r.normalize();
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  const Field& f = need_same(a, b);
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.f_);
  const unsigned k = f.ext_degree();
  const size_t na = a.w_.size(), nb = b.w_.size();
  std::vector<uint32_t> w(na + nb - k, 0);
  if (k == 1) {
    const kernels::ModOps& ops = kernels::active_ops();
    const uint32_t p = f.characteristic();
    for (size_t i = 0; i < na; ++i)
      if (a.w_[i] != 0) ops.axpy(w.data() + i, b.w_.data(), a.w_[i], nb, p);
  } else {
    std::vector<uint32_t> tmp(k);
    for (size_t i = 0; i < na; i += k) {
      if (f.el_is_zero(a.w_.data() + i)) continue;
      for (size_t j = 0; j < nb; j += k) {
        f.el_mul(tmp.data(), a.w_.data() + i, b.w_.data() + j);
        f.el_add(w.data() + i + j, w.data() + i + j, tmp.data());
      }
    }
  }
  Poly r(a.f_, std::move(w));
  r.normalize();
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  need_same(a, b);
  return a.w_ == b.w_;
}

bool Poly::less(const Poly& a, const Poly& b) {
  need_same(a, b);
  if (a.w_.size() != b.w_.size()) return a.w_.size() < b.w_.size();
  for (size_t i = a.w_.size(); i-- > 0;)
    if (a.w_[i] != b.w_[i]) return a.w_[i] < b.w_[i];
  return false;
}

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
  const Field& f = need_same(a, b);
  if (b.is_zero()) raise(ErrorKind::DivisionByZero, "polynomial division by zero");
  const unsigned k = f.ext_degree();
  const uint32_t p = f.characteristic();
  const long da = a.degree(), db = b.degree();
  if (da < db) return {Poly::zero(a.f_), a};

  std::vector<uint32_t> r = a.w_;
  std::vector<uint32_t> q(static_cast<size_t>(da - db + 1) * k, 0);
  GFElement il = b.leading().inverse();
  std::vector<uint32_t> c(k), t(k);
  for (long i = da; i >= db; --i) {
    uint32_t* ri = r.data() + static_cast<size_t>(i) * k;
    if (f.el_is_zero(ri)) continue;
    f.el_mul(c.data(), ri, il.coeffs().data());
    std::copy(c.begin(), c.end(), q.begin() + static_cast<size_t>(i - db) * k);
    if (k == 1) {
      const uint32_t neg = c[0] == 0 ? 0 : p - c[0];
      kernels::active_ops().axpy(r.data() + static_cast<size_t>(i - db), b.words().data(),
                                  neg, static_cast<size_t>(db) + 1, p);
    } else {
      for (long j = 0; j <= db; ++j) {
        f.el_mul(t.data(), c.data(), b.words().data() + static_cast<size_t>(j) * k);
        f.el_sub(r.data() + static_cast<size_t>(i - db + j) * k,
                 r.data() + static_cast<size_t>(i - db + j) * k, t.data());
      }
    }
  }
  r.resize(static_cast<size_t>(db) * k);
  Poly quot(a.f_, std::move(q));
  Poly remd(a.f_, std::move(r));
  quot.normalize();
  remd.normalize();
  return {std::move(quot), std::move(remd)};
}

Poly rem(const Poly& a, const Poly& b) { return divrem(a, b).second; }

Poly gcd(const Poly& a, const Poly& b) {
  need_same(a, b);
  Poly u = a, v = b;
  while (!v.is_zero()) {
    Poly r = rem(u, v);
    u = std::move(v);
    v = std::move(r);
  }
  return u.is_zero() ? u : u.make_monic();
}

Poly powmod(const Poly& base, const mpz_class& e, const Poly& m) {
  need_same(base, m);
  if (e < 0) raise(ErrorKind::InvalidArgument, "negative exponent");
  Poly r = rem(Poly::one(base.field()), m);
  Poly b = rem(base, m);
  const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return r;
  for (size_t i = bits; i-- > 0;) {
    r = rem(r * r, m);
    if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) r = rem(r * b, m);
  }
  return r;
}

Poly compose_xt(const Poly& f, uint64_t t) {
  const Field& fld = need_field(f);
  if (t == 0) raise(ErrorKind::InvalidArgument, "composition step t must be >= 1");
  if (f.is_zero() || t == 1) return f;
  const unsigned k = fld.ext_degree();
  const size_t n = f.words().size() / k;
  std::vector<uint32_t> w(((n - 1) * t + 1) * static_cast<size_t>(k), 0);
  for (size_t i = 0; i < n; ++i)
    std::copy(f.words().begin() + static_cast<long>(i * k),
              f.words().begin() + static_cast<long>((i + 1) * k),
              w.begin() + static_cast<long>(i * t * k));
  return Poly::from_words(f.field(), std::move(w));
}

// ---------------------------------------------------------------------------
// Irreducibility and factor structure

bool is_irreducible(const Poly& f) {
  const Field& fld = need_field(f);
  const long m = f.degree();
  if (m < 1) raise(ErrorKind::InvalidArgument, "irreducibility needs degree >= 1");
  if (m == 1) return true;

  const Poly fm = f.make_monic();
  const mpz_class q(static_cast<unsigned long>(fld.size()));
  const Poly xp = Poly::x(f.field());

  // Iterated q-power Frobenius images of x, frob[d] = x^(q^d) mod f.
  std::vector<Poly> frob(static_cast<size_t>(m) + 1);
  frob[0] = rem(xp, fm);
  for (long d = 1; d <= m; ++d) frob[d] = powmod(frob[d - 1], q, fm);
  if (frob[static_cast<size_t>(m)] != rem(xp, fm)) return false;

  const auto mf = numtheory::factor(mpz_class(static_cast<unsigned long>(m)));
  for (const auto& part : mf.parts) {
    const unsigned long s = mpz_get_ui(part.prime.get_mpz_t());
    const Poly g = gcd(frob[static_cast<size_t>(m) / s] - xp, fm);
    if (g.degree() > 0) return false;
  }
  return true;
}

namespace {

/* f = g(x)^p exactly when f' = 0; recover g by pulling the inverse Frobenius
 * (c -> c^(p^(k-1))) through the surviving coefficients. */
Poly pth_root(const Poly& f) {
  const Field& fld = need_field(f);
  const unsigned k = fld.ext_degree();
  const uint32_t p = fld.characteristic();
  const size_t n = f.words().size() / k;
  uint64_t inv_frob = 1;
  for (unsigned i = 0; i + 1 < k; ++i) inv_frob *= p;
  std::vector<uint32_t> w(((n - 1) / p + 1) * static_cast<size_t>(k));
  for (size_t i = 0; i < n; i += p)
    fld.el_pow_u64(w.data() + (i / p) * k, f.words().data() + i * k, inv_frob);
  return Poly::from_words(f.field(), std::move(w));
}

} // namespace

Poly squarefree_part(const Poly& f) {
  need_field(f);
  if (f.is_zero()) raise(ErrorKind::ZeroElement, "radical of the zero polynomial");
  if (f.degree() == 0) return Poly::one(f.field());
  const Poly fm = f.make_monic();
  const Poly d = fm.derivative();
  if (d.is_zero()) return squarefree_part(pth_root(fm));
  const Poly g = gcd(fm, d);
  if (g.degree() == 0) return fm;
  const Poly w = divrem(fm, g).first;       // distinct factors with tame multiplicity
  const Poly rg = squarefree_part(g);       // strictly smaller degree
  return w * divrem(rg, gcd(rg, w)).first;  // append factors only g still sees
}

// ---------------------------------------------------------------------------
// DegreeProfile

DegreeProfile::DegreeProfile(std::vector<std::pair<uint64_t, uint64_t>> entries) {
  std::map<uint64_t, uint64_t> merged;
  for (const auto& [d, c] : entries) {
    if (d == 0) raise(ErrorKind::InvalidArgument, "factor degree must be >= 1");
    if (c > 0) merged[d] += c;
  }
  entries_.assign(merged.begin(), merged.end());
}

uint64_t DegreeProfile::count_at(uint64_t degree) const {
  for (const auto& [d, c] : entries_)
    if (d == degree) return c;
  return 0;
}

uint64_t DegreeProfile::max_degree() const {
  return entries_.empty() ? 0 : entries_.back().first;
}

uint64_t DegreeProfile::total_degree() const {
  uint64_t s = 0;
  for (const auto& [d, c] : entries_) s += d * c;
  return s;
}

namespace {

/* Distinct-degree split of a squarefree monic s: for each d, the product of
 * all irreducible factors of degree d is gcd(x^(q^d) - x, s). */
void ddf_rounds(const Poly& s_in, std::map<uint64_t, uint64_t>& counts,
                std::vector<std::pair<uint64_t, Poly>>* products) {
  Poly s = s_in;
  const mpz_class q(static_cast<unsigned long>(s.field()->size()));
  const Poly xp = Poly::x(s.field());
  Poly h = rem(xp, s);
  uint64_t d = 0;
  while (s.degree() > 0 && 2 * (d + 1) <= static_cast<uint64_t>(s.degree())) {
    ++d;
    h = powmod(h, q, s);
    const Poly g = gcd(h - xp, s);
    if (g.degree() > 0) {
      counts[d] += static_cast<uint64_t>(g.degree()) / d;
      if (products) products->emplace_back(d, g);
      s = divrem(s, g).first;
      h = rem(h, s);
    }
  }
  if (s.degree() > 0) {
    counts[static_cast<uint64_t>(s.degree())] += 1;
    if (products) products->emplace_back(static_cast<uint64_t>(s.degree()), s);
  }
}

} // namespace

DegreeProfile distinct_degree_profile(const Poly& f) {
  need_field(f);
  if (f.degree() < 1) raise(ErrorKind::InvalidArgument, "degree profile needs degree >= 1");
  Poly work = f.make_monic();
  std::map<uint64_t, uint64_t> counts;
  // Each pass strips one copy of every factor still present, so multiplicity
  // falls out as the number of passes a factor survives.
  while (work.degree() > 0) {
    const Poly s = squarefree_part(work);
    ddf_rounds(s, counts, nullptr);
    work = divrem(work, s).first;
  }
  std::vector<std::pair<uint64_t, uint64_t>> entries(counts.begin(), counts.end());
  return DegreeProfile(std::move(entries));
}

mpz_class root_order(const Poly& f) {
  const Field& fld = need_field(f);
  if (f.degree() < 1) raise(ErrorKind::InvalidArgument, "root order needs degree >= 1");
  if (!is_irreducible(f)) raise(ErrorKind::Reducible, "root order needs an irreducible polynomial");
  const Poly fm = f.make_monic();
  if (fm.is_x()) raise(ErrorKind::ZeroRoot, "x has the zero root, which has no order");

  const long m = f.degree();
  mpz_class qm;
  mpz_class q(static_cast<unsigned long>(fld.size()));
  mpz_pow_ui(qm.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(m));
  mpz_class ord = qm - 1;

  const Poly xp = rem(Poly::x(f.field()), fm);
  const Poly one = Poly::one(f.field());
  const auto fac = numtheory::factor(ord);
  for (const auto& part : fac.parts) {
    for (unsigned i = 0; i < part.exponent; ++i) {
      mpz_class cand = ord / part.prime;
      if (powmod(xp, cand, fm) == one)
        ord = cand;
      else
        break;
    }
  }
  return ord;
}

// ---------------------------------------------------------------------------
// Enumeration

MonicIrreducibleEnumerator::MonicIrreducibleEnumerator(FieldPtr f, unsigned degree,
                                                       uint64_t max_candidates)
    : f_(std::move(f)), degree_(degree), next_index_(0), total_(1) {
  if (!f_) raise(ErrorKind::InvalidArgument, "null field");
  if (degree == 0) raise(ErrorKind::InvalidArgument, "enumeration needs degree >= 1");
  const uint64_t q = f_->size();
  for (unsigned i = 0; i < degree; ++i) {
    if (total_ > max_candidates / q)
      raise(ErrorKind::SizeExceeded, "q^degree exceeds the enumeration bound");
    total_ *= q;
  }
  if (total_ > max_candidates)
    raise(ErrorKind::SizeExceeded, "q^degree exceeds the enumeration bound");
}

std::optional<Poly> MonicIrreducibleEnumerator::next() {
  while (next_index_ < total_) {
    Poly cand = Poly::monic_from_index(f_, degree_, next_index_++);
    if (is_irreducible(cand)) return cand;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Complete factorization

namespace {

Poly random_poly_below(FieldPtr f, long deg_bound, std::mt19937_64& rng) {
  const unsigned k = f->ext_degree();
  const uint32_t p = f->characteristic();
  const uint64_t q = f->size();
  std::vector<uint32_t> w(static_cast<size_t>(deg_bound) * k, 0);
  for (long i = 0; i < deg_bound; ++i)
    index_to_words(w.data() + static_cast<size_t>(i) * k, rng() % q, p, k);
  return Poly::from_words(std::move(f), std::move(w));
}

/* Cantor–Zassenhaus split of a squarefree monic h whose irreducible factors
 * all have degree d.  Odd q: gcd(r^((q^d-1)/2) - 1, h) splits along quadratic
 * residues; even q: the F_2-trace of r plays the same role. */
void equal_degree_split(const Poly& h, uint64_t d, std::mt19937_64& rng,
                        std::vector<Poly>& out) {
  if (static_cast<uint64_t>(h.degree()) == d) {
    out.push_back(h);
    return;
  }
  const FieldPtr f = h.field();
  const uint64_t q = f->size();
  const Poly one = Poly::one(f);
  mpz_class half;
  if (q % 2 == 1) {
    mpz_class qd;
    mpz_class qz(static_cast<unsigned long>(q));
    mpz_pow_ui(qd.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(d));
    half = (qd - 1) / 2;
  }
  const uint64_t trace_terms = static_cast<uint64_t>(f->ext_degree()) * d;

  for (;;) {
    const Poly r = random_poly_below(f, h.degree(), rng);
    Poly g;
    if (q % 2 == 1) {
      g = gcd(powmod(r, half, h) - one, h);
    } else {
      Poly t = rem(r, h), acc = t;
      for (uint64_t i = 1; i < trace_terms; ++i) {
        t = rem(t * t, h);
        acc = acc + t;
      }
      g = gcd(acc, h);
    }
    if (g.degree() > 0 && g.degree() < h.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(divrem(h, g).first, d, rng, out);
      return;
    }
  }
}

} // namespace

std::vector<std::pair<Poly, unsigned>> factor_completely(const Poly& f, uint64_t seed) {
  need_field(f);
  if (f.is_zero()) raise(ErrorKind::ZeroElement, "cannot factor the zero polynomial");
  std::vector<std::pair<Poly, unsigned>> result;
  if (f.degree() == 0) return result;

  std::mt19937_64 rng(seed);
  const Poly rad = squarefree_part(f);
  std::map<uint64_t, uint64_t> counts;
  std::vector<std::pair<uint64_t, Poly>> products;
  ddf_rounds(rad, counts, &products);

  std::vector<Poly> finals;
  for (const auto& [d, prod] : products) equal_degree_split(prod, d, rng, finals);

  Poly work = f.make_monic();
  for (const Poly& fi : finals) {
    unsigned e = 0;
    for (;;) {
      auto [q2, r2] = divrem(work, fi);
      if (!r2.is_zero()) break;
      work = std::move(q2);
      ++e;
    }
    result.emplace_back(fi, e);
  }
  if (work.degree() != 0)
    raise(ErrorKind::InternalInconsistency, "factorization did not exhaust the input");
  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) { return Poly::less(a.first, b.first); });
  return result;
}

// ---------------------------------------------------------------------------
// Printing

std::string Poly::to_string() const {
  const Field& f = need_field(*this);
  if (is_zero()) return "0";
  const unsigned k = f.ext_degree();
  const size_t n = w_.size() / k;
  std::ostringstream os;
  bool first = true;
  for (size_t i = n; i-- > 0;) {
    GFElement c = coeff(i);
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c.to_string();
    } else {
      if (!c.is_one()) os << c.to_string();
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::string Poly::coeff_string() const {
  const Field& f = need_field(*this);
  const unsigned k = f.ext_degree();
  const size_t n = w_.size() / k;
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < n; ++i) {
    if (i) os << ",";
    os << coeff(i).to_string();
  }
  os << "]";
  return os.str();
}

} // namespace hyperirr::polyq
