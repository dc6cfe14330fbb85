#include "hyperirr/gfq.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "hyperirr/numtheory.hpp"

namespace hyperirr::gfq {

namespace {

/* Structural cap: keeps k <= 24 and, for k >= 2, p <= 2^12, so that raw
 * u64 convolution accumulation in el_mul cannot overflow. */
constexpr std::uint64_t kHardMaxFieldSize = 1ull << 24;
constexpr unsigned kMaxExtDegree = 24;

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  // extended Euclid on integers; a in (0, p)
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    std::int64_t tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return std::uint32_t(t);
}

/* ---- dense F_p[x] helpers for modulus search and element inversion ------- */
/* Representation: vector<u32>, constant term first, no trailing zeros.      */

using FpPoly = std::vector<std::uint32_t>;

void fp_norm(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod b (b nonzero), plus optional quotient
FpPoly fp_divrem(const FpPoly& a, const FpPoly& b, std::uint32_t p, FpPoly* quot) {
  FpPoly r = a;
  const std::size_t db = b.size() - 1;
  const std::uint32_t il = inv_mod_p(b.back(), p);
  if (quot) quot->assign(r.size() > db ? r.size() - db : 0, 0);
  while (r.size() > db) {
    const std::size_t i = r.size() - 1;
    const std::uint32_t c = std::uint32_t(std::uint64_t(r[i]) * il % p);
    if (c != 0) {
      if (quot) (*quot)[i - db] = c;
      for (std::size_t j = 0; j <= db; ++j) {
        const std::uint64_t sub = std::uint64_t(c) * b[j] % p;
        r[i - db + j] = std::uint32_t((r[i - db + j] + p - sub) % p);
      }
    }
    r.pop_back(); // top coefficient is now zero by construction
    fp_norm(r);
    if (r.size() <= db) break;
  }
  fp_norm(r);
  if (quot) fp_norm(*quot);
  return r;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      acc[i + j] = (acc[i + j] + std::uint64_t(a[i]) * b[j]) % p;
  }
  FpPoly out(acc.begin(), acc.end());
  fp_norm(out);
  return out;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod, std::uint32_t p) {
  return fp_divrem(fp_mul(a, b, p), mod, p, nullptr);
}

FpPoly fp_pow_u64_mod(FpPoly base, std::uint64_t e, const FpPoly& mod, std::uint32_t p) {
  FpPoly r{1};
  while (e != 0) {
    if (e & 1) r = fp_mulmod(r, base, mod, p);
    base = fp_mulmod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint32_t p) {
  while (!b.empty()) {
    FpPoly r = fp_divrem(a, b, p, nullptr);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    const std::uint32_t il = inv_mod_p(a.back(), p);
    for (auto& c : a) c = std::uint32_t(std::uint64_t(c) * il % p);
  }
  return a;
}

// Rabin test for monic f of degree >= 1 over F_p.
bool fp_irreducible(const FpPoly& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;
  // x^(p^d) mod f for d = 1..m, computed by iterated p-th powers
  FpPoly h{0, 1};
  std::vector<FpPoly> frob(m + 1);
  for (std::size_t d = 1; d <= m; ++d) {
    h = fp_pow_u64_mod(h, p, f, p);
    frob[d] = h;
  }
  {
    FpPoly diff = frob[m];
    // diff -= x
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = std::uint32_t((diff[1] + p - 1) % p);
    fp_norm(diff);
    if (!diff.empty()) return false; // x^(p^m) != x mod f
  }
  for (std::size_t s = 2; s <= m; ++s) {
    if (m % s != 0) continue;
    bool s_prime = true;
    for (std::size_t d = 2; d * d <= s; ++d)
      if (s % d == 0) { s_prime = false; break; }
    if (!s_prime) continue;
    FpPoly diff = frob[m / s];
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = std::uint32_t((diff[1] + p - 1) % p);
    fp_norm(diff);
    FpPoly g = fp_gcd(f, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

} // namespace

FieldPtr build_field(std::uint32_t p, unsigned k, std::uint64_t max_size) {
  if (!numtheory::is_prime(mpz_class(static_cast<unsigned long>(p))))
    raise(ErrorKind::NotPrime, "build_field: p = " + std::to_string(p) + " is not prime");
  if (k < 1) raise(ErrorKind::InvalidArgument, "build_field: k must be >= 1");

  const std::uint64_t cap = std::min(max_size, kHardMaxFieldSize);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (q > cap / p)
      raise(ErrorKind::SizeExceeded, "build_field: p^k exceeds the size bound " +
                                         std::to_string(cap));
    q *= p;
  }
  if (k > kMaxExtDegree)
    raise(ErrorKind::SizeExceeded, "build_field: extension degree above " +
                                       std::to_string(kMaxExtDegree));

  std::vector<std::uint32_t> mod;
  if (k == 1) {
    mod = {0, 1}; // the polynomial x
  } else {
    // Scan candidates x^k + c in increasing integer encoding of c.
    for (std::uint64_t enc = 0;; ++enc) {
      if (enc >= q)
        raise(ErrorKind::InternalInconsistency,
              "build_field: no irreducible modulus found (impossible)");
      if (enc % p == 0) continue; // constant term 0 => divisible by x
      FpPoly f(k + 1, 0);
      std::uint64_t v = enc;
      for (unsigned i = 0; i < k; ++i) {
        f[i] = std::uint32_t(v % p);
        v /= p;
      }
      f[k] = 1;
      if (fp_irreducible(f, p)) {
        mod = std::move(f);
        break;
      }
    }
  }
  return FieldPtr(new Field(p, k, q, std::move(mod)));
}

/* ---- raw element operations ---------------------------------------------- */

void Field::el_set_zero(std::uint32_t* dst) const {
  std::fill(dst, dst + k_, 0u);
}

void Field::el_set_one(std::uint32_t* dst) const {
  std::fill(dst, dst + k_, 0u);
  dst[0] = 1;
}

bool Field::el_is_zero(const std::uint32_t* a) const {
  for (unsigned i = 0; i < k_; ++i)
    if (a[i] != 0) return false;
  return true;
}

void Field::el_add(std::uint32_t* dst, const std::uint32_t* a, const std::uint32_t* b) const {
  for (unsigned i = 0; i < k_; ++i) {
    std::uint32_t s = a[i] + b[i];
    dst[i] = s >= p_ ? s - p_ : s;
  }
}

void Field::el_sub(std::uint32_t* dst, const std::uint32_t* a, const std::uint32_t* b) const {
  for (unsigned i = 0; i < k_; ++i) {
    std::uint32_t s = a[i] + p_ - b[i];
    dst[i] = s >= p_ ? s - p_ : s;
  }
}

void Field::el_mul(std::uint32_t* dst, const std::uint32_t* a, const std::uint32_t* b) const {
  if (k_ == 1) {
    dst[0] = std::uint32_t(std::uint64_t(a[0]) * b[0] % p_);
    return;
  }
  // Convolution with raw accumulation (safe: k*p^2 < 2^29 by the size cap),
  // then reduction by the monic modulus.
  std::array<std::uint64_t, 2 * kMaxExtDegree - 1> acc{};
  const unsigned n = 2 * k_ - 1;
  for (unsigned i = 0; i < k_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) acc[i + j] += std::uint64_t(a[i]) * b[j];
  }
  std::array<std::uint32_t, 2 * kMaxExtDegree - 1> work{};
  for (unsigned i = 0; i < n; ++i) work[i] = std::uint32_t(acc[i] % p_);
  for (unsigned i = n; i-- > k_;) {
    const std::uint32_t c = work[i];
    if (c == 0) continue;
    work[i] = 0;
    for (unsigned j = 0; j < k_; ++j) {
      const std::uint64_t sub = std::uint64_t(c) * mod_[j] % p_;
      work[i - k_ + j] = std::uint32_t((work[i - k_ + j] + p_ - sub) % p_);
    }
  }
  std::copy(work.begin(), work.begin() + k_, dst);
}

void Field::el_inv(std::uint32_t* dst, const std::uint32_t* a) const {
  if (el_is_zero(a))
    raise(ErrorKind::DivisionByZero, "field inverse of zero");
  if (k_ == 1) {
    dst[0] = inv_mod_p(a[0], p_);
    return;
  }
  // extended Euclid in F_p[x] against the modulus
  FpPoly r0 = mod_, r1(a, a + k_);
  fp_norm(r1);
  FpPoly s0{}, s1{1};
  while (!r1.empty()) {
    FpPoly quot;
    FpPoly r2 = fp_divrem(r0, r1, p_, &quot);
    FpPoly s2 = fp_mul(quot, s1, p_);
    // s2 = s0 - quot*s1
    if (s2.size() < s0.size()) s2.resize(s0.size(), 0);
    for (std::size_t i = 0; i < s2.size(); ++i) {
      const std::uint32_t lhs = i < s0.size() ? s0[i] : 0;
      s2[i] = std::uint32_t((lhs + p_ - s2[i]) % p_);
    }
    fp_norm(s2);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant (modulus irreducible, a nonzero)
  const std::uint32_t scale = inv_mod_p(r0[0], p_);
  std::fill(dst, dst + k_, 0u);
  for (std::size_t i = 0; i < s0.size(); ++i)
    dst[i] = std::uint32_t(std::uint64_t(s0[i]) * scale % p_);
}

void Field::el_pow_u64(std::uint32_t* dst, const std::uint32_t* a, std::uint64_t e) const {
  std::array<std::uint32_t, kMaxExtDegree> base{}, result{}, tmp{};
  std::copy(a, a + k_, base.begin());
  el_set_one(result.data());
  while (e != 0) {
    if (e & 1) {
      el_mul(tmp.data(), result.data(), base.data());
      result = tmp;
    }
    el_mul(tmp.data(), base.data(), base.data());
    base = tmp;
    e >>= 1;
  }
  std::copy(result.begin(), result.begin() + k_, dst);
}

/* ---- element construction ------------------------------------------------ */

GFElement Field::zero() const {
  return GFElement(self(), std::vector<std::uint32_t>(k_, 0));
}

GFElement Field::one() const {
  std::vector<std::uint32_t> c(k_, 0);
  c[0] = 1;
  return GFElement(self(), std::move(c));
}

GFElement Field::from_index(std::uint64_t index) const {
  if (index >= q_)
    raise(ErrorKind::InvalidArgument, "from_index: index " + std::to_string(index) +
                                          " not below field size " + std::to_string(q_));
  std::vector<std::uint32_t> c(k_, 0);
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = std::uint32_t(index % p_);
    index /= p_;
  }
  return GFElement(self(), std::move(c));
}

GFElement Field::from_coeffs(const std::vector<std::uint32_t>& coeffs) const {
  if (coeffs.size() != k_)
    raise(ErrorKind::InvalidArgument,
          "from_coeffs: expected " + std::to_string(k_) + " coefficients, got " +
              std::to_string(coeffs.size()));
  for (std::uint32_t c : coeffs)
    if (c >= p_)
      raise(ErrorKind::InvalidArgument,
            "from_coeffs: coefficient " + std::to_string(c) + " not below p = " +
                std::to_string(p_));
  return GFElement(self(), coeffs);
}

GFElement Field::gen() const {
  if (k_ < 2)
    raise(ErrorKind::InvalidArgument, "gen: no generator element for a prime field");
  std::vector<std::uint32_t> c(k_, 0);
  c[1] = 1;
  return GFElement(self(), std::move(c));
}

/* ---- GFElement ------------------------------------------------------------ */

namespace {

const Field& checked_field(const GFElement& a) {
  if (!a.attached())
    raise(ErrorKind::InvalidArgument, "operation on a detached field element");
  return *a.field();
}

const Field& checked_pair(const GFElement& a, const GFElement& b) {
  const Field& fa = checked_field(a);
  const Field& fb = checked_field(b);
  if (!fa.same_as(fb))
    raise(ErrorKind::FieldMismatch, "elements of F_" + std::to_string(fa.size()) +
                                        " and F_" + std::to_string(fb.size()));
  return fa;
}

} // namespace

std::uint64_t GFElement::index() const {
  const Field& f = checked_field(*this);
  std::uint64_t v = 0;
  for (unsigned i = f.ext_degree(); i-- > 0;)
    v = v * f.characteristic() + c_[i];
  return v;
}

bool GFElement::is_zero() const { return checked_field(*this).el_is_zero(c_.data()); }

bool GFElement::is_one() const {
  const Field& f = checked_field(*this);
  if (c_[0] != 1) return false;
  for (unsigned i = 1; i < f.ext_degree(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

GFElement operator+(const GFElement& a, const GFElement& b) {
  const Field& f = checked_pair(a, b);
  std::vector<std::uint32_t> c(f.ext_degree());
  f.el_add(c.data(), a.c_.data(), b.c_.data());
  return GFElement(a.f_, std::move(c));
}

GFElement operator-(const GFElement& a, const GFElement& b) {
  const Field& f = checked_pair(a, b);
  std::vector<std::uint32_t> c(f.ext_degree());
  f.el_sub(c.data(), a.c_.data(), b.c_.data());
  return GFElement(a.f_, std::move(c));
}

GFElement operator*(const GFElement& a, const GFElement& b) {
  const Field& f = checked_pair(a, b);
  std::vector<std::uint32_t> c(f.ext_degree());
  f.el_mul(c.data(), a.c_.data(), b.c_.data());
  return GFElement(a.f_, std::move(c));
}

bool operator==(const GFElement& a, const GFElement& b) {
  checked_pair(a, b);
  return a.c_ == b.c_;
}

GFElement GFElement::inverse() const {
  const Field& f = checked_field(*this);
  std::vector<std::uint32_t> c(f.ext_degree());
  f.el_inv(c.data(), c_.data());
  return GFElement(f_, std::move(c));
}

GFElement GFElement::pow_u64(std::uint64_t e) const {
  const Field& f = checked_field(*this);
  std::vector<std::uint32_t> c(f.ext_degree());
  f.el_pow_u64(c.data(), c_.data(), e);
  return GFElement(f_, std::move(c));
}

GFElement GFElement::pow(const mpz_class& e) const {
  const Field& f = checked_field(*this);
  if (e < 0) raise(ErrorKind::InvalidArgument, "pow: negative exponent");
  // reduce the exponent mod q-1 for nonzero bases (Lagrange); zero stays zero
  if (is_zero()) return e == 0 ? f_->one() : *this;
  mpz_class em = e % mpz_class(static_cast<unsigned long>(f.size() - 1));
  return pow_u64(em.get_ui());
}

std::string GFElement::to_string() const {
  const Field& f = checked_field(*this);
  if (f.ext_degree() == 1) return std::to_string(c_[0]);
  std::ostringstream os;
  os << '[';
  for (unsigned i = 0; i < f.ext_degree(); ++i) {
    if (i) os << ' ';
    os << c_[i];
  }
  os << ']';
  return os.str();
}

/* ---- element order --------------------------------------------------------- */

std::uint64_t element_order(const GFElement& g) {
  const Field& f = checked_field(g);
  if (g.is_zero()) raise(ErrorKind::ZeroElement, "element_order of zero");
  std::uint64_t o = f.size() - 1;
  if (o == 1) return 1;
  numtheory::Factorization fac =
      numtheory::factor(mpz_class(static_cast<unsigned long>(o)));
  std::array<std::uint32_t, kMaxExtDegree> tmp{};
  for (const auto& pp : fac.parts) {
    const std::uint64_t s = pp.prime.get_ui();
    while (o % s == 0) {
      f.el_pow_u64(tmp.data(), g.coeffs().data(), o / s);
      if (!(tmp[0] == 1 &&
            std::all_of(tmp.begin() + 1, tmp.begin() + f.ext_degree(),
                        [](std::uint32_t v) { return v == 0; })))
        break;
      o /= s;
    }
  }
  return o;
}

/* ---- unit enumeration ------------------------------------------------------ */

UnitEnumerator::UnitEnumerator(FieldPtr f, std::uint64_t max_units)
    : f_(std::move(f)), next_index_(1) {
  if (f_->size() - 1 > max_units)
    raise(ErrorKind::SizeExceeded,
          "unit enumeration over F_" + std::to_string(f_->size()) +
              " exceeds the bound " + std::to_string(max_units));
}

std::optional<GFElement> UnitEnumerator::next() {
  if (next_index_ >= f_->size()) return std::nullopt;
  return f_->from_index(next_index_++);
}

} // namespace hyperirr::gfq
