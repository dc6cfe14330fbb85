#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hyperirr/gfq.hpp"

namespace hyperirr::polyq {

using gfq::Field;
using gfq::FieldPtr;
using gfq::GFElement;

/* Default cap on q^m for exhaustive polynomial enumeration (overridable per
 * call; the CLI additionally honours HYPERIRR_MAX_ENUM). */
inline constexpr std::uint64_t kDefaultEnumBound = 10000;

/* Univariate polynomial over F_q.  Coefficients are stored packed: k words
 * per coefficient (k = extension degree), constant term first, length always
 * a multiple of k, leading coefficient nonzero unless the polynomial is zero
 * (empty word vector). */
class Poly {
public:
  Poly() = default; // detached zero; attach a field before use

  static Poly zero(FieldPtr f);
  static Poly one(FieldPtr f);
  static Poly x(FieldPtr f);
  static Poly constant(const GFElement& c);
  static Poly from_elements(const std::vector<GFElement>& coeffs); // nonempty
  static Poly from_words(FieldPtr f, std::vector<std::uint32_t> words);
  /// Monic polynomial of the given degree whose lower coefficients are the
  /// base-q digits of index (constant coefficient = least significant digit).
  static Poly monic_from_index(FieldPtr f, unsigned degree, std::uint64_t index);

  const FieldPtr& field() const { return f_; }
  bool attached() const { return f_ != nullptr; }

  /// -1 for the zero polynomial.
  long degree() const;
  bool is_zero() const { return w_.empty(); }
  bool is_one() const;
  bool is_monic() const;
  bool is_x() const;
  GFElement coeff(std::size_t i) const; // zero beyond the degree
  GFElement leading() const;            // requires nonzero
  const std::vector<std::uint32_t>& words() const { return w_; }

  GFElement eval(const GFElement& at) const;
  Poly make_monic() const; // requires nonzero
  Poly derivative() const;

  /// Human-readable form, e.g. "x^2 + 2x + 1"; extension-field coefficients
  /// render as bracketed vectors.
  std::string to_string() const;
  /// Canonical coefficient list, constant term first: "[1,2,0,1]" over prime
  /// fields, "[[1 0],[2 1]]" over extensions.
  std::string coeff_string() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Total order: by degree, then coefficient words from the top down.
  /// Used for deterministic factor lists.
  static bool less(const Poly& a, const Poly& b);

private:
  Poly(FieldPtr f, std::vector<std::uint32_t> w) : f_(std::move(f)), w_(std::move(w)) {}
  void normalize();

  FieldPtr f_;
  std::vector<std::uint32_t> w_;

  friend std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
};

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b); // b nonzero
Poly rem(const Poly& a, const Poly& b);
/// Monic gcd; gcd(f, 0) is the monic normalization of f, gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// base^e mod m, square-and-multiply, arbitrary-precision exponent e >= 0.
Poly powmod(const Poly& base, const mpz_class& e, const Poly& m);

/// f(x^t): coefficient i of f lands at index t*i.  t >= 1.
Poly compose_xt(const Poly& f, std::uint64_t t);

/// Rabin's criterion: x^(q^m) = x mod f and gcd(x^(q^(m/s)) - x, f) = 1 for
/// every prime s | m.  Requires deg(f) >= 1.
bool is_irreducible(const Poly& f);

/// The radical: product of the distinct irreducible factors, monic.  Handles
/// characteristic-p coefficient patterns (f = g^p) by unwrapping p-th roots.
Poly squarefree_part(const Poly& f);

/* Degrees of the irreducible factors of a polynomial with multiplicity:
 * entry (d, c) means c factors of degree d counted with multiplicity. */
class DegreeProfile {
public:
  explicit DegreeProfile(std::vector<std::pair<std::uint64_t, std::uint64_t>> entries);
  const std::vector<std::pair<std::uint64_t, std::uint64_t>>& entries() const {
    return entries_;
  }
  std::uint64_t count_at(std::uint64_t degree) const;
  std::uint64_t max_degree() const;
  std::uint64_t total_degree() const; // sum of degree * count
  bool operator==(const DegreeProfile& o) const { return entries_ == o.entries_; }

private:
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries_; // sorted by degree
};

/// Distinct-degree factorization folded over the squarefree decomposition;
/// total_degree() always equals deg(f).  Requires deg(f) >= 1.
DegreeProfile distinct_degree_profile(const Poly& f);

/// Order of (any) root of an irreducible f != x in the multiplicative group
/// of its splitting field: the order of the class of x in F_q[x]/(f).
mpz_class root_order(const Poly& f);

/// Yields every monic irreducible of the given degree exactly once, in
/// increasing integer encoding of the lower-coefficient vector (constant term
/// least significant).  Construction fails with SizeExceeded if q^degree
/// exceeds max_candidates.
class MonicIrreducibleEnumerator {
public:
  MonicIrreducibleEnumerator(FieldPtr f, unsigned degree,
                             std::uint64_t max_candidates = kDefaultEnumBound);
  std::optional<Poly> next();

private:
  FieldPtr f_;
  unsigned degree_;
  std::uint64_t next_index_;
  std::uint64_t total_;
};

/// Complete factorization: distinct-degree splitting refined by a seeded
/// randomized equal-degree split.  Returns (monic irreducible factor,
/// multiplicity) pairs, sorted by Poly::less; the product of factor^mult
/// times leading(f) reconstructs f.  Deterministic for a fixed seed.
std::vector<std::pair<Poly, unsigned>> factor_completely(
    const Poly& f, std::uint64_t seed = 0x68697270ull);

} // namespace hyperirr::polyq
