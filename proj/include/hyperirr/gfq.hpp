#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hyperirr/errors.hpp"

namespace hyperirr::gfq {

class GFElement;
class Field;
using FieldPtr = std::shared_ptr<const Field>;

/* Largest field this module will construct (q = p^k); keeps k <= 24 and, for
 * extension fields, p small enough that coefficient convolutions fit u64. */
inline constexpr std::uint64_t kDefaultMaxFieldSize = 1ull << 24;
/* Default cap for full unit-group enumeration. */
inline constexpr std::uint64_t kDefaultMaxUnitEnum = 1ull << 20;

/// Constructs F_{p^k}.  The modulus is the monic irreducible of degree k over
/// F_p with the least integer encoding sum(c_i * p^i) — deterministic and
/// scan-verified.  For k = 1 the modulus is x.
FieldPtr build_field(std::uint32_t p, unsigned k,
                     std::uint64_t max_size = kDefaultMaxFieldSize);

class Field : public std::enable_shared_from_this<Field> {
public:
  std::uint32_t characteristic() const { return p_; }
  unsigned ext_degree() const { return k_; }
  std::uint64_t size() const { return q_; } // p^k

  /// Defining modulus: k+1 coefficients, constant term first, monic.
  const std::vector<std::uint32_t>& modulus() const { return mod_; }

  /// Value identity: same characteristic and degree (the modulus is then
  /// identical by construction).
  bool same_as(const Field& other) const {
    return p_ == other.p_ && k_ == other.k_;
  }

  GFElement zero() const;
  GFElement one() const;
  /// Element with coefficient vector = base-p digits of index (constant
  /// coefficient is the least significant digit).  index < q.
  GFElement from_index(std::uint64_t index) const;
  GFElement from_coeffs(const std::vector<std::uint32_t>& coeffs) const;
  /// The residue class of x (requires k >= 2).
  GFElement gen() const;

  /* Raw-buffer operations on length-k coefficient vectors with entries in
   * [0, p).  This is the performance seam shared with the polynomial layer;
   * GFElement methods are thin wrappers.  Buffers may alias unless noted. */
  void el_set_zero(std::uint32_t* dst) const;
  void el_set_one(std::uint32_t* dst) const;
  bool el_is_zero(const std::uint32_t* a) const;
  void el_add(std::uint32_t* dst, const std::uint32_t* a, const std::uint32_t* b) const;
  void el_sub(std::uint32_t* dst, const std::uint32_t* a, const std::uint32_t* b) const;
  void el_mul(std::uint32_t* dst, const std::uint32_t* a, const std::uint32_t* b) const;
  void el_inv(std::uint32_t* dst, const std::uint32_t* a) const; // a nonzero
  void el_pow_u64(std::uint32_t* dst, const std::uint32_t* a, std::uint64_t e) const;

private:
  Field(std::uint32_t p, unsigned k, std::uint64_t q, std::vector<std::uint32_t> mod)
      : p_(p), k_(k), q_(q), mod_(std::move(mod)) {}

  FieldPtr self() const { return shared_from_this(); }

  std::uint32_t p_;
  unsigned k_;
  std::uint64_t q_;
  std::vector<std::uint32_t> mod_;

  friend FieldPtr build_field(std::uint32_t, unsigned, std::uint64_t);
};

class GFElement {
public:
  GFElement() = default; // detached; any operation on it throws

  const FieldPtr& field() const { return f_; }
  bool attached() const { return f_ != nullptr; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }
  /// Integer encoding sum(c_i * p^i); inverse of Field::from_index.
  std::uint64_t index() const;
  bool is_zero() const;
  bool is_one() const;

  GFElement inverse() const;
  GFElement pow(const mpz_class& e) const; // e >= 0
  GFElement pow_u64(std::uint64_t e) const;

  friend GFElement operator+(const GFElement& a, const GFElement& b);
  friend GFElement operator-(const GFElement& a, const GFElement& b);
  friend GFElement operator*(const GFElement& a, const GFElement& b);
  friend bool operator==(const GFElement& a, const GFElement& b);
  friend bool operator!=(const GFElement& a, const GFElement& b) { return !(a == b); }

  /// "3" for prime fields, "[1 2 0]" (constant first) for extensions.
  std::string to_string() const;

private:
  GFElement(FieldPtr f, std::vector<std::uint32_t> c)
      : f_(std::move(f)), c_(std::move(c)) {}

  FieldPtr f_;
  std::vector<std::uint32_t> c_; // length k, entries in [0, p)

  friend class Field;
};

/// Order of g in the multiplicative group F_q^* (throws ZeroElement on 0).
/// Computed by stripping prime factors from q-1.
std::uint64_t element_order(const GFElement& g);

/// Yields all q-1 nonzero field elements exactly once, in index order.
class UnitEnumerator {
public:
  explicit UnitEnumerator(FieldPtr f, std::uint64_t max_units = kDefaultMaxUnitEnum);
  std::optional<GFElement> next();

private:
  FieldPtr f_;
  std::uint64_t next_index_;
};

} // namespace hyperirr::gfq
