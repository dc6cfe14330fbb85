#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hyperirr/gfq.hpp"
#include "hyperirr/polyq.hpp"

/* Brute-force cross-checks for the counting formulas: literal
 * enumerate-and-factor counting, the order-based recount of the same
 * quantity, the block monomial matrix identity, and a sweep harness that
 * runs all three against each other over a parameter grid. */
namespace hyperirr::oracle {

/* Default cap on the composed degree m*t for anything that factors f(x^t). */
inline constexpr std::uint64_t kDefaultComposeBound = 40;

/* Square matrix over F_q, row-major.  Deliberately naive: dimensions stay
 * small (<= 24), so elimination and O(n^4) characteristic polynomials are
 * fine and easy to audit. */
class MatrixGF {
public:
  MatrixGF(gfq::FieldPtr f, std::size_t n); // zero matrix
  static MatrixGF identity(gfq::FieldPtr f, std::size_t n);

  std::size_t dim() const { return n_; }
  const gfq::FieldPtr& field() const { return f_; }

  gfq::GFElement& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
  const gfq::GFElement& at(std::size_t i, std::size_t j) const {
    return e_[i * n_ + j];
  }

  bool is_invertible() const; // Gaussian elimination on a copy

  friend MatrixGF operator*(const MatrixGF& a, const MatrixGF& b);
  friend bool operator==(const MatrixGF& a, const MatrixGF& b);
  friend bool operator!=(const MatrixGF& a, const MatrixGF& b) {
    return !(a == b);
  }

private:
  gfq::FieldPtr f_;
  std::size_t n_;
  std::vector<gfq::GFElement> e_;
};

/// Uniform invertible matrix: entries drawn from the whole field, resampled
/// until the result is invertible.  Deterministic for a fixed seed.
MatrixGF random_invertible(const gfq::FieldPtr& f, std::size_t m,
                           std::uint64_t seed);

/// Block companion layout for a list of t invertible m x m matrices
/// g_1..g_t: g_i sits on the block superdiagonal (block row i-1, block
/// column i) for i < t, g_t in the bottom-left block, zeros elsewhere.
/// For t = 1 the result is g_1 itself.
/// Errors: ShapeMismatch (sizes differ or empty list), FieldMismatch,
/// Singular (some g_i not invertible).
MatrixGF block_matrix(const std::vector<MatrixGF>& gs);

/// Characteristic polynomial det(x*I - A), monic of degree dim(A).
/// Division-free (Berkowitz-style vector recurrence), so it is exact over
/// any finite field without case-splitting on pivots.
polyq::Poly char_poly(const MatrixGF& a);

/// Draws t seeded random invertible m x m matrices over F_q and checks that
/// the characteristic polynomial of their block companion matrix equals
/// f(x^t) where f is the characteristic polynomial of the ordinary product
/// g_1*g_2*...*g_t.  Requires m*t <= 24 (SizeExceeded otherwise).
bool verify_prop_block(const mpz_class& q, std::uint64_t m, std::uint64_t t,
                       std::uint64_t seed);

/* Enumeration caps for the brute-force counters; the CLI can widen them via
 * HYPERIRR_MAX_ENUM. */
struct EnumBounds {
  std::uint64_t max_enum = polyq::kDefaultEnumBound; // cap on q^m
  std::uint64_t max_compose = kDefaultComposeBound;  // cap on m*t
};

/// Literal count: monic irreducible f != x of degree m over F_q whose
/// composition f(x^t) has an irreducible factor of degree e, found by
/// enumerating all candidates and factoring each composition.
std::uint64_t brute_count_factor(const mpz_class& q, std::uint64_t m,
                                 std::uint64_t t, std::uint64_t e,
                                 const EnumBounds& bounds = {});

/// Same count through the order criterion: f qualifies iff gcd(q,t) = 1 and
/// the multiplicative order of q modulo root_order(f)*t equals e.  Only
/// valid in the regime 2e > mt (HypothesisViolated otherwise); must agree
/// with brute_count_factor there.
std::uint64_t brute_count_order(const mpz_class& q, std::uint64_t m,
                                std::uint64_t t, std::uint64_t e,
                                const EnumBounds& bounds = {});

/* One line of a sweep grid: a set of q values crossed with inclusive m and
 * t ranges.  A grid is a list of lines; triples appearing twice are run
 * once. */
struct GridLine {
  std::vector<std::uint64_t> qs;
  std::uint64_t m_lo = 1, m_hi = 1;
  std::uint64_t t_lo = 1, t_hi = 1;
};

/// Default verification grid: q over the prime powers up to 9, m up to 4,
/// t up to 10 (cells beyond the enumeration caps are filtered out later).
GridLine default_grid_line();

/// Parses the text grid format: one line per GridLine,
///   "q=<comma list> m=<a..b or single> t=<a..b or single>"
/// Blank lines and lines starting with '#' are ignored.
/// Errors: InvalidArgument on malformed input or an empty grid.
std::vector<GridLine> parse_grid(const std::string& text);

struct SweepOptions {
  std::vector<GridLine> lines;                        // empty = default line
  std::uint64_t max_enum = polyq::kDefaultEnumBound;  // cap on q^m
  std::uint64_t max_compose = kDefaultComposeBound;   // cap on m*t
  unsigned jobs = 1;
};

/* One grid cell (q,m,t,e): the formula value against both brute counts.
 * A cell that threw carries the message in `error` and empty counts. */
struct SweepCell {
  std::uint64_t q = 0, m = 0, t = 0, e = 0;
  std::uint64_t formula = 0;
  std::uint64_t brute_factor = 0;
  std::uint64_t brute_order = 0;
  bool agree = false;
  double ms = 0.0;
  std::string error; // empty on success
};

struct SweepResult {
  std::vector<SweepCell> cells;
  std::uint64_t disagreements = 0;
  std::uint64_t errored = 0;
  double total_ms = 0.0;

  bool all_agree() const { return disagreements == 0 && errored == 0; }
};

/// Runs every in-hypothesis cell of the grid: for each admissible (q,m,t)
/// (q a prime power, q^m and m*t within the caps) and each e in (mt/2, mt],
/// computes the formula count and both brute counts.  Cell order is
/// deterministic (grid order, then m, t, e ascending); cells are
/// independent and fan out across `jobs` worker threads.  A throwing cell
/// becomes a failure record; the sweep itself keeps going.
SweepResult run_sweep(const SweepOptions& opts = {});

/// CSV report: header q,m,t,e,formula,brute_factor,brute_order,agree,ms.
void write_sweep_csv(const SweepResult& r, std::ostream& out);
/// JSON report: array of per-cell records with the same fields (counts as
/// decimal strings, agree as bool, ms as a number).
void write_sweep_json(const SweepResult& r, std::ostream& out);

} // namespace hyperirr::oracle
