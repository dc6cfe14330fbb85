#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <random>
#include <sstream>
#include <vector>

#include "json.hpp"

#include <hyperirr/errors.hpp>
#include <hyperirr/gfq.hpp>
#include <hyperirr/hyper.hpp>
#include <hyperirr/oracle.hpp>
#include <hyperirr/polyq.hpp>

#include "testutil.hpp"

using namespace hyperirr;
using gfq::FieldPtr;
using gfq::GFElement;
using oracle::MatrixGF;
using polyq::Poly;

namespace {

Poly P(const FieldPtr& f, std::vector<std::uint32_t> words) {
  return Poly::from_words(f, std::move(words));
}

MatrixGF from_indices(const FieldPtr& f,
                      const std::vector<std::vector<std::uint64_t>>& rows) {
  MatrixGF a(f, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j)
      a.at(i, j) = f->from_index(rows[i][j]);
  return a;
}

// Cofactor-expansion determinant over polynomial entries: an independent
// route to the characteristic polynomial for small dimensions.
Poly poly_det(const std::vector<std::vector<Poly>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  const FieldPtr& f = m[0][0].field();
  Poly acc = Poly::zero(f);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Poly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    const Poly term = m[0][j] * poly_det(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

Poly char_poly_by_determinant(const MatrixGF& a) {
  const FieldPtr& f = a.field();
  const std::size_t n = a.dim();
  std::vector<std::vector<Poly>> xia(n, std::vector<Poly>(n, Poly::zero(f)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Poly entry = Poly::constant(f->zero() - a.at(i, j));
      xia[i][j] = (i == j) ? Poly::x(f) + entry : entry;
    }
  return poly_det(xia);
}

} // namespace

TEST_CASE("matrix basics: identity, product, mismatch errors") {
  const FieldPtr f3 = gfq::build_field(3, 1);
  const FieldPtr f4 = gfq::build_field(2, 2);

  const MatrixGF id = MatrixGF::identity(f3, 3);
  MatrixGF a(f3, 3);
  std::mt19937_64 rng(7);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      a.at(i, j) = f3->from_index(rng() % 3);

  CHECK(id * a == a);
  CHECK(a * id == a);
  CHECK(MatrixGF(f3, 3) * a == MatrixGF(f3, 3)); // zero annihilates

  const MatrixGF b = from_indices(f3, {{1, 2, 0}, {0, 1, 1}, {2, 0, 1}});
  const MatrixGF c = from_indices(f3, {{0, 1, 1}, {1, 1, 0}, {2, 2, 1}});
  CHECK((a * b) * c == a * (b * c));

  testutil::expect_error(ErrorKind::ShapeMismatch,
                         [&] { (void)(a * MatrixGF(f3, 2)); });
  testutil::expect_error(ErrorKind::FieldMismatch,
                         [&] { (void)(a * MatrixGF(f4, 3)); });
  testutil::expect_error(ErrorKind::FieldMismatch,
                         [&] { (void)(MatrixGF(f3, 2) == MatrixGF(f4, 2)); });
  testutil::expect_error(ErrorKind::ShapeMismatch, [&] { MatrixGF m(f3, 0); });
}

TEST_CASE("invertibility detection matches the general linear group sizes") {
  const FieldPtr f2 = gfq::build_field(2, 1);
  const FieldPtr f3 = gfq::build_field(3, 1);
  const FieldPtr f5 = gfq::build_field(5, 1);

  CHECK(MatrixGF::identity(f5, 4).is_invertible());
  CHECK(!MatrixGF(f5, 3).is_invertible());
  CHECK(!from_indices(f5, {{1, 2}, {2, 4}}).is_invertible()); // det 0
  CHECK(from_indices(f5, {{0, 1}, {1, 0}}).is_invertible());

  // |GL(2,q)| = (q^2-1)(q^2-q): 6 over F_2, 48 over F_3
  auto count_invertible_2x2 = [](const FieldPtr& f) {
    const std::uint64_t q = f->size();
    std::uint64_t found = 0;
    for (std::uint64_t w = 0; w < q * q * q * q; ++w) {
      std::uint64_t v = w;
      MatrixGF m(f, 2);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          m.at(i, j) = f->from_index(v % q);
          v /= q;
        }
      if (m.is_invertible()) ++found;
    }
    return found;
  };
  CHECK(count_invertible_2x2(f2) == 6);
  CHECK(count_invertible_2x2(f3) == 48);
}

TEST_CASE("seeded invertible sampling is deterministic") {
  const FieldPtr f5 = gfq::build_field(5, 1);
  const MatrixGF a = oracle::random_invertible(f5, 3, 42);
  const MatrixGF b = oracle::random_invertible(f5, 3, 42);
  CHECK(a == b);
  CHECK(a.is_invertible());
  const MatrixGF c = oracle::random_invertible(f5, 3, 43);
  CHECK(c.is_invertible());

  // tiny field, dimension 1: forces actual resampling past zeros
  const FieldPtr f2 = gfq::build_field(2, 1);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const MatrixGF m = oracle::random_invertible(f2, 1, seed);
    CHECK(m.at(0, 0).is_one());
  }
}

TEST_CASE("block layout: superdiagonal blocks, wrap-around corner") {
  const FieldPtr f3 = gfq::build_field(3, 1);
  const FieldPtr f7 = gfq::build_field(7, 1);

  const MatrixGF g1 = oracle::random_invertible(f3, 2, 1);
  CHECK(oracle::block_matrix({g1}) == g1);

  // m = 1, t = 2: [[0, a], [b, 0]]
  const MatrixGF a1 = from_indices(f7, {{3}});
  const MatrixGF b1 = from_indices(f7, {{4}});
  const MatrixGF small = oracle::block_matrix({a1, b1});
  CHECK(small.dim() == 2);
  CHECK(small.at(0, 0).is_zero());
  CHECK(small.at(0, 1) == f7->from_index(3));
  CHECK(small.at(1, 0) == f7->from_index(4));
  CHECK(small.at(1, 1).is_zero());

  // m = 2, t = 3: 6x6, g1 at block (0,1), g2 at (1,2), g3 at (2,0)
  const MatrixGF h1 = oracle::random_invertible(f3, 2, 11);
  const MatrixGF h2 = oracle::random_invertible(f3, 2, 12);
  const MatrixGF h3 = oracle::random_invertible(f3, 2, 13);
  const MatrixGF big = oracle::block_matrix({h1, h2, h3});
  REQUIRE(big.dim() == 6);
  auto block_equals = [&](std::size_t br, std::size_t bc, const MatrixGF* want) {
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        const GFElement& got = big.at(br * 2 + i, bc * 2 + j);
        if (want == nullptr) {
          if (!got.is_zero()) return false;
        } else if (got != want->at(i, j)) {
          return false;
        }
      }
    return true;
  };
  for (std::size_t br = 0; br < 3; ++br)
    for (std::size_t bc = 0; bc < 3; ++bc) {
      const MatrixGF* want = nullptr;
      if (br == 0 && bc == 1) want = &h1;
      if (br == 1 && bc == 2) want = &h2;
      if (br == 2 && bc == 0) want = &h3;
      CHECK(block_equals(br, bc, want));
    }

  testutil::expect_error(ErrorKind::ShapeMismatch,
                         [] { oracle::block_matrix({}); });
  testutil::expect_error(ErrorKind::ShapeMismatch, [&] {
    oracle::block_matrix({h1, oracle::random_invertible(f3, 3, 5)});
  });
  testutil::expect_error(ErrorKind::FieldMismatch, [&] {
    oracle::block_matrix({h1, oracle::random_invertible(f7, 2, 5)});
  });
  testutil::expect_error(ErrorKind::Singular, [&] {
    oracle::block_matrix({h1, from_indices(f3, {{1, 1}, {1, 1}})});
  });
}

TEST_CASE("characteristic polynomial: pinned small cases") {
  const FieldPtr f3 = gfq::build_field(3, 1);
  const FieldPtr f7 = gfq::build_field(7, 1);

  // 1x1
  CHECK(oracle::char_poly(from_indices(f7, {{5}})) == P(f7, {2, 1})); // x - 5

  // identity 2x2 over F_3: (x-1)^2 = x^2 + x + 1
  CHECK(oracle::char_poly(MatrixGF::identity(f3, 2)) == P(f3, {1, 1, 1}));

  // [[0,a],[b,0]] -> x^2 - ab: a=3, b=4 over F_7 gives x^2 + 2
  const MatrixGF swap = oracle::block_matrix(
      {from_indices(f7, {{3}}), from_indices(f7, {{4}})});
  CHECK(oracle::char_poly(swap) == P(f7, {2, 0, 1}));

  // companion matrix round-trips: x^2 + x + 2 over F_3
  const MatrixGF comp = from_indices(f3, {{0, 1}, {1, 2}});
  CHECK(oracle::char_poly(comp) == P(f3, {2, 1, 1}));

  // degree-4 companion over F_5: f = x^4 + 2x^3 + x + 3
  const FieldPtr f5 = gfq::build_field(5, 1);
  const Poly f = P(f5, {3, 1, 0, 2, 1});
  MatrixGF c4(f5, 4);
  for (std::size_t i = 1; i < 4; ++i) c4.at(i, i - 1) = f5->one();
  for (std::size_t i = 0; i < 4; ++i)
    c4.at(i, 3) = f5->zero() - f.coeff(i);
  CHECK(oracle::char_poly(c4) == f);
}

TEST_CASE("characteristic polynomial agrees with determinant expansion") {
  std::mt19937_64 rng(0xabcdefull);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const FieldPtr f = gfq::build_field(p, 1);
    for (std::size_t n = 1; n <= 4; ++n)
      for (int rep = 0; rep < 8; ++rep) {
        MatrixGF a(f, n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            a.at(i, j) = f->from_index(rng() % p);
        const Poly got = oracle::char_poly(a);
        CHECK(got == char_poly_by_determinant(a));
        CHECK(got.is_monic());
        CHECK(got.degree() == static_cast<long>(n));
      }
  }
  // extension field too
  const FieldPtr f4 = gfq::build_field(2, 2);
  for (int rep = 0; rep < 8; ++rep) {
    MatrixGF a(f4, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        a.at(i, j) = f4->from_index(rng() % 4);
    CHECK(oracle::char_poly(a) == char_poly_by_determinant(a));
  }
}

TEST_CASE("block companion identity holds on seeded trials") {
  std::uint64_t seed = 1000;
  for (unsigned long q : {2ul, 3ul, 5ul})
    for (std::uint64_t m = 1; m <= 3; ++m)
      for (std::uint64_t t = 1; t <= 4; ++t)
        CHECK(oracle::verify_prop_block(mpz_class(q), m, t, seed++));

  CHECK(oracle::verify_prop_block(mpz_class(4), 2, 3, 99)); // extension field
  CHECK(oracle::verify_prop_block(mpz_class(2), 3, 4, 7));

  testutil::expect_error(ErrorKind::SizeExceeded,
                         [] { oracle::verify_prop_block(mpz_class(2), 5, 5, 0); });
  testutil::expect_error(ErrorKind::InvalidArgument,
                         [] { oracle::verify_prop_block(mpz_class(2), 0, 1, 0); });
  testutil::expect_error(ErrorKind::NotPrimePower,
                         [] { oracle::verify_prop_block(mpz_class(6), 2, 2, 0); });
}

TEST_CASE("brute counters: pinned values and formula agreement") {
  CHECK(oracle::brute_count_factor(mpz_class(3), 2, 2, 4) == 2);
  CHECK(oracle::brute_count_order(mpz_class(3), 2, 2, 4) == 2);

  // m = 1, t = 2 over F_5: x^2 - c irreducible exactly for the two
  // non-squares c, and the order route sees the same pair
  CHECK(oracle::brute_count_factor(mpz_class(5), 1, 2, 2) == 2);
  CHECK(oracle::brute_count_order(mpz_class(5), 1, 2, 2) == 2);

  // char divides t: composition is a p-th power, nothing large survives
  CHECK(oracle::brute_count_factor(mpz_class(2), 1, 2, 2) == 0);
  CHECK(oracle::brute_count_order(mpz_class(2), 1, 2, 2) == 0);

  // t = 1, e = m: every irreducible counts
  for (unsigned long q : {2ul, 3ul, 4ul, 5ul})
    for (std::uint64_t m = 1; m <= 3; ++m) {
      const mpz_class qz(q);
      const std::uint64_t expected = hyper::gauss_count(qz, m).get_ui();
      CHECK(oracle::brute_count_factor(qz, m, 1, m) == expected);
      CHECK(oracle::brute_count_order(qz, m, 1, m) == expected);
    }

  // formula cross-check on scattered in-hypothesis cells
  for (const auto& [q, m, t, e] :
       std::vector<std::array<std::uint64_t, 4>>{{3, 2, 2, 4},
                                                 {3, 2, 2, 3},
                                                 {5, 2, 3, 6},
                                                 {5, 2, 3, 5},
                                                 {7, 1, 4, 4},
                                                 {7, 1, 4, 3},
                                                 {2, 3, 3, 9},
                                                 {9, 1, 2, 2},
                                                 {4, 2, 5, 10}}) {
    const mpz_class qz(static_cast<unsigned long>(q));
    const std::uint64_t formula = hyper::count_almost(qz, m, t, e).count.get_ui();
    CHECK(oracle::brute_count_factor(qz, m, t, e) == formula);
    CHECK(oracle::brute_count_order(qz, m, t, e) == formula);
  }

  testutil::expect_error(ErrorKind::HypothesisViolated,
                         [] { oracle::brute_count_order(mpz_class(3), 2, 2, 2); });
  testutil::expect_error(ErrorKind::SizeExceeded,
                         [] { oracle::brute_count_factor(mpz_class(2), 20, 1, 20); });
  testutil::expect_error(ErrorKind::SizeExceeded, [] {
    oracle::brute_count_factor(mpz_class(2), 10, 5, 30); // m*t over the cap
  });
  testutil::expect_error(ErrorKind::NotPrimePower,
                         [] { oracle::brute_count_factor(mpz_class(6), 1, 1, 1); });
}

TEST_CASE("grid parsing") {
  const auto lines = oracle::parse_grid(
      "# comment\n"
      "q=2,3,4 m=1..4 t=1..10\n"
      "\n"
      "q=5 m=2 t=3..7  # trailing note\n");
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].qs == std::vector<std::uint64_t>({2, 3, 4}));
  CHECK(lines[0].m_lo == 1);
  CHECK(lines[0].m_hi == 4);
  CHECK(lines[0].t_lo == 1);
  CHECK(lines[0].t_hi == 10);
  CHECK(lines[1].qs == std::vector<std::uint64_t>{5});
  CHECK(lines[1].m_lo == 2);
  CHECK(lines[1].m_hi == 2);
  CHECK(lines[1].t_lo == 3);
  CHECK(lines[1].t_hi == 7);

  for (const char* bad : {"", "# only comments\n", "q=2 m=1", "m=1 t=1",
                          "q=2 m=1 t=1 extra", "q=2,0 m=1 t=1",
                          "q=2 m=3..1 t=1", "q=2 m=x t=1", "q=2 m=1 t=1 q=3",
                          "q=-2 m=1 t=1"}) {
    CAPTURE(bad);
    testutil::expect_error(ErrorKind::InvalidArgument,
                           [&] { oracle::parse_grid(bad); });
  }
}

TEST_CASE("mini sweep: three-way agreement, determinism, report formats") {
  oracle::SweepOptions opts;
  oracle::GridLine line;
  line.qs = {2, 3};
  line.m_lo = 1;
  line.m_hi = 2;
  line.t_lo = 1;
  line.t_hi = 3;
  opts.lines = {line};

  const oracle::SweepResult r = oracle::run_sweep(opts);
  CHECK(r.all_agree());
  CHECK(r.disagreements == 0);
  CHECK(r.errored == 0);

  // cell inventory: for each (q,m,t) the e-range (mt/2, mt]
  std::uint64_t expected_cells = 0;
  for (std::uint64_t m = 1; m <= 2; ++m)
    for (std::uint64_t t = 1; t <= 3; ++t)
      expected_cells += 2 * (m * t - (m * t) / 2);
  CHECK(r.cells.size() == expected_cells);

  // deterministic ordering and spot-agreement with the direct counters
  for (std::size_t i = 1; i < r.cells.size(); ++i) {
    const auto key = [](const oracle::SweepCell& c) {
      return std::tuple(c.q, c.m, c.t, c.e);
    };
    CHECK(key(r.cells[i - 1]) < key(r.cells[i]));
  }
  for (std::size_t i = 0; i < r.cells.size(); i += 5) {
    const oracle::SweepCell& c = r.cells[i];
    const mpz_class qz(static_cast<unsigned long>(c.q));
    CHECK(c.brute_factor == oracle::brute_count_factor(qz, c.m, c.t, c.e));
    CHECK(c.brute_order == oracle::brute_count_order(qz, c.m, c.t, c.e));
    CHECK(c.formula == hyper::count_almost(qz, c.m, c.t, c.e).count.get_ui());
    CHECK(c.ms >= 0.0);
  }

  // a parallel run reproduces every non-timing field in the same order
  opts.jobs = 3;
  const oracle::SweepResult r2 = oracle::run_sweep(opts);
  REQUIRE(r2.cells.size() == r.cells.size());
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    CHECK(r.cells[i].q == r2.cells[i].q);
    CHECK(r.cells[i].m == r2.cells[i].m);
    CHECK(r.cells[i].t == r2.cells[i].t);
    CHECK(r.cells[i].e == r2.cells[i].e);
    CHECK(r.cells[i].formula == r2.cells[i].formula);
    CHECK(r.cells[i].brute_factor == r2.cells[i].brute_factor);
    CHECK(r.cells[i].brute_order == r2.cells[i].brute_order);
    CHECK(r.cells[i].agree == r2.cells[i].agree);
  }

  // CSV: header + one row per cell, pinned column count
  std::ostringstream csv;
  oracle::write_sweep_csv(r, csv);
  std::istringstream csv_in(csv.str());
  std::string linebuf;
  REQUIRE(std::getline(csv_in, linebuf));
  CHECK(linebuf == "q,m,t,e,formula,brute_factor,brute_order,agree,ms");
  std::size_t rows = 0;
  while (std::getline(csv_in, linebuf)) {
    ++rows;
    CHECK(std::count(linebuf.begin(), linebuf.end(), ',') == 8);
  }
  CHECK(rows == r.cells.size());

  // JSON: parses, counts match, numbers carried as decimal strings
  std::ostringstream js;
  oracle::write_sweep_json(r, js);
  const nlohmann::json doc = nlohmann::json::parse(js.str());
  REQUIRE(doc.at("cells").size() == r.cells.size());
  CHECK(doc.at("disagreements") == "0");
  CHECK(doc.at("errored") == "0");
  const nlohmann::json& first = doc.at("cells").at(0);
  CHECK(first.at("q") == std::to_string(r.cells[0].q));
  CHECK(first.at("formula") == std::to_string(r.cells[0].formula));
  CHECK(first.at("agree").is_boolean());
  CHECK(first.at("ms").is_number());
}

TEST_CASE("sweep honours grid dedup and enumeration caps") {
  oracle::SweepOptions opts;
  oracle::GridLine a;
  a.qs = {2, 2, 3}; // duplicate q
  a.m_lo = a.m_hi = 1;
  a.t_lo = a.t_hi = 2;
  oracle::GridLine b = a; // duplicate whole line
  opts.lines = {a, b};
  const oracle::SweepResult r = oracle::run_sweep(opts);
  // triples (2,1,2) and (3,1,2), each with e in {2}
  CHECK(r.cells.size() == 2);
  CHECK(r.all_agree());

  // q^m beyond the cap disappears instead of erroring
  oracle::SweepOptions capped;
  oracle::GridLine big;
  big.qs = {2};
  big.m_lo = 1;
  big.m_hi = 60;
  big.t_lo = big.t_hi = 1;
  capped.lines = {big};
  capped.max_enum = 1 << 8;
  const oracle::SweepResult rc = oracle::run_sweep(capped);
  std::uint64_t max_m = 0;
  for (const auto& c : rc.cells) max_m = std::max(max_m, c.m);
  CHECK(max_m == 8);
  CHECK(rc.all_agree());

  oracle::SweepOptions badq;
  oracle::GridLine bq;
  bq.qs = {6};
  badq.lines = {bq};
  testutil::expect_error(ErrorKind::NotPrimePower,
                         [&] { oracle::run_sweep(badq); });
}
