#include "hyperirr/oracle.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"

#include "hyperirr/errors.hpp"
#include "hyperirr/hyper.hpp"
#include "hyperirr/numtheory.hpp"

namespace hyperirr::oracle {

using gfq::FieldPtr;
using gfq::GFElement;
using polyq::Poly;

namespace {

void need_field(const FieldPtr& f) {
  if (!f) raise(ErrorKind::InvalidArgument, "matrix has no field attached");
}

void need_same(const MatrixGF& a, const MatrixGF& b) {
  if (!a.field()->same_as(*b.field()))
    raise(ErrorKind::FieldMismatch, "matrices over different fields");
}

FieldPtr field_for(const mpz_class& q) {
  auto pk = numtheory::as_prime_power(q);
  if (!pk)
    raise(ErrorKind::NotPrimePower, "q = " + q.get_str() + " is not a prime power");
  if (pk->first > std::numeric_limits<std::uint32_t>::max())
    raise(ErrorKind::SizeExceeded, "characteristic too large for matrix work");
  return gfq::build_field(static_cast<std::uint32_t>(pk->first.get_ui()),
                          pk->second);
}

} // namespace

MatrixGF::MatrixGF(FieldPtr f, std::size_t n) : f_(std::move(f)), n_(n) {
  need_field(f_);
  if (n_ == 0) raise(ErrorKind::ShapeMismatch, "matrix dimension must be >= 1");
  e_.assign(n_ * n_, f_->zero());
}

MatrixGF MatrixGF::identity(FieldPtr f, std::size_t n) {
  MatrixGF m(std::move(f), n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = m.f_->one();
  return m;
}

bool MatrixGF::is_invertible() const {
  MatrixGF w(*this);
  const std::size_t n = n_;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && w.at(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return false;
    if (pivot != col)
      for (std::size_t j = col; j < n; ++j)
        std::swap(w.at(col, j), w.at(pivot, j));
    const GFElement inv = w.at(col, col).inverse();
    for (std::size_t row = col + 1; row < n; ++row) {
      if (w.at(row, col).is_zero()) continue;
      const GFElement factor = w.at(row, col) * inv;
      for (std::size_t j = col; j < n; ++j)
        w.at(row, j) = w.at(row, j) - factor * w.at(col, j);
    }
  }
  return true;
}

MatrixGF operator*(const MatrixGF& a, const MatrixGF& b) {
  need_same(a, b);
  if (a.dim() != b.dim())
    raise(ErrorKind::ShapeMismatch, "matrix product needs equal dimensions");
  const std::size_t n = a.dim();
  MatrixGF c(a.field(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const GFElement& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        c.at(i, j) = c.at(i, j) + aik * b.at(k, j);
    }
  return c;
}

bool operator==(const MatrixGF& a, const MatrixGF& b) {
  need_same(a, b);
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (a.at(i, j) != b.at(i, j)) return false;
  return true;
}

namespace {

MatrixGF random_matrix(const FieldPtr& f, std::size_t m, std::mt19937_64& rng) {
  MatrixGF a(f, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      a.at(i, j) = f->from_index(rng() % f->size());
  return a;
}

MatrixGF random_invertible(const FieldPtr& f, std::size_t m,
                           std::mt19937_64& rng) {
  for (;;) {
    MatrixGF a = random_matrix(f, m, rng);
    if (a.is_invertible()) return a;
  }
}

} // namespace

MatrixGF random_invertible(const FieldPtr& f, std::size_t m,
                           std::uint64_t seed) {
  need_field(f);
  if (m == 0) raise(ErrorKind::ShapeMismatch, "matrix dimension must be >= 1");
  std::mt19937_64 rng(seed);
  return random_invertible(f, m, rng);
}

MatrixGF block_matrix(const std::vector<MatrixGF>& gs) {
  if (gs.empty())
    raise(ErrorKind::ShapeMismatch, "block layout needs at least one matrix");
  const std::size_t t = gs.size();
  const std::size_t m = gs[0].dim();
  for (const MatrixGF& g : gs) {
    need_same(gs[0], g);
    if (g.dim() != m)
      raise(ErrorKind::ShapeMismatch, "all blocks must have the same size");
    if (!g.is_invertible())
      raise(ErrorKind::Singular, "all blocks must be invertible");
  }
  if (t == 1) return gs[0];

  MatrixGF big(gs[0].field(), m * t);
  auto place = [&](const MatrixGF& g, std::size_t br, std::size_t bc) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        big.at(br * m + i, bc * m + j) = g.at(i, j);
  };
  for (std::size_t r = 0; r + 1 < t; ++r) place(gs[r], r, r + 1);
  place(gs[t - 1], t - 1, 0);
  return big;
}

/* Characteristic polynomial by the Berkowitz vector recurrence.  After step
 * r the vector c holds the coefficients (highest power first) of the
 * characteristic polynomial of the leading principal r x r submatrix; the
 * step multiplies by a lower-triangular Toeplitz column built from the new
 * row/column/diagonal entry, using only ring operations. */
polyq::Poly char_poly(const MatrixGF& a) {
  const FieldPtr& f = a.field();
  need_field(f);
  const std::size_t n = a.dim();

  std::vector<GFElement> c = {f->one()};
  for (std::size_t r = 1; r <= n; ++r) {
    // Toeplitz column: v[0] = 1, v[1] = -A[r-1][r-1],
    // v[k] = -(row * M^(k-2) * col) for the (r-1)-sized leading block M.
    std::vector<GFElement> v(r + 1, f->zero());
    v[0] = f->one();
    v[1] = f->zero() - a.at(r - 1, r - 1);
    if (r >= 2) {
      std::vector<GFElement> w(r - 1); // running M^i * col
      for (std::size_t i = 0; i + 1 < r; ++i) w[i] = a.at(i, r - 1);
      for (std::size_t k = 2; k <= r; ++k) {
        GFElement dot = f->zero();
        for (std::size_t i = 0; i + 1 < r; ++i)
          dot = dot + a.at(r - 1, i) * w[i];
        v[k] = f->zero() - dot;
        if (k == r) break;
        std::vector<GFElement> next(r - 1, f->zero());
        for (std::size_t i = 0; i + 1 < r; ++i) {
          for (std::size_t j = 0; j + 1 < r; ++j)
            next[i] = next[i] + a.at(i, j) * w[j];
        }
        w = std::move(next);
      }
    }
    std::vector<GFElement> nc(r + 1, f->zero());
    for (std::size_t i = 0; i <= r; ++i)
      for (std::size_t j = 0; j < c.size() && j <= i; ++j)
        nc[i] = nc[i] + v[i - j] * c[j];
    c = std::move(nc);
  }

  std::vector<GFElement> ascending(c.rbegin(), c.rend());
  return Poly::from_elements(ascending);
}

bool verify_prop_block(const mpz_class& q, std::uint64_t m, std::uint64_t t,
                       std::uint64_t seed) {
  if (m == 0 || t == 0)
    raise(ErrorKind::InvalidArgument, "m and t must be >= 1");
  if (m > 24 / t)
    raise(ErrorKind::SizeExceeded, "matrix side m*t must stay <= 24");
  const FieldPtr f = field_for(q);

  std::mt19937_64 rng(seed);
  std::vector<MatrixGF> gs;
  gs.reserve(t);
  for (std::uint64_t i = 0; i < t; ++i)
    gs.push_back(random_invertible(f, m, rng));

  MatrixGF prod = gs[0];
  for (std::uint64_t i = 1; i < t; ++i) prod = prod * gs[i];

  const Poly lhs = char_poly(block_matrix(gs));
  const Poly rhs = polyq::compose_xt(char_poly(prod), t);
  return lhs == rhs;
}

namespace {

struct BruteInputs {
  FieldPtr field;
  mpz_class qm; // q^m
};

BruteInputs check_brute_inputs(const mpz_class& q, std::uint64_t m,
                               std::uint64_t t, std::uint64_t e,
                               const EnumBounds& bounds) {
  if (m == 0 || t == 0 || e == 0)
    raise(ErrorKind::InvalidArgument, "m, t, e must be >= 1");
  if (m > UINT64_MAX / t) raise(ErrorKind::InvalidArgument, "m*t overflows");
  BruteInputs in;
  in.field = field_for(q);
  mpz_pow_ui(in.qm.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(m));
  if (in.qm > bounds.max_enum)
    raise(ErrorKind::SizeExceeded,
          "q^m = " + in.qm.get_str() + " exceeds the enumeration bound " +
              std::to_string(bounds.max_enum));
  if (m * t > bounds.max_compose)
    raise(ErrorKind::SizeExceeded,
          "composed degree m*t = " + std::to_string(m * t) +
              " exceeds the bound " + std::to_string(bounds.max_compose));
  return in;
}

} // namespace

std::uint64_t brute_count_factor(const mpz_class& q, std::uint64_t m,
                                 std::uint64_t t, std::uint64_t e,
                                 const EnumBounds& bounds) {
  const BruteInputs in = check_brute_inputs(q, m, t, e, bounds);
  std::uint64_t count = 0;
  polyq::MonicIrreducibleEnumerator en(in.field, static_cast<unsigned>(m),
                                       bounds.max_enum);
  while (auto f = en.next()) {
    if (f->is_x()) continue;
    const polyq::DegreeProfile profile =
        polyq::distinct_degree_profile(polyq::compose_xt(*f, t));
    if (profile.count_at(e) > 0) ++count;
  }
  return count;
}

std::uint64_t brute_count_order(const mpz_class& q, std::uint64_t m,
                                std::uint64_t t, std::uint64_t e,
                                const EnumBounds& bounds) {
  const BruteInputs in = check_brute_inputs(q, m, t, e, bounds);
  if (2 * e <= m * t)
    raise(ErrorKind::HypothesisViolated,
          "the order criterion needs e > m*t/2");
  const mpz_class tz(static_cast<unsigned long>(t));
  if (gcd(q, tz) != 1) return 0;

  std::uint64_t count = 0;
  polyq::MonicIrreducibleEnumerator en(in.field, static_cast<unsigned>(m),
                                       bounds.max_enum);
  while (auto f = en.next()) {
    if (f->is_x()) continue;
    const mpz_class ord = numtheory::mult_order(q, polyq::root_order(*f) * tz).value;
    if (ord == e) ++count;
  }
  return count;
}

GridLine default_grid_line() {
  GridLine g;
  g.qs = {2, 3, 4, 5, 7, 8, 9};
  g.m_lo = 1;
  g.m_hi = 4;
  g.t_lo = 1;
  g.t_hi = 10;
  return g;
}

namespace {

std::uint64_t parse_u64(const std::string& s, const char* what) {
  const auto reject = [&]() -> std::uint64_t {
    raise(ErrorKind::InvalidArgument, std::string("grid ") + what +
                                          " must be a positive integer, got '" +
                                          s + "'");
  };
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    return reject();
  try {
    const unsigned long long v = std::stoull(s);
    if (v == 0) return reject();
    return v;
  } catch (const std::exception&) {
    return reject(); // out of range
  }
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s,
                                                    const char* what) {
  const std::size_t dots = s.find("..");
  if (dots == std::string::npos) {
    const std::uint64_t v = parse_u64(s, what);
    return {v, v};
  }
  const std::uint64_t lo = parse_u64(s.substr(0, dots), what);
  const std::uint64_t hi = parse_u64(s.substr(dots + 2), what);
  if (lo > hi)
    raise(ErrorKind::InvalidArgument,
          std::string("grid ") + what + " range '" + s + "' is reversed");
  return {lo, hi};
}

} // namespace

std::vector<GridLine> parse_grid(const std::string& text) {
  std::vector<GridLine> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    GridLine g;
    bool saw_q = false, saw_m = false, saw_t = false;
    bool any = false;
    while (ls >> tok) {
      if (tok[0] == '#') break; // comment to end of line
      any = true;
      if (tok.rfind("q=", 0) == 0) {
        if (saw_q) raise(ErrorKind::InvalidArgument, "duplicate q= in grid line");
        saw_q = true;
        std::string list = tok.substr(2);
        std::size_t pos = 0;
        while (pos <= list.size()) {
          const std::size_t comma = list.find(',', pos);
          const std::string item =
              list.substr(pos, comma == std::string::npos ? std::string::npos
                                                          : comma - pos);
          g.qs.push_back(parse_u64(item, "q"));
          if (comma == std::string::npos) break;
          pos = comma + 1;
        }
      } else if (tok.rfind("m=", 0) == 0) {
        if (saw_m) raise(ErrorKind::InvalidArgument, "duplicate m= in grid line");
        saw_m = true;
        std::tie(g.m_lo, g.m_hi) = parse_range(tok.substr(2), "m");
      } else if (tok.rfind("t=", 0) == 0) {
        if (saw_t) raise(ErrorKind::InvalidArgument, "duplicate t= in grid line");
        saw_t = true;
        std::tie(g.t_lo, g.t_hi) = parse_range(tok.substr(2), "t");
      } else {
        raise(ErrorKind::InvalidArgument, "unrecognized grid token '" + tok + "'");
      }
    }
    if (!any) continue; // blank or comment-only line
    if (!saw_q || !saw_m || !saw_t)
      raise(ErrorKind::InvalidArgument,
            "grid line needs q=, m= and t= parts: '" + line + "'");
    lines.push_back(std::move(g));
  }
  if (lines.empty())
    raise(ErrorKind::InvalidArgument, "grid is empty");
  return lines;
}

namespace {

struct CachedPoly {
  Poly f;
  mpz_class root_ord;
};

/* Shared enumeration cache for the sweep: all monic irreducibles != x of
 * degree m over F_q together with their root orders, computed once per
 * (q, m) and handed out to whichever worker asks. */
class EnumCache {
public:
  std::shared_ptr<const std::vector<CachedPoly>> get(std::uint64_t q,
                                                     std::uint64_t m,
                                                     std::uint64_t max_enum) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find({q, m});
    if (it != map_.end()) return it->second;
    auto list = std::make_shared<std::vector<CachedPoly>>();
    const FieldPtr f = field_for(mpz_class(static_cast<unsigned long>(q)));
    polyq::MonicIrreducibleEnumerator en(f, static_cast<unsigned>(m), max_enum);
    while (auto p = en.next()) {
      if (p->is_x()) continue;
      mpz_class ord = polyq::root_order(*p);
      list->push_back({std::move(*p), std::move(ord)});
    }
    auto shared = std::shared_ptr<const std::vector<CachedPoly>>(list);
    map_.emplace(std::make_pair(q, m), shared);
    return shared;
  }

private:
  std::mutex mu_;
  std::map<std::pair<std::uint64_t, std::uint64_t>,
           std::shared_ptr<const std::vector<CachedPoly>>>
      map_;
};

struct SweepTask {
  std::uint64_t q, m, t;
  std::size_t first_cell;
  std::size_t n_cells;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

void run_one_task(const SweepTask& task, EnumCache& cache,
                  const SweepOptions& opts, std::vector<SweepCell>& cells) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t mt = task.m * task.t;
  const mpz_class qz(static_cast<unsigned long>(task.q));
  const mpz_class tz(static_cast<unsigned long>(task.t));
  const bool coprime = gcd(qz, tz) == 1;

  // One pass over the irreducibles feeds every e-cell of this (q,m,t):
  // factor_hist[e] counts f whose composition has a degree-e factor,
  // order_hist[e] counts f whose order criterion lands on e.
  std::vector<std::uint64_t> factor_hist(mt + 1, 0);
  std::vector<std::uint64_t> order_hist(mt + 1, 0);
  std::string prep_error;
  try {
    const auto list = cache.get(task.q, task.m, opts.max_enum);
    for (const CachedPoly& entry : *list) {
      const polyq::DegreeProfile profile =
          polyq::distinct_degree_profile(polyq::compose_xt(entry.f, task.t));
      for (const auto& [degree, cnt] : profile.entries()) {
        (void)cnt;
        if (degree <= mt) ++factor_hist[degree];
      }
      if (coprime) {
        const mpz_class ord =
            numtheory::mult_order(qz, entry.root_ord * tz).value;
        if (ord <= mt) ++order_hist[ord.get_ui()];
      }
    }
  } catch (const std::exception& ex) {
    prep_error = ex.what();
  }
  const double prep_ms = ms_since(t0) / static_cast<double>(task.n_cells);

  for (std::size_t i = 0; i < task.n_cells; ++i) {
    SweepCell& cell = cells[task.first_cell + i];
    const auto c0 = std::chrono::steady_clock::now();
    if (!prep_error.empty()) {
      cell.error = prep_error;
      cell.ms = prep_ms + ms_since(c0);
      continue;
    }
    try {
      const hyper::CountReport rep =
          hyper::count_almost(qz, task.m, task.t, cell.e);
      cell.formula = rep.count.get_ui();
      cell.brute_factor = factor_hist[cell.e];
      cell.brute_order = order_hist[cell.e];
      cell.agree = cell.formula == cell.brute_factor &&
                   cell.brute_factor == cell.brute_order;
    } catch (const std::exception& ex) {
      cell.error = ex.what();
    }
    cell.ms = prep_ms + ms_since(c0);
  }
}

} // namespace

SweepResult run_sweep(const SweepOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<GridLine> lines = opts.lines;
  if (lines.empty()) lines.push_back(default_grid_line());

  // Expand to distinct (q,m,t) triples, validating q up front: a malformed
  // grid is the caller's mistake and should fail loudly, not per cell.
  std::vector<SweepTask> tasks;
  std::vector<SweepCell> cells;
  std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> seen;
  for (const GridLine& line : lines) {
    if (line.qs.empty())
      raise(ErrorKind::InvalidArgument, "grid line has no q values");
    if (line.m_lo == 0 || line.t_lo == 0 || line.m_lo > line.m_hi ||
        line.t_lo > line.t_hi)
      raise(ErrorKind::InvalidArgument, "grid ranges must be nonempty and >= 1");
    for (std::uint64_t q : line.qs) {
      const mpz_class qz(static_cast<unsigned long>(q));
      if (!numtheory::as_prime_power(qz))
        raise(ErrorKind::NotPrimePower,
              "grid q = " + std::to_string(q) + " is not a prime power");
      for (std::uint64_t m = line.m_lo; m <= line.m_hi; ++m) {
        mpz_class qm;
        mpz_pow_ui(qm.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(m));
        if (qm > opts.max_enum) continue; // beyond brute-force reach
        for (std::uint64_t t = line.t_lo; t <= line.t_hi; ++t) {
          if (m * t > opts.max_compose) continue;
          if (!seen.insert({q, m, t}).second) continue;
          const std::uint64_t mt = m * t;
          SweepTask task;
          task.q = q;
          task.m = m;
          task.t = t;
          task.first_cell = cells.size();
          for (std::uint64_t e = mt / 2 + 1; e <= mt; ++e) {
            SweepCell cell;
            cell.q = q;
            cell.m = m;
            cell.t = t;
            cell.e = e;
            cells.push_back(std::move(cell));
          }
          task.n_cells = cells.size() - task.first_cell;
          tasks.push_back(task);
        }
      }
    }
  }

  EnumCache cache;
  const unsigned jobs = opts.jobs == 0 ? 1 : opts.jobs;
  if (jobs == 1 || tasks.size() <= 1) {
    for (const SweepTask& task : tasks) run_one_task(task, cache, opts, cells);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        run_one_task(tasks[i], cache, opts, cells);
      }
    };
    std::vector<std::thread> pool;
    const std::size_t n = std::min<std::size_t>(jobs, tasks.size());
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  SweepResult result;
  result.cells = std::move(cells);
  for (const SweepCell& cell : result.cells) {
    if (!cell.error.empty())
      ++result.errored;
    else if (!cell.agree)
      ++result.disagreements;
  }
  result.total_ms = ms_since(t0);
  return result;
}

void write_sweep_csv(const SweepResult& r, std::ostream& out) {
  out << "q,m,t,e,formula,brute_factor,brute_order,agree,ms\n";
  char ms[32];
  for (const SweepCell& c : r.cells) {
    std::snprintf(ms, sizeof ms, "%.3f", c.ms);
    out << c.q << ',' << c.m << ',' << c.t << ',' << c.e << ',';
    if (c.error.empty())
      out << c.formula << ',' << c.brute_factor << ',' << c.brute_order;
    else
      out << ",,";
    out << ',' << (c.agree ? 1 : 0) << ',' << ms << '\n';
  }
}

void write_sweep_json(const SweepResult& r, std::ostream& out) {
  nlohmann::json records = nlohmann::json::array();
  for (const SweepCell& c : r.cells) {
    nlohmann::json rec;
    rec["q"] = std::to_string(c.q);
    rec["m"] = std::to_string(c.m);
    rec["t"] = std::to_string(c.t);
    rec["e"] = std::to_string(c.e);
    if (c.error.empty()) {
      rec["formula"] = std::to_string(c.formula);
      rec["brute_factor"] = std::to_string(c.brute_factor);
      rec["brute_order"] = std::to_string(c.brute_order);
    } else {
      rec["formula"] = nullptr;
      rec["brute_factor"] = nullptr;
      rec["brute_order"] = nullptr;
      rec["error"] = c.error;
    }
    rec["agree"] = c.agree;
    rec["ms"] = c.ms;
    records.push_back(std::move(rec));
  }
  nlohmann::json doc;
  doc["cells"] = std::move(records);
  doc["disagreements"] = std::to_string(r.disagreements);
  doc["errored"] = std::to_string(r.errored);
  doc["total_ms"] = r.total_ms;
  out << doc.dump(2) << '\n';
}

} // namespace hyperirr::oracle
