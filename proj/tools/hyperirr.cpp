// Command-line front end: existence checks, exact counts, witness
// enumeration, multiplicative orders, the brute-force verification sweep,
// and the block companion matrix identity.  Every subcommand supports
// --json, emitting a stable envelope with all numbers as decimal strings.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include <hyperirr/errors.hpp>
#include <hyperirr/gfq.hpp>
#include <hyperirr/hyper.hpp>
#include <hyperirr/numtheory.hpp>
#include <hyperirr/oracle.hpp>
#include <hyperirr/polyq.hpp>
#include <hyperirr/version.hpp>

using hyperirr::Error;
using hyperirr::ErrorKind;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;
constexpr int kExitNegative = 3;
constexpr int kExitDisagree = 4;

mpz_class parse_mpz(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    hyperirr::raise(ErrorKind::InvalidArgument,
                    std::string(what) + " must be a positive decimal integer, got '" +
                        s + "'");
  mpz_class v(s, 10);
  if (v <= 0)
    hyperirr::raise(ErrorKind::InvalidArgument,
                    std::string(what) + " must be positive");
  return v;
}

/* The envelope printed by every subcommand in --json mode.  Timing never
 * goes in here: identical inputs must produce byte-identical output. */
void emit_envelope(const std::string& command, json inputs, json result,
                   const std::string& provenance) {
  json env;
  env["command"] = command;
  env["inputs"] = std::move(inputs);
  env["result"] = std::move(result);
  env["provenance"] = provenance;
  env["version"] = hyperirr::kVersion;
  std::cout << env.dump(2) << '\n';
}

std::uint64_t enum_bound_from_env() {
  const char* raw = std::getenv("HYPERIRR_MAX_ENUM");
  if (raw == nullptr) return hyperirr::polyq::kDefaultEnumBound;
  const std::string s(raw);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    hyperirr::raise(ErrorKind::InvalidArgument,
                    "HYPERIRR_MAX_ENUM must be a positive integer, got '" + s + "'");
  const std::uint64_t v = std::strtoull(s.c_str(), nullptr, 10);
  if (v == 0)
    hyperirr::raise(ErrorKind::InvalidArgument, "HYPERIRR_MAX_ENUM must be >= 1");
  return v;
}

struct ExistsArgs {
  std::string q;
  std::uint64_t m = 0, t = 1, e = 0; // e = 0 means "default to m*t"
  bool as_json = false;
};

int cmd_exists(const ExistsArgs& args) {
  const mpz_class q = parse_mpz(args.q, "--q");
  const std::uint64_t e = args.e == 0 ? args.m * args.t : args.e;
  const hyperirr::hyper::ExistenceReport rep =
      hyperirr::hyper::exists_factor(q, args.m, args.t, e);

  if (args.as_json) {
    json result;
    result["exists"] = rep.exists;
    result["gcd_t_q"] = rep.gcd_tq.get_str();
    result["required_order"] = mpz_class(e).get_str();
    result["order_value"] =
        rep.order_value ? json(rep.order_value->get_str()) : json(nullptr);
    result["divisibility_witness"] = rep.divisibility_witness
                                         ? json(rep.divisibility_witness->get_str())
                                         : json(nullptr);
    result["witness_divides"] =
        rep.witness_divides ? json(*rep.witness_divides) : json(nullptr);
    json inputs;
    inputs["q"] = q.get_str();
    inputs["m"] = std::to_string(args.m);
    inputs["t"] = std::to_string(args.t);
    inputs["e"] = std::to_string(e);
    emit_envelope("exists", std::move(inputs), std::move(result), "formula");
  } else {
    std::cout << "q = " << q << ", m = " << args.m << ", t = " << args.t
              << ", e = " << e << " (m*t = " << args.m * args.t << ")\n";
    std::cout << "gcd(t, q) = " << rep.gcd_tq << '\n';
    if (rep.order_value)
      std::cout << "order of q modulo (q^m - 1)*t = " << *rep.order_value
                << ", required = " << e << '\n';
    else
      std::cout << "order criterion skipped: t shares a factor with q\n";
    if (rep.divisibility_witness)
      std::cout << "divisibility form: gcd(t,4) * (odd prime radical of t) = "
                << *rep.divisibility_witness << (*rep.witness_divides
                                                     ? " divides q^m - 1\n"
                                                     : " does not divide q^m - 1\n");
    std::cout << "verdict: "
              << (rep.exists ? "such a polynomial exists"
                             : "no such polynomial exists")
              << '\n';
  }
  return rep.exists ? kExitOk : kExitNegative;
}

struct CountArgs {
  std::string q;
  std::uint64_t m = 0, t = 1, e = 0;
  bool brute = false;
  bool as_json = false;
};

int cmd_count(const CountArgs& args) {
  const mpz_class q = parse_mpz(args.q, "--q");
  const std::uint64_t e = args.e == 0 ? args.m * args.t : args.e;
  const hyperirr::hyper::CountReport rep =
      hyperirr::hyper::count_almost(q, args.m, args.t, e);

  std::optional<std::uint64_t> brute_factor, brute_order;
  bool agree = true;
  if (args.brute) {
    hyperirr::oracle::EnumBounds bounds;
    bounds.max_enum = enum_bound_from_env();
    brute_factor = hyperirr::oracle::brute_count_factor(q, args.m, args.t, e, bounds);
    brute_order = hyperirr::oracle::brute_count_order(q, args.m, args.t, e, bounds);
    agree = rep.count == *brute_factor && rep.count == *brute_order;
  }

  if (args.as_json) {
    json result;
    result["count"] = rep.count.get_str();
    result["lower_bound"] = rep.lower_bound.get_str();
    result["upper_bound"] = rep.upper_bound.get_str();
    json jj = json::array();
    for (std::uint64_t j : rep.J) jj.push_back(std::to_string(j));
    result["J"] = std::move(jj);
    if (rep.reduction) {
      json red;
      red["s"] = rep.reduction->s.get_str();
      red["t_reduced"] = std::to_string(rep.reduction->t_reduced);
      result["reduction"] = std::move(red);
    } else {
      result["reduction"] = nullptr;
    }
    if (args.brute) {
      json brute;
      brute["factor_count"] = std::to_string(*brute_factor);
      brute["order_count"] = std::to_string(*brute_order);
      brute["agree"] = agree;
      result["brute"] = std::move(brute);
    }
    json inputs;
    inputs["q"] = q.get_str();
    inputs["m"] = std::to_string(args.m);
    inputs["t"] = std::to_string(args.t);
    inputs["e"] = std::to_string(e);
    inputs["brute"] = args.brute;
    emit_envelope("count", std::move(inputs), std::move(result),
                  args.brute ? "both" : "formula");
  } else {
    std::cout << "count = " << rep.count << '\n';
    if (rep.count != 0)
      std::cout << "bounds: " << rep.lower_bound << " <= count <= "
                << rep.upper_bound << '\n';
    std::cout << "J = {";
    for (std::size_t i = 0; i < rep.J.size(); ++i)
      std::cout << (i ? ", " : "") << rep.J[i];
    std::cout << "}\n";
    if (rep.reduction)
      std::cout << "reduced: s = " << rep.reduction->s
                << ", t_reduced = " << rep.reduction->t_reduced << '\n';
    if (args.brute) {
      std::cout << "brute factor count = " << *brute_factor << '\n';
      std::cout << "brute order count = " << *brute_order << '\n';
      std::cout << "cross-check: " << (agree ? "agree" : "DISAGREE") << '\n';
    }
  }
  if (!agree) return kExitDisagree;
  return rep.count != 0 ? kExitOk : kExitNegative;
}

struct EnumerateArgs {
  std::string q;
  std::uint64_t m = 0, t = 1, e = 0;
  std::uint64_t limit = 0; // 0 = unlimited
  bool as_json = false;
};

int cmd_enumerate(const EnumerateArgs& args) {
  const mpz_class q = parse_mpz(args.q, "--q");
  const std::uint64_t e = args.e == 0 ? args.m * args.t : args.e;
  if (args.m == 0 || args.t == 0 || e == 0)
    hyperirr::raise(ErrorKind::InvalidArgument, "m, t, e must be >= 1");
  if (args.m > UINT64_MAX / args.t)
    hyperirr::raise(ErrorKind::InvalidArgument, "m*t overflows");

  hyperirr::oracle::EnumBounds bounds;
  bounds.max_enum = enum_bound_from_env();
  auto pk = hyperirr::numtheory::as_prime_power(q);
  if (!pk)
    hyperirr::raise(ErrorKind::NotPrimePower,
                    "q = " + q.get_str() + " is not a prime power");
  mpz_class qm;
  mpz_pow_ui(qm.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(args.m));
  if (qm > bounds.max_enum)
    hyperirr::raise(ErrorKind::SizeExceeded,
                    "q^m = " + qm.get_str() + " exceeds the enumeration bound " +
                        std::to_string(bounds.max_enum));
  if (args.m * args.t > bounds.max_compose)
    hyperirr::raise(ErrorKind::SizeExceeded,
                    "composed degree m*t exceeds " +
                        std::to_string(bounds.max_compose));

  const hyperirr::gfq::FieldPtr field = hyperirr::gfq::build_field(
      static_cast<std::uint32_t>(pk->first.get_ui()), pk->second);

  std::vector<std::string> found;
  bool limit_reached = false;
  hyperirr::polyq::MonicIrreducibleEnumerator en(
      field, static_cast<unsigned>(args.m), bounds.max_enum);
  while (auto f = en.next()) {
    if (f->is_x()) continue;
    const hyperirr::polyq::DegreeProfile profile =
        hyperirr::polyq::distinct_degree_profile(
            hyperirr::polyq::compose_xt(*f, args.t));
    if (profile.count_at(e) == 0) continue;
    found.push_back(f->coeff_string());
    if (args.limit != 0 && found.size() == args.limit) {
      limit_reached = true;
      break;
    }
  }

  if (args.as_json) {
    json result;
    result["polynomials"] = found;
    result["count"] = std::to_string(found.size());
    result["limit_reached"] = limit_reached;
    json inputs;
    inputs["q"] = q.get_str();
    inputs["m"] = std::to_string(args.m);
    inputs["t"] = std::to_string(args.t);
    inputs["e"] = std::to_string(e);
    inputs["limit"] = std::to_string(args.limit);
    emit_envelope("enumerate", std::move(inputs), std::move(result),
                  "brute-force");
  } else {
    for (const std::string& s : found) std::cout << s << '\n';
    std::cout << "found " << found.size()
              << (limit_reached ? " (stopped at limit)" : "") << '\n';
  }
  return found.empty() ? kExitNegative : kExitOk;
}

struct OrderArgs {
  std::string a, r;
  bool as_json = false;
};

int cmd_order(const OrderArgs& args) {
  const mpz_class a = parse_mpz(args.a, "--a");
  const mpz_class r = parse_mpz(args.r, "--r");
  const hyperirr::numtheory::OrderValue ord = hyperirr::numtheory::mult_order(a, r);

  if (args.as_json) {
    json result;
    result["order"] = ord.value.get_str();
    json inputs;
    inputs["a"] = a.get_str();
    inputs["r"] = r.get_str();
    emit_envelope("order", std::move(inputs), std::move(result), "formula");
  } else {
    std::cout << "multiplicative order of " << a << " modulo " << r << " = "
              << ord.value << '\n';
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string grid; // empty = default grid; else file path or inline text
  std::string out;  // empty = no report files; else prefix for .csv/.json
  unsigned jobs = 1;
  bool as_json = false;
};

int cmd_verify(const VerifyArgs& args) {
  hyperirr::oracle::SweepOptions opts;
  opts.max_enum = enum_bound_from_env();
  opts.jobs = args.jobs == 0 ? 1 : args.jobs;
  if (!args.grid.empty()) {
    std::ifstream file(args.grid);
    if (file) {
      std::ostringstream buf;
      buf << file.rdbuf();
      opts.lines = hyperirr::oracle::parse_grid(buf.str());
    } else {
      opts.lines = hyperirr::oracle::parse_grid(args.grid);
    }
  }

  const hyperirr::oracle::SweepResult result = hyperirr::oracle::run_sweep(opts);

  std::string csv_path, json_path;
  if (!args.out.empty()) {
    csv_path = args.out + ".csv";
    json_path = args.out + ".json";
    std::ofstream csv(csv_path);
    if (!csv)
      hyperirr::raise(ErrorKind::InvalidArgument,
                      "cannot open " + csv_path + " for writing");
    hyperirr::oracle::write_sweep_csv(result, csv);
    std::ofstream js(json_path);
    if (!js)
      hyperirr::raise(ErrorKind::InvalidArgument,
                      "cannot open " + json_path + " for writing");
    hyperirr::oracle::write_sweep_json(result, js);
  }

  if (args.as_json) {
    json res;
    res["cells"] = std::to_string(result.cells.size());
    res["disagreements"] = std::to_string(result.disagreements);
    res["errored"] = std::to_string(result.errored);
    res["all_agree"] = result.all_agree();
    res["csv_report"] = csv_path.empty() ? json(nullptr) : json(csv_path);
    res["json_report"] = json_path.empty() ? json(nullptr) : json(json_path);
    json inputs;
    inputs["grid"] = args.grid;
    inputs["out"] = args.out;
    inputs["jobs"] = std::to_string(opts.jobs);
    emit_envelope("verify", std::move(inputs), std::move(res), "both");
  } else {
    std::cout << "cells: " << result.cells.size() << '\n';
    std::cout << "disagreements: " << result.disagreements << '\n';
    std::cout << "errored: " << result.errored << '\n';
    if (!csv_path.empty())
      std::cout << "reports: " << csv_path << ", " << json_path << '\n';
    std::cout << (result.all_agree() ? "all cells agree"
                                     : "MISMATCH: see report")
              << '\n';
  }
  return result.all_agree() ? kExitOk : kExitDisagree;
}

struct BlockmatArgs {
  std::string q;
  std::uint64_t m = 0, t = 0;
  std::uint64_t seed = 1, trials = 1;
  bool as_json = false;
};

int cmd_blockmat(const BlockmatArgs& args) {
  const mpz_class q = parse_mpz(args.q, "--q");
  if (args.trials == 0)
    hyperirr::raise(ErrorKind::InvalidArgument, "--trials must be >= 1");

  std::vector<std::pair<std::uint64_t, bool>> outcomes;
  std::uint64_t failed = 0;
  for (std::uint64_t i = 0; i < args.trials; ++i) {
    const std::uint64_t seed = args.seed + i;
    const bool ok = hyperirr::oracle::verify_prop_block(q, args.m, args.t, seed);
    outcomes.emplace_back(seed, ok);
    if (!ok) ++failed;
  }

  if (args.as_json) {
    json trials = json::array();
    for (const auto& [seed, ok] : outcomes) {
      json t;
      t["seed"] = std::to_string(seed);
      t["ok"] = ok;
      trials.push_back(std::move(t));
    }
    json result;
    result["trials"] = std::move(trials);
    result["passed"] = std::to_string(args.trials - failed);
    result["failed"] = std::to_string(failed);
    json inputs;
    inputs["q"] = q.get_str();
    inputs["m"] = std::to_string(args.m);
    inputs["t"] = std::to_string(args.t);
    inputs["seed"] = std::to_string(args.seed);
    inputs["trials"] = std::to_string(args.trials);
    emit_envelope("blockmat", std::move(inputs), std::move(result),
                  "brute-force");
  } else {
    for (const auto& [seed, ok] : outcomes)
      std::cout << "seed " << seed << ": " << (ok ? "ok" : "FAILED") << '\n';
    std::cout << "trials: " << args.trials << ", failed: " << failed << '\n';
  }
  return failed == 0 ? kExitOk : kExitDisagree;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Irreducible compositions of polynomials over finite fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hyperirr::kVersion);

  std::function<int()> action;

  ExistsArgs exists_args;
  CLI::App* exists = app.add_subcommand(
      "exists", "Does an irreducible f of degree m exist whose f(x^t) has an "
                "irreducible factor of degree e?");
  exists->add_option("--q", exists_args.q, "field size (prime power)")->required();
  exists->add_option("--m", exists_args.m, "degree of f")->required()
      ->check(CLI::PositiveNumber);
  exists->add_option("--t", exists_args.t, "composition exponent (default 1)")
      ->check(CLI::PositiveNumber);
  exists->add_option("--e", exists_args.e,
                     "factor degree, > m*t/2 (default m*t)")
      ->check(CLI::PositiveNumber);
  exists->add_flag("--json", exists_args.as_json, "machine-readable envelope");
  exists->callback([&] { action = [&] { return cmd_exists(exists_args); }; });

  CountArgs count_args;
  CLI::App* count = app.add_subcommand(
      "count", "Exact count of qualifying irreducible polynomials");
  count->add_option("--q", count_args.q, "field size (prime power)")->required();
  count->add_option("--m", count_args.m, "degree of f")->required()
      ->check(CLI::PositiveNumber);
  count->add_option("--t", count_args.t, "composition exponent (default 1)")
      ->check(CLI::PositiveNumber);
  count->add_option("--e", count_args.e, "factor degree, > m*t/2 (default m*t)")
      ->check(CLI::PositiveNumber);
  count->add_flag("--brute", count_args.brute,
                  "cross-check against both brute-force oracles");
  count->add_flag("--json", count_args.as_json, "machine-readable envelope");
  count->callback([&] { action = [&] { return cmd_count(count_args); }; });

  EnumerateArgs enum_args;
  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "List the qualifying polynomials (constant term first)");
  enumerate->add_option("--q", enum_args.q, "field size (prime power)")->required();
  enumerate->add_option("--m", enum_args.m, "degree of f")->required()
      ->check(CLI::PositiveNumber);
  enumerate->add_option("--t", enum_args.t, "composition exponent (default 1)")
      ->check(CLI::PositiveNumber);
  enumerate->add_option("--e", enum_args.e,
                        "factor degree, >= 1 (default m*t)")
      ->check(CLI::PositiveNumber);
  enumerate->add_option("--limit", enum_args.limit,
                        "stop after this many matches (0 = all)");
  enumerate->add_flag("--json", enum_args.as_json, "machine-readable envelope");
  enumerate->callback([&] { action = [&] { return cmd_enumerate(enum_args); }; });

  OrderArgs order_args;
  CLI::App* order = app.add_subcommand(
      "order", "Multiplicative order of a modulo r (requires gcd(a,r)=1)");
  order->add_option("--a", order_args.a, "base")->required();
  order->add_option("--r", order_args.r, "modulus")->required();
  order->add_flag("--json", order_args.as_json, "machine-readable envelope");
  order->callback([&] { action = [&] { return cmd_order(order_args); }; });

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "Sweep a parameter grid comparing the formula against both "
                "brute-force oracles");
  verify->add_option("--grid", verify_args.grid,
                     "grid file or inline 'q=... m=... t=...' (default: "
                     "prime powers q<=9, m<=4, t<=10)");
  verify->add_option("--out", verify_args.out,
                     "report path prefix; writes <out>.csv and <out>.json");
  verify->add_option("--jobs", verify_args.jobs, "worker threads (default 1)")
      ->check(CLI::PositiveNumber);
  verify->add_flag("--json", verify_args.as_json, "machine-readable envelope");
  verify->callback([&] { action = [&] { return cmd_verify(verify_args); }; });

  BlockmatArgs blockmat_args;
  CLI::App* blockmat = app.add_subcommand(
      "blockmat", "Check the block companion matrix identity on seeded "
                  "random instances");
  blockmat->add_option("--q", blockmat_args.q, "field size (prime power)")->required();
  blockmat->add_option("--m", blockmat_args.m, "block size")->required()
      ->check(CLI::PositiveNumber);
  blockmat->add_option("--t", blockmat_args.t, "number of blocks (m*t <= 24)")
      ->required()
      ->check(CLI::PositiveNumber);
  blockmat->add_option("--seed", blockmat_args.seed, "first seed (default 1)");
  blockmat->add_option("--trials", blockmat_args.trials,
                       "consecutive seeds to run (default 1)");
  blockmat->add_flag("--json", blockmat_args.as_json, "machine-readable envelope");
  blockmat->callback([&] { action = [&] { return cmd_blockmat(blockmat_args); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return action();
  } catch (const Error& err) {
    std::cerr << "error (" << hyperirr::to_string(err.kind()) << "): "
              << err.what() << '\n';
    switch (err.kind()) {
      case ErrorKind::InternalInconsistency:
      case ErrorKind::NonIntegralFormula:
        return kExitInternal;
      case ErrorKind::NonExistence:
        return kExitNegative;
      default:
        return kExitUsage;
    }
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << '\n';
    return kExitInternal;
  }
}
