// orbitmoment: command-line front end over the sphere and symmetric-group
// moment engines. Every invocation writes one JSON document to stdout.
//
// Exit codes: 0 success, 2 invalid input, 3 resource budget exceeded.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orbitmoment/errors.hpp"
#include "orbitmoment/hypergraph.hpp"
#include "orbitmoment/json_io.hpp"
#include "orbitmoment/orbit_assign.hpp"
#include "orbitmoment/spherepoly.hpp"
#include "orbitmoment/theory_verify.hpp"

namespace {

using orbitmoment::BudgetError;
using orbitmoment::Rational;
using orbitmoment::ValidationError;
using orbitmoment::io::Json;
namespace io = orbitmoment::io;
namespace sphere = orbitmoment::sphere;
namespace assign = orbitmoment::assign;
namespace hyper = orbitmoment::hyper;
namespace theory = orbitmoment::theory;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;
constexpr const char* kBudgetEnv = "ORBITMOMENT_BUDGET";

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return io::parse_json(buf.str());
}

// --budget wins over the environment, which wins over the built-in default.
std::uint64_t resolve_budget(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kBudgetEnv); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ValidationError(std::string(kBudgetEnv) + " is not a non-negative integer");
  }
  return fallback;
}

void require_k(int k) {
  if (k < 1) throw ValidationError("--k must be at least 1");
}

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

struct Options {
  std::optional<std::uint64_t> budget;

  std::string poly_file;
  std::string system_file;
  std::string a_file, b_file;
  std::string h1_file, h2_file;
  int k = 0;
  std::optional<double> eps;
  double delta = sphere::kDefaultDelta;
  bool greedy = false;
  bool brute = false;
  std::size_t brute_cap = assign::kDefaultBruteCap;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

Json run_poly_norm(const Options& o) {
  require_k(o.k);
  const auto p = io::poly_from_json(read_json_file(o.poly_file));
  const auto budget = resolve_budget(o.budget, sphere::kDefaultTermBudget);
  const auto k = static_cast<std::uint32_t>(o.k);
  const Rational m = sphere::moment_2k(p, k, budget);
  return {{"k", k}, {"moment_2k", orbitmoment::to_string(m)},
          {"norm_2k", orbitmoment::root_2k(m, k)}};
}

Json run_poly_bounds(const Options& o) {
  const auto p = io::poly_from_json(read_json_file(o.poly_file));
  const auto budget = resolve_budget(o.budget, sphere::kDefaultTermBudget);
  Json out;
  orbitmoment::Interval iv;
  if (o.eps) {
    if (!(*o.eps > 0.0)) throw ValidationError("--eps must be positive");
    iv = sphere::fewnomial_sup(p, *o.eps, budget);
    out["eps"] = *o.eps;
  } else {
    if (o.k == 0) throw ValidationError("poly-bounds needs --k or --eps");
    require_k(o.k);
    iv = sphere::sup_bounds(p, static_cast<std::uint32_t>(o.k), budget);
  }
  out["interval"] = io::interval_to_json(iv);
  return out;
}

Json run_system_test(const Options& o) {
  require_k(o.k);
  const auto system = io::system_from_json(read_json_file(o.system_file));
  const auto budget = resolve_budget(o.budget, sphere::kDefaultTermBudget);
  const auto r = sphere::system_reduce(system, static_cast<std::uint32_t>(o.k), o.delta, budget);
  Json out = {{"verdict", sphere::to_string(r.verdict)},
              {"gamma", orbitmoment::to_double(r.gamma)},
              {"gamma_exact", orbitmoment::to_string(r.gamma)},
              {"delta", o.delta},
              {"q", io::poly_to_json(r.q)},
              {"q_bounds", io::interval_to_json(r.q_bounds)},
              {"p", io::poly_to_json(r.p)},
              {"p_bounds", io::interval_to_json(r.p_bounds)}};
  out["min_q_lower_bound"] = r.min_q_lower_bound ? Json(*r.min_q_lower_bound) : Json(nullptr);
  return out;
}

Json run_assign(const Options& o) {
  require_k(o.k);
  const auto a = io::tensor_from_json(read_json_file(o.a_file));
  const auto b = io::tensor_from_json(read_json_file(o.b_file));
  if (a.n() != b.n() || a.order() != b.order()) {
    throw ValidationError("tensors A and B differ in shape");
  }
  // Refuse an oversized brute force before spending time on moments.
  if (o.brute && a.n() > o.brute_cap) {
    throw ValidationError("--brute needs n <= " + std::to_string(o.brute_cap));
  }
  const auto budget = resolve_budget(o.budget, assign::kDefaultVisitBudget);
  const auto k = static_cast<std::uint32_t>(o.k);

  Json out;
  out["k"] = k;
  out["bounds"] = io::interval_to_json(assign::sup_bounds(a, b, k, budget));
  if (o.greedy) {
    const auto g = assign::greedy_extract(a, b, k, budget);
    out["greedy"] = {{"permutation", io::permutation_to_json(g.permutation)},
                     {"value", orbitmoment::to_string(g.value)},
                     {"abs_value", g.abs_value}};
  }
  if (o.brute) {
    const auto best = assign::brute_max(a, b, o.brute_cap);
    out["brute"] = {{"permutation", io::permutation_to_json(best.permutation)},
                    {"value", orbitmoment::to_string(best.value)},
                    {"abs_value", orbitmoment::to_double(abs(best.value))}};
  }
  return out;
}

Json run_hyper_align(const Options& o) {
  require_k(o.k);
  const auto h1 = io::hypergraph_from_json(read_json_file(o.h1_file));
  const auto h2 = io::hypergraph_from_json(read_json_file(o.h2_file));
  const auto budget = resolve_budget(o.budget, assign::kDefaultVisitBudget);
  const auto r = hyper::align(h1, h2, static_cast<std::uint32_t>(o.k), budget);
  Json out = {{"permutation", io::permutation_to_json(r.permutation)},
              {"matched", orbitmoment::to_string(r.matched)},
              {"matched_value", orbitmoment::to_double(r.matched)},
              {"bounds", io::interval_to_json(r.bounds)},
              {"edges_h1", h1.edge_count()},
              {"edges_h2", h2.edge_count()}};
  return out;
}

std::vector<Rational> unit_vector(std::size_t n) {
  std::vector<Rational> v(n, Rational(0));
  v[0] = 1;
  return v;
}

// Small random integers in [-5, 5]; a zero draw for v is replaced by e_1.
std::vector<Rational> random_vector(std::mt19937_64& rng, std::size_t n, bool nonzero) {
  std::vector<Rational> v(n);
  bool any = false;
  for (auto& x : v) {
    x = static_cast<long>(rng() % 11) - 5;
    any = any || sgn(x) != 0;
  }
  if (nonzero && !any) v = unit_vector(n);
  return v;
}

Json run_verify(const Options& o) {
  require_k(o.k);
  if (o.n < 1) throw ValidationError("--n must be at least 1");
  if (o.n > theory::kDefaultVerifyCap) {
    throw ValidationError("--n must be at most " + std::to_string(theory::kDefaultVerifyCap));
  }
  const auto k = static_cast<std::uint32_t>(o.k);
  Json cases = Json::array();
  bool all_hold = true;
  auto add_case = [&](const std::string& name, const std::vector<Rational>& v,
                      const std::vector<Rational>& ell) {
    const auto report = theory::verify_sandwich(v, ell, k);
    all_hold = all_hold && report.all_hold();
    Json c = io::sandwich_report_to_json(report);
    c["case"] = name;
    std::vector<std::string> vs, ls;
    for (const auto& x : v) vs.push_back(orbitmoment::to_string(x));
    for (const auto& x : ell) ls.push_back(orbitmoment::to_string(x));
    c["v"] = vs;
    c["ell"] = ls;
    cases.push_back(std::move(c));
  };

  add_case("delta", unit_vector(o.n), unit_vector(o.n));
  add_case("constant", std::vector<Rational>(o.n, Rational(1)),
           std::vector<Rational>(o.n, Rational(1)));
  std::mt19937_64 rng(o.seed);
  for (std::size_t t = 0; t < o.trials; ++t) {
    auto v = random_vector(rng, o.n, true);
    auto ell = random_vector(rng, o.n, false);
    add_case("random-" + std::to_string(t), v, ell);
  }

  Json out = {{"n", o.n}, {"k", k}, {"seed", o.seed}, {"trials", o.trials},
              {"cases", std::move(cases)}};
  if (o.eps) {
    const auto cor = theory::cor16_factor_check(*o.eps);
    all_hold = all_hold && cor.all_hold();
    out["cor16"] = io::cor16_report_to_json(cor);
  }
  out["all_hold"] = all_hold;
  return out;
}

Json error_document(const char* kind, const std::string& message,
                    std::optional<int> k = std::nullopt) {
  Json err = {{"kind", kind}, {"message", message}};
  if (k) err["k"] = *k;
  return {{"error", std::move(err)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified moment bounds for maxima on the sphere and the symmetric group"};
  app.require_subcommand(1);
  Options o;

  app.add_option("--budget", o.budget,
                 "Enumeration budget: collected monomials for polynomial commands, index "
                 "sequence visits for assignment commands (default from ORBITMOMENT_BUDGET)");

  auto* poly_norm = app.add_subcommand("poly-norm", "Exact 2k-th sphere moment of a polynomial");
  poly_norm->add_option("--poly", o.poly_file, "Polynomial JSON")->required();
  poly_norm->add_option("--k", o.k, "Moment order k >= 1")->required();

  auto* poly_bounds = app.add_subcommand("poly-bounds", "Certified interval for max |p| on the sphere");
  poly_bounds->add_option("--poly", o.poly_file, "Polynomial JSON")->required();
  auto* kopt = poly_bounds->add_option("--k", o.k, "Moment order k >= 1");
  auto* eopt = poly_bounds->add_option("--eps", o.eps, "Target ratio 1+eps (chooses k)");
  kopt->excludes(eopt);

  auto* system_test = app.add_subcommand("system-test", "Feasibility test for a polynomial system");
  system_test->add_option("--system", o.system_file, "System JSON")->required();
  system_test->add_option("--k", o.k, "Moment order k >= 1")->required();
  system_test->add_option("--delta", o.delta, "Slack in (0, 1)")->capture_default_str();

  auto* assign_cmd = app.add_subcommand("assign", "Bounds for the d-dimensional assignment problem");
  assign_cmd->add_option("--a", o.a_file, "Tensor A JSON")->required();
  assign_cmd->add_option("--b", o.b_file, "Tensor B JSON")->required();
  assign_cmd->add_option("--k", o.k, "Moment order k >= 1")->required();
  assign_cmd->add_flag("--greedy", o.greedy, "Extract a permutation by coset moments");
  assign_cmd->add_flag("--brute", o.brute, "Exact maximum by enumerating S_n");
  assign_cmd->add_option("--brute-cap", o.brute_cap, "Largest n accepted by --brute");

  auto* hyper_cmd = app.add_subcommand("hyper-align", "Align two d-hypergraphs");
  hyper_cmd->add_option("--h1", o.h1_file, "Hypergraph H1 JSON")->required();
  hyper_cmd->add_option("--h2", o.h2_file, "Hypergraph H2 JSON")->required();
  hyper_cmd->add_option("--k", o.k, "Moment order k >= 1")->required();

  auto* verify = app.add_subcommand("verify", "Exact sandwich checks over S_n");
  verify->add_option("--n", o.n, "Dimension n <= 7")->required();
  verify->add_option("--k", o.k, "Moment order k >= 1")->required();
  verify->add_option("--trials", o.trials, "Random (v, ell) pairs");
  verify->add_option("--seed", o.seed, "Seed for the random pairs");
  verify->add_option("--eps", o.eps, "Also check the large-k factor bound at this eps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    Json doc;
    if (*poly_norm) doc = run_poly_norm(o);
    else if (*poly_bounds) doc = run_poly_bounds(o);
    else if (*system_test) doc = run_system_test(o);
    else if (*assign_cmd) doc = run_assign(o);
    else if (*hyper_cmd) doc = run_hyper_align(o);
    else if (*verify) doc = run_verify(o);
    emit(doc);
    return kExitOk;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    emit(error_document("budget", e.what(), e.k()));
    return kExitBudget;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    emit(error_document("validation", e.what()));
    return kExitInvalid;
  }
}
