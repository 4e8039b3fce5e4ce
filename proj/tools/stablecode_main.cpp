// Command-line front end: bound evaluation, exact combinatorial counts,
// brute-force graph oracles, encoder stability checks and code search, and
// (p, R) region sweeps with CSV/SVG output.
//
// Exit codes: 0 success, 2 configuration error, 3 resource or budget error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "stablecode/stablecode.hpp"

namespace sc = stablecode;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;

struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

sc::ConverseBound parse_bound(const std::string& s) {
  if (s == "degree") return sc::ConverseBound::Degree;
  if (s == "clique") return sc::ConverseBound::Clique;
  if (s == "trivial") return sc::ConverseBound::Trivial;
  if (s == "all") return sc::ConverseBound::All;
  throw CLI::ValidationError("--which", "expected degree|clique|trivial|all");
}

std::pair<double, double> parse_range(const std::string& s, const char* flag) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError(flag, "expected lo,hi");
  try {
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError(flag, "expected numeric lo,hi");
  }
}

void run_bounds_eval(double d1, double d2, double p, double R) {
  const sc::LinearParams lp{d1, d2, p, R};
  lp.validate();
  std::printf("h2(p)                      = %.9f\n", sc::binary_entropy(p));
  std::printf("source degree exponent     = %.9f\n", sc::source_degree_exponent(d1, p));
  std::printf("codeword degree exponent   = %.9f\n", sc::codeword_degree_exponent(d2, R));
  std::printf("source clique exponent     = %.9f\n", sc::binary_entropy(d1 / 2));
  std::printf("codeword clique exponent   = %.9f\n", sc::codeword_clique_exponent(d2, R));
  std::printf("degree bound satisfied     = %s\n",
              sc::degree_bound_feasible(lp) ? "yes" : "no");
  std::printf("clique bound satisfied     = %s\n",
              sc::clique_bound_feasible(lp) ? "yes" : "no");
  std::printf("trivial converse R>=h2(p)  = %s\n",
              R >= sc::binary_entropy(p) ? "yes" : "no");
}

void run_min_rate(double d1, double d2, double p, const std::string& which, double cap) {
  auto r = sc::min_rate(d1, d2, p, parse_bound(which), cap);
  if (!r) {
    std::printf("min rate (%s): unbounded above cap %.3f\n", which.c_str(), cap);
  } else {
    std::printf("min rate (%s) = %.9f\n", which.c_str(), *r);
  }
}

void run_crossover(double d1, double d2, const std::string& which) {
  auto pts = sc::crossover_points(d1, d2, parse_bound(which));
  if (pts.empty()) {
    std::printf("crossover (%s): none on [d1/2, 1/2]\n", which.c_str());
    return;
  }
  for (double p : pts) std::printf("crossover (%s) at p = %.6f\n", which.c_str(), p);
}

void run_exact(long n, long k, std::optional<long> D, std::optional<long> ell,
               std::optional<long> Dp) {
  if (D) {
    sc::CombinatorialSpec cs{n, k, *D};
    std::cout << "slice degree        = " << sc::slice_graph_degree(cs) << '\n';
    auto cl = sc::slice_graph_clique_number(cs);
    std::cout << "slice clique number = " << cl.size
              << (cl.complete_slice ? "  (complete slice)" : "") << '\n';
    if (!cl.complete_slice) {
      std::cout << "intersection threshold t = " << cl.t
                << ", attained at generator r = " << cl.best_r << '\n';
    }
  } else {
    std::cout << "C(" << n << "," << k << ") = " << sc::binom(n, k) << '\n';
  }
  if (ell && Dp) {
    std::cout << "codeword degree        = " << sc::hamming_power_degree(*ell, *Dp)
              << '\n';
    std::cout << "codeword clique number = "
              << sc::hamming_power_clique_number(*ell, *Dp) << '\n';
  }
}

void run_graph_oracle(const std::string& family, long n, long k, long D, long ell,
                      long Dp, const std::string& offsets_csv, const std::string& dump,
                      double budget_seconds) {
  sc::AdjacencyGraph g;
  if (family == "slice") {
    g = sc::slice_neighborhood_graph(n, k, D);
  } else if (family == "hamming") {
    g = sc::hamming_power_graph(ell, Dp);
  } else if (family == "circulant") {
    std::vector<long> offsets;
    std::string tok;
    std::istringstream is(offsets_csv);
    while (std::getline(is, tok, ',')) offsets.push_back(std::stol(tok));
    g = sc::circulant_graph(n, offsets);
  } else {
    throw CLI::ValidationError("--family", "expected slice|hamming|circulant");
  }
  std::cout << "vertices = " << g.order() << ", edges = " << g.num_edges() << '\n';
  std::cout << "max degree = " << sc::max_degree(g) << '\n';
  auto clique = sc::max_clique(
      g, std::chrono::milliseconds(static_cast<long>(budget_seconds * 1000)));
  std::cout << "max clique = " << clique.size
            << (clique.exact ? "" : "  (budget hit: lower bound only)") << '\n';
  std::cout << "witness =";
  for (auto v : clique.members) std::cout << ' ' << v;
  std::cout << '\n';
  if (family == "slice") {
    std::cout << "closed-form degree = " << sc::slice_graph_degree(n, k, D)
              << ", clique = " << sc::slice_graph_clique_number(n, k, D).size << '\n';
  } else if (family == "hamming") {
    std::cout << "closed-form degree = " << sc::hamming_power_degree(ell, Dp)
              << ", clique = " << sc::hamming_power_clique_number(ell, Dp) << '\n';
  }
  if (!clique.exact) throw BudgetExhausted("clique search budget exhausted");
  if (!dump.empty()) {
    std::ofstream os(dump);
    if (!os) throw std::runtime_error("cannot open dump file " + dump);
    sc::write_edge_list(g, os);
  }
}

void run_code_check(const std::string& table_path, bool random_binning, bool identity,
                    long n, long ell, std::uint64_t seed, long D, long Dp,
                    long profile_max, bool expect_unstable) {
  sc::EncoderTable enc;
  if (!table_path.empty()) {
    std::ifstream is(table_path);
    if (!is) throw std::runtime_error("cannot open table " + table_path);
    enc = sc::read_encoder_table(is);
  } else if (random_binning) {
    enc = sc::random_binning_encoder(n, ell, seed);
  } else if (identity) {
    enc = sc::identity_encoder(n);
  } else {
    throw CLI::ValidationError("code check",
                               "select --table, --random-binning or --identity");
  }
  auto rep = sc::check_stability(enc, D, Dp);
  std::cout << sc::format_stability_report(enc, D, Dp, rep);
  if (profile_max > 0) {
    std::cout << "profile (D -> max output distance):\n";
    for (auto [d, m] : sc::stability_profile(enc, profile_max)) {
      std::cout << "  " << d << " -> " << m << '\n';
    }
  }
  if (expect_unstable && rep.stable)
    throw std::runtime_error("expected an unstable table but the check passed");
}

void run_code_search(long n, long k, long D, long ell, long Dp, bool full_space,
                     std::uint64_t budget, const std::string& out) {
  sc::CodeSearchResult res = full_space
                                 ? sc::find_stable_code_full_space(n, D, ell, Dp, budget)
                                 : sc::find_stable_code(n, k, D, ell, Dp, budget);
  std::cout << "nodes visited: " << res.nodes << '\n';
  switch (res.status) {
    case sc::SearchStatus::Found: {
      std::cout << "found = true (stable lossless code on the "
                << (full_space ? "full space" : "weight-k slice") << ")\n";
      auto check = sc::check_stability(*res.table, D, Dp);
      std::cout << "verification: injective = "
                << (res.table->is_injective() ? "yes" : "no")
                << ", stable = " << (check.stable ? "yes" : "no") << '\n';
      if (!out.empty()) {
        std::ofstream os(out);
        if (!os) throw std::runtime_error("cannot open output table " + out);
        sc::write_encoder_table(*res.table, os);
      }
      break;
    }
    case sc::SearchStatus::Refuted:
      std::cout << "found = false (search space exhausted: no such code exists)\n";
      break;
    case sc::SearchStatus::BudgetExhausted:
      std::cout << "status = unknown (node budget exhausted before exhaustion)\n";
      throw BudgetExhausted("code search budget exhausted");
  }
}

void run_region_sweep(double d1, double d2, std::optional<std::string> p_range,
                      std::optional<std::string> r_range, const std::string& grid_spec,
                      const std::string& out_csv, const std::string& out_svg) {
  sc::SweepConfig cfg;
  cfg.d1 = d1;
  cfg.d2 = d2;
  cfg.p_min = d1 / 2;
  cfg.p_max = 0.5;
  cfg.r_min = d2;
  cfg.r_max = 1.25;
  if (p_range) std::tie(cfg.p_min, cfg.p_max) = parse_range(*p_range, "--p-range");
  if (r_range) std::tie(cfg.r_min, cfg.r_max) = parse_range(*r_range, "--r-range");
  if (!grid_spec.empty()) {
    auto [np, nr] = parse_range(grid_spec, "--grid");
    cfg.cells_p = static_cast<long>(np);
    cfg.cells_r = static_cast<long>(nr);
  }
  auto grid = sc::region_sweep(cfg);
  long counts[4] = {0, 0, 0, 0};
  for (auto c : grid.cells) ++counts[static_cast<int>(c)];
  std::printf("grid %ldx%ld over p in [%g, %g], R in [%g, %g]\n", cfg.cells_p,
              cfg.cells_r, cfg.p_min, cfg.p_max, cfg.r_min, cfg.r_max);
  std::printf("both=%ld degree_only=%ld clique_only=%ld neither=%ld\n", counts[0],
              counts[1], counts[2], counts[3]);
  if (!out_csv.empty()) sc::write_region_csv(grid, std::filesystem::path(out_csv));
  if (!out_svg.empty()) sc::write_region_svg(grid, std::filesystem::path(out_svg));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Converse-bound toolkit for stable lossless source coding"};
  app.set_config("--config");
  app.require_subcommand(1);

  double d1 = 0.2, d2 = 0.21, p = 0.3, R = 1.0, cap = 4.0;
  long n = 8, k = 4, D = 2, ell = 4, Dp = 2;
  std::optional<long> opt_D, opt_ell, opt_Dp;
  std::uint64_t seed = 1, node_budget = 10000000;
  double budget_seconds = 30.0;
  std::string which = "degree", family = "slice", offsets = "1,2";
  std::string table_path, dump, out, out_csv, out_svg, grid_spec;
  std::optional<std::string> p_range, r_range;
  bool full_space = false, random_binning = false, identity = false;
  bool expect_unstable = false;
  long profile_max = 0;

  auto* bounds = app.add_subcommand("bounds", "asymptotic bound functions");
  auto* beval = bounds->add_subcommand("eval", "evaluate the bounds at one point");
  beval->add_option("--d1", d1)->required();
  beval->add_option("--d2", d2)->required();
  beval->add_option("--p", p)->required();
  beval->add_option("--r", R)->required();
  beval->callback([&] { run_bounds_eval(d1, d2, p, R); });

  auto* bmin = bounds->add_subcommand("min-rate", "invert a bound to the minimum rate");
  bmin->add_option("--d1", d1)->required();
  bmin->add_option("--d2", d2)->required();
  bmin->add_option("--p", p)->required();
  bmin->add_option("--which", which);
  bmin->add_option("--cap", cap);
  bmin->callback([&] { run_min_rate(d1, d2, p, which, cap); });

  auto* bcross = bounds->add_subcommand("crossover",
                                        "probability where a bound meets R = h2(p)");
  bcross->add_option("--d1", d1)->required();
  bcross->add_option("--d2", d2)->required();
  bcross->add_option("--which", which);
  bcross->callback([&] { run_crossover(d1, d2, which); });

  auto* exact = app.add_subcommand("exact", "exact finite-n combinatorial counts");
  exact->add_option("--n", n)->required();
  exact->add_option("--k", k)->required();
  exact->add_option("--d", opt_D);
  exact->add_option("--ell", opt_ell);
  exact->add_option("--dp", opt_Dp);
  exact->callback([&] { run_exact(n, k, opt_D, opt_ell, opt_Dp); });

  auto* graph = app.add_subcommand("graph", "explicit graphs and brute-force oracles");
  auto* oracle = graph->add_subcommand("oracle", "build a graph and run the oracles");
  oracle->add_option("--family", family);
  oracle->add_option("--n", n);
  oracle->add_option("--k", k);
  oracle->add_option("--d", D);
  oracle->add_option("--ell", ell);
  oracle->add_option("--dp", Dp);
  oracle->add_option("--offsets", offsets);
  oracle->add_option("--dump", dump);
  oracle->add_option("--budget", budget_seconds, "seconds for the clique search");
  oracle->callback([&] {
    run_graph_oracle(family, n, k, D, ell, Dp, offsets, dump, budget_seconds);
  });

  auto* code = app.add_subcommand("code", "explicit encoders and stability");
  auto* check = code->add_subcommand("check", "certify stability of a table");
  check->add_option("--table", table_path);
  check->add_flag("--random-binning", random_binning);
  check->add_flag("--identity", identity);
  check->add_option("--n", n);
  check->add_option("--ell", ell);
  check->add_option("--seed", seed);
  check->add_option("--d", D)->required();
  check->add_option("--dp", Dp)->required();
  check->add_option("--profile", profile_max);
  check->add_flag("--expect-unstable", expect_unstable);
  check->callback([&] {
    run_code_check(table_path, random_binning, identity, n, ell, seed, D, Dp,
                   profile_max, expect_unstable);
  });

  auto* search = code->add_subcommand("search", "search for a stable lossless code");
  search->add_option("--n", n)->required();
  search->add_option("--k", k);
  search->add_option("--d", D)->required();
  search->add_option("--ell", ell)->required();
  search->add_option("--dp", Dp)->required();
  search->add_flag("--full-space", full_space);
  search->add_option("--budget", node_budget, "node budget");
  search->add_option("--out", out);
  search->callback([&] {
    run_code_search(n, k, D, ell, Dp, full_space, node_budget, out);
  });

  auto* region = app.add_subcommand("region", "(p, R) region classification");
  auto* sweep = region->add_subcommand("sweep", "classify a grid and emit CSV/SVG");
  sweep->add_option("--d1", d1)->required();
  sweep->add_option("--d2", d2)->required();
  sweep->add_option("--p-range", p_range);
  sweep->add_option("--r-range", r_range);
  sweep->add_option("--grid", grid_spec);
  sweep->add_option("--out-csv", out_csv);
  sweep->add_option("--out-svg", out_svg);
  sweep->add_option("--seed", seed);  // accepted for interface uniformity
  sweep->callback([&] {
    run_region_sweep(d1, d2, p_range, r_range, grid_spec, out_csv, out_svg);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  } catch (const BudgetExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const sc::resource_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
