// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stablecode/stablecode.hpp"

namespace sc = stablecode;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void run(const char* name, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double dt = seconds_since(t0);
  std::printf("%s %s (%.2fs)%s%s\n", out.pass ? "PASS" : "FAIL", name, dt,
              out.detail.empty() ? "" : " -- ", out.detail.c_str());
  std::fflush(stdout);
  if (!out.pass) ++failures;
}

// ---------------------------------------------------------------------------

Outcome criterion1_crossovers() {
  Outcome o;
  const auto t1 = Clock::now();
  auto p1 = sc::crossover(0.2, 0.21, sc::ConverseBound::Degree);
  const double dt1 = seconds_since(t1);
  const auto t2 = Clock::now();
  auto p2 = sc::crossover(0.2, 0.21, sc::ConverseBound::Clique);
  const double dt2 = seconds_since(t2);
  std::ostringstream os;
  if (!p1 || std::abs(*p1 - 0.239) > 0.005) {
    o.pass = false;
    os << "degree crossover " << (p1 ? std::to_string(*p1) : "none")
       << " not within 0.239 +/- 0.005; ";
  }
  if (!p2 || std::abs(*p2 - 0.321) > 0.005) {
    o.pass = false;
    os << "clique crossover " << (p2 ? std::to_string(*p2) : "none")
       << " not within 0.321 +/- 0.005; ";
  }
  if (dt1 >= 1.0 || dt2 >= 1.0) {
    o.pass = false;
    os << "crossover slower than 1 s; ";
  }
  if (o.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "p1=%.6f p2=%.6f", *p1, *p2);
    os << buf;
  }
  o.detail = os.str();
  return o;
}

Outcome criterion2_region_regression() {
  Outcome o;
  std::ostringstream os;

  auto sweep = [&](double d2) {
    sc::SweepConfig cfg;
    cfg.d1 = 0.2;
    cfg.d2 = d2;
    cfg.p_min = 0.1;
    cfg.p_max = 0.5;
    cfg.r_min = d2;
    cfg.r_max = 1.25;
    cfg.cells_p = 400;
    cfg.cells_r = 400;
    const auto t0 = Clock::now();
    auto grid = sc::region_sweep(cfg);
    const double dt = seconds_since(t0);
    if (dt >= 10.0) {
      o.pass = false;
      os << "sweep d2=" << d2 << " took " << dt << " s; ";
    }
    return grid;
  };

  auto grid_a = sweep(0.21);
  long counts_a[4] = {0, 0, 0, 0};
  for (auto c : grid_a.cells) ++counts_a[static_cast<int>(c)];
  // Panel (a): both bounds bind in places, each bound is alone-binding in
  // places, and an infeasible region exists.
  for (int i = 0; i < 4; ++i) {
    if (counts_a[i] == 0) {
      o.pass = false;
      os << "d2=0.21 panel missing class " << sc::region_class_name(sc::RegionClass(i))
         << "; ";
    }
  }
  // The feasible (green) region contains high rates and the infeasible one
  // the low rates, for every probability column.
  const auto& cfg_a = grid_a.config;
  if (grid_a.at(cfg_a.cells_p / 2, cfg_a.cells_r - 1) != sc::RegionClass::Both) {
    o.pass = false;
    os << "d2=0.21: top of the mid column is not class both; ";
  }
  if (grid_a.at(cfg_a.cells_p / 2, 0) != sc::RegionClass::Neither) {
    o.pass = false;
    os << "d2=0.21: bottom of the mid column is not class neither; ";
  }

  auto grid_b = sweep(0.19);
  long counts_b[4] = {0, 0, 0, 0};
  for (auto c : grid_b.cells) ++counts_b[static_cast<int>(c)];
  if (counts_b[static_cast<int>(sc::RegionClass::DegreeOnly)] != 0) {
    o.pass = false;
    os << "d2=0.19 sweep has " << counts_b[static_cast<int>(sc::RegionClass::DegreeOnly)]
       << " cells rejected by the degree bound alone (clique must dominate); ";
  }
  if (counts_b[static_cast<int>(sc::RegionClass::Both)] == 0 ||
      counts_b[static_cast<int>(sc::RegionClass::CliqueOnly)] == 0) {
    o.pass = false;
    os << "d2=0.19 panel shape off; ";
  }
  if (o.pass) {
    os << "d2=0.21 classes " << counts_a[0] << '/' << counts_a[1] << '/' << counts_a[2]
       << '/' << counts_a[3] << ", d2=0.19 degree_only=0";
  }
  o.detail = os.str();
  return o;
}

Outcome criterion3_oracle_equivalence() {
  Outcome o;
  std::ostringstream os;
  const auto t0 = Clock::now();
  long instances = 0;
  for (long n = 2; n <= 10 && o.pass; ++n) {
    for (long k = 1; k <= n - 1 && o.pass; ++k) {
      for (long D = 0; D <= n && o.pass; ++D) {
        auto g = sc::slice_neighborhood_graph(n, k, D);
        ++instances;
        if (sc::bigint(sc::max_degree(g)) != sc::slice_graph_degree(n, k, D)) {
          o.pass = false;
          os << "slice degree mismatch at (" << n << "," << k << "," << D << "); ";
        }
        auto clique = sc::max_clique(g);
        if (!clique.exact ||
            sc::bigint(clique.size) != sc::slice_graph_clique_number(n, k, D).size) {
          o.pass = false;
          os << "slice clique mismatch at (" << n << "," << k << "," << D << "); ";
        }
      }
    }
  }
  for (long ell = 1; ell <= 5 && o.pass; ++ell) {
    for (long Dp = 0; Dp <= ell + 1 && o.pass; ++Dp) {
      auto g = sc::hamming_power_graph(ell, Dp);
      ++instances;
      if (sc::bigint(sc::max_degree(g)) != sc::hamming_power_degree(ell, Dp)) {
        o.pass = false;
        os << "power-graph degree mismatch at (" << ell << "," << Dp << "); ";
      }
      auto clique = sc::max_clique(g);
      if (!clique.exact ||
          sc::bigint(clique.size) != sc::hamming_power_clique_number(ell, Dp)) {
        o.pass = false;
        os << "power-graph clique mismatch at (" << ell << "," << Dp << "); ";
      }
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= 300.0) {
    o.pass = false;
    os << "exhaustive oracle sweep took " << dt << " s (limit 300); ";
  }
  if (o.pass) os << instances << " instances exact";
  o.detail = os.str();
  return o;
}

Outcome criterion4_binomial_inequalities() {
  Outcome o;
  std::ostringstream os;
  long checked = 0;
  std::vector<sc::bigint> row{sc::bigint(1)}, prev;
  for (long n = 1; n <= 500 && o.pass; ++n) {
    prev.swap(row);
    row.assign(static_cast<std::size_t>(n) + 1, sc::bigint(0));
    row.front() = row.back() = 1;
    for (long k = 1; k < n; ++k) {
      row[static_cast<std::size_t>(k)] =
          prev[static_cast<std::size_t>(k - 1)] + prev[static_cast<std::size_t>(k)];
    }
    sc::bigint prefix(0);
    for (long k = 0; k <= n && o.pass; ++k) {
      const sc::bigint& c = row[static_cast<std::size_t>(k)];
      const double log2c = sc::log2_of(c);
      const double x = static_cast<double>(k) / static_cast<double>(n);
      const double nh2 = static_cast<double>(n) * sc::binary_entropy(x);
      ++checked;
      // lower bound: C(n,k) (n+1) >= 2^{n h2(k/n)}
      if (log2c + std::log2(static_cast<double>(n + 1)) < nh2 - 1e-9) {
        o.pass = false;
        os << "entropy lower bound fails at (" << n << "," << k << "); ";
      }
      // lower bound: C(n,k) k^k >= n^k, exact integers
      if (k >= 1) {
        const sc::bigint kk = boost::multiprecision::pow(sc::bigint(k), static_cast<unsigned>(k));
        const sc::bigint nk = boost::multiprecision::pow(sc::bigint(n), static_cast<unsigned>(k));
        if (c * kk < nk) {
          o.pass = false;
          os << "power lower bound fails at (" << n << "," << k << "); ";
        }
      }
      prefix += c;
      if (2 * k <= n) {
        // upper bound: sum_{i<=k} C(n,i) <= 2^{n h2(k/n)}
        if (sc::log2_of(prefix) > nh2 + 1e-9) {
          o.pass = false;
          os << "entropy upper bound fails at (" << n << "," << k << "); ";
        }
        // upper bound: sum <= (k+1) C(n,k) <= (k+1) (en)^k / k^k
        if (prefix > (k + 1) * c) {
          o.pass = false;
          os << "prefix bound fails at (" << n << "," << k << "); ";
        }
        if (k >= 1) {
          const sc::bigint kk = boost::multiprecision::pow(sc::bigint(k), static_cast<unsigned>(k));
          const double lhs = sc::log2_of(c * kk);
          const double rhs = static_cast<double>(k) * (std::log2(std::exp(1.0)) +
                                                       std::log2(static_cast<double>(n)));
          if (lhs > rhs + 1e-9) {
            o.pass = false;
            os << "en^k upper bound fails at (" << n << "," << k << "); ";
          }
        }
      }
    }
  }
  if (o.pass) os << checked << " (n,k) pairs, zero violations";
  o.detail = os.str();
  return o;
}

Outcome criterion5_clique_exponent_identity() {
  Outcome o;
  std::ostringstream os;
  double worst = 0;
  for (int i = 0; i < 20 && o.pass; ++i) {
    const double d1 = 0.04 + 0.9 * i / 19.0;
    for (int j = 0; j < 20 && o.pass; ++j) {
      const double p =
          d1 / 2 + (1.0 - d1) * (static_cast<double>(j) + 0.5) / 20.0;
      const double grid = sc::source_clique_exponent_grid(d1, p);
      const double target = sc::binary_entropy(d1 / 2);
      worst = std::max(worst, std::abs(grid - target));
      if (std::abs(grid - target) > 1e-4) {
        o.pass = false;
        os << "identity off by " << std::abs(grid - target) << " at d1=" << d1
           << " p=" << p << "; ";
      }
      const auto vars = sc::clique_exponent_maximizer(d1, p);
      if (!sc::clique_vars_feasible(d1, p, vars)) {
        o.pass = false;
        os << "analytic maximizer infeasible at d1=" << d1 << " p=" << p << "; ";
      }
      const double at_max = sc::clique_exponent_maximand(d1, p, vars);
      if (std::abs(at_max - grid) > 1e-4) {
        o.pass = false;
        os << "analytic maximizer misses the grid maximum at d1=" << d1
           << " p=" << p << "; ";
      }
    }
  }
  if (o.pass) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "400 samples, worst |err| = %.2e", worst);
    os << buf;
  }
  o.detail = os.str();
  return o;
}

Outcome criterion6_jensen_property() {
  Outcome o;
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  long violations = 0;
  for (long i = 0; i < 1000000; ++i) {
    const double d1 = 0.02 + 0.98 * u(rng);
    const double mismatch = d1 / 2 * u(rng);
    const double p10 = mismatch * u(rng);
    const double rest = 1.0 - mismatch;
    const double p11 = rest * u(rng);
    sc::BinaryJointPMF pmf{p11, p10, mismatch - p10, rest - p11};
    if (!sc::conditional_entropy_within_bound(pmf, d1)) ++violations;
  }
  if (violations != 0) {
    o.pass = false;
    o.detail = std::to_string(violations) + " of 1e6 pmfs exceeded h2(d1/2) + 1e-12";
  } else {
    o.detail = "1e6 random feasible pmfs within the bound";
  }
  return o;
}

Outcome criterion7_induced_subgraph_suite() {
  Outcome o;
  std::ostringstream os;
  std::mt19937_64 rng(1723);
  std::vector<sc::AdjacencyGraph> parents;
  parents.push_back(sc::slice_neighborhood_graph(7, 3, 2));
  parents.push_back(sc::slice_neighborhood_graph(8, 4, 2));
  parents.push_back(sc::slice_neighborhood_graph(6, 3, 4));
  parents.push_back(sc::hamming_power_graph(4, 2));
  parents.push_back(sc::hamming_power_graph(5, 2));
  parents.push_back(sc::hamming_power_graph(5, 3));
  parents.push_back(sc::circulant_graph(20, {1, 2}));
  parents.push_back(sc::circulant_graph(24, {1, 3, 5}));
  parents.push_back(sc::circulant_graph(30, {1, 2, 3}));

  long checks = 0, violations = 0;
  for (const auto& g : parents) {
    const long omega = sc::max_clique(g).size;
    for (double ratio : {0.6, 0.75, 0.9}) {
      for (int rep = 0; rep < 38; ++rep) {
        std::vector<std::uint32_t> all(g.order());
        for (std::uint32_t v = 0; v < g.order(); ++v) all[v] = v;
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(static_cast<std::size_t>(ratio * static_cast<double>(g.order())));
        auto report = sc::check_induced_subgraph_bounds({&g, all}, omega);
        ++checks;
        if (!report.ok) ++violations;
      }
    }
  }
  if (violations != 0 || checks < 1000) {
    o.pass = false;
    os << violations << " violations in " << checks << " subset checks";
  } else {
    os << checks << " random subsets, zero violations";
  }
  o.detail = os.str();
  return o;
}

Outcome criterion8_sublinear_corollary() {
  Outcome o;
  std::ostringstream os;
  long cases = 0;
  for (long D : {2, 4, 6, 8}) {
    for (long Dp : {2, 4, 6, 8}) {
      for (double p : {0.1, 0.3}) {
        for (double R : {0.5, 1.0, 2.0}) {
          sc::SublinearSpec spec;
          spec.D = D;
          spec.Dp = Dp;
          spec.p = p;
          spec.R = R;
          auto rep = sc::sublinear_feasible(spec, 1000000);
          ++cases;
          const bool expect_infeasible = D > Dp;
          if (rep.infeasible != expect_infeasible || rep.corollary_ok != (D <= Dp)) {
            o.pass = false;
            os << "wrong verdict at D=" << D << " Dp=" << Dp << " p=" << p
               << " R=" << R << "; ";
          }
        }
      }
    }
  }
  if (o.pass) os << cases << " parameter combinations consistent with D <= D'";
  o.detail = os.str();
  return o;
}

Outcome criterion9_stability_demonstrations() {
  Outcome o;
  std::ostringstream os;

  // Identity encoders certified (D, D)-stable up to n = 12.
  for (long n : {4L, 8L, 12L}) {
    auto enc = sc::identity_encoder(n);
    auto profile = sc::stability_profile(enc, n);
    for (auto [D, worst] : profile) {
      if (worst != D) {
        o.pass = false;
        os << "identity profile at n=" << n << " D=" << D << " gives " << worst << "; ";
      }
    }
    if (!sc::check_stability(enc, n, n).stable) {
      o.pass = false;
      os << "identity n=" << n << " failed its own certificate; ";
    }
  }

  // Seeded random binning at (n=8, ell=4) fails (D=1, D'=2) with the
  // recorded counterexample pair.
  auto binned = sc::random_binning_encoder(8, 4, 1);
  auto rep = sc::check_stability(binned, 1, 2);
  if (rep.stable || !rep.counterexample) {
    o.pass = false;
    os << "random binning unexpectedly stable; ";
  } else {
    const auto [x, y] = *rep.counterexample;
    if (std::popcount(x ^ y) != 1 ||
        std::popcount(*binned.apply(x) ^ *binned.apply(y)) <= 2) {
      o.pass = false;
      os << "counterexample does not witness instability; ";
    }
    if (x != 0 || y != 2 || rep.counterexample_out_distance != 4) {
      o.pass = false;
      os << "counterexample drifted from the recorded fixture (" << x << "," << y
         << ",d=" << rep.counterexample_out_distance << "); ";
    }
  }

  // The full K6 slice cannot embed into the square of the 4-cube.
  auto search = sc::find_stable_code(4, 2, 4, 4, 2);
  if (search.status != sc::SearchStatus::Refuted) {
    o.pass = false;
    os << "K6 embedding not refuted by exhaustion; ";
  }
  if (sc::hamming_power_clique_number(4, 2) != 5) {
    o.pass = false;
    os << "clique obstruction value drifted; ";
  }
  if (o.pass) os << "identity certified, binning counterexample recorded, K6 refuted";
  o.detail = os.str();
  return o;
}

Outcome criterion10_finite_n_convergence() {
  Outcome o;
  std::ostringstream os;
  struct Point {
    double d1, d2, p, R;
  };
  const Point points[10] = {
      {0.2, 0.21, 0.3, 1.0}, {0.2, 0.19, 0.3, 1.0},  {0.1, 0.15, 0.25, 0.8},
      {0.3, 0.25, 0.35, 1.2}, {0.05, 0.05, 0.15, 0.6}, {0.4, 0.3, 0.45, 1.5},
      {0.15, 0.1, 0.2, 0.5},  {0.25, 0.4, 0.4, 2.0},  {0.35, 0.12, 0.3, 0.9},
      {0.08, 0.3, 0.12, 1.1}};
  double worst_ratio = 0;
  for (long n : {1000L, 10000L}) {
    const double tol = 5.0 * std::log2(static_cast<double>(n)) / static_cast<double>(n);
    for (const auto& pt : points) {
      const long k = std::lround(n * pt.p);
      const long D = 2 * std::lround(n * pt.d1 / 2);
      const long ell = static_cast<long>(std::floor(n * pt.R));
      const long Dp = std::lround(n * pt.d2);
      const double pn = static_cast<double>(k) / n;
      const double d1n = static_cast<double>(D) / n;
      const double d2n = static_cast<double>(Dp) / n;
      const double Rn = static_cast<double>(ell) / n;

      const bool exact = n <= 2000;
      const double deg_src =
          (exact ? sc::log2_of(sc::slice_graph_degree(n, k, D))
                 : sc::log2_slice_graph_degree(n, k, D)) / n;
      const double deg_cw =
          (exact ? sc::log2_of(sc::hamming_power_degree(ell, Dp))
                 : sc::log2_hamming_power_degree(ell, Dp)) / n;
      const double clq_cw =
          (exact ? sc::log2_of(sc::hamming_power_clique_number(ell, Dp))
                 : sc::log2_hamming_power_clique_number(ell, Dp)) / n;
      const long t = k - D / 2;
      const double clq_src =
          (exact ? sc::log2_of(sc::max_t_intersecting_family(n, k, t).size)
                 : sc::log2_max_t_intersecting_family(n, k, t)) / n;

      struct Pair {
        const char* what;
        double got, want;
      };
      const Pair pairs[] = {
          {"slice degree", deg_src, sc::source_degree_exponent(d1n, pn)},
          {"codeword degree", deg_cw, sc::codeword_degree_exponent(d2n, Rn)},
          {"codeword clique", clq_cw, sc::codeword_clique_exponent(d2n, Rn)},
          {"slice clique", clq_src, sc::binary_entropy(d1n / 2)},
      };
      for (const auto& pr : pairs) {
        const double err = std::abs(pr.got - pr.want);
        worst_ratio = std::max(worst_ratio, err / tol);
        if (err > tol) {
          o.pass = false;
          os << pr.what << " off by " << err << " (tol " << tol << ") at n=" << n
             << " d1=" << pt.d1 << " d2=" << pt.d2 << " p=" << pt.p << " R=" << pt.R
             << "; ";
        }
      }
    }
  }
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "80 comparisons within 5 log2(n)/n, worst at %.0f%% of tol",
                  100.0 * worst_ratio);
    os << buf;
  }
  o.detail = os.str();
  return o;
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  run("criterion 1 (crossover reproduction)", criterion1_crossovers);
  run("criterion 2 (region regression)", criterion2_region_regression);
  run("criterion 3 (oracle equivalence, exhaustive)", criterion3_oracle_equivalence);
  run("criterion 4 (binomial inequality suite)", criterion4_binomial_inequalities);
  run("criterion 5 (clique exponent identity)", criterion5_clique_exponent_identity);
  run("criterion 6 (conditional entropy bound)", criterion6_jensen_property);
  run("criterion 7 (induced subgraph suite)", criterion7_induced_subgraph_suite);
  run("criterion 8 (sublinear corollary)", criterion8_sublinear_corollary);
  run("criterion 9 (stability demonstrations)", criterion9_stability_demonstrations);
  run("criterion 10 (finite-n convergence)", criterion10_finite_n_convergence);
  if (failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criteria failed\n", failures);
  }
  return failures;
}
