#pragma once

// Asymptotic converse-bound functions for stable lossless coding in the
// linear regime, together with optimizer-based cross-checks that do not go
// through the closed forms, and the sublinear-regime feasibility test.
//
// All entropies are computed with natural logs internally and converted to
// bits on output.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>

namespace stablecode {

namespace detail {

constexpr double kLog2E = 1.4426950408889634074;  // 1/ln 2

template <class F>
double golden_max(F&& f, double lo, double hi, double tol) {
  constexpr double invphi = 0.6180339887498948482;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  return std::max({f((a + b) / 2), f1, f2});
}

// Coarse grid scan followed by a golden-section polish around the best cell.
template <class F>
double grid_golden_max(F&& f, double lo, double hi, double step) {
  if (!(step > 0)) throw std::invalid_argument("grid_golden_max: step must be > 0");
  if (hi < lo) throw std::invalid_argument("grid_golden_max: empty interval");
  if (hi == lo) return f(lo);
  const long cells = std::max<long>(1, std::lround(std::ceil((hi - lo) / step)));
  double best = -std::numeric_limits<double>::infinity();
  long best_i = 0;
  for (long i = 0; i <= cells; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cells);
    const double v = f(x);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double h = (hi - lo) / static_cast<double>(cells);
  const double x0 = lo + h * static_cast<double>(best_i);
  const double refined =
      golden_max(f, std::max(lo, x0 - h), std::min(hi, x0 + h), 1e-10);
  return std::max(best, refined);
}

}  // namespace detail

/// Binary entropy in bits, extended to the endpoints by continuity.
inline double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("binary_entropy: argument outside [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return (-x * std::log(x) - (1.0 - x) * std::log1p(-x)) * detail::kLog2E;
}

/// s(x) = p h2(x/p) + (1-p) h2(x/(1-p)): the exponent of the number of
/// weight-k sequences reachable by swapping an x-fraction of ones with zeros.
/// Concave, s(0) = 0, s(p(1-p)) = h2(p).
inline double swap_entropy(double x, double p) {
  if (!(p > 0.0 && p <= 0.5))
    throw std::domain_error("swap_entropy: need 0 < p <= 1/2");
  if (!(x >= 0.0 && x <= p))
    throw std::domain_error("swap_entropy: need 0 <= x <= p");
  return p * binary_entropy(std::min(x / p, 1.0)) +
         (1.0 - p) * binary_entropy(std::min(x / (1.0 - p), 1.0));
}

/// Asymptotic exponent of the source-slice graph degree: s(d1/2) while
/// d1/2 <= p(1-p), saturating at h2(p) beyond.
inline double source_degree_exponent(double d1, double p) {
  if (!(p > 0.0 && p <= 0.5))
    throw std::domain_error("source_degree_exponent: need 0 < p <= 1/2");
  const double half = d1 / 2.0;
  if (!(half >= 0.0 && half <= p + 1e-15))
    throw std::domain_error("source_degree_exponent: need 0 <= d1/2 <= p");
  if (half <= p * (1.0 - p)) return swap_entropy(std::min(half, p), p);
  return binary_entropy(p);
}

/// Asymptotic exponent of the codeword graph degree: R h2(d2/R) while
/// d2 < R/2, saturating at R.
inline double codeword_degree_exponent(double d2, double R) {
  if (!(R > 0.0)) throw std::domain_error("codeword_degree_exponent: need R > 0");
  if (!(d2 >= 0.0 && d2 <= R + 1e-15))
    throw std::domain_error("codeword_degree_exponent: need 0 <= d2 <= R");
  if (d2 < R / 2.0) return R * binary_entropy(d2 / R);
  return R;
}

/// Asymptotic exponent of the codeword graph clique number (largest
/// bounded-diameter subset of the cube): R h2(d2/(2R)) while d2 < R,
/// saturating at R.
inline double codeword_clique_exponent(double d2, double R) {
  if (!(R > 0.0)) throw std::domain_error("codeword_clique_exponent: need R > 0");
  if (!(d2 >= 0.0)) throw std::domain_error("codeword_clique_exponent: need d2 >= 0");
  if (d2 < R) return R * binary_entropy(d2 / (2.0 * R));
  return R;
}

// Grid + golden-section cross-checks of the three closed forms above. They
// maximize the underlying single-variable exponents directly.

inline double source_degree_exponent_grid(double d1, double p, double step = 1e-3) {
  if (!(p > 0.0 && p <= 0.5))
    throw std::domain_error("source_degree_exponent_grid: need 0 < p <= 1/2");
  const double half = std::min(d1 / 2.0, p);
  if (half < 0) throw std::domain_error("source_degree_exponent_grid: d1 < 0");
  return detail::grid_golden_max([&](double x) { return swap_entropy(x, p); },
                                 0.0, half, step);
}

inline double codeword_degree_exponent_grid(double d2, double R, double step = 1e-3) {
  if (!(R > 0.0 && d2 >= 0.0 && d2 <= R + 1e-15))
    throw std::domain_error("codeword_degree_exponent_grid: bad arguments");
  return detail::grid_golden_max(
      [&](double y) { return R * binary_entropy(std::min(y / R, 1.0)); }, 0.0,
      d2, step);
}

inline double codeword_clique_exponent_grid(double d2, double R, double step = 1e-3) {
  if (!(R > 0.0 && d2 >= 0.0))
    throw std::domain_error("codeword_clique_exponent_grid: bad arguments");
  return detail::grid_golden_max(
      [&](double g) { return R * binary_entropy(std::min(g / R, 1.0)); }, 0.0,
      std::min(d2 / 2.0, R), step);
}

/// Joint distribution of a binary pair (X, Y), stored as the four cell
/// probabilities.
struct BinaryJointPMF {
  double p11 = 0, p10 = 0, p01 = 0, p00 = 1;

  double prob_x1() const { return p11 + p10; }
  double prob_y1() const { return p11 + p01; }
  double mismatch() const { return p10 + p01; }  // P[X != Y]

  void validate() const {
    const double tol = 1e-12;
    for (double v : {p11, p10, p01, p00}) {
      if (!(v >= -tol && v <= 1.0 + tol))
        throw std::domain_error("BinaryJointPMF: cell outside [0, 1]");
    }
    if (std::abs(p11 + p10 + p01 + p00 - 1.0) > tol)
      throw std::domain_error("BinaryJointPMF: cells do not sum to 1");
  }
};

/// H(X|Y) in bits.
inline double conditional_entropy(const BinaryJointPMF& j) {
  auto part = [](double a, double b) {
    const double m = a + b;
    if (m <= 0.0) return 0.0;
    return m * binary_entropy(std::clamp(a / m, 0.0, 1.0));
  };
  return part(j.p11, j.p01) + part(j.p10, j.p00);
}

/// Checks H(X|Y) <= h2(d1/2) + 1e-12 for a pair with mismatch probability at
/// most d1/2. This holds for every feasible pmf (concavity of h2); a false
/// return signals a bug.
inline bool conditional_entropy_within_bound(const BinaryJointPMF& pmf, double d1) {
  pmf.validate();
  if (!(d1 >= 0.0 && d1 <= 1.0))
    throw std::domain_error("conditional_entropy_within_bound: need d1 in [0, 1]");
  if (pmf.mismatch() > d1 / 2.0 + 1e-12)
    throw std::domain_error(
        "conditional_entropy_within_bound: mismatch probability exceeds d1/2");
  return conditional_entropy(pmf) <= binary_entropy(d1 / 2.0) + 1e-12;
}

/// Inner variables of the source-clique-exponent maximization. alpha scales
/// the generator index, beta the intersection count; the induced weight
/// q = p - d1/2 + 2 alpha plays the role of P[Y = 1].
struct CliqueExponentVars {
  double alpha = 0.0;
  double beta = 0.0;
};

inline double clique_vars_weight(double d1, double p, const CliqueExponentVars& v) {
  return p - d1 / 2.0 + 2.0 * v.alpha;
}

inline bool clique_vars_feasible(double d1, double p, const CliqueExponentVars& v,
                                 double slack = 1e-12) {
  const double half = d1 / 2.0;
  if (v.alpha < -slack) return false;
  if (v.alpha > (1.0 - p + half) / 2.0 + slack) return false;
  const double lo = p - half + v.alpha;
  const double hi = std::min(p, p - half + 2.0 * v.alpha);
  return v.beta >= lo - slack && v.beta <= hi + slack;
}

/// The two-weight entropy maximand, expressed through the joint pmf it
/// induces: p11 = beta, p10 = p - beta, p01 = q - beta, p00 = 1 - p - q + beta.
/// Returns -inf outside the pmf simplex.
inline double clique_exponent_maximand(double d1, double p,
                                       const CliqueExponentVars& v) {
  const double q = clique_vars_weight(d1, p, v);
  double cells[4] = {v.beta, p - v.beta, q - v.beta, 1.0 - p - q + v.beta};
  for (double& c : cells) {
    if (c < -1e-12) return -std::numeric_limits<double>::infinity();
    c = std::max(c, 0.0);
  }
  return conditional_entropy(BinaryJointPMF{cells[0], cells[1], cells[2], cells[3]});
}

/// Closed-form maximizer of the clique-exponent maximand. Degenerates to the
/// single feasible point (1/4, 1/4) as d1 -> 1 (which forces p -> 1/2).
inline CliqueExponentVars clique_exponent_maximizer(double d1, double p) {
  if (1.0 - d1 < 1e-12) return {0.25, 0.25};
  const double half = d1 / 2.0;
  return {(p - half) * d1 / (2.0 * (1.0 - d1)),
          (1.0 - half) * (p - half) / (1.0 - d1)};
}

/// Grid maximization of the clique-exponent maximand over its feasible set,
/// polished by a nested golden-section pass. Stays independent of the
/// closed-form value h2(d1/2) that it cross-checks.
inline double source_clique_exponent_grid(double d1, double p,
                                          double grid_step = 1e-3) {
  if (!(grid_step > 0))
    throw std::invalid_argument("source_clique_exponent_grid: step must be > 0");
  const double half = d1 / 2.0;
  if (!(d1 >= 0.0 && d1 <= 1.0 && p >= half - 1e-15 && p <= 1.0 - half + 1e-15))
    throw std::domain_error("source_clique_exponent_grid: empty feasible set");
  const double alpha_max = std::max(0.0, std::min(half, (1.0 - p + half) / 2.0));

  auto beta_window = [&](double alpha, double& lo, double& hi) {
    lo = p - half + alpha;
    hi = std::min(p, p - half + 2.0 * alpha);
    if (hi < lo) hi = lo;  // collapsed window at the boundary
  };
  auto best_over_beta = [&](double alpha) {
    double lo, hi;
    beta_window(alpha, lo, hi);
    if (hi == lo) return clique_exponent_maximand(d1, p, {alpha, lo});
    return detail::golden_max(
        [&](double beta) { return clique_exponent_maximand(d1, p, {alpha, beta}); },
        lo, hi, 1e-9);
  };

  // Coarse scan.
  double best = -std::numeric_limits<double>::infinity();
  double best_alpha = 0.0;
  const long na = std::max<long>(1, std::lround(std::ceil(alpha_max / grid_step)));
  for (long i = 0; i <= na; ++i) {
    const double alpha =
        alpha_max * static_cast<double>(i) / static_cast<double>(na);
    double lo, hi;
    beta_window(alpha, lo, hi);
    const long nb =
        std::max<long>(1, std::lround(std::ceil((hi - lo) / grid_step)));
    for (long jj = 0; jj <= nb; ++jj) {
      const double beta =
          lo + (hi - lo) * static_cast<double>(jj) / static_cast<double>(nb);
      const double v = clique_exponent_maximand(d1, p, {alpha, beta});
      if (v > best) {
        best = v;
        best_alpha = alpha;
      }
    }
    if (alpha_max == 0.0) break;
  }

  // One local refinement around the best alpha cell.
  const double h = alpha_max / static_cast<double>(na);
  const double refined = detail::golden_max(
      best_over_beta, std::max(0.0, best_alpha - h),
      std::min(alpha_max, best_alpha + h), 1e-9);
  return std::max(best, refined);
}

/// Asymptotic tuple of the linear regime.
struct LinearParams {
  double d1 = 0;  // input-distance rate, in [0, 1]
  double d2 = 0;  // output-distance rate, >= 0
  double p = 0;   // source symbol probability, in (0, 1/2]
  double R = 0;   // code rate, bits per symbol

  void validate() const {
    if (!(p > 0.0 && p <= 0.5))
      throw std::domain_error("LinearParams: need 0 < p <= 1/2");
    if (!(d1 >= 0.0 && d1 / 2.0 <= p + 1e-15))
      throw std::domain_error("LinearParams: need 0 <= d1/2 <= p");
    if (!(R > 0.0)) throw std::domain_error("LinearParams: need R > 0");
    if (!(d2 >= 0.0 && d2 <= R + 1e-15))
      throw std::domain_error("LinearParams: need 0 <= d2 <= R");
  }
};

/// Degree-bound necessary condition: a rate point failing it is ruled out.
inline bool degree_bound_feasible(const LinearParams& lp) {
  lp.validate();
  return source_degree_exponent(lp.d1, lp.p) <=
         codeword_degree_exponent(lp.d2, lp.R);
}

/// Clique-bound necessary condition; requires d1/2 < p.
inline bool clique_bound_feasible(const LinearParams& lp) {
  lp.validate();
  if (!(lp.d1 / 2.0 < lp.p))
    throw std::domain_error("clique_bound_feasible: requires d1/2 < p");
  return binary_entropy(lp.d1 / 2.0) <= codeword_clique_exponent(lp.d2, lp.R);
}

enum class ConverseBound { Degree, Clique, Trivial, All };

namespace detail {

// Case formulas taken literally, so they are defined (and monotone) on all
// of R > 0; below R = 2 d2 the degree exponent is just R.
inline double degree_rate_exponent_ext(double d2, double R) {
  if (R <= 0.0) return 0.0;
  if (d2 >= R / 2.0) return R;
  return R * binary_entropy(d2 / R);
}

inline double clique_rate_exponent_ext(double d2, double R) {
  if (R <= 0.0) return 0.0;
  if (d2 >= R) return R;
  return R * binary_entropy(d2 / (2.0 * R));
}

}  // namespace detail

/// Smallest rate at which the selected necessary condition(s) hold at fixed
/// (d1, d2, p), found by bisection (the conditions are monotone in R).
/// Returns nullopt when no rate up to `cap` is feasible.
inline std::optional<double> min_rate(double d1, double d2, double p,
                                      ConverseBound which, double cap = 4.0) {
  if (!(p > 0.0 && p <= 0.5)) throw std::domain_error("min_rate: need 0 < p <= 1/2");
  if (!(d1 >= 0.0 && d1 / 2.0 <= p + 1e-15))
    throw std::domain_error("min_rate: need 0 <= d1/2 <= p");
  if (!(d2 >= 0.0)) throw std::domain_error("min_rate: need d2 >= 0");
  if (!(cap > 0.0)) throw std::invalid_argument("min_rate: need cap > 0");

  if (which == ConverseBound::Trivial) {
    const double r = binary_entropy(p);
    if (r > cap) return std::nullopt;
    return r;
  }
  if (which == ConverseBound::All) {
    std::optional<double> best = 0.0;
    for (auto b : {ConverseBound::Degree, ConverseBound::Clique, ConverseBound::Trivial}) {
      auto r = min_rate(d1, d2, p, b, cap);
      if (!r) return std::nullopt;
      best = std::max(*best, *r);
    }
    return best;
  }

  const double target = (which == ConverseBound::Degree)
                            ? source_degree_exponent(d1, p)
                            : binary_entropy(d1 / 2.0);
  auto value = [&](double R) {
    return (which == ConverseBound::Degree)
               ? detail::degree_rate_exponent_ext(d2, R)
               : detail::clique_rate_exponent_ext(d2, R);
  };
  if (target <= 0.0) return 0.0;
  if (value(cap) < target) return std::nullopt;
  double lo = 0.0, hi = cap;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (value(mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

/// Sublinear-regime parameters: constant tolerances D (input, even) and Dp
/// (output), source probability p, rate R, and the vanishing typicality
/// margin eps(n). The default schedule n^(-1/4) satisfies eps -> 0 and
/// eps sqrt(n) -> infinity.
struct SublinearSpec {
  long D = 2;
  long Dp = 1;
  double p = 0.3;
  double R = 1.0;
  std::function<double(long)> eps;  // empty -> n^(-1/4)

  double eps_at(long n) const {
    if (eps) return eps(n);
    return std::pow(static_cast<double>(n), -0.25);
  }

  void validate() const {
    if (D < 2 || D % 2 != 0)
      throw std::domain_error("SublinearSpec: D must be even and >= 2");
    if (Dp < 1) throw std::domain_error("SublinearSpec: Dp must be >= 1");
    if (!(p > 0.0 && p < 0.5))
      throw std::domain_error("SublinearSpec: need 0 < p < 1/2");
    if (!(R > 0.0)) throw std::domain_error("SublinearSpec: need R > 0");
  }
};

struct SublinearReport {
  bool infeasible = false;    // the necessary-condition expression diverges
  bool corollary_ok = true;   // D <= Dp
  long first_valid_n = 1;     // first n with p - eps(n) > 0
  double max_log2 = 0;        // sup over evaluated n of the log2 expression
  double tail_growth = 0;     // log2-expression gain over the last doubling
};

/// Evaluates the log of  n^(D-Dp) Dp^Dp ((p-eps)(1-p-eps))^(D/2)
///                       / ((D/2)^D (e^2 R)^Dp)
/// over n = 1..n_max, skipping the initial segment where the typicality
/// margin has not yet dropped below p. A sequence of stable codes can exist
/// only if this stays bounded; divergence (dominant term (D-Dp) log n with
/// D > Dp) certifies infeasibility, which for constant tolerances is exactly
/// the corollary D <= Dp.
inline SublinearReport sublinear_feasible(const SublinearSpec& spec,
                                          long n_max = 1000000) {
  spec.validate();
  if (n_max < 2) throw std::invalid_argument("sublinear_feasible: n_max too small");

  const double D = static_cast<double>(spec.D);
  const double Dp = static_cast<double>(spec.Dp);
  const double constant = Dp * std::log(Dp) - D * std::log(D / 2.0) -
                          Dp * (2.0 + std::log(spec.R));
  auto log2_expr = [&](long n, double e) {
    const double product = (spec.p - e) * (1.0 - spec.p - e);
    return ((D - Dp) * std::log(static_cast<double>(n)) +
            (D / 2.0) * std::log(product) + constant) *
           detail::kLog2E;
  };

  SublinearReport rep;
  rep.corollary_ok = spec.D <= spec.Dp;
  long first_valid = -1;
  double max_log2 = -std::numeric_limits<double>::infinity();
  double at_half = 0.0, at_end = 0.0;
  const long half_n = n_max / 2;
  for (long n = 1; n <= n_max; ++n) {
    const double e = spec.eps_at(n);
    if (!(e > 0.0) || !std::isfinite(e))
      throw std::domain_error("sublinear_feasible: schedule must be positive and finite");
    const bool valid = (spec.p - e > 0.0) && (1.0 - spec.p - e > 0.0);
    if (first_valid < 0) {
      if (!valid) continue;
      first_valid = n;
    } else if (!valid) {
      throw std::domain_error(
          "sublinear_feasible: schedule rises back above p after becoming valid");
    }
    const double v = log2_expr(n, e);
    max_log2 = std::max(max_log2, v);
    if (n == half_n) at_half = v;
    if (n == n_max) at_end = v;
  }
  if (first_valid < 0)
    throw std::domain_error(
        "sublinear_feasible: p - eps(n) <= 0 for every n up to the horizon");
  if (first_valid > half_n) {
    // Not enough valid range for a doubling comparison; extend virtually.
    at_half = log2_expr(n_max, spec.eps_at(n_max));
    at_end = log2_expr(2 * n_max, spec.eps_at(2 * n_max));
  }
  rep.first_valid_n = first_valid;
  rep.max_log2 = max_log2;
  rep.tail_growth = at_end - at_half;
  // One doubling adds (D - Dp) bits from the dominant term; the shrinking
  // eps transient contributes well under half a bit at any horizon.
  rep.infeasible = rep.tail_growth > 0.5;
  return rep;
}

}  // namespace stablecode
