#pragma once

// Exact finite-blocklength combinatorics: binomial coefficients (exact and
// log-domain), degree and clique numbers of the constant-weight neighborhood
// graph and of powers of the binary Hamming graph, and the maximum size of a
// t-intersecting set family.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stablecode/errors.hpp"

namespace stablecode {

using bigint = boost::multiprecision::cpp_int;

namespace detail {

// Thread-confined factorial cache; grown on demand, never shrunk.
inline const bigint& cached_factorial(long n) {
  thread_local std::vector<bigint> fact{bigint(1)};
  while (static_cast<long>(fact.size()) <= n) {
    fact.push_back(fact.back() * static_cast<long>(fact.size()));
  }
  return fact[static_cast<std::size_t>(n)];
}

inline double lgamma_int(long n) {
  thread_local std::vector<double> table{0.0, 0.0};  // lgamma(1), lgamma(2)
  while (static_cast<long>(table.size()) <= n) {
    table.push_back(std::lgamma(static_cast<double>(table.size()) + 1.0));
  }
  return table[static_cast<std::size_t>(n)];
}

// log2(sum 2^t) over a list of log2-domain terms, Kahan-compensated.
class Log2Accumulator {
 public:
  void add(double log2_term) {
    if (log2_term == -inf()) return;
    if (log2_term > peak_) {
      rescale(log2_term);
    }
    double y = std::exp2(log2_term - peak_) - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const {
    if (sum_ <= 0.0) return -inf();
    return peak_ + std::log2(sum_);
  }
  static constexpr double inf() { return std::numeric_limits<double>::infinity(); }

 private:
  void rescale(double new_peak) {
    if (sum_ > 0.0) {
      double f = std::exp2(peak_ - new_peak);
      sum_ *= f;
      comp_ *= f;
    }
    peak_ = new_peak;
  }
  double peak_ = -inf();
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail

/// Exact C(n,k). Out-of-range k (k < 0 or k > n) yields 0, the empty-sum
/// convention the family-size formulas below rely on.
inline bigint binom(long n, long k) {
  if (n < 0) throw std::domain_error("binom: n must be nonnegative");
  if (k < 0 || k > n) return bigint(0);
  k = std::min(k, n - k);
  if (k == 0) return bigint(1);
  // Factorial cache pays off for the dense mid-range; plain multiplicative
  // recurrence is cheaper for small k and is the only exact path for huge n.
  if (n <= 2000 && k > 8) {
    // Fill the cache through n first: later lookups must not grow the table
    // under a live reference.
    const bigint& fn = detail::cached_factorial(n);
    return fn / (detail::cached_factorial(k) * detail::cached_factorial(n - k));
  }
  bigint result(1);
  for (long i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

/// log2 C(n,k) via lgamma; relative accuracy well under 1e-9 up to n ~ 1e6.
/// Returns -inf for out-of-range k, matching the exact convention.
inline double log2_binom(long n, long k) {
  if (n < 0) throw std::domain_error("log2_binom: n must be nonnegative");
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  constexpr double inv_ln2 = 1.4426950408889634074;
  return (detail::lgamma_int(n) - detail::lgamma_int(k) -
          detail::lgamma_int(n - k)) *
         inv_ln2;
}

/// Finite-blocklength parameters: blocklength n, slice weight k, input
/// tolerance D, codeword length ell, output tolerance Dp.
///
/// The degree/clique formulas assume floor(D/2) <= k in their derivation but
/// remain correct outside that range through the binom(.,.) = 0 convention,
/// so only basic sanity is enforced here.
struct CombinatorialSpec {
  long n = 0;
  long k = 0;
  long D = 0;
  long ell = 1;
  long Dp = 0;

  void validate() const {
    if (n < 1) throw std::domain_error("CombinatorialSpec: n must be >= 1");
    if (k <= 0 || k >= n)
      throw std::domain_error("CombinatorialSpec: need 0 < k < n");
    if (D < 0) throw std::domain_error("CombinatorialSpec: D must be >= 0");
    if (ell < 1) throw std::domain_error("CombinatorialSpec: ell must be >= 1");
    if (Dp < 0) throw std::domain_error("CombinatorialSpec: Dp must be >= 0");
  }
};

/// Regular degree of the distance-<=D graph on the weight-k slice of {0,1}^n:
/// sum_{j=1}^{floor(D/2)} C(k,j) C(n-k,j). Zero when D < 2.
inline bigint slice_graph_degree(const CombinatorialSpec& cs) {
  cs.validate();
  bigint total(0);
  for (long j = 1; j <= cs.D / 2; ++j) {
    total += binom(cs.k, j) * binom(cs.n - cs.k, j);
  }
  return total;
}

inline bigint slice_graph_degree(long n, long k, long D) {
  return slice_graph_degree(CombinatorialSpec{n, k, D});
}

/// Degree of the Dp-th power of the ell-dimensional Hamming graph:
/// sum_{i=1}^{min(Dp,ell)} C(ell,i).
inline bigint hamming_power_degree(long ell, long Dp) {
  if (ell < 1) throw std::domain_error("hamming_power_degree: ell must be >= 1");
  if (Dp < 0) throw std::domain_error("hamming_power_degree: Dp must be >= 0");
  bigint total(0);
  for (long i = 1; i <= std::min(Dp, ell); ++i) total += binom(ell, i);
  return total;
}

/// Size of the r-th generating family: the k-subsets of [n] meeting [t+2r]
/// in at least t+r elements.
inline bigint t_intersecting_generator_size(long n, long k, long t, long r) {
  if (!(1 <= t && t <= k && k <= n))
    throw std::domain_error("t_intersecting_generator_size: need 1 <= t <= k <= n");
  if (r < 0 || t + 2 * r > n)
    throw std::domain_error("t_intersecting_generator_size: r out of range");
  const long m = t + 2 * r;
  bigint total(0);
  for (long j = t + r; j <= std::min(k, m); ++j) {
    total += binom(m, j) * binom(n - m, k - j);
  }
  return total;
}

struct IntersectingFamilyResult {
  bigint size;
  long best_r = 0;  // smallest maximizing generator index
};

/// Maximum size of a t-intersecting family of k-subsets of an n-set, by
/// maximizing the generating-family size over the full admissible r range.
///
/// The closed-form index ceil((k-t+1)(t-1)/(n-2(k-t+1)) - 1) is only
/// well-defined when its denominator is positive; in that case it is
/// verified to attain the maximum (a mismatch would be a bug, not data).
inline IntersectingFamilyResult max_t_intersecting_family(long n, long k, long t) {
  if (!(1 <= t && t <= k && k <= n))
    throw std::domain_error("max_t_intersecting_family: need 1 <= t <= k <= n");
  bigint best(-1);
  long best_r = 0;
  const long r_max = (n - t) / 2;
  for (long r = 0; r <= r_max; ++r) {
    bigint s = t_intersecting_generator_size(n, k, t, r);
    if (s > best) {
      best = s;
      best_r = r;
    }
  }
  const long den = n - 2 * (k - t + 1);
  if (den > 0) {
    const long num = (k - t + 1) * (t - 1);
    long r_closed = (num == 0) ? -1 : (num - 1) / den;  // ceil(num/den - 1)
    r_closed = std::clamp(r_closed, long{0}, r_max);
    if (t_intersecting_generator_size(n, k, t, r_closed) != best) {
      throw std::logic_error(
          "max_t_intersecting_family: closed-form generator index does not "
          "attain the maximum");
    }
  }
  return {best, best_r};
}

/// log2 of the maximum t-intersecting family size, for blocklengths past the
/// exact-arithmetic comfort zone.
inline double log2_max_t_intersecting_family(long n, long k, long t) {
  if (!(1 <= t && t <= k && k <= n))
    throw std::domain_error("log2_max_t_intersecting_family: need 1 <= t <= k <= n");
  double best = -std::numeric_limits<double>::infinity();
  for (long r = 0; r <= (n - t) / 2; ++r) {
    const long m = t + 2 * r;
    detail::Log2Accumulator acc;
    for (long j = t + r; j <= std::min(k, m); ++j) {
      if (k - j > n - m) continue;
      acc.add(log2_binom(m, j) + log2_binom(n - m, k - j));
    }
    best = std::max(best, acc.value());
  }
  return best;
}

struct SliceCliqueResult {
  bigint size;
  bool complete_slice = false;  // floor(D/2) >= k: the slice graph is complete
  long t = 0;                   // intersection threshold k - floor(D/2)
  long best_r = 0;
};

/// Clique number of the distance-<=D graph on the weight-k slice. Equals the
/// maximum t-intersecting family size at t = k - floor(D/2); when t < 1 every
/// pair of slice vertices is adjacent and the whole slice is the clique.
inline SliceCliqueResult slice_graph_clique_number(const CombinatorialSpec& cs) {
  cs.validate();
  const long t = cs.k - cs.D / 2;
  // ceil(k - D/2) and k - floor(D/2) coincide for integer inputs; asserted
  // rather than assumed.
  const long two_t = 2 * cs.k - cs.D;
  const long t_ceil = (two_t >= 0) ? (two_t + 1) / 2 : -((-two_t) / 2);
  if (t != t_ceil)
    throw std::logic_error("slice_graph_clique_number: threshold forms disagree");
  if (t < 1) {
    return {binom(cs.n, cs.k), true, t, -1};
  }
  auto ak = max_t_intersecting_family(cs.n, cs.k, t);
  return {std::move(ak.size), false, t, ak.best_r};
}

inline SliceCliqueResult slice_graph_clique_number(long n, long k, long D) {
  return slice_graph_clique_number(CombinatorialSpec{n, k, D});
}

/// B(ell, v) = sum_{i=0}^{v} C(ell, i), the Hamming ball size.
inline bigint hamming_ball_size(long ell, long v) {
  if (ell < 0 || v < 0) throw std::domain_error("hamming_ball_size: negative argument");
  bigint total(0);
  for (long i = 0; i <= std::min(v, ell); ++i) total += binom(ell, i);
  return total;
}

/// Clique number of the Dp-th power of the ell-cube: the largest subset of
/// {0,1}^ell with diameter at most Dp.
inline bigint hamming_power_clique_number(long ell, long Dp) {
  if (ell < 1)
    throw std::domain_error("hamming_power_clique_number: ell must be >= 1");
  if (Dp < 0)
    throw std::domain_error("hamming_power_clique_number: Dp must be >= 0");
  if (Dp >= ell) return bigint(1) << ell;
  const long v = Dp / 2;
  if (Dp % 2 == 0) return hamming_ball_size(ell, v);
  return hamming_ball_size(ell, v) + binom(ell - 1, v);
}

// Log-domain companions of the degree/clique counts above.

inline double log2_slice_graph_degree(long n, long k, long D) {
  CombinatorialSpec{n, k, D}.validate();
  detail::Log2Accumulator acc;
  for (long j = 1; j <= D / 2; ++j) {
    if (j > k || j > n - k) break;
    acc.add(log2_binom(k, j) + log2_binom(n - k, j));
  }
  return acc.value();
}

inline double log2_hamming_power_degree(long ell, long Dp) {
  detail::Log2Accumulator acc;
  for (long i = 1; i <= std::min(Dp, ell); ++i) acc.add(log2_binom(ell, i));
  return acc.value();
}

inline double log2_hamming_ball(long ell, long v) {
  detail::Log2Accumulator acc;
  for (long i = 0; i <= std::min(v, ell); ++i) acc.add(log2_binom(ell, i));
  return acc.value();
}

inline double log2_hamming_power_clique_number(long ell, long Dp) {
  if (ell < 1 || Dp < 0)
    throw std::domain_error("log2_hamming_power_clique_number: bad arguments");
  if (Dp >= ell) return static_cast<double>(ell);
  const long v = Dp / 2;
  if (Dp % 2 == 0) return log2_hamming_ball(ell, v);
  detail::Log2Accumulator acc;
  acc.add(log2_hamming_ball(ell, v));
  acc.add(log2_binom(ell - 1, v));
  return acc.value();
}

/// log2 of an exact count; handy when comparing exact and log-domain paths.
inline double log2_of(const bigint& value) {
  if (value <= 0) return -std::numeric_limits<double>::infinity();
  const long bits = static_cast<long>(boost::multiprecision::msb(value));
  if (bits <= 960) {
    return std::log2(value.convert_to<double>());
  }
  const long shift = bits - 960;
  bigint scaled = value >> shift;
  return std::log2(scaled.convert_to<double>()) + static_cast<double>(shift);
}

}  // namespace stablecode
