#pragma once

// Small explicit graphs and the brute-force oracles run against them:
// constant-weight slice neighborhood graphs, powers of the Hamming cube,
// circulants, exact max degree / max clique, and the induced-subgraph
// degree and clique lower bounds for vertex-transitive parents.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <deque>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "stablecode/combinatorics.hpp"
#include "stablecode/errors.hpp"

namespace stablecode {

struct AdjacencyGraph {
  std::vector<std::uint64_t> labels;            // bit patterns or plain ids
  std::vector<std::vector<std::uint32_t>> adj;  // sorted, symmetric, irreflexive
  std::optional<long> regular_degree;
  bool vertex_transitive = false;

  std::size_t order() const { return labels.size(); }

  std::size_t num_edges() const {
    std::size_t twice = 0;
    for (const auto& row : adj) twice += row.size();
    return twice / 2;
  }

  bool adjacent(std::uint32_t u, std::uint32_t v) const {
    const auto& row = adj[u];
    return std::binary_search(row.begin(), row.end(), v);
  }
};

namespace detail {

// Applies fn to every popcount-j submask of an m-bit universe, ascending.
template <class Fn>
void for_each_weighted_mask(int m, int j, Fn&& fn) {
  if (j == 0) {
    fn(std::uint64_t{0});
    return;
  }
  if (j > m) return;
  std::uint64_t mask = (std::uint64_t{1} << j) - 1;
  const std::uint64_t limit = std::uint64_t{1} << m;
  while (mask < limit) {
    fn(mask);
    // Gosper's hack: next larger integer with the same popcount.
    const std::uint64_t c = mask & -mask;
    const std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
}

inline std::uint64_t spread_bits(std::uint64_t compact,
                                 std::span<const int> positions) {
  std::uint64_t out = 0;
  while (compact) {
    const int i = std::countr_zero(compact);
    out |= std::uint64_t{1} << positions[static_cast<std::size_t>(i)];
    compact &= compact - 1;
  }
  return out;
}

inline void finalize_rows(AdjacencyGraph& g) {
  for (auto& row : g.adj) std::sort(row.begin(), row.end());
}

constexpr std::size_t kAdjacencyCap = std::size_t{1} << 27;  // total entries

}  // namespace detail

/// Graph on all weight-k length-n bitstrings with edges between sequences at
/// Hamming distance <= D (necessarily an even distance 2j, a j-for-j swap of
/// ones and zeros). Vertex-transitive and regular.
inline AdjacencyGraph slice_neighborhood_graph(long n, long k, long D) {
  CombinatorialSpec cs{n, k, D};
  cs.validate();
  if (n > 22) throw resource_error("slice_neighborhood_graph: n capped at 22");
  const bigint vcount = binom(n, k);
  if (vcount > 120000)
    throw resource_error("slice_neighborhood_graph: vertex count above ~1e5 cap");
  const bigint degree = slice_graph_degree(cs);
  if (vcount * degree > bigint(detail::kAdjacencyCap))
    throw resource_error("slice_neighborhood_graph: adjacency storage cap exceeded");

  AdjacencyGraph g;
  std::uint64_t v = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (v < limit) {
    g.labels.push_back(v);
    const std::uint64_t c = v & -v;
    const std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
  g.adj.resize(g.labels.size());

  std::vector<int> ones, zeros;
  const long jmax = std::min({D / 2, k, n - k});
  for (std::size_t idx = 0; idx < g.labels.size(); ++idx) {
    const std::uint64_t x = g.labels[idx];
    ones.clear();
    zeros.clear();
    for (int b = 0; b < n; ++b) {
      ((x >> b) & 1 ? ones : zeros).push_back(b);
    }
    for (long j = 1; j <= jmax; ++j) {
      detail::for_each_weighted_mask(static_cast<int>(k), static_cast<int>(j),
                                     [&](std::uint64_t drop_compact) {
        const std::uint64_t drop = detail::spread_bits(drop_compact, ones);
        detail::for_each_weighted_mask(static_cast<int>(n - k), static_cast<int>(j),
                                       [&](std::uint64_t add_compact) {
          const std::uint64_t add = detail::spread_bits(add_compact, zeros);
          const std::uint64_t y = x ^ drop ^ add;
          const auto it = std::lower_bound(g.labels.begin(), g.labels.end(), y);
          g.adj[idx].push_back(
              static_cast<std::uint32_t>(it - g.labels.begin()));
        });
      });
    }
  }
  detail::finalize_rows(g);
  g.regular_degree = static_cast<long>(g.adj.empty() ? 0 : g.adj[0].size());
  g.vertex_transitive = true;
  return g;
}

/// Dp-th power of the ell-dimensional Hamming cube: vertices {0,1}^ell, edges
/// between distinct strings at distance <= Dp.
inline AdjacencyGraph hamming_power_graph(long ell, long Dp) {
  if (ell < 1 || Dp < 0) throw std::domain_error("hamming_power_graph: bad arguments");
  if (ell > 17) throw resource_error("hamming_power_graph: ell capped at 17");
  const std::uint64_t vcount = std::uint64_t{1} << ell;
  const bigint degree = hamming_power_degree(ell, Dp);
  if (bigint(vcount) * degree > bigint(detail::kAdjacencyCap))
    throw resource_error("hamming_power_graph: adjacency storage cap exceeded");

  std::vector<std::uint64_t> masks;
  for (std::uint64_t m = 1; m < vcount; ++m) {
    if (std::popcount(m) <= Dp) masks.push_back(m);
  }
  AdjacencyGraph g;
  g.labels.resize(vcount);
  g.adj.resize(vcount);
  for (std::uint64_t x = 0; x < vcount; ++x) {
    g.labels[x] = x;
    auto& row = g.adj[x];
    row.reserve(masks.size());
    for (std::uint64_t m : masks) row.push_back(static_cast<std::uint32_t>(x ^ m));
  }
  detail::finalize_rows(g);
  g.regular_degree = static_cast<long>(masks.size());
  g.vertex_transitive = true;
  return g;
}

/// Circulant graph: vertex i adjacent to j iff (i - j) mod n lies in the
/// symmetric closure of the offset set. Offsets congruent to zero are
/// rejected (they would create loops).
inline AdjacencyGraph circulant_graph(long n, std::span<const long> offsets) {
  if (n < 1) throw std::domain_error("circulant_graph: n must be >= 1");
  if (offsets.empty()) throw std::domain_error("circulant_graph: offsets empty");
  std::vector<long> steps;
  for (long o : offsets) {
    long m = ((o % n) + n) % n;
    if (m == 0) throw std::domain_error("circulant_graph: zero offset would create a loop");
    steps.push_back(m);
    steps.push_back(n - m);
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());

  AdjacencyGraph g;
  g.labels.resize(static_cast<std::size_t>(n));
  g.adj.resize(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    g.labels[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(i);
    for (long s : steps) {
      g.adj[static_cast<std::size_t>(i)].push_back(
          static_cast<std::uint32_t>((i + s) % n));
    }
  }
  detail::finalize_rows(g);
  g.regular_degree = static_cast<long>(steps.size());
  g.vertex_transitive = true;
  return g;
}

inline AdjacencyGraph circulant_graph(long n, std::initializer_list<long> offsets) {
  return circulant_graph(n, std::span<const long>(offsets.begin(), offsets.size()));
}

/// Exact maximum degree.
inline long max_degree(const AdjacencyGraph& g) {
  std::size_t best = 0;
  for (const auto& row : g.adj) best = std::max(best, row.size());
  return static_cast<long>(best);
}

struct CliqueResult {
  long size = 0;
  std::vector<std::uint32_t> members;  // sorted witness
  bool exact = true;                   // false when the time budget ran out
};

namespace detail {

// Bitset branch and bound with greedy-coloring bounds. Vertices are
// relabeled once by (initial greedy color class, label order), which both
// fixes a deterministic search order and keeps the per-node coloring cheap.
class CliqueSolver {
 public:
  CliqueSolver(const AdjacencyGraph& g, std::chrono::steady_clock::duration budget)
      : n_(g.order()), words_((n_ + 63) / 64) {
    deadline_ = std::chrono::steady_clock::now() + budget;

    // Initial sequential coloring in label order.
    std::vector<std::uint64_t> raw(n_ * words_, 0);
    auto raw_bit = [&](std::size_t u, std::size_t v) {
      return (raw[u * words_ + (v >> 6)] >> (v & 63)) & 1;
    };
    for (std::uint32_t u = 0; u < n_; ++u) {
      for (std::uint32_t v : g.adj[u]) {
        raw[u * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
      }
    }
    std::vector<int> color(n_, 0);
    int classes = 0;
    for (std::uint32_t v = 0; v < n_; ++v) {
      int c = 1;
      for (; c <= classes; ++c) {
        bool clash = false;
        for (std::uint32_t u = 0; u < v; ++u) {
          if (color[u] == c && raw_bit(v, u)) {
            clash = true;
            break;
          }
        }
        if (!clash) break;
      }
      classes = std::max(classes, c);
      color[v] = c;
    }
    to_external_.resize(n_);
    for (std::uint32_t i = 0; i < n_; ++i) to_external_[i] = i;
    std::stable_sort(to_external_.begin(), to_external_.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                       return color[a] != color[b] ? color[a] < color[b] : a < b;
                     });
    std::vector<std::uint32_t> to_internal(n_);
    for (std::uint32_t i = 0; i < n_; ++i) to_internal[to_external_[i]] = i;

    rows_.assign(n_ * words_, 0);
    for (std::uint32_t u = 0; u < n_; ++u) {
      for (std::uint32_t v : g.adj[u]) {
        const std::uint32_t iu = to_internal[u], iv = to_internal[v];
        rows_[iu * words_ + (iv >> 6)] |= std::uint64_t{1} << (iv & 63);
      }
    }
  }

  CliqueResult solve() {
    // Greedy seed clique for the initial lower bound.
    std::vector<std::uint64_t> cand(words_, 0);
    for (std::uint32_t v = 0; v < n_; ++v) cand[v >> 6] |= std::uint64_t{1} << (v & 63);
    std::vector<std::uint64_t> avail = cand;
    for (std::uint32_t v = first_bit(avail); v != kNone; v = first_bit(avail)) {
      best_.push_back(v);
      and_row(avail, v);
    }

    ensure_frame(0).p = cand;
    cur_.clear();
    expand(0);

    for (auto& v : best_) v = to_external_[v];
    std::sort(best_.begin(), best_.end());
    return {static_cast<long>(best_.size()), best_, exact_};
  }

 private:
  static constexpr std::uint32_t kNone = UINT32_MAX;

  struct Frame {
    std::vector<std::uint64_t> p, scratch, q;
    std::vector<std::uint32_t> order;
    std::vector<int> bound;
    std::vector<std::vector<std::uint64_t>> classes;
    std::size_t class_count = 0;
  };

  Frame& ensure_frame(std::size_t depth) {
    while (frames_.size() <= depth) {
      Frame f;
      f.p.assign(words_, 0);
      f.scratch.assign(words_, 0);
      f.q.assign(words_, 0);
      frames_.push_back(std::move(f));
    }
    return frames_[depth];
  }

  std::vector<std::uint64_t>& class_bits(Frame& f, std::size_t c) {
    while (f.classes.size() <= c) f.classes.emplace_back(words_, 0);
    return f.classes[c];
  }

  // Tomita-style re-numbering: if v landed in a class above the pruning
  // threshold, try to swap it below by relocating the single conflicting
  // vertex w of some low class c1 into another conflict-free class c2.
  bool renumber(Frame& f, std::uint32_t v, long threshold) {
    const std::uint64_t* vrow = rows_.data() + static_cast<std::size_t>(v) * words_;
    for (long c1 = 0; c1 < threshold - 1 &&
                      c1 < static_cast<long>(f.class_count); ++c1) {
      auto& k1 = f.classes[static_cast<std::size_t>(c1)];
      std::uint32_t w = kNone;
      bool single = true;
      for (std::size_t i = 0; i < words_ && single; ++i) {
        std::uint64_t bits = k1[i] & vrow[i];
        while (bits) {
          if (w != kNone) {
            single = false;
            break;
          }
          w = static_cast<std::uint32_t>((i << 6) + std::countr_zero(bits));
          bits &= bits - 1;
        }
      }
      if (w == kNone || !single) continue;
      const std::uint64_t* wrow = rows_.data() + static_cast<std::size_t>(w) * words_;
      for (long c2 = c1 + 1; c2 < threshold && c2 < static_cast<long>(f.class_count);
           ++c2) {
        auto& k2 = f.classes[static_cast<std::size_t>(c2)];
        bool clash = false;
        for (std::size_t i = 0; i < words_; ++i) {
          if (k2[i] & wrow[i]) {
            clash = true;
            break;
          }
        }
        if (!clash) {
          k1[w >> 6] &= ~(std::uint64_t{1} << (w & 63));
          k2[w >> 6] |= std::uint64_t{1} << (w & 63);
          k1[v >> 6] |= std::uint64_t{1} << (v & 63);
          return true;
        }
      }
    }
    return false;
  }

  std::uint32_t first_bit(const std::vector<std::uint64_t>& bits) const {
    for (std::size_t w = 0; w < words_; ++w) {
      if (bits[w]) {
        return static_cast<std::uint32_t>((w << 6) + std::countr_zero(bits[w]));
      }
    }
    return kNone;
  }

  void and_row(std::vector<std::uint64_t>& bits, std::uint32_t v) const {
    const std::uint64_t* row = rows_.data() + static_cast<std::size_t>(v) * words_;
    for (std::size_t w = 0; w < words_; ++w) bits[w] &= row[w];
  }

  void expand(std::size_t depth) {
    if (!exact_) return;
    if (++nodes_ % 2048 == 0 && std::chrono::steady_clock::now() > deadline_) {
      exact_ = false;
      return;
    }
    ensure_frame(depth + 1);  // deque keeps earlier frames' references stable
    Frame& f = frames_[depth];
    Frame& child = frames_[depth + 1];

    // Greedy coloring of the candidate set, class by class. Vertices whose
    // class lands above the pruning threshold get one re-numbering attempt.
    const long threshold =
        static_cast<long>(best_.size()) - static_cast<long>(cur_.size());
    f.scratch = f.p;
    f.class_count = 0;
    long recolored = 0;
    while (true) {
      std::uint32_t v = first_bit(f.scratch);
      if (v == kNone) break;
      auto& cls = class_bits(f, f.class_count);
      for (std::size_t w = 0; w < words_; ++w) cls[w] = 0;
      ++f.class_count;
      f.q = f.scratch;
      while (v != kNone) {
        f.q[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
        f.scratch[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
        const std::uint64_t* row = rows_.data() + static_cast<std::size_t>(v) * words_;
        for (std::size_t w = 0; w < words_; ++w) f.q[w] &= ~row[w];
        if (static_cast<long>(f.class_count) > threshold && threshold > 1 &&
            renumber(f, v, threshold)) {
          ++recolored;
        } else {
          f.classes[f.class_count - 1][v >> 6] |= std::uint64_t{1} << (v & 63);
        }
        v = first_bit(f.q);
      }
      if (recolored > 0 && f.class_count > 0) {
        // the last class may have ended empty after re-numbering
        bool empty = true;
        for (std::size_t w = 0; w < words_; ++w) {
          if (f.classes[f.class_count - 1][w]) {
            empty = false;
            break;
          }
        }
        if (empty) --f.class_count;
      }
    }
    // Branch list: vertices in class order, ascending index inside a class.
    f.order.clear();
    f.bound.clear();
    for (std::size_t c = 0; c < f.class_count; ++c) {
      const auto& cls = f.classes[c];
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = cls[w];
        while (bits) {
          f.order.push_back(static_cast<std::uint32_t>((w << 6) + std::countr_zero(bits)));
          f.bound.push_back(static_cast<int>(c) + 1);
          bits &= bits - 1;
        }
      }
    }

    for (std::size_t i = f.order.size(); i-- > 0;) {
      if (cur_.size() + static_cast<std::size_t>(f.bound[i]) <= best_.size()) return;
      const std::uint32_t v = f.order[i];
      f.p[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
      const std::uint64_t* row = rows_.data() + static_cast<std::size_t>(v) * words_;
      bool empty = true;
      for (std::size_t w = 0; w < words_; ++w) {
        child.p[w] = f.p[w] & row[w];
        empty &= (child.p[w] == 0);
      }
      cur_.push_back(v);
      if (empty) {
        if (cur_.size() > best_.size()) best_ = cur_;
      } else {
        expand(depth + 1);
      }
      cur_.pop_back();
      if (!exact_) return;
    }
  }

  std::size_t n_, words_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint32_t> to_external_;
  std::deque<Frame> frames_;
  std::vector<std::uint32_t> best_, cur_;
  std::chrono::steady_clock::time_point deadline_;
  std::uint64_t nodes_ = 0;
  bool exact_ = true;
};

}  // namespace detail

namespace detail {

// Max clique in G as max independent set in the complement: branch and
// reduce on the sparse complement. Coloring bounds degrade badly on graphs
// whose complement is (near) triangle-free, which is exactly the regime
// where this solver is fast: degree-0/1 inclusion, closed-form paths and
// cycles once the residual degree drops to 2, max-degree branching.
class ComplementMisSolver {
 public:
  ComplementMisSolver(const AdjacencyGraph& g,
                      std::chrono::steady_clock::duration budget)
      : n_(g.order()), words_((n_ + 63) / 64), rows_(n_ * words_, 0),
        deg_(n_, 0), alive_(words_, 0) {
    deadline_ = std::chrono::steady_clock::now() + budget;
    for (std::uint32_t u = 0; u < n_; ++u) {
      alive_[u >> 6] |= std::uint64_t{1} << (u & 63);
    }
    // complement rows
    for (std::uint32_t u = 0; u < n_; ++u) {
      std::uint64_t* row = rows_.data() + static_cast<std::size_t>(u) * words_;
      for (std::size_t w = 0; w < words_; ++w) row[w] = ~std::uint64_t{0};
      if (n_ & 63) row[words_ - 1] = (std::uint64_t{1} << (n_ & 63)) - 1;
      row[u >> 6] &= ~(std::uint64_t{1} << (u & 63));
      for (std::uint32_t v : g.adj[u]) row[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }
    for (std::uint32_t u = 0; u < n_; ++u) deg_[u] = row_popcount(u);
    n_alive_ = n_;
  }

  CliqueResult solve() {
    cur_.clear();
    best_.clear();
    recurse();
    std::sort(best_.begin(), best_.end());
    return {static_cast<long>(best_.size()), best_, exact_};
  }

 private:
  bool is_alive(std::uint32_t v) const {
    return (alive_[v >> 6] >> (v & 63)) & 1;
  }

  long row_popcount(std::uint32_t v) const {
    const std::uint64_t* row = rows_.data() + static_cast<std::size_t>(v) * words_;
    long c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += std::popcount(row[w] & alive_[w]);
    return c;
  }

  void remove_vertex(std::uint32_t v) {
    alive_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    --n_alive_;
    trail_.push_back(v);
    const std::uint64_t* row = rows_.data() + static_cast<std::size_t>(v) * words_;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = row[w] & alive_[w];
      while (bits) {
        const std::uint32_t u = static_cast<std::uint32_t>((w << 6) + std::countr_zero(bits));
        bits &= bits - 1;
        --deg_[u];
      }
    }
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const std::uint32_t v = trail_.back();
      trail_.pop_back();
      alive_[v >> 6] |= std::uint64_t{1} << (v & 63);
      ++n_alive_;
      const std::uint64_t* row = rows_.data() + static_cast<std::size_t>(v) * words_;
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = row[w] & alive_[w];
        while (bits) {
          const std::uint32_t u = static_cast<std::uint32_t>((w << 6) + std::countr_zero(bits));
          bits &= bits - 1;
          if (u != v) ++deg_[u];
        }
      }
      deg_[v] = row_popcount(v);
    }
  }

  // Include v in the independent set: drop v and its complement-neighbors.
  void include_vertex(std::uint32_t v) {
    cur_.push_back(v);
    std::uint64_t nb[64];  // words_ <= 64 given the 4096-vertex cap
    const std::uint64_t* row = rows_.data() + static_cast<std::size_t>(v) * words_;
    for (std::size_t w = 0; w < words_; ++w) nb[w] = row[w] & alive_[w];
    remove_vertex(v);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = nb[w];
      while (bits) {
        const std::uint32_t u = static_cast<std::uint32_t>((w << 6) + std::countr_zero(bits));
        bits &= bits - 1;
        remove_vertex(u);
      }
    }
  }

  // alpha and witness for a residual graph of max degree <= 2: disjoint
  // paths and cycles, solved by alternation.
  void finish_low_degree() {
    std::uint64_t seen[64];
    for (std::size_t w = 0; w < words_; ++w) seen[w] = 0;
    auto mark_seen = [&](std::uint32_t v) { seen[v >> 6] |= std::uint64_t{1} << (v & 63); };
    auto is_seen = [&](std::uint32_t v) { return (seen[v >> 6] >> (v & 63)) & 1; };
    auto next_neighbor = [&](std::uint32_t v, std::uint32_t avoid) -> std::uint32_t {
      const std::uint64_t* row = rows_.data() + static_cast<std::size_t>(v) * words_;
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = row[w] & alive_[w];
        while (bits) {
          const std::uint32_t u = static_cast<std::uint32_t>((w << 6) + std::countr_zero(bits));
          bits &= bits - 1;
          if (u != avoid && !is_seen(u)) return u;
        }
      }
      return UINT32_MAX;
    };

    const std::size_t base = cur_.size();
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = alive_[w];
      while (bits) {
        const std::uint32_t start = static_cast<std::uint32_t>((w << 6) + std::countr_zero(bits));
        bits &= bits - 1;
        if (is_seen(start)) continue;
        // walk to one end of the path (or around the cycle)
        std::uint32_t head = start;
        std::uint32_t prev = UINT32_MAX;
        for (long guard = 0; guard <= static_cast<long>(n_alive_); ++guard) {
          const std::uint32_t nxt = next_neighbor(head, prev);
          if (nxt == UINT32_MAX || nxt == start) break;  // end of path / closed cycle
          prev = head;
          head = nxt;
          if (head == start) break;
        }
        // collect the component from `head`, taking alternate vertices
        std::vector<std::uint32_t> comp;
        std::uint32_t v = head;
        prev = UINT32_MAX;
        while (v != UINT32_MAX && !is_seen(v)) {
          mark_seen(v);
          comp.push_back(v);
          const std::uint32_t nxt = next_neighbor(v, prev);
          prev = v;
          v = nxt;
        }
        const bool cycle =
            comp.size() >= 3 && adjacent_bits(comp.front(), comp.back());
        const std::size_t take = cycle ? comp.size() / 2 : (comp.size() + 1) / 2;
        for (std::size_t i = 0; i < 2 * take; i += 2) cur_.push_back(comp[i]);
      }
    }
    if (cur_.size() > best_.size()) best_ = cur_;
    cur_.resize(base);
  }

  bool adjacent_bits(std::uint32_t u, std::uint32_t v) const {
    return (rows_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1;
  }

  void recurse() {
    if (!exact_) return;
    if (++nodes_ % 1024 == 0 && std::chrono::steady_clock::now() > deadline_) {
      exact_ = false;
      return;
    }
    const std::size_t mark = trail_.size();
    const std::size_t cur_mark = cur_.size();

    // reductions: isolated vertices always join; degree-1 vertices join
    // greedily (their single constraint is dominated)
    bool changed = true;
    std::uint32_t max_v = UINT32_MAX;
    long max_d = -1;
    while (changed) {
      changed = false;
      max_v = UINT32_MAX;
      max_d = -1;
      for (std::size_t w = 0; w < words_ && !changed; ++w) {
        std::uint64_t bits = alive_[w];
        while (bits) {
          const std::uint32_t v = static_cast<std::uint32_t>((w << 6) + std::countr_zero(bits));
          bits &= bits - 1;
          if (deg_[v] <= 1) {
            include_vertex(v);
            changed = true;
            break;
          }
          if (deg_[v] > max_d) {
            max_d = deg_[v];
            max_v = v;
          }
        }
      }
    }

    if (n_alive_ == 0) {
      if (cur_.size() > best_.size()) best_ = cur_;
    } else if (max_d <= 2) {
      finish_low_degree();
    } else if (cur_.size() + n_alive_ > best_.size()) {
      // include branch
      {
        const std::size_t m2 = trail_.size(), c2 = cur_.size();
        include_vertex(max_v);
        recurse();
        undo_to(m2);
        cur_.resize(c2);
      }
      // exclude branch
      if (exact_) {
        const std::size_t m2 = trail_.size();
        remove_vertex(max_v);
        recurse();
        undo_to(m2);
      }
    }

    undo_to(mark);
    cur_.resize(cur_mark);
  }

  std::size_t n_, words_;
  std::vector<std::uint64_t> rows_;  // complement adjacency
  std::vector<long> deg_;
  std::vector<std::uint64_t> alive_;
  std::size_t n_alive_ = 0;
  std::vector<std::uint32_t> trail_, cur_, best_;
  std::chrono::steady_clock::time_point deadline_;
  std::uint64_t nodes_ = 0;
  bool exact_ = true;
};

}  // namespace detail

/// Exact maximum clique. Dense graphs with sparse complements are solved as
/// maximum independent set on the complement by branch and reduce; everything
/// else goes through bitset branch and bound with greedy-coloring upper
/// bounds. Deterministic ordering, so the witness is reproducible. When the
/// wall-clock budget runs out the best clique found so far is returned with
/// exact = false.
inline CliqueResult max_clique(const AdjacencyGraph& g,
                               std::chrono::steady_clock::duration budget =
                                   std::chrono::seconds(30)) {
  if (g.order() == 0) return {0, {}, true};
  if (g.order() > 20000)
    throw resource_error("max_clique: graph above the ~1e4-vertex practical cap");
  return detail::CliqueSolver(g, budget).solve();
}

/// Induced subgraph on the given (deduplicated) vertex subset; labels carry
/// over, vertex transitivity does not.
inline AdjacencyGraph induced_subgraph(const AdjacencyGraph& g,
                                       std::span<const std::uint32_t> members) {
  std::vector<std::uint32_t> sel(members.begin(), members.end());
  std::sort(sel.begin(), sel.end());
  sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
  if (!sel.empty() && sel.back() >= g.order())
    throw std::domain_error("induced_subgraph: vertex index out of range");

  std::vector<std::uint32_t> pos(g.order(), UINT32_MAX);
  for (std::uint32_t i = 0; i < sel.size(); ++i) pos[sel[i]] = i;
  AdjacencyGraph s;
  s.labels.reserve(sel.size());
  s.adj.resize(sel.size());
  for (std::uint32_t i = 0; i < sel.size(); ++i) {
    s.labels.push_back(g.labels[sel[i]]);
    for (std::uint32_t v : g.adj[sel[i]]) {
      if (pos[v] != UINT32_MAX) s.adj[i].push_back(pos[v]);
    }
  }
  return s;
}

/// A subset S of a parent graph's vertices.
struct SubsetSelection {
  const AdjacencyGraph* parent = nullptr;
  std::vector<std::uint32_t> members;
};

struct InducedBoundsReport {
  std::size_t parent_order = 0;   // N
  std::size_t subset_size = 0;    // M
  long parent_degree = 0;         // regular degree d
  long parent_clique = 0;
  long induced_max_degree = 0;
  long induced_clique = 0;
  double degree_lower = 0;        // d (2 - N/M)
  long clique_lower = 0;          // ceil(M * parent_clique / N)
  bool degree_applies = false;    // M >= N/2
  bool degree_ok = true;
  bool clique_ok = true;
  bool ok = true;
};

/// Verifies the induced-subgraph lower bounds on a vertex-transitive parent:
/// max degree of G[S] is at least d(2 - N/M) whenever M >= N/2, and the
/// clique number of G[S] is at least ceil(M/N * clique(G)). Both sides of
/// each inequality are reported. The parent clique number may be passed in
/// when known, to avoid recomputation across many subsets.
inline InducedBoundsReport check_induced_subgraph_bounds(
    const SubsetSelection& sel,
    std::optional<long> parent_clique = std::nullopt,
    std::chrono::steady_clock::duration budget = std::chrono::seconds(30)) {
  if (sel.parent == nullptr)
    throw std::invalid_argument("check_induced_subgraph_bounds: null parent");
  const AdjacencyGraph& g = *sel.parent;
  if (!g.vertex_transitive)
    throw std::domain_error(
        "check_induced_subgraph_bounds: parent graph not flagged vertex-transitive");
  if (!g.regular_degree)
    throw std::domain_error("check_induced_subgraph_bounds: parent degree unknown");

  InducedBoundsReport rep;
  rep.parent_order = g.order();
  rep.parent_degree = *g.regular_degree;
  if (parent_clique) {
    rep.parent_clique = *parent_clique;
  } else {
    auto pc = max_clique(g, budget);
    if (!pc.exact)
      throw resource_error("check_induced_subgraph_bounds: parent clique search timed out");
    rep.parent_clique = pc.size;
  }

  AdjacencyGraph sub = induced_subgraph(g, sel.members);
  rep.subset_size = sub.order();
  rep.induced_max_degree = max_degree(sub);
  auto sc = max_clique(sub, budget);
  if (!sc.exact)
    throw resource_error("check_induced_subgraph_bounds: subgraph clique search timed out");
  rep.induced_clique = sc.size;

  const double N = static_cast<double>(rep.parent_order);
  const double M = static_cast<double>(rep.subset_size);
  rep.degree_applies = 2 * rep.subset_size >= rep.parent_order;
  if (rep.degree_applies && M > 0) {
    rep.degree_lower = static_cast<double>(rep.parent_degree) * (2.0 - N / M);
    rep.degree_ok =
        static_cast<double>(rep.induced_max_degree) >= rep.degree_lower - 1e-9;
  }
  rep.clique_lower = static_cast<long>(
      (static_cast<long long>(rep.subset_size) * rep.parent_clique +
       static_cast<long long>(rep.parent_order) - 1) /
      static_cast<long long>(rep.parent_order));
  rep.clique_ok = rep.induced_clique >= rep.clique_lower;
  rep.ok = rep.clique_ok && (!rep.degree_applies || rep.degree_ok);
  return rep;
}

/// Plain-text edge list: a "n_vertices n_edges" header, then one "u v" line
/// per edge with u < v (vertex indices).
inline void write_edge_list(const AdjacencyGraph& g, std::ostream& os) {
  os << g.order() << ' ' << g.num_edges() << '\n';
  for (std::uint32_t u = 0; u < g.order(); ++u) {
    for (std::uint32_t v : g.adj[u]) {
      if (u < v) os << u << ' ' << v << '\n';
    }
  }
}

}  // namespace stablecode
