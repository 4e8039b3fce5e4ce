#pragma once

// Explicit encoders at desk-scale blocklengths: stability certification by
// Hamming-ball enumeration, empirical distance profiles, seeded random
// binning, and backtracking search for stable lossless codes (injective
// edge-preserving maps into a power of the Hamming cube).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "stablecode/errors.hpp"
#include "stablecode/graph.hpp"

namespace stablecode {

/// A total map from a domain of length-n binary sequences (the full space or
/// a listed subset such as a constant-weight slice) to ell-bit strings.
/// Losslessness on the decoded set is injectivity of the table; the decoder
/// is its partial inverse and is never materialized.
struct EncoderTable {
  long n = 0;
  long ell = 0;
  std::vector<std::uint64_t> domain;  // sorted labels
  std::vector<std::uint64_t> image;   // parallel to domain

  std::size_t domain_size() const { return domain.size(); }

  bool covers_full_space() const {
    return n <= 62 && domain.size() == (std::uint64_t{1} << n);
  }

  std::optional<std::size_t> index_of(std::uint64_t x) const {
    if (covers_full_space()) {
      return x < domain.size() ? std::optional<std::size_t>(x) : std::nullopt;
    }
    auto it = std::lower_bound(domain.begin(), domain.end(), x);
    if (it == domain.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - domain.begin());
  }

  std::optional<std::uint64_t> apply(std::uint64_t x) const {
    auto idx = index_of(x);
    if (!idx) return std::nullopt;
    return image[*idx];
  }

  bool is_injective() const {
    std::vector<std::uint64_t> sorted = image;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }

  void validate() const {
    if (n < 1 || n > 62) throw std::domain_error("EncoderTable: need 1 <= n <= 62");
    if (ell < 1 || ell > 64) throw std::domain_error("EncoderTable: need 1 <= ell <= 64");
    if (domain.size() != image.size())
      throw std::domain_error("EncoderTable: domain/image size mismatch");
    if (!std::is_sorted(domain.begin(), domain.end()) ||
        std::adjacent_find(domain.begin(), domain.end()) != domain.end())
      throw std::domain_error("EncoderTable: domain must be sorted and duplicate-free");
    const std::uint64_t in_limit = (n == 62) ? ~std::uint64_t{0} : (std::uint64_t{1} << n);
    for (std::uint64_t x : domain) {
      if (n < 62 && x >= in_limit)
        throw std::domain_error("EncoderTable: domain label wider than n bits");
    }
    if (ell < 64) {
      const std::uint64_t out_limit = std::uint64_t{1} << ell;
      for (std::uint64_t y : image) {
        if (y >= out_limit)
          throw std::domain_error("EncoderTable: image wider than ell bits");
      }
    }
  }
};

inline EncoderTable identity_encoder(long n) {
  if (n < 1 || n > 24) throw std::domain_error("identity_encoder: need 1 <= n <= 24");
  EncoderTable t;
  t.n = n;
  t.ell = n;
  const std::uint64_t size = std::uint64_t{1} << n;
  t.domain.resize(size);
  t.image.resize(size);
  for (std::uint64_t x = 0; x < size; ++x) t.domain[x] = t.image[x] = x;
  return t;
}

inline EncoderTable constant_encoder(long n, long ell, std::uint64_t value = 0) {
  if (n < 1 || n > 24) throw std::domain_error("constant_encoder: need 1 <= n <= 24");
  EncoderTable t;
  t.n = n;
  t.ell = ell;
  const std::uint64_t size = std::uint64_t{1} << n;
  t.domain.resize(size);
  t.image.assign(size, value);
  for (std::uint64_t x = 0; x < size; ++x) t.domain[x] = x;
  t.validate();
  return t;
}

namespace detail {

// splitmix64: the fixed 64-bit mixing generator behind every seeded fixture,
// chosen so tables are reproducible across implementations.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// All nonzero masks of n bits with popcount <= D, ordered by (popcount,
// value); the deterministic neighbor-enumeration order.
inline std::vector<std::uint64_t> ball_masks(long n, long D) {
  std::vector<std::uint64_t> masks;
  for (long j = 1; j <= std::min(D, n); ++j) {
    for_each_weighted_mask(static_cast<int>(n), static_cast<int>(j),
                           [&](std::uint64_t m) { masks.push_back(m); });
  }
  return masks;
}

}  // namespace detail

/// Full-space encoder mapping each sequence to an independent uniform ell-bit
/// string from a seeded splitmix64 stream, in domain order. Same seed, same
/// table.
inline EncoderTable random_binning_encoder(long n, long ell, std::uint64_t seed) {
  if (n < 1 || n > 20) throw std::domain_error("random_binning_encoder: need 1 <= n <= 20");
  if (ell < 1 || ell > 64)
    throw std::domain_error("random_binning_encoder: need 1 <= ell <= 64");
  EncoderTable t;
  t.n = n;
  t.ell = ell;
  const std::uint64_t size = std::uint64_t{1} << n;
  t.domain.resize(size);
  t.image.resize(size);
  std::uint64_t state = seed;
  const std::uint64_t mask = (ell == 64) ? ~std::uint64_t{0}
                                         : (std::uint64_t{1} << ell) - 1;
  for (std::uint64_t x = 0; x < size; ++x) {
    t.domain[x] = x;
    t.image[x] = detail::splitmix64(state) & mask;
  }
  return t;
}

struct StabilityReport {
  bool stable = true;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> counterexample;
  long counterexample_in_distance = 0;
  long counterexample_out_distance = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t neighbors_skipped = 0;  // ball neighbors outside the domain
};

/// Certifies (D, Dp)-stability on the encoder's domain: every domain pair at
/// input distance <= D must map to outputs at distance <= Dp. Neighbors
/// outside the declared domain are skipped (stability is only required where
/// the encoder is defined) and counted. Enumerates Hamming balls rather than
/// all pairs.
inline StabilityReport check_stability(const EncoderTable& enc, long D, long Dp) {
  enc.validate();
  if (D < 0 || Dp < 0) throw std::domain_error("check_stability: negative tolerance");
  const auto masks = detail::ball_masks(enc.n, D);
  if (enc.domain_size() * (masks.size() + 1) > (std::uint64_t{1} << 28))
    throw resource_error("check_stability: neighbor enumeration too large");

  StabilityReport rep;
  for (std::size_t i = 0; i < enc.domain.size(); ++i) {
    const std::uint64_t x = enc.domain[i];
    for (std::uint64_t m : masks) {
      const std::uint64_t y = x ^ m;
      if (y < x) continue;  // each unordered pair once, from its smaller end
      const auto j = enc.index_of(y);
      if (!j) {
        ++rep.neighbors_skipped;
        continue;
      }
      ++rep.pairs_checked;
      const long dist_out = std::popcount(enc.image[i] ^ enc.image[*j]);
      if (dist_out > Dp) {
        rep.stable = false;
        rep.counterexample = {x, y};
        rep.counterexample_in_distance = std::popcount(m);
        rep.counterexample_out_distance = dist_out;
        return rep;
      }
    }
  }
  return rep;
}

/// For each D in 1..D_max, the largest output distance over domain pairs at
/// input distance <= D. Nondecreasing in D by construction.
inline std::vector<std::pair<long, long>> stability_profile(const EncoderTable& enc,
                                                            long D_max) {
  enc.validate();
  if (D_max < 1) throw std::domain_error("stability_profile: D_max must be >= 1");
  const auto masks = detail::ball_masks(enc.n, D_max);
  if (enc.domain_size() * (masks.size() + 1) > (std::uint64_t{1} << 28))
    throw resource_error("stability_profile: neighbor enumeration too large");

  std::vector<long> per_distance(static_cast<std::size_t>(D_max) + 1, 0);
  for (std::size_t i = 0; i < enc.domain.size(); ++i) {
    const std::uint64_t x = enc.domain[i];
    for (std::uint64_t m : masks) {
      const std::uint64_t y = x ^ m;
      if (y < x) continue;
      const auto j = enc.index_of(y);
      if (!j) continue;
      const int d_in = std::popcount(m);
      auto& slot = per_distance[static_cast<std::size_t>(d_in)];
      slot = std::max(slot, static_cast<long>(std::popcount(enc.image[i] ^ enc.image[*j])));
    }
  }
  std::vector<std::pair<long, long>> profile;
  long running = 0;
  for (long D = 1; D <= D_max; ++D) {
    running = std::max(running, per_distance[static_cast<std::size_t>(D)]);
    profile.emplace_back(D, running);
  }
  return profile;
}

enum class SearchStatus { Found, Refuted, BudgetExhausted };

struct CodeSearchResult {
  SearchStatus status = SearchStatus::Refuted;
  std::optional<EncoderTable> table;
  std::uint64_t nodes = 0;  // candidate placements attempted
};

namespace detail {

class HomomorphismSearch {
 public:
  HomomorphismSearch(const AdjacencyGraph& src, long n_bits, long ell, long Dp,
                     std::uint64_t budget)
      : src_(src), n_bits_(n_bits), ell_(ell), budget_(budget) {
    target_size_ = std::uint64_t{1} << ell;
    dp_limit_ = std::min(Dp, ell);
    ball_ = ball_masks(ell, dp_limit_);
  }

  CodeSearchResult run() {
    const std::size_t nv = src_.order();
    if (nv == 0) return {SearchStatus::Found, make_table({}), 0};

    // BFS placement order; constraint propagation then only ever looks at
    // already-placed neighbors.
    std::vector<std::uint32_t> order;
    std::vector<char> seen(nv, 0);
    for (std::uint32_t root = 0; root < nv; ++root) {
      if (seen[root]) continue;
      seen[root] = 1;
      order.push_back(root);
      for (std::size_t head = order.size() - 1; head < order.size(); ++head) {
        for (std::uint32_t v : src_.adj[order[head]]) {
          if (!seen[v]) {
            seen[v] = 1;
            order.push_back(v);
          }
        }
      }
    }
    placed_before_.assign(nv, {});
    std::vector<std::uint32_t> rank(nv, 0);
    for (std::uint32_t i = 0; i < nv; ++i) rank[order[i]] = i;
    for (std::uint32_t i = 0; i < nv; ++i) {
      for (std::uint32_t v : src_.adj[order[i]]) {
        if (rank[v] < i) placed_before_[i].push_back(v);
      }
    }

    image_.assign(nv, 0);
    used_.assign(target_size_, 0);
    nodes_ = 0;
    const bool found = place(0, order);
    if (!found && out_of_budget_) return {SearchStatus::BudgetExhausted, std::nullopt, nodes_};
    if (!found) return {SearchStatus::Refuted, std::nullopt, nodes_};
    std::vector<std::uint64_t> images(nv);
    for (std::uint32_t i = 0; i < nv; ++i) images[i] = image_[i];
    return {SearchStatus::Found, make_table(images), nodes_};
  }

 private:
  EncoderTable make_table(std::vector<std::uint64_t> images) const {
    EncoderTable t;
    t.n = n_bits_;
    t.ell = ell_;
    t.domain = src_.labels;
    t.image = std::move(images);
    t.image.resize(t.domain.size());
    return t;
  }

  bool place(std::size_t pos, const std::vector<std::uint32_t>& order) {
    if (pos == order.size()) return true;
    const std::uint32_t v = order[pos];
    const auto& anchors = placed_before_[pos];

    std::vector<std::uint64_t> candidates;
    if (anchors.empty()) {
      for (std::uint64_t y = 0; y < target_size_; ++y) {
        if (!used_[y]) candidates.push_back(y);
      }
    } else {
      // Ball of radius Dp around the first placed neighbor's image, filtered
      // against the rest; sorted for lexicographic candidate order.
      const std::uint64_t base = image_[anchors[0]];
      for (std::uint64_t m : ball_) candidates.push_back(base ^ m);
      std::sort(candidates.begin(), candidates.end());
    }

    for (std::uint64_t y : candidates) {
      if (used_[y]) continue;
      bool ok = true;
      for (std::uint32_t u : anchors) {
        if (std::popcount(image_[u] ^ y) > dp_limit_) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (++nodes_ > budget_) {
        out_of_budget_ = true;
        return false;
      }
      image_[v] = y;
      used_[y] = 1;
      if (place(pos + 1, order)) return true;
      used_[y] = 0;
      if (out_of_budget_) return false;
    }
    return false;
  }

  const AdjacencyGraph& src_;
  long n_bits_, ell_;
  std::uint64_t budget_, target_size_, nodes_ = 0;
  long dp_limit_ = 0;
  bool out_of_budget_ = false;
  std::vector<std::uint64_t> ball_, image_;
  std::vector<std::vector<std::uint32_t>> placed_before_;
  std::vector<char> used_;
};

}  // namespace detail

/// Backtracking search for an injective map of the source graph's vertices
/// into {0,1}^ell taking every edge to a pair at distance <= Dp. Found tables
/// are (D, Dp)-stable lossless codes on the domain; full exhaustion without a
/// solution is a certificate of non-existence, while hitting the node budget
/// is not.
inline CodeSearchResult find_stable_code(const AdjacencyGraph& source, long n_bits,
                                         long ell, long Dp,
                                         std::uint64_t node_budget = 10000000) {
  if (ell < 1 || ell > 20)
    throw resource_error("find_stable_code: target dimension capped at 20");
  if (Dp < 0) throw std::domain_error("find_stable_code: Dp must be >= 0");
  if (source.order() > 2000)
    throw resource_error("find_stable_code: domain above the backtracking cap");
  return detail::HomomorphismSearch(source, n_bits, ell, Dp, node_budget).run();
}

/// Search over the weight-k slice domain.
inline CodeSearchResult find_stable_code(long n, long k, long D, long ell, long Dp,
                                         std::uint64_t node_budget = 10000000) {
  if (binom(n, k) > 2000)
    throw resource_error("find_stable_code: slice above the backtracking cap");
  return find_stable_code(slice_neighborhood_graph(n, k, D), n, ell, Dp, node_budget);
}

/// Search over the full space {0,1}^n.
inline CodeSearchResult find_stable_code_full_space(long n, long D, long ell, long Dp,
                                                    std::uint64_t node_budget = 10000000) {
  if (n > 12) throw resource_error("find_stable_code_full_space: n capped at 12");
  return find_stable_code(hamming_power_graph(n, D), n, ell, Dp, node_budget);
}

namespace detail {

inline std::string bits_to_string(std::uint64_t v, long width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (long i = 0; i < width; ++i) {
    if ((v >> (width - 1 - i)) & 1) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

inline std::uint64_t bits_from_string(const std::string& s) {
  std::uint64_t v = 0;
  for (char c : s) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("encoder table: non-binary digit in bit string");
    v = (v << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace detail

/// Text format: a "n ell" header line, then one "input_bits output_bits" line
/// per domain element, bits written most-significant first.
inline void write_encoder_table(const EncoderTable& enc, std::ostream& os) {
  enc.validate();
  os << enc.n << ' ' << enc.ell << '\n';
  for (std::size_t i = 0; i < enc.domain.size(); ++i) {
    os << detail::bits_to_string(enc.domain[i], enc.n) << ' '
       << detail::bits_to_string(enc.image[i], enc.ell) << '\n';
  }
}

inline EncoderTable read_encoder_table(std::istream& is) {
  EncoderTable enc;
  if (!(is >> enc.n >> enc.ell))
    throw std::invalid_argument("encoder table: missing 'n ell' header");
  std::string in_bits, out_bits;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
  while (is >> in_bits >> out_bits) {
    if (static_cast<long>(in_bits.size()) != enc.n ||
        static_cast<long>(out_bits.size()) != enc.ell)
      throw std::invalid_argument("encoder table: bit string width mismatch");
    rows.emplace_back(detail::bits_from_string(in_bits),
                      detail::bits_from_string(out_bits));
  }
  std::sort(rows.begin(), rows.end());
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (rows[i].first == rows[i + 1].first)
      throw std::invalid_argument("encoder table: duplicate domain entry");
  }
  enc.domain.reserve(rows.size());
  enc.image.reserve(rows.size());
  for (auto& [x, y] : rows) {
    enc.domain.push_back(x);
    enc.image.push_back(y);
  }
  enc.validate();
  return enc;
}

/// Structured text report for a stability check, with the violating pair when
/// present.
inline std::string format_stability_report(const EncoderTable& enc, long D, long Dp,
                                           const StabilityReport& rep) {
  std::ostringstream os;
  os << "stability check: D = " << D << ", D' = " << Dp << '\n';
  os << "domain: " << (enc.covers_full_space() ? "full space" : "listed subset")
     << ", n = " << enc.n << ", " << enc.domain_size() << " sequences, ell = "
     << enc.ell << '\n';
  os << "result: " << (rep.stable ? "stable" : "UNSTABLE") << '\n';
  if (rep.counterexample) {
    os << "violating pair: " << detail::bits_to_string(rep.counterexample->first, enc.n)
       << ' ' << detail::bits_to_string(rep.counterexample->second, enc.n) << '\n';
    os << "input distance: " << rep.counterexample_in_distance
       << ", output distance: " << rep.counterexample_out_distance << '\n';
    os << "images: "
       << detail::bits_to_string(*enc.apply(rep.counterexample->first), enc.ell) << ' '
       << detail::bits_to_string(*enc.apply(rep.counterexample->second), enc.ell)
       << '\n';
  }
  os << "pairs checked: " << rep.pairs_checked
     << ", neighbors outside domain skipped: " << rep.neighbors_skipped << '\n';
  return os.str();
}

}  // namespace stablecode
