#pragma once

// (p, R) region sweeps against the degree bound, the clique bound, and the
// trivial entropy converse, with CSV/SVG emitters and the crossover finder
// for the probabilities beyond which a bound stops adding to R >= h2(p).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stablecode/bounds.hpp"

namespace stablecode {

/// Cell classification. The two mixed classes are named by the single bound
/// that rejects the cell: degree_only means the cell fails the degree bound
/// while passing the clique bound, and vice versa.
enum class RegionClass : std::uint8_t { Both, DegreeOnly, CliqueOnly, Neither };

inline const char* region_class_name(RegionClass c) {
  switch (c) {
    case RegionClass::Both: return "both";
    case RegionClass::DegreeOnly: return "degree_only";
    case RegionClass::CliqueOnly: return "clique_only";
    case RegionClass::Neither: return "neither";
  }
  return "?";
}

/// Figure colors: green for cells satisfying both bounds, red for cells
/// satisfying the degree bound only, blue for cells satisfying the clique
/// bound only, white background otherwise.
inline const char* region_class_color(RegionClass c) {
  switch (c) {
    case RegionClass::Both: return "#2ca02c";
    case RegionClass::CliqueOnly: return "#d62728";  // degree holds, clique fails
    case RegionClass::DegreeOnly: return "#1f77b4";  // clique holds, degree fails
    case RegionClass::Neither: return "#ffffff";
  }
  return "#000000";
}

struct SweepConfig {
  double d1 = 0.2;
  double d2 = 0.21;
  double p_min = 0.1, p_max = 0.5;
  double r_min = 0.21, r_max = 1.25;
  long cells_p = 400, cells_r = 400;

  void validate() const {
    if (!(d1 >= 0.0 && d1 <= 1.0))
      throw std::invalid_argument("SweepConfig: d1 outside [0, 1]");
    if (!(d2 >= 0.0)) throw std::invalid_argument("SweepConfig: d2 < 0");
    if (!(p_min >= d1 / 2.0 - 1e-12))
      throw std::invalid_argument("SweepConfig: p_min below d1/2");
    if (!(p_max <= 0.5 + 1e-12))
      throw std::invalid_argument("SweepConfig: p_max above 1/2");
    if (!(p_min <= p_max)) throw std::invalid_argument("SweepConfig: empty p range");
    if (!(r_min >= d2 - 1e-12))
      throw std::invalid_argument("SweepConfig: r_min below d2");
    if (!(r_min <= r_max)) throw std::invalid_argument("SweepConfig: empty R range");
    if (cells_p < 0 || cells_r < 0)
      throw std::invalid_argument("SweepConfig: negative cell count");
  }
};

struct RegionGrid {
  SweepConfig config;
  std::vector<RegionClass> cells;   // index i + j * cells_p
  std::vector<std::uint8_t> trivial;  // R >= h2(p) at the cell center

  double p_center(long i) const {
    return config.p_min +
           (config.p_max - config.p_min) * (static_cast<double>(i) + 0.5) /
               static_cast<double>(config.cells_p);
  }
  double r_center(long j) const {
    return config.r_min +
           (config.r_max - config.r_min) * (static_cast<double>(j) + 0.5) /
               static_cast<double>(config.cells_r);
  }
  RegionClass at(long i, long j) const {
    return cells[static_cast<std::size_t>(i + j * config.cells_p)];
  }
  bool trivial_at(long i, long j) const {
    return trivial[static_cast<std::size_t>(i + j * config.cells_p)] != 0;
  }

  /// Class of the cell whose center is nearest to (p, R).
  RegionClass class_near(double p, double R) const {
    auto clamp_idx = [](double x, long n) {
      long i = static_cast<long>(std::floor(x));
      return std::min(std::max(i, long{0}), n - 1);
    };
    const long i = clamp_idx((p - config.p_min) / (config.p_max - config.p_min) *
                                 static_cast<double>(config.cells_p),
                             config.cells_p);
    const long j = clamp_idx((R - config.r_min) / (config.r_max - config.r_min) *
                                 static_cast<double>(config.cells_r),
                             config.cells_r);
    return at(i, j);
  }
};

/// Evaluates both bound predicates and the trivial converse at every cell
/// center. Deterministic for a fixed config.
inline RegionGrid region_sweep(const SweepConfig& cfg) {
  cfg.validate();
  RegionGrid grid;
  grid.config = cfg;
  grid.cells.resize(static_cast<std::size_t>(cfg.cells_p * cfg.cells_r));
  grid.trivial.resize(grid.cells.size());
  for (long j = 0; j < cfg.cells_r; ++j) {
    const double R = grid.r_center(j);
    for (long i = 0; i < cfg.cells_p; ++i) {
      const double p = grid.p_center(i);
      const LinearParams lp{cfg.d1, cfg.d2, p, R};
      const bool deg = degree_bound_feasible(lp);
      const bool clq = clique_bound_feasible(lp);
      RegionClass c;
      if (deg && clq)
        c = RegionClass::Both;
      else if (!deg && clq)
        c = RegionClass::DegreeOnly;
      else if (deg && !clq)
        c = RegionClass::CliqueOnly;
      else
        c = RegionClass::Neither;
      const std::size_t idx = static_cast<std::size_t>(i + j * cfg.cells_p);
      grid.cells[idx] = c;
      grid.trivial[idx] = (R >= binary_entropy(p)) ? 1 : 0;
    }
  }
  return grid;
}

inline void write_region_csv(const RegionGrid& grid, std::ostream& os) {
  os << "p,R,theorem1,theorem2,trivial,class\n";
  char buf[64];
  for (long i = 0; i < grid.config.cells_p; ++i) {
    for (long j = 0; j < grid.config.cells_r; ++j) {
      const RegionClass c = grid.at(i, j);
      const bool th1 = (c == RegionClass::Both || c == RegionClass::CliqueOnly);
      const bool th2 = (c == RegionClass::Both || c == RegionClass::DegreeOnly);
      std::snprintf(buf, sizeof buf, "%.12g,%.12g,", grid.p_center(i), grid.r_center(j));
      os << buf << (th1 ? 1 : 0) << ',' << (th2 ? 1 : 0) << ','
         << (grid.trivial_at(i, j) ? 1 : 0) << ',' << region_class_name(c) << '\n';
    }
  }
}

inline void write_region_csv(const RegionGrid& grid, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_region_csv: cannot open " + path.string());
  write_region_csv(grid, os);
  if (!os) throw std::runtime_error("write_region_csv: write failed on " + path.string());
}

namespace detail {

struct SvgFrame {
  double x0, y0, w, h;       // plot area in SVG coordinates
  double p_lo, p_hi, r_lo, r_hi;
  double x(double p) const { return x0 + (p - p_lo) / (p_hi - p_lo) * w; }
  double y(double r) const { return y0 + h - (r - r_lo) / (r_hi - r_lo) * h; }
};

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace detail

/// Raster-of-rects region figure: one rect per run of equal-class cells,
/// the black curve R = h2(p), axes and a legend. Background (white) stands
/// for cells satisfying neither bound.
inline void write_region_svg(const RegionGrid& grid, std::ostream& os) {
  const SweepConfig& cfg = grid.config;
  const double W = 880, H = 640;
  detail::SvgFrame f{70, 25, W - 70 - 220, H - 25 - 60,
                     cfg.p_min, cfg.p_max, cfg.r_min, cfg.r_max};
  const bool empty = cfg.cells_p == 0 || cfg.cells_r == 0;
  if (cfg.p_max == cfg.p_min) f.p_hi = f.p_lo + 1;  // degenerate axes still draw
  if (cfg.r_max == cfg.r_min) f.r_hi = f.r_lo + 1;

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
     << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"#ffffff\"/>\n";

  if (!empty) {
    const double cw = f.w / static_cast<double>(cfg.cells_p);
    const double ch = f.h / static_cast<double>(cfg.cells_r);
    for (long j = 0; j < cfg.cells_r; ++j) {
      const double ytop = f.y0 + f.h - ch * static_cast<double>(j + 1);
      for (long i = 0; i < cfg.cells_p;) {
        const RegionClass c = grid.at(i, j);
        long run = i + 1;
        while (run < cfg.cells_p && grid.at(run, j) == c) ++run;
        if (c != RegionClass::Neither) {
          os << "<rect x=\"" << detail::fmt(f.x0 + cw * static_cast<double>(i))
             << "\" y=\"" << detail::fmt(ytop) << "\" width=\""
             << detail::fmt(cw * static_cast<double>(run - i)) << "\" height=\""
             << detail::fmt(ch) << "\" fill=\"" << region_class_color(c) << "\"/>\n";
        }
        i = run;
      }
    }
    // Trivial converse curve R = h2(p), clipped to the R range.
    std::string points;
    bool in_segment = false;
    auto flush = [&]() {
      if (in_segment && !points.empty()) {
        os << "<polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"1.8\" points=\""
           << points << "\"/>\n";
      }
      points.clear();
      in_segment = false;
    };
    const long samples = std::max<long>(cfg.cells_p, 256);
    for (long i = 0; i <= samples; ++i) {
      const double p = cfg.p_min + (cfg.p_max - cfg.p_min) * static_cast<double>(i) /
                                       static_cast<double>(samples);
      const double r = binary_entropy(std::min(std::max(p, 0.0), 1.0));
      if (r < cfg.r_min || r > cfg.r_max) {
        flush();
        continue;
      }
      points += detail::fmt(f.x(p)) + "," + detail::fmt(f.y(r)) + " ";
      in_segment = true;
    }
    flush();
  }

  // Axes.
  os << "<rect x=\"" << f.x0 << "\" y=\"" << f.y0 << "\" width=\"" << f.w
     << "\" height=\"" << f.h << "\" fill=\"none\" stroke=\"#000000\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double fr = static_cast<double>(t) / 5.0;
    const double px = f.x0 + fr * f.w;
    const double py = f.y0 + f.h - fr * f.h;
    os << "<line x1=\"" << px << "\" y1=\"" << f.y0 + f.h << "\" x2=\"" << px
       << "\" y2=\"" << f.y0 + f.h + 5 << "\" stroke=\"#000000\"/>\n";
    os << "<text x=\"" << px << "\" y=\"" << f.y0 + f.h + 20
       << "\" font-size=\"12\" text-anchor=\"middle\">"
       << detail::fmt(f.p_lo + fr * (f.p_hi - f.p_lo)) << "</text>\n";
    os << "<line x1=\"" << f.x0 - 5 << "\" y1=\"" << py << "\" x2=\"" << f.x0
       << "\" y2=\"" << py << "\" stroke=\"#000000\"/>\n";
    os << "<text x=\"" << f.x0 - 8 << "\" y=\"" << py + 4
       << "\" font-size=\"12\" text-anchor=\"end\">"
       << detail::fmt(f.r_lo + fr * (f.r_hi - f.r_lo)) << "</text>\n";
  }
  os << "<text x=\"" << f.x0 + f.w / 2 << "\" y=\"" << H - 18
     << "\" font-size=\"14\" text-anchor=\"middle\">p</text>\n";
  os << "<text x=\"18\" y=\"" << f.y0 + f.h / 2
     << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << f.y0 + f.h / 2 << ")\">R [bits/symbol]</text>\n";

  // Legend.
  const double lx = f.x0 + f.w + 18, ly = f.y0 + 10;
  struct Entry {
    RegionClass c;
    const char* text;
  };
  const Entry entries[] = {
      {RegionClass::Both, "satisfies both bounds"},
      {RegionClass::CliqueOnly, "satisfies degree bound only"},
      {RegionClass::DegreeOnly, "satisfies clique bound only"},
      {RegionClass::Neither, "satisfies neither"},
  };
  double yy = ly;
  for (const auto& e : entries) {
    os << "<rect x=\"" << lx << "\" y=\"" << yy << "\" width=\"14\" height=\"14\" fill=\""
       << region_class_color(e.c) << "\" stroke=\"#888888\"/>\n";
    os << "<text x=\"" << lx + 20 << "\" y=\"" << yy + 11
       << "\" font-size=\"12\">" << e.text << "</text>\n";
    yy += 22;
  }
  os << "<line x1=\"" << lx << "\" y1=\"" << yy + 7 << "\" x2=\"" << lx + 14
     << "\" y2=\"" << yy + 7 << "\" stroke=\"#000000\" stroke-width=\"1.8\"/>\n";
  os << "<text x=\"" << lx + 20 << "\" y=\"" << yy + 11
     << "\" font-size=\"12\">R = h2(p)</text>\n";
  os << "</svg>\n";
}

inline void write_region_svg(const RegionGrid& grid, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_region_svg: cannot open " + path.string());
  write_region_svg(grid, os);
  if (!os) throw std::runtime_error("write_region_svg: write failed on " + path.string());
}

/// All probabilities in [d1/2, 1/2] at which the selected bound's minimum
/// rate crosses the entropy curve h2(p), each located by bisection. An empty
/// result means the bound never meets the curve on that interval.
inline std::vector<double> crossover_points(double d1, double d2, ConverseBound which,
                                            double tol = 1e-6) {
  if (which != ConverseBound::Degree && which != ConverseBound::Clique)
    throw std::invalid_argument("crossover_points: select degree or clique");
  const double lo = d1 / 2.0, hi = 0.5;
  auto diff = [&](double p) {
    const double pe = std::max(p, 1e-9);
    auto r = min_rate(d1, d2, pe, which);
    const double rv = r ? *r : std::numeric_limits<double>::infinity();
    return rv - binary_entropy(pe);
  };
  std::vector<double> found;
  const long steps = 512;
  double prev_p = lo, prev_v = diff(lo);
  if (std::abs(prev_v) < 1e-12) found.push_back(lo);
  for (long s = 1; s <= steps; ++s) {
    const double p = lo + (hi - lo) * static_cast<double>(s) / static_cast<double>(steps);
    const double v = diff(p);
    if (std::abs(v) < 1e-12) {
      found.push_back(p);
    } else if ((prev_v < 0) != (v < 0) && std::abs(prev_v) >= 1e-12) {
      double a = prev_p, b = p, fa = prev_v;
      while (b - a > tol) {
        const double m = 0.5 * (a + b);
        const double fm = diff(m);
        if ((fm < 0) == (fa < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      found.push_back(0.5 * (a + b));
    }
    prev_p = p;
    prev_v = v;
  }
  return found;
}

/// First crossover, if any.
inline std::optional<double> crossover(double d1, double d2, ConverseBound which,
                                       double tol = 1e-6) {
  auto pts = crossover_points(d1, d2, which, tol);
  if (pts.empty()) return std::nullopt;
  return pts.front();
}

}  // namespace stablecode
