#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "splink/analysis.hpp"
#include "splink/core/errors.hpp"
#include "splink/core/realisation.hpp"
#include "splink/intervals.hpp"
#include "splink/realize.hpp"

namespace splink {

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n = 0) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<std::uint32_t>(i);
  }

  std::size_t add() {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    return parent_.size() - 1;
  }

  std::uint32_t find(std::uint32_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Fibres of the terminal-distance map of a path
// ---------------------------------------------------------------------------

/// Grid probe of the fibre {configurations of `path` : |p(s) - p(t)| = x}.
struct FiberProbe {
  PathSpec path;
  double x = 0;
  int resolution = 200;
};

struct FiberResult {
  std::size_t components = 0;
  std::size_t kept = 0;
  int resolution = 0;
  std::size_t dims = 0;
  double slab_half_width = 0;
  /// Component label per grid cell, -1 outside the slab. Cell (i2,...,ik)
  /// holds headings 2*pi*i/resolution of bars 2..k; bar 1 points along +x.
  std::vector<std::int32_t> labels;

  std::size_t cell(const std::vector<int>& heading_steps) const {
    std::size_t index = 0;
    for (std::size_t d = dims; d-- > 0;) index = index * resolution + heading_steps[d];
    return index;
  }
};

/// Counts connected components of a path's fibre by brute force.
///
/// The configuration space modulo rotations is the torus of bar headings
/// with the first bar fixed along +x. Grid cells whose terminal distance lies
/// within S * 2pi/resolution of x are kept, and kept cells adjacent in the
/// full 3^(k-1) - 1 neighbourhood (with wraparound) are merged.
inline FiberResult fiber_components(const FiberProbe& probe) {
  const auto& lengths = probe.path.lengths;
  const std::size_t k = lengths.size();
  if (k == 0 || k > 5) throw DomainError("fiber probe supports 1 to 5 edges");
  if (probe.resolution < 8) throw DomainError("resolution must be at least 8");
  const Interval range = path_range(probe.path);
  const double total = to_double(range.hi());
  const double tolerance = 1e-12 * std::max(1.0, total);
  if (probe.x < to_double(range.lo()) - tolerance || probe.x > total + tolerance)
    throw OutOfRange("x outside the path's distance range");

  FiberResult result;
  result.resolution = probe.resolution;
  result.dims = k - 1;
  if (k == 1) {
    result.components = 1;
    result.kept = 1;
    result.labels = {0};
    return result;
  }

  const int res = probe.resolution;
  std::size_t cells = 1;
  for (std::size_t d = 0; d < result.dims; ++d) {
    cells *= static_cast<std::size_t>(res);
    if (cells > 400'000'000ULL) throw DomainError("grid too large: lower the resolution");
  }
  const double step = 2 * std::numbers::pi / res;
  result.slab_half_width = total * step;
  const double lo = std::max(0.0, probe.x - result.slab_half_width);
  const double hi = probe.x + result.slab_half_width;
  const double lo_sq = lo * lo;
  const double hi_sq = hi * hi;

  std::vector<double> cosines(res), sines(res);
  for (int i = 0; i < res; ++i) {
    cosines[i] = std::cos(i * step);
    sines[i] = std::sin(i * step);
  }
  std::vector<double> l(k);
  for (std::size_t i = 0; i < k; ++i) l[i] = to_double(lengths[i]);

  // Mark cells in the slab; the innermost dimension is bar 2.
  std::vector<std::uint8_t> kept(cells, 0);
  std::vector<int> steps(result.dims, 0);
  for (std::size_t index = 0; index < cells; index += res) {
    // partial sums over bars 3..k for this row
    double bx = l[0], by = 0;
    for (std::size_t d = 1; d < result.dims; ++d) {
      bx += l[d + 1] * cosines[steps[d]];
      by += l[d + 1] * sines[steps[d]];
    }
    for (int i = 0; i < res; ++i) {
      const double ex = bx + l[1] * cosines[i];
      const double ey = by + l[1] * sines[i];
      const double r2 = ex * ex + ey * ey;
      if (r2 >= lo_sq && r2 < hi_sq) kept[index + i] = 1;
    }
    for (std::size_t d = 1; d < result.dims; ++d) {
      if (++steps[d] < res) break;
      steps[d] = 0;
    }
  }

  // Neighbour offsets in the positive half of {-1,0,1}^dims.
  std::vector<std::vector<int>> offsets;
  {
    std::vector<int> o(result.dims, -1);
    while (true) {
      int first_nonzero = 0;
      for (std::size_t d = result.dims; d-- > 0;) {
        if (o[d] != 0) {
          first_nonzero = o[d];
          break;
        }
      }
      if (first_nonzero > 0) offsets.push_back(o);
      std::size_t d = 0;
      while (d < result.dims && ++o[d] > 1) o[d++] = -1;
      if (d == result.dims) break;
    }
  }

  detail::DisjointSets sets(cells);
  std::vector<int> at(result.dims, 0);
  std::vector<int> nb(result.dims, 0);
  for (std::size_t index = 0; index < cells; ++index) {
    if (kept[index]) {
      ++result.kept;
      for (const auto& o : offsets) {
        for (std::size_t d = 0; d < result.dims; ++d) nb[d] = (at[d] + o[d] + res) % res;
        const std::size_t other = result.cell(nb);
        if (kept[other]) sets.unite(static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(other));
      }
    }
    for (std::size_t d = 0; d < result.dims; ++d) {
      if (++at[d] < res) break;
      at[d] = 0;
    }
  }
  if (result.kept == 0) throw DomainError("resolution too coarse: no grid cell near the fibre");

  result.labels.assign(cells, -1);
  std::map<std::uint32_t, std::int32_t> compact;
  for (std::size_t index = 0; index < cells; ++index) {
    if (!kept[index]) continue;
    const auto root = sets.find(static_cast<std::uint32_t>(index));
    auto [it, inserted] = compact.try_emplace(root, static_cast<std::int32_t>(compact.size()));
    result.labels[index] = it->second;
  }
  result.components = compact.size();
  return result;
}

// ---------------------------------------------------------------------------
// Sampling the moduli space of a linkage
// ---------------------------------------------------------------------------

struct SampleOptions {
  std::size_t samples = 20000;
  std::uint64_t seed = 1;
  std::optional<double> epsilon;  // default: total length / 50
  double endpoint_bias = 0.3;  // probability of choosing an end of a feasible interval
};

/// Empirical picture of the moduli space.
///
/// Every sample is tagged with its sign pattern: for each series node (in
/// pre-order) whether the join vertex lies left ('1') or right ('0') of the
/// directed source-sink line. For fixed signs the remaining choices range over
/// a connected set, so samples sharing a pattern lie in one component. Two
/// patterns are joined when a sample is degenerate at a node (collinear
/// triangle or coincident terminals, where both signs give the same
/// configuration) or when two samples lie within epsilon of each other in the
/// max-over-vertices distance.
struct ModuliSample {
  std::size_t components = 0;
  double min_distance = 0;
  double max_distance = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double epsilon = 0;
  std::size_t patterns = 0;
  SPTree tree;
  std::map<std::string, std::size_t> pattern_cluster;

  std::optional<std::size_t> cluster_of(const std::string& pattern) const {
    auto it = pattern_cluster.find(pattern);
    if (it == pattern_cluster.end()) return std::nullopt;
    return it->second;
  }
};

namespace detail {

/// Series nodes in pre-order.
inline std::vector<const SPTree*> series_nodes(const SPTree& tree) {
  std::vector<const SPTree*> out;
  std::function<void(const SPTree&)> walk = [&](const SPTree& t) {
    if (t.is_series()) out.push_back(&t);
    for (const auto& c : t.children) walk(c);
  };
  walk(tree);
  return out;
}

class RandomChooser {
 public:
  RandomChooser(std::uint64_t seed, double endpoint_bias, const std::map<const SPTree*, std::size_t>& node_index)
      : rng_(seed), bias_(endpoint_bias), node_index_(node_index),
        pattern_(node_index.size(), '0'), free_(node_index.size(), false) {}

  Rational distance(const Interval& feasible) {
    if (feasible.is_point()) return feasible.lo();
    const double r = unit_(rng_);
    if (r < bias_ / 2) return feasible.lo();
    if (r < bias_) return feasible.hi();
    // Dyadic grid keeps denominators bounded.
    constexpr long long grid = 4096;
    const Integer lo_k = ceil_times(feasible.lo(), grid);
    const Integer hi_k = floor_times(feasible.hi(), grid);
    if (lo_k > hi_k) return (feasible.lo() + feasible.hi()) / 2;
    const Integer span = hi_k - lo_k;
    const std::uint64_t span64 = span > Integer(1'000'000'000'000LL) ? 1'000'000'000'000ULL : span.convert_to<std::uint64_t>();
    std::uniform_int_distribution<std::uint64_t> pick(0, span64);
    return Rational(lo_k + Integer(pick(rng_)), Integer(grid));
  }

  int side(const SPTree&) { return unit_(rng_) < 0.5 ? 1 : -1; }

  double angle(const SPTree&) { return 2 * std::numbers::pi * unit_(rng_); }

  void observe(const SPTree& node, const Rational& x, const Rational& y, const Rational& z, int side) {
    const std::size_t i = node_index_.at(&node);
    pattern_[i] = side > 0 ? '1' : '0';
    free_[i] = x == 0 || y == abs(Rational(x - z)) || y == x + z;
  }

  Rational root_distance(const Interval& range) { return distance(range); }

  const std::string& pattern() const { return pattern_; }
  const std::vector<bool>& free_nodes() const { return free_; }

 private:
  static Integer floor_times(const Rational& r, long long scale) {
    const Rational scaled = r * scale;
    Integer q = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
    if (q * boost::multiprecision::denominator(scaled) > boost::multiprecision::numerator(scaled)) --q;
    return q;
  }
  static Integer ceil_times(const Rational& r, long long scale) {
    const Rational scaled = r * scale;
    Integer q = floor_times(r, scale);
    if (Rational(q) < scaled) ++q;
    return q;
  }

  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  double bias_;
  const std::map<const SPTree*, std::size_t>& node_index_;
  std::string pattern_;
  std::vector<bool> free_;
};

/// Rotates a configuration whose terminals coincide so that the first vertex
/// away from the origin lies on the positive x-axis.
inline void normalise_coincident(std::vector<Point>& points) {
  for (const auto& p : points) {
    const double r = std::hypot(p.x, p.y);
    if (r > 1e-12) {
      const double c = p.x / r, s = -p.y / r;
      for (auto& q : points) q = {c * q.x - s * q.y, s * q.x + c * q.y};
      return;
    }
  }
}

}  // namespace detail

/// Draws realisations of a two-terminal series-parallel linkage with random
/// feasible distances and random apex sides, then clusters them. Reflecting
/// one parallel branch across the terminal line flips every apex side inside
/// it, so random sides already cover per-branch reflections.
inline ModuliSample sample_moduli(const Linkage& linkage, const SampleOptions& options = {}) {
  require_valid(linkage);
  for (const auto& e : linkage.edges) {
    if (e.length <= 0) throw DomainError("sampling requires positive lengths");
  }
  ModuliSample result;
  result.tree = build_sp_tree(linkage, linkage.terminals);
  const RangeTable ranges(result.tree);
  const Interval range = ranges.at(result.tree);
  if (range.is_empty()) throw Unrealisable("not realisable");

  result.samples = options.samples;
  result.seed = options.seed;
  result.epsilon = options.epsilon.value_or(to_double(total_length(linkage)) / 50);

  const auto nodes = detail::series_nodes(result.tree);
  std::map<const SPTree*, std::size_t> node_index;
  for (std::size_t i = 0; i < nodes.size(); ++i) node_index[nodes[i]] = i;

  struct Sample {
    double distance;
    std::vector<Point> points;
    std::uint32_t pattern;
  };
  std::vector<Sample> samples;
  samples.reserve(options.samples);
  std::map<std::string, std::uint32_t> pattern_id;
  detail::DisjointSets sets;
  auto id_of = [&](const std::string& p) {
    auto [it, inserted] = pattern_id.try_emplace(p, 0);
    if (inserted) it->second = static_cast<std::uint32_t>(sets.add());
    return it->second;
  };

  result.min_distance = std::numeric_limits<double>::infinity();
  result.max_distance = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < options.samples; ++i) {
    detail::RandomChooser chooser(detail::splitmix64(options.seed * 0x100000001b3ULL + i), options.endpoint_bias,
                                  node_index);
    const Rational x = chooser.root_distance(range);
    std::map<VertexId, Point> placement;
    detail::place(result.tree, x, Point{0, 0}, Point{to_double(x), 0}, ranges, chooser, placement);

    Sample s;
    s.distance = to_double(x);
    for (const auto& v : linkage.vertices) s.points.push_back(placement.at(v));
    if (x == 0) detail::normalise_coincident(s.points);
    s.pattern = id_of(chooser.pattern());
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      if (!chooser.free_nodes()[n]) continue;
      std::string flipped = chooser.pattern();
      flipped[n] = flipped[n] == '1' ? '0' : '1';
      sets.unite(s.pattern, id_of(flipped));
    }
    result.min_distance = std::min(result.min_distance, s.distance);
    result.max_distance = std::max(result.max_distance, s.distance);
    samples.push_back(std::move(s));
  }

  // epsilon links; the sink sits at (distance, 0), so distances bound the metric.
  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return samples[a].distance < samples[b].distance; });
  const double eps = result.epsilon;
  for (std::size_t a = 0; a < order.size(); ++a) {
    const Sample& p = samples[order[a]];
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const Sample& q = samples[order[b]];
      if (q.distance - p.distance >= eps) break;
      if (sets.find(p.pattern) == sets.find(q.pattern)) continue;
      double worst = 0;
      for (std::size_t v = 0; v < p.points.size() && worst < eps; ++v)
        worst = std::max(worst, std::hypot(p.points[v].x - q.points[v].x, p.points[v].y - q.points[v].y));
      if (worst < eps) sets.unite(p.pattern, q.pattern);
    }
  }

  std::map<std::uint32_t, std::size_t> compact;
  for (const auto& [pattern, id] : pattern_id) {
    auto [it, inserted] = compact.try_emplace(sets.find(id), compact.size());
    result.pattern_cluster[pattern] = it->second;
  }
  result.components = compact.size();
  result.patterns = pattern_id.size();
  return result;
}

/// Sign pattern of a realisation against the tree used for sampling; nodes
/// whose triangle is degenerate are reported as '?'.
inline std::string sign_pattern(const SPTree& tree, const Realisation& realisation, double tolerance = 1e-9) {
  std::string out;
  for (const SPTree* node : detail::series_nodes(tree)) {
    const Point s = realisation.placement.at(node->source);
    const Point t = realisation.placement.at(node->sink);
    const Point j = realisation.placement.at(node->join());
    const double cross = (t.x - s.x) * (j.y - s.y) - (t.y - s.y) * (j.x - s.x);
    const double scale = std::max({1.0, std::hypot(t.x - s.x, t.y - s.y) * std::hypot(j.x - s.x, j.y - s.y)});
    out += std::abs(cross) <= tolerance * scale ? '?' : (cross > 0 ? '1' : '0');
  }
  return out;
}

/// Cluster of a realisation, resolving degenerate nodes either way.
inline std::optional<std::size_t> cluster_of(const ModuliSample& sample, const Realisation& realisation) {
  std::string pattern = sign_pattern(sample.tree, realisation);
  std::replace(pattern.begin(), pattern.end(), '?', '0');
  return sample.cluster_of(pattern);
}

}  // namespace splink
