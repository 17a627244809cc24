#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kopt/error.hpp"
#include "kopt/geometry.hpp"
#include "kopt/instance.hpp"
#include "kopt/tour.hpp"

namespace kopt {

// ---------------------------------------------------------------------------
// Layered planar family

inline BigInt big_pow(long base, unsigned long exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
  return r;
}

namespace detail {

inline void check_lb_params(int p, int q) {
  if (p < 1) throw InvalidArgument("layered family needs an integer p >= 1");
  if (q < 3 || q % 2 == 0) throw InvalidArgument("layered family needs an odd q >= 3");
}

inline std::int64_t to_i64(const BigInt& v) {
  if (!v.fits_slong_p()) throw Unsupported("coordinate does not fit in 64 bits");
  return v.get_si();
}

}  // namespace detail

// Width of the family: q^{(p+1)q}.
inline BigInt lb_width(int p, int q) {
  detail::check_lb_params(p, q);
  return big_pow(q, static_cast<unsigned long>((p + 1) * q));
}

// Vertical gap between layer i and layer i + 1: q^{(p+1)(q-i)-1}.
inline BigInt layer_gap(int i, int q, int p) {
  return big_pow(q, static_cast<unsigned long>((p + 1) * (q - i) - 1));
}

// Height of layer i: sum of the gaps below it.
inline BigInt layer_offset(int i, int q, int p) {
  detail::check_lb_params(p, q);
  if (i < 0 || i > q) throw InvalidArgument("layer index out of range");
  BigInt s = 0;
  for (int t = 0; t < i; ++t) s += layer_gap(t, q, p);
  return s;
}

struct LbGroupSizes {
  BigInt layered;   // per side; left and right copies have this many each
  BigInt bridge;    // top-layer points strictly between the two copies
  BigInt vertical;  // interior points of the vertical connectors
  BigInt total() const { return 2 * layered + bridge + vertical; }
};

inline LbGroupSizes lb_group_sizes(int p, int q) {
  detail::check_lb_params(p, q);
  LbGroupSizes g;
  g.layered = 0;
  for (int i = 0; i <= q; ++i) g.layered += big_pow(q, static_cast<unsigned long>((p + 1) * i)) + 1;
  g.bridge = lb_width(p, q) - 1;
  g.vertical = 0;
  for (int i = 0; i < q; ++i) g.vertical += 2 * (layer_gap(i, q, p) - 1);
  return g;
}

enum class LbGroup : std::uint8_t { kLeft = 1, kRight = 2, kBridge = 3, kVertical = 4 };

// Visits every point as visit(group, x, y) in a fixed order: left copy by
// layer, right copy by layer, bridge, vertical connectors by layer.
// Streams, so it also serves instances too large to hold in memory.
template <class Visit>
void for_each_lb_point(int p, int q, Visit&& visit) {
  detail::check_lb_params(p, q);
  const std::int64_t width = detail::to_i64(lb_width(p, q));
  if (width > std::numeric_limits<std::int64_t>::max() / 4) {
    throw Unsupported("layered family too wide for 64-bit coordinates");
  }
  std::vector<std::int64_t> level(q + 1);
  for (int i = 0; i <= q; ++i) level[i] = detail::to_i64(layer_offset(i, q, p));

  for (LbGroup side : {LbGroup::kLeft, LbGroup::kRight}) {
    const std::int64_t shift = side == LbGroup::kLeft ? 0 : 2 * width;
    for (int i = 0; i <= q; ++i) {
      const std::int64_t step =
          detail::to_i64(big_pow(q, static_cast<unsigned long>((p + 1) * (q - i))));
      for (std::int64_t x = 0; x <= width; x += step) visit(side, x + shift, level[i]);
    }
  }
  for (std::int64_t j = 1; j < width; ++j) visit(LbGroup::kBridge, width + j, level[q]);
  for (int i = 0; i < q; ++i) {
    const std::int64_t left = i % 2 == 0 ? 0 : width;
    const std::int64_t right = i % 2 == 0 ? 3 * width : 2 * width;
    const std::int64_t gap = level[i + 1] - level[i];
    for (std::int64_t j = 1; j < gap; ++j) visit(LbGroup::kVertical, left, level[i] + j);
    for (std::int64_t j = 1; j < gap; ++j) visit(LbGroup::kVertical, right, level[i] + j);
  }
}

struct LowerBoundInstance {
  int k = 2;
  int p = 1;
  int q = 3;
  BigInt width;                  // q^{(p+1)q}
  std::vector<BigInt> offsets;   // layer heights, q + 1 entries
  std::vector<LbGroup> group;    // per vertex
  std::vector<std::array<std::int64_t, 2>> coords;
  Instance instance;

  std::size_t size() const { return coords.size(); }
  std::size_t group_size(LbGroup g) const {
    return static_cast<std::size_t>(std::count(group.begin(), group.end(), g));
  }

  // Vertex index at (x, y), if any.
  std::optional<std::size_t> find(std::int64_t x, std::int64_t y) const {
    auto it = index_.find(key(x, y));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t at(std::int64_t x, std::int64_t y) const {
    auto v = find(x, y);
    if (!v) {
      throw InternalError("no vertex at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
    }
    return *v;
  }

 private:
  static std::uint64_t key(std::int64_t x, std::int64_t y) {
    return (static_cast<std::uint64_t>(x) << 32) ^ static_cast<std::uint64_t>(y);
  }
  std::unordered_map<std::uint64_t, std::size_t> index_;

  friend LowerBoundInstance generate_lb_instance(int, int, int);
};

// Largest family held in memory; bigger ones go through for_each_lb_point.
inline constexpr std::size_t kMaxLbInMemory = 2'000'000;

inline LowerBoundInstance generate_lb_instance(int k, int p, int q) {
  if (k < 2) throw InvalidArgument("k must be at least 2");
  detail::check_lb_params(p, q);
  const BigInt n = lb_group_sizes(p, q).total();
  if (n > static_cast<unsigned long>(kMaxLbInMemory)) {
    throw Unsupported("family has " + n.get_str() + " points; stream it with for_each_lb_point");
  }
  LowerBoundInstance lb;
  lb.k = k;
  lb.p = p;
  lb.q = q;
  lb.width = lb_width(p, q);
  for (int i = 0; i <= q; ++i) lb.offsets.push_back(layer_offset(i, q, p));
  if (lb.width * 3 >= BigInt(1L << 31)) throw Unsupported("coordinates exceed the index key range");

  const std::size_t count = n.get_ui();
  lb.coords.reserve(count);
  lb.group.reserve(count);
  lb.index_.reserve(count * 2);
  for_each_lb_point(p, q, [&](LbGroup g, std::int64_t x, std::int64_t y) {
    auto [it, fresh] = lb.index_.try_emplace(LowerBoundInstance::key(x, y), lb.coords.size());
    if (!fresh) {
      throw InternalError("duplicate point (" + std::to_string(x) + ", " + std::to_string(y) + ")");
    }
    lb.coords.push_back({x, y});
    lb.group.push_back(g);
  });

  std::vector<Point> pts;
  pts.reserve(count);
  for (const auto& c : lb.coords) pts.emplace_back(static_cast<long>(c[0]), static_cast<long>(c[1]));
  lb.instance = Instance::planar(std::move(pts), PNorm(p),
                                 "layered-k" + std::to_string(k) + "-p" + std::to_string(p) + "-q" +
                                     std::to_string(q));
  return lb;
}

struct LbTour {
  Tour tour;
  std::array<BigInt, 5> group_length;  // layer edges left, right, bridge, vertical, closing
  BigInt length() const {
    BigInt s = 0;
    for (const BigInt& g : group_length) s += g;
    return s;
  }
};

// The zigzag tour: every layer of both copies, the bridge, the vertical
// connectors (left side at x = 0 / width, right side at 3 width / 2 width by
// parity) and the closing bottom edge between the copies.
inline LbTour build_lb_tour(const LowerBoundInstance& lb) {
  const int p = lb.p, q = lb.q;
  const std::int64_t width = detail::to_i64(lb.width);
  std::vector<std::int64_t> level(q + 1);
  for (int i = 0; i <= q; ++i) level[i] = detail::to_i64(lb.offsets[i]);

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(lb.size());
  LbTour out;
  for (BigInt& g : out.group_length) g = 0;
  // All edges are axis-parallel, so their length is exact for every p.
  auto add = [&](int group, std::int64_t x0, std::int64_t y0, std::int64_t x1, std::int64_t y1) {
    edges.emplace_back(lb.at(x0, y0), lb.at(x1, y1));
    out.group_length[group] += BigInt(static_cast<long>(std::abs(x1 - x0) + std::abs(y1 - y0)));
  };

  for (int side = 0; side < 2; ++side) {
    const std::int64_t shift = side == 0 ? 0 : 2 * width;
    for (int i = 0; i <= q; ++i) {
      const std::int64_t step =
          detail::to_i64(big_pow(q, static_cast<unsigned long>((p + 1) * (q - i))));
      for (std::int64_t x = 0; x + step <= width; x += step) {
        add(side, x + shift, level[i], x + step + shift, level[i]);
      }
    }
  }
  for (std::int64_t j = 0; j < width; ++j) add(2, width + j, level[q], width + j + 1, level[q]);
  for (int i = 0; i < q; ++i) {
    const std::int64_t left = i % 2 == 0 ? 0 : width;
    const std::int64_t right = i % 2 == 0 ? 3 * width : 2 * width;
    for (std::int64_t y = level[i]; y < level[i + 1]; ++y) {
      add(3, left, y, left, y + 1);
      add(3, right, y, right, y + 1);
    }
  }
  add(4, width, 0, 2 * width, 0);

  try {
    out.tour = tour_from_edges(lb.size(), edges);
  } catch (const InvalidArgument& e) {
    throw InternalError(std::string("layered tour is not a Hamiltonian cycle: ") + e.what());
  }
  return out;
}

// Shortest tour length lower bound for the zigzag tour: q * width.
inline BigInt lb_tour_floor(const LowerBoundInstance& lb) { return lb.q * lb.width; }

struct SpanningTreeBound {
  BigInt tree_length;   // explicit tree, measured edge by edge
  BigInt formula;       // 3 width + 2 sum gap_i (layer_i size)
  BigInt tree_cap;      // 7 width
  BigInt tour_cap;      // 14 width
  BigInt doubled() const { return 2 * tree_length; }
  double shortcut_length = 0.0;  // preorder walk of the tree, measured in the p-norm
  bool spanning = false;
};

namespace detail {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace detail

// The tree from the upper-bound argument: every non-top layered vertex climbs
// to the next layer (through any connector points on the way), plus the whole
// top layer.
inline SpanningTreeBound doubled_spanning_tree_tour(const LowerBoundInstance& lb) {
  const int p = lb.p, q = lb.q;
  const std::int64_t width = detail::to_i64(lb.width);
  std::vector<std::int64_t> level(q + 1);
  for (int i = 0; i <= q; ++i) level[i] = detail::to_i64(lb.offsets[i]);

  const std::size_t n = lb.size();
  std::vector<std::vector<std::size_t>> adj(n);
  detail::DisjointSets dsu(n);
  SpanningTreeBound r;
  r.tree_length = 0;
  std::size_t edge_count = 0;
  bool acyclic = true;
  auto link = [&](std::size_t a, std::size_t b, std::int64_t len) {
    acyclic = dsu.unite(a, b) && acyclic;
    adj[a].push_back(b);
    adj[b].push_back(a);
    r.tree_length += BigInt(static_cast<long>(len));
    ++edge_count;
  };

  for (int side = 0; side < 2; ++side) {
    const std::int64_t shift = side == 0 ? 0 : 2 * width;
    for (int i = 0; i < q; ++i) {
      const std::int64_t step =
          detail::to_i64(big_pow(q, static_cast<unsigned long>((p + 1) * (q - i))));
      for (std::int64_t x = 0; x <= width; x += step) {
        std::size_t prev = lb.at(x + shift, level[i]);
        std::int64_t prev_y = level[i];
        for (std::int64_t y = level[i] + 1; y <= level[i + 1]; ++y) {
          auto v = lb.find(x + shift, y);
          if (!v) continue;
          link(prev, *v, y - prev_y);
          prev = *v;
          prev_y = y;
        }
      }
    }
  }
  for (std::int64_t x = 0; x < 3 * width; ++x) {
    link(lb.at(x, level[q]), lb.at(x + 1, level[q]), 1);
  }
  r.spanning = acyclic && edge_count + 1 == n;

  r.formula = 3 * lb.width;
  for (int i = 0; i < q; ++i) {
    r.formula += 2 * layer_gap(i, q, p) * (big_pow(q, static_cast<unsigned long>((p + 1) * i)) + 1);
  }
  r.tree_cap = 7 * lb.width;
  r.tour_cap = 14 * lb.width;

  // Preorder shortcut of the doubled tree.
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> order, stack{0};
  order.reserve(n);
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = true;
    order.push_back(v);
    for (auto it = adj[v].rbegin(); it != adj[v].rend(); ++it) {
      if (!seen[*it]) stack.push_back(*it);
    }
  }
  if (order.size() == n) r.shortcut_length = tour_length(lb.instance, Tour(std::move(order)));
  return r;
}

// ---------------------------------------------------------------------------
// Estimate used by the local-optimality argument

struct EstimateResult {
  bool holds = false;
  bool exact = false;
  double margin = 0.0;  // lhs - rhs, normalised by q^{p(p+1)(q-s)} when inexact
  BigInt lhs;           // exact sides when p is an integer
  BigInt rhs;
};

// Is (a q^{(p+1)(q-s)})^p + q^{p((p+1)(q-s)-1)} > (a q^{(p+1)(q-s)} + b q^{(p+1)(q-s-1)})^p ?
inline EstimateResult estimate_inequality(double a, double b, int k, double p, int q, int s) {
  if (!(a >= 0 && a <= k && b >= 0 && b <= k)) throw InvalidArgument("need 0 <= a, b <= k");
  if (s < 0 || s >= q) throw InvalidArgument("need 0 <= s < q");
  if (!(p >= 1.0)) throw InvalidArgument("need p >= 1");
  EstimateResult r;
  const bool integral = p == std::floor(p) && a == std::floor(a) && b == std::floor(b);
  if (integral) {
    const auto ip = static_cast<unsigned long>(p);
    const auto e = static_cast<unsigned long>((ip + 1) * (q - s));
    const BigInt big = BigInt(static_cast<long>(a)) * big_pow(q, e);
    BigInt lhs_pow, rhs_pow, top = big + BigInt(static_cast<long>(b)) * big_pow(q, e - ip - 1);
    mpz_pow_ui(lhs_pow.get_mpz_t(), big.get_mpz_t(), ip);
    mpz_pow_ui(rhs_pow.get_mpz_t(), top.get_mpz_t(), ip);
    r.exact = true;
    r.lhs = lhs_pow + big_pow(q, ip * (e - 1));
    r.rhs = rhs_pow;
    r.holds = r.lhs > r.rhs;
    r.margin = BigInt(r.lhs - r.rhs).get_d();
    return r;
  }
  // Dividing both sides by q^{p(p+1)(q-s)} removes s: a^p + q^{-p} against (a + b q^{-(p+1)})^p.
  const double qd = q;
  const double lhs = std::pow(a, p) + std::pow(qd, -p);
  const double rhs = std::pow(a + b * std::pow(qd, -(p + 1.0)), p);
  r.margin = lhs - rhs;
  r.holds = lhs > rhs;
  return r;
}

// Smallest odd q in [3, q_max] for which the estimate holds for every integer
// a, b in [0, k] and every layer s < q.
inline std::optional<int> smallest_estimate_q(int k, double p, int q_max) {
  for (int q = 3; q <= q_max; q += 2) {
    bool all = true;
    for (int s = 0; all && s < q; ++s) {
      for (int a = 0; all && a <= k; ++a) {
        for (int b = 0; all && b <= k; ++b) all = estimate_inequality(a, b, k, p, q, s).holds;
      }
    }
    if (all) return q;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Exhaustive 2-move scan

inline constexpr std::size_t kMaxScan = 10'000;

struct ScanReport {
  std::size_t n = 0;
  std::size_t pairs = 0;
  std::size_t improving = 0;
  bool two_optimal = true;
  std::optional<TwoMove> first;  // first improving move in scan order
  std::optional<TwoMove> best;   // largest gain
  bool exact = false;
};

template <DistanceOracle D>
ScanReport scan_2opt_optimality(const D& d, const Tour& t) {
  if (t.size() != d.size()) throw InvalidArgument("tour size does not match instance");
  if (t.size() > kMaxScan) {
    throw InvalidArgument("exhaustive scan limited to n <= " + std::to_string(kMaxScan));
  }
  ScanReport r;
  r.n = t.size();
  r.exact = d.exact_lengths();
  detail::for_each_two_move(d, t, [&](std::size_t i, std::size_t j, double gain, double removed) {
    ++r.pairs;
    if (gain > gain_tolerance(d, removed)) {
      ++r.improving;
      if (!r.first) r.first = TwoMove{i, j, gain};
      if (!r.best || gain > r.best->gain) r.best = TwoMove{i, j, gain};
    }
    return true;
  });
  r.two_optimal = r.improving == 0;
  return r;
}

// ---------------------------------------------------------------------------
// Spatial family

struct ThreeDInstance {
  int k = 2;
  Instance instance;  // A_1..A_k, B_1..B_k, C_1..C_k, D_1..D_k
  Tour t;
  Tour s;
  std::vector<std::pair<std::size_t, std::size_t>> t_edges;
  std::vector<std::pair<std::size_t, std::size_t>> s_edges;

  std::size_t a(int i) const { return static_cast<std::size_t>(i - 1); }
  std::size_t b(int i) const { return static_cast<std::size_t>(k + i - 1); }
  std::size_t c(int i) const { return static_cast<std::size_t>(2 * k + i - 1); }
  std::size_t d(int i) const { return static_cast<std::size_t>(3 * k + i - 1); }
};

inline ThreeDInstance generate_3d_instance(int k) {
  if (k < 2 || k % 2 != 0) throw InvalidArgument("spatial family needs an even k >= 2");
  ThreeDInstance g;
  g.k = k;
  const double h = std::sqrt(3.0) / 2.0;
  std::vector<Point3> pts;
  pts.reserve(4 * static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) pts.push_back({double(i), 0.0, 0.0});
  for (int i = 1; i <= k; ++i) pts.push_back({double(i), 1.0, 0.0});
  for (int i = 1; i <= k; ++i) pts.push_back({double(i), 0.5, h});
  for (int i = 1; i <= k; ++i) pts.push_back({double(i), 1.5, h});
  g.instance = Instance::spatial(std::move(pts), PNorm::euclidean(), "spatial-k" + std::to_string(k));

  auto& te = g.t_edges;
  for (int i = 1; i < k; ++i) te.emplace_back(g.a(i), g.a(i + 1));
  for (int i = 1; i < k; ++i) te.emplace_back(g.d(i), g.d(i + 1));
  for (int i = 2; i < k; ++i) te.emplace_back(g.b(i), g.b(i + 1));
  for (int i = 2; i < k; ++i) te.emplace_back(g.c(i), g.c(i + 1));
  te.emplace_back(g.a(1), g.b(1));
  te.emplace_back(g.b(1), g.c(1));
  te.emplace_back(g.c(1), g.d(1));
  te.emplace_back(g.b(2), g.c(2));
  te.emplace_back(g.a(k), g.b(k));
  te.emplace_back(g.c(k), g.d(k));

  auto& se = g.s_edges;
  se.emplace_back(g.c(1), g.d(1));
  se.emplace_back(g.c(k), g.d(k));
  for (int i = 1; i < k; ++i) se.emplace_back(g.d(i), g.d(i + 1));
  for (int i = 1; i <= k; ++i) se.emplace_back(g.a(i), g.b(i));
  for (int i = 1; i <= k; ++i) se.emplace_back(g.a(i), g.c(i));
  for (int i = 1; i <= k / 2; ++i) se.emplace_back(g.b(2 * i - 1), g.b(2 * i));
  // The C pairs close S into a single cycle.
  for (int i = 1; i < k / 2; ++i) se.emplace_back(g.c(2 * i), g.c(2 * i + 1));

  const std::size_t n = g.instance.size();
  try {
    g.t = tour_from_edges(n, te);
    g.s = tour_from_edges(n, se);
  } catch (const InvalidArgument& e) {
    throw InternalError(std::string("spatial tour is not a Hamiltonian cycle: ") + e.what());
  }
  return g;
}

}  // namespace kopt
