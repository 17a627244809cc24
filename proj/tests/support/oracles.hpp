#pragma once

// Reference computations kept deliberately naive and separate from the
// library code they check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "kopt/geometry.hpp"
#include "kopt/instance.hpp"
#include "kopt/random.hpp"
#include "kopt/tour.hpp"

namespace kopt::testing {

// Andrew's monotone chain with exact predicates; collinear points dropped,
// counter-clockwise order.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && orientation(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && orientation(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// Hull of random grid points; retried until it has at least three corners.
inline std::vector<Point> random_convex_polygon(Rng& rng, std::size_t samples, std::int64_t grid) {
  for (;;) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < samples; ++i) {
      pts.emplace_back(static_cast<long>(rng.between(-grid, grid)),
                       static_cast<long>(rng.between(-grid, grid)));
    }
    auto h = convex_hull(std::move(pts));
    if (h.size() >= 3) return h;
  }
}

// n distinct points on a random line a x + b y = c through integer points.
inline Instance random_collinear_instance(Rng& rng, std::size_t n, PNorm norm = PNorm::euclidean()) {
  const long dx = static_cast<long>(rng.between(-5, 5));
  long dy = static_cast<long>(rng.between(-5, 5));
  if (dx == 0 && dy == 0) dy = 1;
  const long ox = static_cast<long>(rng.between(-50, 50));
  const long oy = static_cast<long>(rng.between(-50, 50));
  std::set<long> steps;
  while (steps.size() < n) steps.insert(static_cast<long>(rng.between(-40, 40)));
  std::vector<long> order(steps.begin(), steps.end());
  // Shuffle so vertex order carries no hint of the line order.
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  std::vector<Point> pts;
  for (long s : order) pts.emplace_back(ox + s * dx, oy + s * dy);
  return Instance::planar(std::move(pts), norm, "collinear");
}

// Direct sum over consecutive positions, independent of tour_length.
template <class D>
double naive_length(const D& d, const std::vector<std::size_t>& order) {
  double s = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) s += d.dist(order[i], order[(i + 1) % order.size()]);
  return s;
}

// Does the undirected edge list form one Hamiltonian cycle on n vertices?
inline bool is_hamiltonian_cycle(std::size_t n,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  if (edges.size() != n || n < 3) return false;
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n || a == b) return false;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (const auto& a : adj) {
    if (a.size() != 2) return false;
  }
  std::size_t prev = n, cur = 0, seen = 0;
  do {
    const std::size_t next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
    prev = cur;
    cur = next;
    ++seen;
  } while (cur != 0 && seen <= n);
  return seen == n;
}

inline std::vector<std::pair<std::size_t, std::size_t>> tour_edge_list(const Tour& t) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  const auto o = t.order();
  for (std::size_t i = 0; i < o.size(); ++i) e.emplace_back(o[i], o[(i + 1) % o.size()]);
  return e;
}

// Exhaustive 2-optimality: every pair of non-adjacent tour edges, compared by
// plain arithmetic with a relative tolerance.
template <class D>
bool naive_two_optimal(const D& d, const Tour& t, double rel = 1e-9) {
  const auto o = t.order();
  const std::size_t n = o.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const std::size_t a = o[i], b = o[i + 1], c = o[j], e = o[(j + 1) % n];
      const double before = d.dist(a, b) + d.dist(c, e);
      const double after = d.dist(a, c) + d.dist(b, e);
      if (after < before - rel * before) return false;
    }
  }
  return true;
}

}  // namespace kopt::testing
