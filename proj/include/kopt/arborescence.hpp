#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kopt/error.hpp"
#include "kopt/instance.hpp"
#include "kopt/partition.hpp"
#include "kopt/random.hpp"
#include "kopt/tour.hpp"

namespace kopt {

// Relative slack allowed on every certified inequality.
inline constexpr double kCertEpsilon = 1e-9;

// Rooted tree with two positive weights per edge: c (chord length) and w
// (tour length on the boundary of the child region).
class Arborescence {
 public:
  struct Edge {
    std::size_t parent = 0;
    std::size_t child = 0;
    double c = 0.0;
    double w = 0.0;
  };

  Arborescence() : nodes_(1), out_(1), in_(1) {}

  Arborescence(std::size_t nodes, std::size_t root, std::vector<Edge> edges)
      : nodes_(nodes), root_(root), edges_(std::move(edges)), out_(nodes), in_(nodes) {
    if (nodes == 0 || root >= nodes) throw InvalidArgument("arborescence root out of range");
    if (edges_.size() + 1 != nodes) {
      throw InvalidArgument("arborescence on " + std::to_string(nodes) + " nodes needs " +
                            std::to_string(nodes - 1) + " edges");
    }
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      const Edge& e = edges_[k];
      if (e.parent >= nodes || e.child >= nodes) throw InvalidArgument("edge endpoint out of range");
      if (e.child == root) throw InvalidArgument("root has an incoming edge");
      if (in_[e.child]) throw InvalidArgument("node with two incoming edges");
      if (!(e.c > 0.0) || !(e.w > 0.0) || !std::isfinite(e.c) || !std::isfinite(e.w)) {
        throw InvalidArgument("arborescence weights must be positive and finite");
      }
      in_[e.child] = k;
      out_[e.parent].push_back(k);
    }
    // nodes - 1 edges, one parent each: connected from the root iff acyclic.
    std::vector<std::size_t> stack{root};
    std::size_t seen = 0;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      ++seen;
      for (std::size_t k : out_[v]) stack.push_back(edges_[k].child);
    }
    if (seen != nodes) throw InvalidArgument("arborescence is not connected from its root");
  }

  std::size_t node_count() const { return nodes_; }
  std::size_t root() const { return root_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t k) const { return edges_[k]; }

  // Edge indices leaving the head of edge k, i.e. delta+ of its child node.
  const std::vector<std::size_t>& children_of_edge(std::size_t k) const {
    return out_[edges_[k].child];
  }
  const std::vector<std::size_t>& out_edges(std::size_t node) const { return out_[node]; }
  std::optional<std::size_t> in_edge(std::size_t node) const { return in_[node]; }

  double c_total() const {
    double s = 0.0;
    for (const Edge& e : edges_) s += e.c;
    return s;
  }
  double w_total() const {
    double s = 0.0;
    for (const Edge& e : edges_) s += e.w;
    return s;
  }

  // Edge indices ordered so that every edge comes after its parent edge.
  std::vector<std::size_t> top_down() const {
    std::vector<std::size_t> order;
    order.reserve(edges_.size());
    std::vector<std::size_t> stack{root_};
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t k : out_[v]) {
        order.push_back(k);
        stack.push_back(edges_[k].child);
      }
    }
    return order;
  }

  // w of the sub-arborescence made of edge k and everything below its head.
  std::vector<double> subtree_w() const {
    std::vector<double> sub(edges_.size(), 0.0);
    const std::vector<std::size_t> order = top_down();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      double s = edges_[*it].w;
      for (std::size_t f : children_of_edge(*it)) s += sub[f];
      sub[*it] = s;
    }
    return sub;
  }

  // Largest c among the edges leaving the head of edge k, if any.
  std::optional<double> max_child_c(std::size_t k) const {
    std::optional<double> m;
    for (std::size_t f : children_of_edge(k)) {
      if (!m || edges_[f].c > *m) m = edges_[f].c;
    }
    return m;
  }

 private:
  std::size_t nodes_ = 1;
  std::size_t root_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::optional<std::size_t>> in_;
};

// ---------------------------------------------------------------------------
// Dual tree of T' plus a non-crossing chord set

struct BoundaryItem {
  bool is_chord = false;
  DirectedEdge edge;  // as traversed around the region
};

struct DualArborescence {
  Arborescence tree;
  std::vector<DirectedEdge> chord_of_edge;          // chord dual to each tree edge
  std::vector<std::vector<BoundaryItem>> regions;   // cyclic boundary per node
  double root_tour_weight = 0.0;                    // T' length on the root region
};

// Regions come from the laminar family of chord intervals along the reference
// path. The root is the region outside every interval; it contains the region
// cut off by the reference chord and the rest of T'.
template <DistanceOracle D>
DualArborescence build_arborescence(const D& d, const Tour& t, const ReferencePath& ref,
                                    const std::vector<DirectedEdge>& chords) {
  const std::size_t n = t.size();
  if (ref.path.size() < 2) throw InvalidArgument("reference path too short");
  const std::vector<std::size_t> rank = ref.ranks(n);
  const std::size_t path_edges = ref.path.size() - 1;

  struct Interval {
    std::size_t lo, hi, chord;
  };
  std::vector<Interval> iv;
  iv.reserve(chords.size());
  for (std::size_t k = 0; k < chords.size(); ++k) {
    const DirectedEdge& c = chords[k];
    if (rank[c.from] == ReferencePath::npos || rank[c.to] == ReferencePath::npos) {
      throw InvalidArgument("chord endpoint off the reference path");
    }
    const std::size_t lo = std::min(rank[c.from], rank[c.to]);
    const std::size_t hi = std::max(rank[c.from], rank[c.to]);
    if (hi - lo < 2) throw InvalidArgument("chord coincides with a tour edge");
    iv.push_back({lo, hi, k});
  }
  std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.hi > b.hi;
  });

  // Node 0 is the root; interval i in sorted order is node i + 1.
  std::vector<std::size_t> parent(iv.size(), 0);
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < iv.size(); ++i) {
    if (i > 0 && iv[i].lo == iv[i - 1].lo && iv[i].hi == iv[i - 1].hi) {
      throw InvalidArgument("two chords join the same vertices");
    }
    while (!open.empty() && iv[open.back()].hi <= iv[i].lo) open.pop_back();
    if (!open.empty()) {
      if (iv[i].hi > iv[open.back()].hi) throw InvalidArgument("chords cross");
      parent[i] = open.back() + 1;
    }
    open.push_back(i);
  }

  // Each path edge belongs to the innermost interval covering it.
  std::vector<std::size_t> owner(path_edges, 0);
  for (std::size_t i = 0; i < iv.size(); ++i) {
    for (std::size_t p = iv[i].lo; p < iv[i].hi; ++p) owner[p] = i + 1;
  }
  std::vector<double> w(iv.size() + 1, 0.0);
  for (std::size_t p = 0; p < path_edges; ++p) {
    w[owner[p]] += d.dist(ref.path[p], ref.path[p + 1]);
  }

  DualArborescence out;
  std::vector<Arborescence::Edge> edges;
  edges.reserve(iv.size());
  for (std::size_t i = 0; i < iv.size(); ++i) {
    const DirectedEdge& c = chords[iv[i].chord];
    edges.push_back({parent[i], i + 1, d.dist(c.from, c.to), w[i + 1]});
    out.chord_of_edge.push_back(c);
  }
  out.tree = Arborescence(iv.size() + 1, 0, std::move(edges));

  // Boundary walks. Direct children of a node start at distinct ranks.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> kids(iv.size() + 1);
  for (std::size_t i = 0; i < iv.size(); ++i) kids[parent[i]].push_back({iv[i].lo, i});
  auto walk = [&](std::size_t node, std::size_t lo, std::size_t hi) {
    std::vector<BoundaryItem> items;
    std::size_t k = 0;
    const auto& ks = kids[node];
    for (std::size_t p = lo; p < hi;) {
      if (k < ks.size() && ks[k].first == p) {
        const Interval& c = iv[ks[k].second];
        items.push_back({true, {ref.path[c.lo], ref.path[c.hi]}});
        p = c.hi;
        ++k;
      } else {
        items.push_back({false, {ref.path[p], ref.path[p + 1]}});
        ++p;
      }
    }
    return items;
  };
  out.regions.resize(iv.size() + 1);
  out.regions[0] = walk(0, 0, path_edges);
  {
    // Close the root region along the part of T' off the path.
    const std::vector<std::size_t> pos = t.positions();
    const std::size_t last = ref.path.back();
    const std::size_t before_last = ref.path[path_edges - 1];
    const bool forward = t[t.next_pos(pos[before_last])] == last;
    std::size_t v = last;
    while (v != ref.path.front()) {
      const std::size_t nxt = forward ? t[t.next_pos(pos[v])] : t[(pos[v] + n - 1) % n];
      out.regions[0].push_back({false, {v, nxt}});
      out.root_tour_weight += d.dist(v, nxt);
      v = nxt;
    }
    out.root_tour_weight += w[0];
  }
  for (std::size_t i = 0; i < iv.size(); ++i) {
    auto items = walk(i + 1, iv[i].lo, iv[i].hi);
    items.push_back({true, {ref.path[iv[i].hi], ref.path[iv[i].lo]}});
    out.regions[i + 1] = std::move(items);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Combined triangle inequality and combined 2-optimality condition

struct InequalityViolation {
  int which = 3;  // 3: triangle form, 4: 2-optimality form
  std::size_t edge = 0;
  std::optional<std::size_t> child;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack() const { return rhs - lhs; }
};

struct InequalityReport {
  std::size_t triangle_checked = 0;
  std::size_t two_opt_checked = 0;
  std::vector<InequalityViolation> violations;
  bool passed() const { return violations.empty(); }
};

namespace detail {

inline bool within(double lhs, double rhs, double rel_eps) {
  return lhs <= rhs + rel_eps * std::max(std::fabs(lhs), std::fabs(rhs));
}

}  // namespace detail

inline InequalityReport verify_combined_inequalities(const Arborescence& a,
                                                     double rel_eps = kCertEpsilon) {
  InequalityReport rep;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& e = a.edge(k);
    double child_sum = 0.0;
    for (std::size_t f : a.children_of_edge(k)) child_sum += a.edge(f).c;
    ++rep.triangle_checked;
    if (!detail::within(e.c, e.w + child_sum, rel_eps)) {
      rep.violations.push_back({3, k, std::nullopt, e.c, e.w + child_sum});
    }
    for (std::size_t f : a.children_of_edge(k)) {
      const double cf = a.edge(f).c;
      const double lhs = e.c + cf;
      const double rhs = e.w + child_sum - cf;
      ++rep.two_opt_checked;
      if (!detail::within(lhs, rhs, rel_eps)) rep.violations.push_back({4, k, f, lhs, rhs});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Edge subsets and lemma checks

// Edges much lighter than their heaviest child: c(e) < l * max child c.
inline std::vector<std::size_t> light_edges(const Arborescence& a, double l) {
  if (!(l > 0.0)) throw InvalidArgument("l must be positive");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto m = a.max_child_c(k);
    if (m && a.edge(k).c < l * *m) out.push_back(k);
  }
  return out;
}

// Edges outside the light set with r < c(e) <= (l/4) r.
inline std::vector<std::size_t> band_edges(const Arborescence& a, double l, double r) {
  if (!(l > 0.0) || !(r > 0.0)) throw InvalidArgument("l and r must be positive");
  const std::vector<std::size_t> light = light_edges(a, l);
  std::vector<bool> is_light(a.size(), false);
  for (std::size_t k : light) is_light[k] = true;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double c = a.edge(k).c;
    if (!is_light[k] && r < c && c <= (l / 4.0) * r) out.push_back(k);
  }
  return out;
}

// Members of `set` with no other member on the path up to the root.
inline std::vector<std::size_t> topmost_members(const Arborescence& a,
                                                const std::vector<std::size_t>& set) {
  std::vector<bool> member(a.size(), false);
  for (std::size_t k : set) member[k] = true;
  std::vector<std::size_t> out;
  for (std::size_t k : set) {
    bool covered = false;
    for (auto up = a.in_edge(a.edge(k).parent); up; up = a.in_edge(a.edge(*up).parent)) {
      if (member[*up]) {
        covered = true;
        break;
      }
    }
    if (!covered) out.push_back(k);
  }
  return out;
}

inline double log_ratio(double x) { return std::log2(x) / std::log2(std::log2(x)); }

struct LemmaFailure {
  std::string lemma;
  double l = 0.0;
  double r = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct LemmaSuiteReport {
  std::size_t edge_count = 0;
  double c_total = 0.0;
  double w_total = 0.0;
  double ratio = 0.0;  // c(A) / w(A), the default l
  std::vector<double> l_values;
  std::size_t light_checks = 0;
  std::size_t weight_checks = 0;
  std::size_t band_checks = 0;
  std::size_t cover_checks = 0;
  bool main_applies = false;  // c(A) >= 18 w(A)
  double main_bound = 0.0;    // 12 log|E| / log log |E| * w(A) when it applies
  const char* log_base = "2";
  std::vector<LemmaFailure> failures;
  bool passed() const { return failures.empty(); }
};

// Probes for the band lemma: the geometric grid from the main argument plus
// radii where single edges sit exactly on a band boundary.
inline std::vector<double> band_radii(const Arborescence& a, double l) {
  std::vector<double> rs;
  const double w = a.w_total();
  const double steps = std::min(64.0, std::max(1.0, std::floor(l / 6.0)));
  for (int i = 1; i <= static_cast<int>(steps); ++i) rs.push_back(std::pow(4.0 / l, i) * w);
  for (const auto& e : a.edges()) {
    rs.push_back(4.0 * e.c / l);
    rs.push_back(e.c * (1.0 - 1e-9));
  }
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  rs.erase(std::remove_if(rs.begin(), rs.end(), [](double r) { return !(r > 0.0); }), rs.end());
  return rs;
}

inline LemmaSuiteReport verify_lemma_suite(const Arborescence& a, double rel_eps = kCertEpsilon) {
  LemmaSuiteReport rep;
  rep.edge_count = a.size();
  rep.c_total = a.c_total();
  rep.w_total = a.w_total();
  if (a.size() == 0) return rep;
  rep.ratio = rep.c_total / rep.w_total;
  rep.l_values = {2.0, 6.0, 18.0, rep.ratio};

  const std::vector<double> sub = a.subtree_w();
  for (std::size_t k = 0; k < a.size(); ++k) {
    ++rep.weight_checks;
    if (!detail::within(a.edge(k).c, sub[k], rel_eps)) {
      rep.failures.push_back({"edge-vs-subtree", 0.0, 0.0, a.edge(k).c, sub[k]});
    }
  }

  auto sum_c = [&](const std::vector<std::size_t>& set) {
    double s = 0.0;
    for (std::size_t k : set) s += a.edge(k).c;
    return s;
  };

  for (double l : rep.l_values) {
    ++rep.light_checks;
    const double light = sum_c(light_edges(a, l));
    if (!detail::within(light, l / 2.0 * rep.w_total, rel_eps)) {
      rep.failures.push_back({"light-edges", l, 0.0, light, l / 2.0 * rep.w_total});
    }
    for (double r : band_radii(a, l)) {
      const std::vector<std::size_t> band = band_edges(a, l, r);
      ++rep.band_checks;
      const double cb = sum_c(band);
      if (!detail::within(cb, 2.0 * rep.w_total, rel_eps)) {
        rep.failures.push_back({"band-edges", l, r, cb, 2.0 * rep.w_total});
      }
      // The topmost band edges root disjoint sub-arborescences.
      ++rep.cover_checks;
      double cover = 0.0;
      for (std::size_t k : topmost_members(a, band)) cover += sub[k];
      if (!detail::within(cover, rep.w_total, rel_eps)) {
        rep.failures.push_back({"band-cover", l, r, cover, rep.w_total});
      }
    }
  }

  rep.main_applies = rep.c_total >= 18.0 * rep.w_total;
  if (rep.main_applies) {
    const double m = static_cast<double>(a.size());
    if (m < 3.0) {
      rep.failures.push_back({"main", rep.ratio, 0.0, rep.c_total, 0.0});
    } else {
      rep.main_bound = 12.0 * log_ratio(m) * rep.w_total;
      if (!detail::within(rep.c_total, rep.main_bound, rel_eps)) {
        rep.failures.push_back({"main", rep.ratio, 0.0, rep.c_total, rep.main_bound});
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Synthetic arborescences satisfying both combined inequalities

// Random shape; weights assigned leaves first so that every edge obeys
// c(e) <= w(e) + sum(child c) - 2 max(child c), which implies both inequalities.
// All weights are integers, so the checks are exact.
inline Arborescence random_feasible_arborescence(std::size_t edge_count, Rng& rng,
                                                 std::int64_t max_weight = 100) {
  if (max_weight < 1) throw InvalidArgument("max_weight must be at least 1");
  const std::size_t nodes = edge_count + 1;
  std::vector<std::size_t> parent(nodes, 0);
  for (std::size_t v = 1; v < nodes; ++v) parent[v] = rng.below(v);

  std::vector<std::vector<std::size_t>> kids(nodes);
  for (std::size_t v = 1; v < nodes; ++v) kids[parent[v]].push_back(v);

  // Node v > 0 is the head of edge v - 1; children have larger ids.
  std::vector<double> c(nodes, 0.0), w(nodes, 0.0);
  for (std::size_t v = nodes; v-- > 1;) {
    double sum = 0.0, mx = 0.0;
    for (std::size_t k : kids[v]) {
      sum += c[k];
      mx = std::max(mx, c[k]);
    }
    const double slack_needed = kids[v].empty() ? 0.0 : 2.0 * mx - sum;
    // Sometimes take the smallest admissible w to push c(A)/w(A) up.
    const bool tight = rng.below(3) == 0;
    const double w_min = std::max(1.0, slack_needed + 1.0);
    w[v] = tight ? w_min : w_min + static_cast<double>(rng.between(0, max_weight));
    const double cap = w[v] + sum - (kids[v].empty() ? 0.0 : 2.0 * mx);
    c[v] = tight ? cap : static_cast<double>(rng.between(1, static_cast<std::int64_t>(cap)));
  }

  std::vector<Arborescence::Edge> edges;
  edges.reserve(edge_count);
  for (std::size_t v = 1; v < nodes; ++v) edges.push_back({parent[v], v, c[v], w[v]});
  return Arborescence(nodes, 0, std::move(edges));
}

}  // namespace kopt
