#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kopt/error.hpp"
#include "kopt/geometry.hpp"
#include "kopt/instance.hpp"

namespace kopt {

struct DirectedEdge {
  std::size_t from = 0;
  std::size_t to = 0;

  DirectedEdge reversed() const { return {to, from}; }
  bool same_segment(const DirectedEdge& o) const {
    return (from == o.from && to == o.to) || (from == o.to && to == o.from);
  }
  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
  friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

// An oriented Hamiltonian cycle: order[i] -> order[i + 1 mod n].
class Tour {
 public:
  Tour() = default;
  explicit Tour(std::vector<std::size_t> order) : order_(std::move(order)) {
    std::vector<bool> seen(order_.size(), false);
    for (std::size_t v : order_) {
      if (v >= order_.size() || seen[v]) throw InvalidArgument("tour order is not a permutation");
      seen[v] = true;
    }
  }

  static Tour identity(std::size_t n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    return Tour(std::move(order));
  }

  std::size_t size() const { return order_.size(); }
  std::size_t operator[](std::size_t pos) const { return order_[pos]; }
  std::span<const std::size_t> order() const { return order_; }

  std::size_t next_pos(std::size_t pos) const { return pos + 1 == order_.size() ? 0 : pos + 1; }
  DirectedEdge edge(std::size_t pos) const { return {order_[pos], order_[next_pos(pos)]}; }

  std::vector<DirectedEdge> edges() const {
    std::vector<DirectedEdge> out;
    out.reserve(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) out.push_back(edge(i));
    return out;
  }

  // positions()[v] is the index of vertex v in the order.
  std::vector<std::size_t> positions() const {
    std::vector<std::size_t> pos(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = i;
    return pos;
  }

  friend bool operator==(const Tour&, const Tour&) = default;

 private:
  std::vector<std::size_t> order_;
};

// Builds the tour traced by an undirected edge list that must form a single
// Hamiltonian cycle on vertices 0..n-1 (every degree 2, connected).
inline Tour tour_from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges) {
  if (n < 3) throw InvalidArgument("a cycle needs at least three vertices");
  if (edges.size() != n) {
    throw InvalidArgument("cycle needs " + std::to_string(n) + " edges, got " +
                          std::to_string(edges.size()));
  }
  std::vector<std::array<std::size_t, 2>> adj(n);
  std::vector<std::uint8_t> degree(n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n || u == v) throw InvalidArgument("invalid cycle edge");
    if (degree[u] == 2 || degree[v] == 2) {
      throw InvalidArgument("vertex of degree above two in cycle edge list");
    }
    adj[u][degree[u]++] = v;
    adj[v][degree[v]++] = u;
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  std::size_t prev = n;
  std::size_t cur = 0;
  do {
    order.push_back(cur);
    const std::size_t nxt = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
    prev = cur;
    cur = nxt;
  } while (cur != 0 && order.size() <= n);
  if (order.size() != n) throw InvalidArgument("edge list splits into several cycles");
  return Tour(std::move(order));
}

template <DistanceOracle D>
double tour_length(const D& d, const Tour& t) {
  if (t.size() != d.size()) {
    throw InvalidArgument("tour has " + std::to_string(t.size()) + " vertices, instance has " +
                          std::to_string(d.size()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const DirectedEdge e = t.edge(i);
    total += d.dist(e.from, e.to);
  }
  return total;
}

// Relative slack below which a length decrease does not count as improvement.
inline constexpr double kGainEpsilon = 1e-9;

template <DistanceOracle D>
double gain_tolerance(const D& d, double removed_length) {
  return d.exact_lengths() ? 0.0 : kGainEpsilon * removed_length;
}

// ---------------------------------------------------------------------------
// 2-moves

// Replace tour edges at positions i and j, (a,b) and (x,y), by (a,x) and (b,y);
// the segment b..x is reversed.
struct TwoMove {
  std::size_t i = 0;
  std::size_t j = 0;
  double gain = 0.0;

  friend bool operator==(const TwoMove&, const TwoMove&) = default;
};

template <DistanceOracle D>
double two_move_gain(const D& d, const Tour& t, std::size_t i, std::size_t j) {
  const DirectedEdge e = t.edge(i);
  const DirectedEdge f = t.edge(j);
  return d.dist(e.from, e.to) + d.dist(f.from, f.to) - d.dist(e.from, f.from) - d.dist(e.to, f.to);
}

namespace detail {

// Calls visit(i, j, gain, removed) for every non-adjacent position pair in
// lexicographic order; stops when visit returns false.
template <DistanceOracle D, class Visit>
void for_each_two_move(const D& d, const Tour& t, Visit&& visit) {
  const std::size_t n = t.size();
  if (n < 4) return;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    const DirectedEdge e = t.edge(i);
    const double ce = d.dist(e.from, e.to);
    const std::size_t j_end = i == 0 ? n - 1 : n;
    for (std::size_t j = i + 2; j < j_end; ++j) {
      const DirectedEdge f = t.edge(j);
      const double removed = ce + d.dist(f.from, f.to);
      const double gain = removed - d.dist(e.from, f.from) - d.dist(e.to, f.to);
      if (!visit(i, j, gain, removed)) return;
    }
  }
}

}  // namespace detail

template <DistanceOracle D>
std::optional<TwoMove> find_improving_2move(const D& d, const Tour& t) {
  std::optional<TwoMove> found;
  detail::for_each_two_move(d, t, [&](std::size_t i, std::size_t j, double gain, double removed) {
    if (gain > gain_tolerance(d, removed)) {
      found = TwoMove{i, j, gain};
      return false;
    }
    return true;
  });
  return found;
}

inline Tour apply_2move(const Tour& t, const TwoMove& m) {
  const std::size_t n = t.size();
  if (m.i >= n || m.j >= n || m.j < m.i + 2 || (m.i == 0 && m.j == n - 1)) {
    throw InvalidArgument("2-move positions must be non-adjacent with i < j");
  }
  std::vector<std::size_t> order(t.order().begin(), t.order().end());
  std::reverse(order.begin() + static_cast<std::ptrdiff_t>(m.i + 1),
               order.begin() + static_cast<std::ptrdiff_t>(m.j + 1));
  return Tour(std::move(order));
}

// First-improvement 2-Opt; each scan restarts from the first position pair.
template <DistanceOracle D>
Tour two_opt(const D& d, Tour t, std::size_t* moves_applied = nullptr) {
  if (t.size() != d.size()) throw InvalidArgument("tour size does not match instance");
  std::size_t moves = 0;
  while (auto m = find_improving_2move(d, t)) {
    t = apply_2move(t, *m);
    ++moves;
  }
  if (moves_applied) *moves_applied = moves;
  return t;
}

// ---------------------------------------------------------------------------
// 3-moves
//
// Removing tour edges (a,b), (c,d), (e,f) at positions i < j < k leaves the
// segments B = b..c and D = d..e between a and f. The seven proper
// reconnections visit B and D in either order, each possibly reversed.

enum class Reconnection : std::uint8_t {
  kFirstReversed = 1,         // a B' D f
  kSecondReversed,            // a B D' f
  kBothReversed,              // a B' D' f
  kSwapped,                   // a D B f
  kSwappedSecondReversed,     // a D' B f
  kSwappedFirstReversed,      // a D B' f
  kSwappedBothReversed,       // a D' B' f
};

inline constexpr std::array<Reconnection, 7> kReconnections = {
    Reconnection::kFirstReversed,         Reconnection::kSecondReversed,
    Reconnection::kBothReversed,          Reconnection::kSwapped,
    Reconnection::kSwappedSecondReversed, Reconnection::kSwappedFirstReversed,
    Reconnection::kSwappedBothReversed,
};

struct ThreeMove {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  Reconnection pattern = Reconnection::kFirstReversed;
  double gain = 0.0;

  friend bool operator==(const ThreeMove&, const ThreeMove&) = default;
};

namespace detail {

struct Piece {
  std::size_t head;
  std::size_t tail;
  bool second;
  bool reversed;
};

struct ReconnectionShape {
  bool swapped;
  bool first_reversed;
  bool second_reversed;
};

inline ReconnectionShape shape_of(Reconnection r) {
  switch (r) {
    case Reconnection::kFirstReversed: return {false, true, false};
    case Reconnection::kSecondReversed: return {false, false, true};
    case Reconnection::kBothReversed: return {false, true, true};
    case Reconnection::kSwapped: return {true, false, false};
    case Reconnection::kSwappedSecondReversed: return {true, false, true};
    case Reconnection::kSwappedFirstReversed: return {true, true, false};
    case Reconnection::kSwappedBothReversed: return {true, true, true};
  }
  throw InvalidArgument("unknown reconnection");
}

// The two segments in the order the reconnection visits them.
inline std::array<Piece, 2> pieces(const Tour& t, std::size_t i, std::size_t j, std::size_t k,
                                   Reconnection r) {
  const ReconnectionShape s = shape_of(r);
  const std::size_t b = t[i + 1], c = t[j], d = t[j + 1], e = t[k];
  const Piece first = s.first_reversed ? Piece{c, b, false, true} : Piece{b, c, false, false};
  const Piece second = s.second_reversed ? Piece{e, d, true, true} : Piece{d, e, true, false};
  if (s.swapped) return {second, first};
  return {first, second};
}

template <DistanceOracle D>
double added_length(const D& d, const Tour& t, std::size_t i, std::size_t k,
                    const std::array<Piece, 2>& p) {
  const std::size_t a = t[i];
  const std::size_t f = t[t.next_pos(k)];
  return d.dist(a, p[0].head) + d.dist(p[0].tail, p[1].head) + d.dist(p[1].tail, f);
}

}  // namespace detail

inline void validate_three_move(const Tour& t, const ThreeMove& m) {
  if (!(m.i < m.j && m.j < m.k && m.k < t.size())) {
    throw InvalidArgument("3-move positions must satisfy i < j < k < n");
  }
}

inline Tour apply_3move(const Tour& t, const ThreeMove& m) {
  validate_three_move(t, m);
  const auto order = t.order();
  std::vector<std::size_t> out;
  out.reserve(t.size());
  out.insert(out.end(), order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m.i + 1));
  auto emit = [&](const detail::Piece& p) {
    const std::size_t lo = p.second ? m.j + 1 : m.i + 1;
    const std::size_t hi = p.second ? m.k : m.j;
    if (p.reversed) {
      for (std::size_t q = hi + 1; q-- > lo;) out.push_back(order[q]);
    } else {
      for (std::size_t q = lo; q <= hi; ++q) out.push_back(order[q]);
    }
  };
  for (const auto& p : detail::pieces(t, m.i, m.j, m.k, m.pattern)) emit(p);
  out.insert(out.end(), order.begin() + static_cast<std::ptrdiff_t>(m.k + 1), order.end());
  return Tour(std::move(out));
}

template <DistanceOracle D>
double three_move_gain(const D& d, const Tour& t, const ThreeMove& m) {
  validate_three_move(t, m);
  const DirectedEdge e1 = t.edge(m.i), e2 = t.edge(m.j), e3 = t.edge(m.k);
  const double removed = d.dist(e1.from, e1.to) + d.dist(e2.from, e2.to) + d.dist(e3.from, e3.to);
  return removed - detail::added_length(d, t, m.i, m.k, detail::pieces(t, m.i, m.j, m.k, m.pattern));
}

template <DistanceOracle D>
std::optional<ThreeMove> find_improving_3move(const D& d, const Tour& t) {
  const std::size_t n = t.size();
  if (n < 3) return std::nullopt;
  std::vector<double> len(n);
  for (std::size_t p = 0; p < n; ++p) {
    const DirectedEdge e = t.edge(p);
    len[p] = d.dist(e.from, e.to);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const double removed = len[i] + len[j] + len[k];
        const double tol = gain_tolerance(d, removed);
        for (Reconnection r : kReconnections) {
          const double gain = removed - detail::added_length(d, t, i, k, detail::pieces(t, i, j, k, r));
          if (gain > tol) return ThreeMove{i, j, k, r, gain};
        }
      }
    }
  }
  return std::nullopt;
}

// First-improvement 3-Opt over all seven reconnections (2-moves included).
template <DistanceOracle D>
Tour three_opt(const D& d, Tour t, std::size_t* moves_applied = nullptr) {
  if (t.size() != d.size()) throw InvalidArgument("tour size does not match instance");
  std::size_t moves = 0;
  while (auto m = find_improving_3move(d, t)) {
    t = apply_3move(t, *m);
    ++moves;
  }
  if (moves_applied) *moves_applied = moves;
  return t;
}

// ---------------------------------------------------------------------------
// k-optimality

inline constexpr std::size_t kMaxThreeOptScan = 400;

struct KOptVerdict {
  bool optimal = true;
  std::optional<std::variant<TwoMove, ThreeMove>> witness;
};

template <DistanceOracle D>
KOptVerdict is_k_optimal(const D& d, const Tour& t, int k) {
  if (t.size() != d.size()) throw InvalidArgument("tour size does not match instance");
  KOptVerdict v;
  if (k == 2) {
    if (auto m = find_improving_2move(d, t)) {
      v.optimal = false;
      v.witness = *m;
    }
    return v;
  }
  if (k == 3) {
    if (t.size() > kMaxThreeOptScan) {
      throw InvalidArgument("exhaustive 3-opt scan limited to n <= " +
                            std::to_string(kMaxThreeOptScan));
    }
    if (auto m = find_improving_3move(d, t)) {
      v.optimal = false;
      v.witness = *m;
    }
    return v;
  }
  throw Unsupported("k-optimality is implemented for k in {2, 3}, got " + std::to_string(k));
}

// ---------------------------------------------------------------------------
// Planar structure

struct SimplicityVerdict {
  bool simple = true;
  // Tour positions of the first offending edge pair.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  RelationKind relation = RelationKind::kDisjoint;
};

inline Segment tour_segment(const Instance& inst, const Tour& t, std::size_t pos) {
  const DirectedEdge e = t.edge(pos);
  return Segment(inst.point(e.from), inst.point(e.to));
}

inline SimplicityVerdict is_simple(const Instance& inst, const Tour& t) {
  if (!inst.is_planar()) throw Unsupported("simplicity is only defined for planar instances");
  if (t.size() != inst.size()) throw InvalidArgument("tour size does not match instance");
  const std::size_t n = t.size();
  SimplicityVerdict v;
  if (n < 3) return v;
  std::vector<Segment> segs;
  segs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) segs.push_back(tour_segment(inst, t, i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      const RelationKind kind = kind_of(segment_relation(segs[i], segs[j]));
      const bool ok = adjacent ? kind == RelationKind::kSharedEndpoint : kind == RelationKind::kDisjoint;
      if (!ok) {
        v.simple = false;
        v.witness = std::make_pair(i, j);
        v.relation = kind;
        return v;
      }
    }
  }
  return v;
}

// True iff one line contains every point.
inline bool is_degenerate(const Instance& inst) {
  if (!inst.is_planar()) throw Unsupported("degeneracy is only defined for planar instances");
  const auto pts = inst.points();
  if (pts.size() <= 2) return true;
  for (std::size_t i = 2; i < pts.size(); ++i) {
    if (orientation(pts[0], pts[1], pts[i]) != 0) return false;
  }
  return true;
}

}  // namespace kopt
