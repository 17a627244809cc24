#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kopt/crossing.hpp"
#include "kopt/error.hpp"
#include "kopt/geometry.hpp"
#include "kopt/instance.hpp"
#include "kopt/tour.hpp"

namespace kopt {

class NotEnoughChords : public Error {
 public:
  explicit NotEnoughChords(std::size_t count)
      : Error("reference chord needs at least two chords on one side, got " +
              std::to_string(count)),
        count_(count) {}
  std::size_t count() const { return count_; }

 private:
  std::size_t count_;
};

// Edges of S' grouped by where their open segment lies relative to polygon T'.
struct EdgeClasses {
  std::vector<DirectedEdge> interior;
  std::vector<DirectedEdge> exterior;
  std::vector<DirectedEdge> on_tour;
};

inline EdgeClasses classify_edges(const Instance& inst, const Tour& t, const Tour& s) {
  if (!inst.is_planar()) throw Unsupported("edge classification needs a planar instance");
  if (t.size() != inst.size() || s.size() != inst.size()) {
    throw InvalidArgument("tour size does not match instance");
  }
  std::vector<Point> polygon;
  polygon.reserve(t.size());
  for (std::size_t v : t.order()) polygon.push_back(inst.point(v));
  const SimplePolygon poly(std::move(polygon));

  const std::vector<std::size_t> pos = t.positions();
  const std::size_t n = t.size();
  auto on_tour = [&](const DirectedEdge& e) {
    const std::size_t d = (pos[e.to] + n - pos[e.from]) % n;
    return d == 1 || d == n - 1;
  };

  EdgeClasses out;
  for (const DirectedEdge& e : s.edges()) {
    if (on_tour(e)) {
      out.on_tour.push_back(e);
      continue;
    }
    const Point mid = Segment(inst.point(e.from), inst.point(e.to)).midpoint();
    switch (point_in_polygon(mid, poly)) {
      case Location::kInterior: out.interior.push_back(e); break;
      case Location::kExterior: out.exterior.push_back(e); break;
      case Location::kBoundary:
        throw InternalError("edge " + std::to_string(e.from) + "-" + std::to_string(e.to) +
                            " has its midpoint on T' without being a T' edge");
    }
  }
  return out;
}

inline EdgeClasses classify_edges(const CrossingFreePair& pair) {
  return classify_edges(pair.instance, pair.t, pair.s);
}

// A chord (from, to) of T' together with the walk along T' from `from` to `to`
// that carries every endpoint of the other chords on the same side.
struct ReferencePath {
  DirectedEdge edge;
  std::vector<std::size_t> path;

  // Index of every path vertex along the walk, or npos when not on it.
  std::vector<std::size_t> ranks(std::size_t n) const {
    std::vector<std::size_t> r(n, npos);
    for (std::size_t i = 0; i < path.size(); ++i) r[path[i]] = i;
    return r;
  }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

namespace detail {

// Vertices strictly between positions `from` and `to` walking forward along t.
inline std::vector<std::size_t> forward_walk(const Tour& t, std::size_t from_pos, std::size_t to_pos) {
  std::vector<std::size_t> walk;
  for (std::size_t p = from_pos;; p = t.next_pos(p)) {
    walk.push_back(t[p]);
    if (p == to_pos) break;
  }
  return walk;
}

// Which sides of `chord` hold no endpoint of another chord in their interior.
// Returns {forward side empty, backward side empty}.
inline std::pair<bool, bool> empty_sides(const Tour& t, const std::vector<std::size_t>& pos,
                                         const std::vector<DirectedEdge>& chords,
                                         const DirectedEdge& chord) {
  const std::size_t n = t.size();
  const std::size_t a = pos[chord.from];
  const std::size_t span = (pos[chord.to] + n - a) % n;
  bool forward_empty = true;
  bool backward_empty = true;
  for (const DirectedEdge& other : chords) {
    if (other.same_segment(chord)) continue;
    for (std::size_t v : {other.from, other.to}) {
      if (v == chord.from || v == chord.to) continue;
      const std::size_t off = (pos[v] + n - a) % n;
      if (off < span) {
        forward_empty = false;
      } else {
        backward_empty = false;
      }
    }
  }
  return {forward_empty, backward_empty};
}

}  // namespace detail

// True when one side of `chord` along t contains no endpoint of another chord.
inline bool qualifies_as_reference(const Tour& t, const std::vector<DirectedEdge>& chords,
                                   const DirectedEdge& chord) {
  const auto [fwd, bwd] = detail::empty_sides(t, t.positions(), chords, chord);
  return fwd || bwd;
}

// Builds the reference path for a chord known to qualify.
inline ReferencePath reference_path_for(const Tour& t, const std::vector<DirectedEdge>& chords,
                                        const DirectedEdge& chord) {
  if (chords.size() < 2) throw NotEnoughChords(chords.size());
  const std::vector<std::size_t> pos = t.positions();
  const auto [fwd_empty, bwd_empty] = detail::empty_sides(t, pos, chords, chord);
  if (!fwd_empty && !bwd_empty) {
    throw InvalidArgument("chord " + std::to_string(chord.from) + "-" + std::to_string(chord.to) +
                          " has chord endpoints on both sides");
  }
  ReferencePath ref{chord, {}};
  if (bwd_empty) {
    // The forward walk from tail to head carries the other endpoints.
    ref.path = detail::forward_walk(t, pos[chord.from], pos[chord.to]);
  } else {
    std::vector<std::size_t> back = detail::forward_walk(t, pos[chord.to], pos[chord.from]);
    ref.path.assign(back.rbegin(), back.rend());
  }
  return ref;
}

// The qualifying chord with the smallest tail index, ties broken by head index.
inline ReferencePath select_reference_edge(const std::vector<DirectedEdge>& chords, const Tour& t) {
  if (chords.size() < 2) throw NotEnoughChords(chords.size());
  const std::vector<std::size_t> pos = t.positions();
  std::optional<DirectedEdge> best;
  for (const DirectedEdge& c : chords) {
    const auto [fwd, bwd] = detail::empty_sides(t, pos, chords, c);
    if (!(fwd || bwd)) continue;
    if (!best || c < *best) best = c;
  }
  if (!best) throw InternalError("no chord has an empty side; chords must cross");
  return reference_path_for(t, chords, *best);
}

struct OrientationSplit {
  std::vector<DirectedEdge> compatible;  // tail before head along the reference path
  std::vector<DirectedEdge> reversed;
};

inline OrientationSplit orientation_split(const std::vector<DirectedEdge>& chords,
                                          const ReferencePath& ref, std::size_t n) {
  const std::vector<std::size_t> rank = ref.ranks(n);
  OrientationSplit out;
  for (const DirectedEdge& c : chords) {
    if (rank[c.from] == ReferencePath::npos || rank[c.to] == ReferencePath::npos) {
      throw InternalError("chord endpoint off the reference path");
    }
    (rank[c.from] < rank[c.to] ? out.compatible : out.reversed).push_back(c);
  }
  return out;
}

// One side (interior or exterior) of the partition.
struct ChordSide {
  std::vector<DirectedEdge> chords;
  std::optional<ReferencePath> reference;  // absent with fewer than two chords
  OrientationSplit split;
};

struct EdgePartition {
  ChordSide interior;
  ChordSide exterior;
  std::vector<DirectedEdge> on_tour;

  std::size_t size() const {
    return interior.split.compatible.size() + interior.split.reversed.size() +
           exterior.split.compatible.size() + exterior.split.reversed.size() + on_tour.size();
  }
};

namespace detail {

inline ChordSide split_side(std::vector<DirectedEdge> chords, const Tour& t,
                            const std::optional<DirectedEdge>& forced) {
  ChordSide side;
  side.chords = std::move(chords);
  if (side.chords.size() < 2) {
    // A lone chord is bounded directly by the triangle inequality.
    side.split.compatible = side.chords;
    return side;
  }
  side.reference = forced ? reference_path_for(t, side.chords, *forced)
                          : select_reference_edge(side.chords, t);
  side.split = orientation_split(side.chords, *side.reference, t.size());
  return side;
}

}  // namespace detail

// Five-way split of S'. `interior_reference` forces the interior reference
// chord instead of the smallest-tail rule.
inline EdgePartition partition_edges(const CrossingFreePair& pair,
                                     std::optional<DirectedEdge> interior_reference = std::nullopt,
                                     std::optional<DirectedEdge> exterior_reference = std::nullopt) {
  EdgeClasses classes = classify_edges(pair);
  auto contains = [](const std::vector<DirectedEdge>& list, const DirectedEdge& e) {
    for (const DirectedEdge& f : list) {
      if (f == e) return true;
    }
    return false;
  };
  if (interior_reference && !contains(classes.interior, *interior_reference)) {
    throw InvalidArgument("forced interior reference is not an interior chord");
  }
  if (exterior_reference && !contains(classes.exterior, *exterior_reference)) {
    throw InvalidArgument("forced exterior reference is not an exterior chord");
  }
  EdgePartition p;
  p.interior = detail::split_side(std::move(classes.interior), pair.t, interior_reference);
  p.exterior = detail::split_side(std::move(classes.exterior), pair.t, exterior_reference);
  p.on_tour = std::move(classes.on_tour);
  return p;
}

}  // namespace kopt
