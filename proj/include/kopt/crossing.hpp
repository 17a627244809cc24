#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kopt/error.hpp"
#include "kopt/geometry.hpp"
#include "kopt/instance.hpp"
#include "kopt/tour.hpp"

namespace kopt {

// A tour edge of T meets an edge of S in a way that is impossible for points in
// general position (touching or collinear overlap).
class GeneralPositionViolation : public Error {
 public:
  GeneralPositionViolation(std::size_t t_edge, std::size_t s_edge, RelationKind relation)
      : Error(describe(t_edge, s_edge, relation)),
        t_edge_(t_edge),
        s_edge_(s_edge),
        relation_(relation) {}

  std::size_t t_edge() const { return t_edge_; }
  std::size_t s_edge() const { return s_edge_; }
  RelationKind relation() const { return relation_; }

 private:
  static std::string describe(std::size_t t, std::size_t s, RelationKind r) {
    std::ostringstream os;
    os << "general position violated: T edge " << t << " and S edge " << s << " relation "
       << to_string(r);
    return os.str();
  }

  std::size_t t_edge_;
  std::size_t s_edge_;
  RelationKind relation_;
};

struct Crossing {
  std::size_t t_edge = 0;  // position in T
  std::size_t s_edge = 0;  // position in S
  Point at;
};

// Every pair of a T edge and an S edge that cross in a point interior to both.
// Identical edges are not crossings.
inline std::vector<Crossing> find_crossings(const Instance& inst, const Tour& t, const Tour& s) {
  if (!inst.is_planar()) throw Unsupported("crossings are only defined for planar instances");
  if (t.size() != inst.size() || s.size() != inst.size()) {
    throw InvalidArgument("tour size does not match instance");
  }
  std::vector<Crossing> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const DirectedEdge te = t.edge(i);
    const Segment ts = tour_segment(inst, t, i);
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (te.same_segment(s.edge(j))) continue;
      const SegmentRelation rel = segment_relation(ts, tour_segment(inst, s, j));
      switch (kind_of(rel)) {
        case RelationKind::kCross:
          out.push_back({i, j, std::get<Cross>(rel).at});
          break;
        case RelationKind::kTouch:
        case RelationKind::kOverlap:
          throw GeneralPositionViolation(i, j, kind_of(rel));
        default:
          break;
      }
    }
  }
  return out;
}

// Where a vertex of the subdivided instance comes from.
struct VertexOrigin {
  bool is_crossing = false;
  std::size_t original = 0;  // index in the input instance when !is_crossing
  std::size_t t_edge = 0;    // crossing edge positions when is_crossing
  std::size_t s_edge = 0;
};

struct CrossingFreePair {
  Instance instance;  // original points first, then the crossing points
  Tour t;
  Tour s;
  std::size_t original_size = 0;
  std::size_t crossings = 0;
  std::vector<VertexOrigin> origin;
};

namespace detail {

// Subdivides every edge of `tour` at the points registered on it, ordered by
// distance from the edge's tail.
inline Tour subdivide(const Tour& tour, const std::vector<Point>& points,
                      const std::vector<std::vector<std::size_t>>& on_edge) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < tour.size(); ++i) {
    const DirectedEdge e = tour.edge(i);
    order.push_back(e.from);
    std::vector<std::size_t> inner = on_edge[i];
    const Segment seg(points[e.from], points[e.to]);
    std::sort(inner.begin(), inner.end(), [&](std::size_t a, std::size_t b) {
      return line_parameter(seg, points[a]) < line_parameter(seg, points[b]);
    });
    order.insert(order.end(), inner.begin(), inner.end());
  }
  return Tour(std::move(order));
}

}  // namespace detail

// Adds every crossing point as a vertex and subdivides both tours there. The
// induced tours trace the same polygons, so no pair of edges crosses anymore.
inline CrossingFreePair make_crossing_free(const Instance& inst, const Tour& t, const Tour& s) {
  for (const Tour* tour : {&t, &s}) {
    const SimplicityVerdict v = is_simple(inst, *tour);
    if (!v.simple) {
      throw InvalidArgument("crossing-free transform needs simple tours; edges " +
                            std::to_string(v.witness->first) + " and " +
                            std::to_string(v.witness->second) + " meet");
    }
  }
  const std::vector<Crossing> crossings = find_crossings(inst, t, s);

  const std::size_t n = inst.size();
  std::vector<Point> points(inst.points().begin(), inst.points().end());
  std::vector<VertexOrigin> origin(n);
  for (std::size_t v = 0; v < n; ++v) origin[v].original = v;

  std::map<Point, std::size_t> added;
  std::vector<std::vector<std::size_t>> on_t(n), on_s(n);
  for (const Crossing& c : crossings) {
    auto [it, fresh] = added.try_emplace(c.at, points.size());
    if (fresh) {
      points.push_back(c.at);
      origin.push_back({true, 0, c.t_edge, c.s_edge});
    }
    const std::size_t v = it->second;
    auto push_unique = [v](std::vector<std::size_t>& list) {
      if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
    };
    push_unique(on_t[c.t_edge]);
    push_unique(on_s[c.s_edge]);
  }

  CrossingFreePair pair;
  pair.original_size = n;
  pair.crossings = crossings.size();
  pair.t = detail::subdivide(t, points, on_t);
  pair.s = detail::subdivide(s, points, on_s);
  pair.origin = std::move(origin);
  pair.instance = Instance::planar(std::move(points), inst.norm(), inst.id());
  return pair;
}

struct LengthPreservation {
  double t_before = 0.0;
  double t_after = 0.0;
  double s_before = 0.0;
  double s_after = 0.0;
  bool exact = false;  // compared as exact rationals (p = 1)
  bool preserved = false;
};

namespace detail {

inline Rational exact_manhattan_length(const Instance& inst, const Tour& t) {
  Rational total = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const DirectedEdge e = t.edge(i);
    total += manhattan_exact(inst.point(e.from), inst.point(e.to));
  }
  return total;
}

}  // namespace detail

// Subdividing a polygon keeps its length: exact for p = 1, relative 1e-9 otherwise.
inline LengthPreservation check_length_preservation(const Instance& inst, const Tour& t,
                                                    const Tour& s, const CrossingFreePair& pair) {
  LengthPreservation r;
  r.t_before = tour_length(inst, t);
  r.s_before = tour_length(inst, s);
  r.t_after = tour_length(pair.instance, pair.t);
  r.s_after = tour_length(pair.instance, pair.s);
  if (inst.norm().is_manhattan()) {
    r.exact = true;
    r.preserved = detail::exact_manhattan_length(inst, t) ==
                      detail::exact_manhattan_length(pair.instance, pair.t) &&
                  detail::exact_manhattan_length(inst, s) ==
                      detail::exact_manhattan_length(pair.instance, pair.s);
    return r;
  }
  auto close = [](double a, double b) { return std::fabs(a - b) <= 1e-9 * std::max(a, b); };
  r.preserved = close(r.t_before, r.t_after) && close(r.s_before, r.s_after);
  return r;
}

}  // namespace kopt
