#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kopt/error.hpp"

namespace kopt {

using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(const BigInt& num, const BigInt& den = 1) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::string to_string(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------------------
// p-norm selector

class PNorm {
 public:
  PNorm() = default;
  explicit PNorm(double p) : p_(p) {
    if (!std::isfinite(p) || !(p >= 1.0)) {
      throw InvalidArgument("p-norm requires a finite p >= 1, got " + std::to_string(p));
    }
  }

  static PNorm manhattan() { return PNorm(1.0); }
  static PNorm euclidean() { return PNorm(2.0); }

  double p() const { return p_; }
  bool is_integral() const { return p_ == std::floor(p_); }
  bool is_manhattan() const { return p_ == 1.0; }

  // Norm of the vector (dx, dy, dz).
  double length(double dx, double dy, double dz = 0.0) const {
    dx = std::fabs(dx);
    dy = std::fabs(dy);
    dz = std::fabs(dz);
    if (p_ == 1.0) return dx + dy + dz;
    if (p_ == 2.0) return dz == 0.0 ? std::hypot(dx, dy) : std::hypot(dx, dy, dz);
    const double m = std::max({dx, dy, dz});
    if (m == 0.0) return 0.0;
    const double s = std::pow(dx / m, p_) + std::pow(dy / m, p_) + std::pow(dz / m, p_);
    return m * std::pow(s, 1.0 / p_);
  }

  friend bool operator==(const PNorm&, const PNorm&) = default;

 private:
  double p_ = 2.0;
};

// ---------------------------------------------------------------------------
// Points and segments

struct Point {
  Rational x;
  Rational y;

  Point() = default;
  Point(long px, long py) : x(px), y(py) {}
  Point(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {
    x.canonicalize();
    y.canonicalize();
  }

  bool is_integral() const { return is_integer(x) && is_integer(y); }
  double xd() const { return x.get_d(); }
  double yd() const { return y.get_d(); }

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  friend bool operator<(const Point& a, const Point& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
  friend std::ostream& operator<<(std::ostream& os, const Point& p) {
    return os << '(' << p.x.get_str() << ", " << p.y.get_str() << ')';
  }
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
  friend bool operator<(const Point3& a, const Point3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
  }
};

inline double pdist(const PNorm& norm, const Point& a, const Point& b) {
  const Rational dx = a.x - b.x;
  const Rational dy = a.y - b.y;
  return norm.length(dx.get_d(), dy.get_d());
}

inline double pdist(const PNorm& norm, const Point3& a, const Point3& b) {
  return norm.length(a.x - b.x, a.y - b.y, a.z - b.z);
}

// Exact L1 distance; rational inputs give a rational result.
inline Rational manhattan_exact(const Point& a, const Point& b) {
  return Rational(abs(a.x - b.x) + abs(a.y - b.y));
}

struct Segment {
  Point a;
  Point b;

  Segment(Point pa, Point pb) : a(std::move(pa)), b(std::move(pb)) {
    if (a == b) throw InvalidArgument("degenerate segment");
  }

  Point midpoint() const { return Point((a.x + b.x) / 2, (a.y + b.y) / 2); }

  // Endpoints ordered lexicographically; identity of the point set.
  Segment normalized() const { return b < a ? Segment(b, a) : *this; }

  friend bool operator==(const Segment& s, const Segment& t) { return s.a == t.a && s.b == t.b; }
};

// Sign of the cross product (b - a) x (c - a).
inline int orientation(const Point& a, const Point& b, const Point& c) {
  const Rational det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return sgn(det);
}

// Assumes p is collinear with s.
inline bool within_box(const Point& p, const Segment& s) {
  return std::min(s.a.x, s.b.x) <= p.x && p.x <= std::max(s.a.x, s.b.x) &&
         std::min(s.a.y, s.b.y) <= p.y && p.y <= std::max(s.a.y, s.b.y);
}

inline bool on_segment(const Point& p, const Segment& s) {
  return orientation(s.a, s.b, p) == 0 && within_box(p, s);
}

// ---------------------------------------------------------------------------
// Segment relation

struct Disjoint {
  friend bool operator==(const Disjoint&, const Disjoint&) = default;
};
struct SharedEndpoint {
  Point at;
  friend bool operator==(const SharedEndpoint&, const SharedEndpoint&) = default;
};
// An endpoint of one segment lies on the other, without being a shared endpoint.
struct Touch {
  Point at;
  friend bool operator==(const Touch&, const Touch&) = default;
};
// Single intersection strictly interior to both segments.
struct Cross {
  Point at;
  friend bool operator==(const Cross&, const Cross&) = default;
};
// Collinear overlap of positive length; `part` is normalized.
struct Overlap {
  Segment part;
  friend bool operator==(const Overlap&, const Overlap&) = default;
};

using SegmentRelation = std::variant<Disjoint, SharedEndpoint, Touch, Cross, Overlap>;

enum class RelationKind { kDisjoint, kSharedEndpoint, kTouch, kCross, kOverlap };

inline RelationKind kind_of(const SegmentRelation& r) {
  return static_cast<RelationKind>(r.index());
}

inline std::string_view to_string(RelationKind k) {
  switch (k) {
    case RelationKind::kDisjoint: return "Disjoint";
    case RelationKind::kSharedEndpoint: return "SharedEndpoint";
    case RelationKind::kTouch: return "Touch";
    case RelationKind::kCross: return "Cross";
    case RelationKind::kOverlap: return "Overlap";
  }
  return "?";
}

namespace detail {

// Parameter of a point on the segment's supporting line along its dominant axis.
inline Rational line_parameter(const Segment& s, const Point& p) {
  if (s.a.x != s.b.x) return (p.x - s.a.x) / (s.b.x - s.a.x);
  return (p.y - s.a.y) / (s.b.y - s.a.y);
}

inline std::optional<Point> shared_endpoint(const Segment& e, const Segment& f) {
  if (e.a == f.a || e.a == f.b) return e.a;
  if (e.b == f.a || e.b == f.b) return e.b;
  return std::nullopt;
}

inline SegmentRelation collinear_relation(const Segment& e, const Segment& f) {
  // Work in e's parameter space: e spans [0, 1].
  Rational t0 = line_parameter(e, f.a);
  Rational t1 = line_parameter(e, f.b);
  if (t1 < t0) std::swap(t0, t1);
  const Rational lo = t0 > 0 ? t0 : Rational(0);
  const Rational hi = t1 < 1 ? t1 : Rational(1);
  if (lo > hi) return Disjoint{};
  const Point dir(e.b.x - e.a.x, e.b.y - e.a.y);
  auto at = [&](const Rational& t) { return Point(e.a.x + t * dir.x, e.a.y + t * dir.y); };
  if (lo == hi) {
    const Point p = at(lo);
    const bool end_e = p == e.a || p == e.b;
    const bool end_f = p == f.a || p == f.b;
    if (end_e && end_f) return SharedEndpoint{p};
    return Touch{p};
  }
  return Overlap{Segment(at(lo), at(hi)).normalized()};
}

}  // namespace detail

inline SegmentRelation segment_relation(const Segment& e, const Segment& f) {
  const int o1 = orientation(e.a, e.b, f.a);
  const int o2 = orientation(e.a, e.b, f.b);
  const int o3 = orientation(f.a, f.b, e.a);
  const int o4 = orientation(f.a, f.b, e.b);

  if (o1 == 0 && o2 == 0) return detail::collinear_relation(e, f);

  // Non-collinear supporting lines meet in at most one point.
  if (auto p = detail::shared_endpoint(e, f)) return SharedEndpoint{*p};

  if (o1 * o2 < 0 && o3 * o4 < 0) {
    const Rational rx = e.b.x - e.a.x;
    const Rational ry = e.b.y - e.a.y;
    const Rational sx = f.b.x - f.a.x;
    const Rational sy = f.b.y - f.a.y;
    const Rational denom = rx * sy - ry * sx;
    const Rational t = ((f.a.x - e.a.x) * sy - (f.a.y - e.a.y) * sx) / denom;
    return Cross{Point(e.a.x + t * rx, e.a.y + t * ry)};
  }
  if (o1 == 0 && within_box(f.a, e)) return Touch{f.a};
  if (o2 == 0 && within_box(f.b, e)) return Touch{f.b};
  if (o3 == 0 && within_box(e.a, f)) return Touch{e.a};
  if (o4 == 0 && within_box(e.b, f)) return Touch{e.b};
  return Disjoint{};
}

// ---------------------------------------------------------------------------
// Polygons

enum class Location { kInterior, kBoundary, kExterior };

inline std::string_view to_string(Location l) {
  switch (l) {
    case Location::kInterior: return "Interior";
    case Location::kBoundary: return "Boundary";
    case Location::kExterior: return "Exterior";
  }
  return "?";
}

// A closed polygon whose edges meet only at shared consecutive vertices.
class SimplePolygon {
 public:
  explicit SimplePolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    validate();
  }

  std::span<const Point> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Segment edge(std::size_t i) const {
    return Segment(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
  }

 private:
  void validate() const {
    const std::size_t n = vertices_.size();
    if (n < 3) throw NonSimplePolygon("polygon needs at least three vertices");
    for (std::size_t i = 0; i < n; ++i) {
      if (vertices_[i] == vertices_[(i + 1) % n]) {
        throw NonSimplePolygon("polygon has a zero-length edge");
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
        const RelationKind k = kind_of(segment_relation(edge(i), edge(j)));
        const bool ok = adjacent ? k == RelationKind::kSharedEndpoint
                                 : k == RelationKind::kDisjoint;
        if (!ok) {
          std::ostringstream msg;
          msg << "polygon edges " << i << " and " << j << " meet (" << to_string(k) << ")";
          throw NonSimplePolygon(msg.str());
        }
      }
    }
  }

  std::vector<Point> vertices_;
};

// Crossing-number test with an exact on-boundary check.
inline Location point_in_polygon(const Point& pt, const SimplePolygon& poly) {
  bool inside = false;
  const auto v = poly.vertices();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % n];
    const int o = orientation(a, b, pt);
    if (o == 0 && within_box(pt, Segment(a, b))) return Location::kBoundary;
    if ((a.y > pt.y) != (b.y > pt.y)) {
      // Edge straddles the horizontal ray; count it when the crossing lies to the right.
      const bool upward = b.y > a.y;
      if ((upward && o > 0) || (!upward && o < 0)) inside = !inside;
    }
  }
  return inside ? Location::kInterior : Location::kExterior;
}

inline Location point_in_polygon(const Point& pt, std::span<const Point> poly) {
  return point_in_polygon(pt, SimplePolygon(std::vector<Point>(poly.begin(), poly.end())));
}

struct BoxSides {
  Rational dx;
  Rational dy;
};

inline BoxSides bounding_box(std::span<const Point> points) {
  if (points.empty()) throw InvalidArgument("bounding box of an empty point set");
  Rational xmin = points[0].x, xmax = points[0].x;
  Rational ymin = points[0].y, ymax = points[0].y;
  for (const Point& p : points) {
    if (p.x < xmin) xmin = p.x;
    if (p.x > xmax) xmax = p.x;
    if (p.y < ymin) ymin = p.y;
    if (p.y > ymax) ymax = p.y;
  }
  return {Rational(xmax - xmin), Rational(ymax - ymin)};
}

// Length of the closed walk through the vertices in order.
inline double polygon_perimeter(std::span<const Point> poly, const PNorm& norm) {
  double total = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    total += pdist(norm, poly[i], poly[(i + 1) % poly.size()]);
  }
  return total;
}

// Any closed walk through the vertices is at least twice the p-norm of the
// bounding box diagonal.
inline double perimeter_lower_bound(std::span<const Point> poly, const PNorm& norm) {
  if (poly.size() < 2) throw InvalidArgument("perimeter bound needs at least two points");
  const BoxSides box = bounding_box(poly);
  return 2.0 * norm.length(box.dx.get_d(), box.dy.get_d());
}

}  // namespace kopt
