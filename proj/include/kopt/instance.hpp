#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kopt/error.hpp"
#include "kopt/geometry.hpp"

namespace kopt {

// Anything that can price the edge between two vertex indices. Local search and
// the exact solvers only ever see this interface, so planar p-norm instances,
// 3-D instances and test matrices share one engine.
template <class D>
concept DistanceOracle = requires(const D& d, std::size_t i, std::size_t j) {
  { d.size() } -> std::convertible_to<std::size_t>;
  { d.dist(i, j) } -> std::convertible_to<double>;
  // True when every distance is an exactly representable integer, so length
  // comparisons need no tolerance.
  { d.exact_lengths() } -> std::convertible_to<bool>;
};

class Instance {
 public:
  Instance() = default;

  static Instance planar(std::vector<Point> points, PNorm norm = PNorm::euclidean(),
                         std::string id = {}) {
    Instance inst;
    inst.id_ = std::move(id);
    inst.norm_ = norm;
    inst.points_ = std::move(points);
    inst.coords_.reserve(inst.points_.size());
    bool integral = true;
    for (const Point& p : inst.points_) {
      inst.coords_.push_back({p.xd(), p.yd(), 0.0});
      integral = integral && p.is_integral() && std::fabs(p.xd()) < kExactLimit &&
                 std::fabs(p.yd()) < kExactLimit;
    }
    inst.exact_ = integral && norm.is_manhattan();
    inst.require_distinct(inst.points_);
    return inst;
  }

  static Instance spatial(std::vector<Point3> points, PNorm norm = PNorm::euclidean(),
                          std::string id = {}) {
    Instance inst;
    inst.id_ = std::move(id);
    inst.norm_ = norm;
    inst.planar_ = false;
    inst.coords_.reserve(points.size());
    for (const Point3& p : points) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
        throw InvalidArgument("non-finite coordinate");
      }
      inst.coords_.push_back({p.x, p.y, p.z});
    }
    inst.points3_ = std::move(points);
    inst.require_distinct(inst.points3_);
    return inst;
  }

  std::size_t size() const { return coords_.size(); }
  bool is_planar() const { return planar_; }
  const PNorm& norm() const { return norm_; }
  const std::string& id() const { return id_; }
  bool exact_lengths() const { return exact_; }

  std::span<const Point> points() const { return points_; }
  std::span<const Point3> points3() const { return points3_; }

  const Point& point(std::size_t i) const {
    if (!planar_) throw Unsupported("3-D instance has no planar points");
    return points_.at(i);
  }

  double dist(std::size_t i, std::size_t j) const {
    const auto& a = coords_[i];
    const auto& b = coords_[j];
    return norm_.length(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
  }

 private:
  // Integer coordinates below 2^50 keep L1 sums exact in a double.
  static constexpr double kExactLimit = 1125899906842624.0;

  template <class P>
  static void require_distinct(const std::vector<P>& pts) {
    std::vector<std::size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
    for (std::size_t k = 1; k < idx.size(); ++k) {
      if (pts[idx[k - 1]] == pts[idx[k]]) {
        throw InvalidArgument("duplicate point at indices " + std::to_string(idx[k - 1]) +
                              " and " + std::to_string(idx[k]));
      }
    }
  }

  std::string id_;
  PNorm norm_;
  bool planar_ = true;
  bool exact_ = false;
  std::vector<Point> points_;
  std::vector<Point3> points3_;
  std::vector<std::array<double, 3>> coords_;
};

static_assert(DistanceOracle<Instance>);

}  // namespace kopt
