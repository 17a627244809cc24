#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kopt/error.hpp"
#include "kopt/geometry.hpp"
#include "kopt/instance.hpp"
#include "kopt/tour.hpp"

namespace kopt {

// mt19937_64 with hand-written range reduction: the standard distributions are
// implementation-defined, and reports must match across toolchains.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw InvalidArgument("empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    return lo + static_cast<std::int64_t>(below(span));
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
  return p;
}

inline Tour random_tour(std::size_t n, Rng& rng) { return Tour(random_permutation(n, rng)); }

// n distinct points of {0..grid}^2 with no three collinear.
inline Instance gen_random(std::size_t n, std::int64_t grid, PNorm norm, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("need at least one point");
  if (grid < 0 || static_cast<std::uint64_t>(grid) < n) {
    throw InvalidArgument("grid bound must be at least n");
  }
  Rng rng(seed);
  std::vector<Point> pts;
  pts.reserve(n);
  const std::size_t budget = 1000 + 200 * n;
  std::size_t attempts = 0;
  while (pts.size() < n) {
    if (++attempts > budget) {
      throw Error("general-position rejection budget exhausted after " + std::to_string(budget) +
                  " draws");
    }
    const Point cand(rng.between(0, grid), rng.between(0, grid));
    bool ok = true;
    for (std::size_t i = 0; ok && i < pts.size(); ++i) {
      if (pts[i] == cand) ok = false;
      for (std::size_t j = i + 1; ok && j < pts.size(); ++j) {
        if (orientation(pts[i], pts[j], cand) == 0) ok = false;
      }
    }
    if (ok) pts.push_back(cand);
  }
  return Instance::planar(std::move(pts), norm,
                          "random-n" + std::to_string(n) + "-s" + std::to_string(seed));
}

// Exhaustive check that no three points of a planar instance are collinear.
inline bool in_general_position(const Instance& inst) {
  const auto pts = inst.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        if (orientation(pts[i], pts[j], pts[k]) == 0) return false;
      }
    }
  }
  return true;
}

}  // namespace kopt
