#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "kopt/error.hpp"
#include "kopt/instance.hpp"
#include "kopt/tour.hpp"

namespace kopt {

inline constexpr std::size_t kMaxHeldKarp = 18;
inline constexpr std::size_t kMaxBruteForce = 9;

struct ExactSolution {
  Tour tour;
  double length = 0.0;
};

// Held-Karp dynamic program over subsets of vertices 1..n-1, vertex 0 fixed
// as the start.
template <DistanceOracle D>
ExactSolution held_karp(const D& d) {
  const std::size_t n = d.size();
  if (n < 3) throw InvalidArgument("exact solver needs at least three vertices");
  if (n > kMaxHeldKarp) {
    throw InvalidArgument("Held-Karp limited to n <= " + std::to_string(kMaxHeldKarp) + ", got " +
                          std::to_string(n));
  }
  const std::size_t m = n - 1;
  const std::size_t full = (std::size_t{1} << m) - 1;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // best[mask * m + last]: shortest path 0 -> ... -> last+1 visiting exactly mask.
  std::vector<double> best((full + 1) * m, kInf);
  std::vector<std::uint8_t> pred((full + 1) * m, 0xff);
  for (std::size_t v = 0; v < m; ++v) best[(std::size_t{1} << v) * m + v] = d.dist(0, v + 1);

  for (std::size_t mask = 1; mask <= full; ++mask) {
    for (std::size_t last = 0; last < m; ++last) {
      if (!(mask & (std::size_t{1} << last))) continue;
      const double here = best[mask * m + last];
      if (here == kInf) continue;
      for (std::size_t nxt = 0; nxt < m; ++nxt) {
        if (mask & (std::size_t{1} << nxt)) continue;
        const std::size_t nmask = mask | (std::size_t{1} << nxt);
        const double cand = here + d.dist(last + 1, nxt + 1);
        double& slot = best[nmask * m + nxt];
        if (cand < slot) {
          slot = cand;
          pred[nmask * m + nxt] = static_cast<std::uint8_t>(last);
        }
      }
    }
  }

  double length = kInf;
  std::size_t last = 0;
  for (std::size_t v = 0; v < m; ++v) {
    const double cand = best[full * m + v] + d.dist(v + 1, 0);
    if (cand < length) {
      length = cand;
      last = v;
    }
  }

  std::vector<std::size_t> order(n);
  std::size_t mask = full;
  for (std::size_t pos = n - 1; pos >= 1; --pos) {
    order[pos] = last + 1;
    const std::uint8_t p = pred[mask * m + last];
    mask &= ~(std::size_t{1} << last);
    last = p;
  }
  order[0] = 0;
  Tour t(std::move(order));
  const double measured = tour_length(d, t);
  return {std::move(t), measured};
}

// Enumerates every cyclic order with vertex 0 first.
template <DistanceOracle D>
ExactSolution brute_force_opt(const D& d) {
  const std::size_t n = d.size();
  if (n < 3) throw InvalidArgument("exact solver needs at least three vertices");
  if (n > kMaxBruteForce) {
    throw InvalidArgument("permutation enumeration limited to n <= " +
                          std::to_string(kMaxBruteForce));
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> best_perm = perm;
  double best = std::numeric_limits<double>::infinity();
  do {
    double len = 0.0;
    for (std::size_t i = 0; i < n; ++i) len += d.dist(perm[i], perm[(i + 1) % n]);
    if (len < best) {
      best = len;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return {Tour(std::move(best_perm)), best};
}

// Provably optimal tour. With cross_check, both solvers run (n <= 9) and must
// agree within 1e-12 relative.
template <DistanceOracle D>
ExactSolution exact_opt(const D& d, bool cross_check = false) {
  ExactSolution hk = held_karp(d);
  if (cross_check) {
    const ExactSolution bf = brute_force_opt(d);
    const double scale = std::max(1.0, std::fabs(bf.length));
    if (std::fabs(hk.length - bf.length) > 1e-12 * scale) {
      throw InternalError("Held-Karp and enumeration disagree on the optimum length");
    }
  }
  return hk;
}

}  // namespace kopt
