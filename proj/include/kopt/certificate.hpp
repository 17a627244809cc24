#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kopt/arborescence.hpp"
#include "kopt/crossing.hpp"
#include "kopt/error.hpp"
#include "kopt/instance.hpp"
#include "kopt/partition.hpp"
#include "kopt/tour.hpp"

namespace kopt {

// Upper bound on c(S)/c(T) for a 2-optimal S and an optimal T on a crossing-free
// instance with nprime vertices: four chord sets at max(18, 12 log/loglog)
// each, plus the edges shared with T.
inline double certified_ratio_bound(std::size_t nprime) {
  if (nprime < 3) throw InvalidArgument("ratio bound needs at least three vertices");
  const double x = static_cast<double>(nprime);
  return 4.0 * std::max(18.0, 12.0 * log_ratio(x)) + 1.0;
}

// Per-chord-set allowance in units of c(T).
inline double chord_set_factor(std::size_t nprime) {
  if (nprime < 3) throw InvalidArgument("ratio bound needs at least three vertices");
  return std::max(18.0, 12.0 * log_ratio(static_cast<double>(nprime)));
}

struct ChordSetReport {
  std::string name;  // "interior-compatible", "interior-reversed", ...
  std::size_t chords = 0;
  double length = 0.0;
  bool direct = false;       // bounded by the triangle inequality alone
  double allowance = 0.0;    // in length units
  bool within = true;
  std::optional<DualArborescence> tree;
  InequalityReport inequalities;
  LemmaSuiteReport lemmas;
  bool weights_consistent = true;  // sum c equals the set length, sum w <= c(T')

  bool passed() const {
    return within && weights_consistent && inequalities.passed() && lemmas.passed();
  }
};

struct Certificate {
  std::size_t n = 0;
  std::size_t nprime = 0;
  std::size_t crossings = 0;
  double t_length = 0.0;
  double s_length = 0.0;
  double ratio = 0.0;
  double bound = 0.0;
  bool lengths_preserved = false;
  bool sprime_two_optimal = false;
  bool partition_exact = false;
  std::size_t on_tour = 0;
  double on_tour_length = 0.0;
  bool on_tour_within = false;
  std::optional<DirectedEdge> interior_reference;
  std::optional<DirectedEdge> exterior_reference;
  std::vector<ChordSetReport> sets;

  std::vector<std::string> failures() const {
    std::vector<std::string> f;
    if (!lengths_preserved) f.push_back("subdivision changed a tour length");
    if (!sprime_two_optimal) f.push_back("subdivided S is not 2-optimal");
    if (!partition_exact) f.push_back("edge partition does not cover S' exactly");
    if (!on_tour_within) f.push_back("edges shared with T exceed c(T)");
    for (const auto& s : sets) {
      if (!s.weights_consistent) f.push_back(s.name + ": arborescence weights inconsistent");
      if (!s.inequalities.passed()) f.push_back(s.name + ": combined inequality violated");
      if (!s.lemmas.passed()) f.push_back(s.name + ": lemma check failed");
      if (!s.within) f.push_back(s.name + ": chord length above allowance");
    }
    if (!(ratio <= bound)) f.push_back("ratio above certified bound");
    return f;
  }
  bool passed() const { return failures().empty(); }
};

struct CertifyOptions {
  std::optional<DirectedEdge> interior_reference;
  std::optional<DirectedEdge> exterior_reference;
  double rel_eps = kCertEpsilon;
};

namespace detail {

template <DistanceOracle D>
double edges_length(const D& d, const std::vector<DirectedEdge>& es) {
  double s = 0.0;
  for (const DirectedEdge& e : es) s += d.dist(e.from, e.to);
  return s;
}

}  // namespace detail

// Runs the whole upper-bound argument on a concrete pair: subdivide at the
// crossings, split S' into five sets, build the dual arborescence of each chord
// set and check every inequality the bound relies on.
inline Certificate certify_pair(const Instance& inst, const Tour& t, const Tour& s,
                                const CertifyOptions& opt = {}) {
  Certificate cert;
  cert.n = inst.size();
  const CrossingFreePair pair = make_crossing_free(inst, t, s);
  const Instance& vp = pair.instance;
  cert.nprime = vp.size();
  cert.crossings = pair.crossings;
  cert.lengths_preserved = check_length_preservation(inst, t, s, pair).preserved;
  cert.t_length = tour_length(inst, t);
  cert.s_length = tour_length(inst, s);
  cert.ratio = cert.s_length / cert.t_length;
  cert.bound = certified_ratio_bound(cert.nprime);
  cert.sprime_two_optimal = is_k_optimal(vp, pair.s, 2).optimal;

  const EdgePartition part = partition_edges(pair, opt.interior_reference, opt.exterior_reference);
  cert.partition_exact = part.size() == vp.size();
  if (part.interior.reference) cert.interior_reference = part.interior.reference->edge;
  if (part.exterior.reference) cert.exterior_reference = part.exterior.reference->edge;

  const double tprime = tour_length(vp, pair.t);
  auto close_below = [&](double lhs, double rhs) {
    return lhs <= rhs + opt.rel_eps * std::max(std::fabs(lhs), std::fabs(rhs));
  };

  cert.on_tour = part.on_tour.size();
  cert.on_tour_length = detail::edges_length(vp, part.on_tour);
  cert.on_tour_within = close_below(cert.on_tour_length, tprime);

  const double factor = chord_set_factor(cert.nprime);
  auto add_set = [&](const std::string& name, const ChordSide& side,
                     const std::vector<DirectedEdge>& chords) {
    ChordSetReport rep;
    rep.name = name;
    rep.chords = chords.size();
    rep.length = detail::edges_length(vp, chords);
    if (!side.reference) {
      // At most one chord: it is no longer than either arc of T' it spans.
      rep.direct = true;
      rep.allowance = tprime;
    } else if (!chords.empty()) {
      rep.tree = build_arborescence(vp, pair.t, *side.reference, chords);
      const Arborescence& a = rep.tree->tree;
      rep.weights_consistent = close_below(std::fabs(a.c_total() - rep.length),
                                           opt.rel_eps * rep.length) &&
                               close_below(a.w_total(), tprime);
      rep.inequalities = verify_combined_inequalities(a, opt.rel_eps);
      rep.lemmas = verify_lemma_suite(a, opt.rel_eps);
      rep.allowance = factor * tprime;
    } else {
      rep.allowance = factor * tprime;
    }
    rep.within = close_below(rep.length, rep.allowance);
    cert.sets.push_back(std::move(rep));
  };
  add_set("interior-compatible", part.interior, part.interior.split.compatible);
  add_set("interior-reversed", part.interior, part.interior.split.reversed);
  add_set("exterior-compatible", part.exterior, part.exterior.split.compatible);
  add_set("exterior-reversed", part.exterior, part.exterior.split.reversed);
  return cert;
}

}  // namespace kopt
