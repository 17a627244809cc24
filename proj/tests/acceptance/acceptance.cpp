// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "kopt/kopt.hpp"
#include "kopt/report.hpp"
#include "oracles.hpp"

namespace {

using namespace kopt;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  if (!o.pass) ++failures;
  std::printf("%s criterion %d: %s:%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
              o.detail.str().c_str());
  std::fflush(stdout);
}

// Shared between criteria 4, 5 and 6.
struct Corpus {
  std::vector<Instance> instances;
  std::vector<Tour> heuristic;
  std::vector<Arborescence> trees;
};

}  // namespace

int main() {
  const LowerBoundInstance* layered = nullptr;
  LowerBoundInstance layered_store;

  report(1, "layered family size and groups", [&](Outcome& o) {
    const auto t0 = Clock::now();
    layered_store = generate_lb_instance(2, 1, 3);
    const double dt = seconds_since(t0);
    layered = &layered_store;
    const auto& lb = *layered;
    o.detail << " n=" << lb.size() << " groups=" << lb.group_size(LbGroup::kLeft) << "/"
             << lb.group_size(LbGroup::kRight) << "/" << lb.group_size(LbGroup::kBridge) << "/"
             << lb.group_size(LbGroup::kVertical) << " time=" << dt << "s";
    o.require(lb.size() == 2916, "2916 points");
    o.require(lb.group_size(LbGroup::kLeft) == 824 && lb.group_size(LbGroup::kRight) == 824,
              "824 per layered copy");
    o.require(lb.group_size(LbGroup::kBridge) == 728, "728 bridge points");
    o.require(lb.group_size(LbGroup::kVertical) == 540, "540 connector points");
    o.require(dt < 1.0, "under one second");
  });

  report(2, "layered tour and spanning-tree bounds", [&](Outcome& o) {
    if (!layered) throw Error("family not generated");
    const auto& lb = *layered;
    const LbTour t = build_lb_tour(lb);
    const bool cycle = testing::is_hamiltonian_cycle(lb.size(), testing::tour_edge_list(t.tour));
    // Exact L1 length recomputed edge by edge from the coordinates.
    BigInt measured = 0;
    for (const auto& [a, b] : testing::tour_edge_list(t.tour)) {
      measured += std::abs(lb.coords[a][0] - lb.coords[b][0]) + std::abs(lb.coords[a][1] - lb.coords[b][1]);
    }
    const SpanningTreeBound tree = doubled_spanning_tree_tour(lb);
    o.detail << " cycle=" << (cycle ? "yes" : "no") << " length=" << measured.get_str()
             << " floor=" << lb_tour_floor(lb).get_str() << " tree=" << tree.tree_length.get_str()
             << "<=" << tree.tree_cap.get_str() << " doubled=" << tree.doubled().get_str()
             << "<=" << tree.tour_cap.get_str();
    o.require(cycle, "Hamiltonian cycle");
    o.require(measured == 7836 && t.length() == 7836, "length 7836");
    o.require(measured >= lb_tour_floor(lb) && lb_tour_floor(lb) == 2187, "length >= 2187");
    o.require(tree.spanning, "tree spans");
    o.require(tree.tree_length == 4191 && tree.tree_cap == 5103 && tree.tree_length <= tree.tree_cap,
              "tree 4191 <= 5103");
    o.require(tree.doubled() == 8382 && tree.tour_cap == 10206 && tree.doubled() <= tree.tour_cap,
              "doubled 8382 <= 10206");
  });

  report(3, "exhaustive 2-move scan of the layered tour", [&](Outcome& o) {
    if (!layered) throw Error("family not generated");
    const Tour t = build_lb_tour(*layered).tour;
    const auto t0 = Clock::now();
    const ScanReport r = scan_2opt_optimality(layered->instance, t);
    const double dt = seconds_since(t0);
    const bool search_finds = find_improving_2move(layered->instance, t).has_value();
    o.detail << " pairs=" << r.pairs << " improving=" << r.improving
             << " verdict=" << (r.two_optimal ? "2-optimal" : "not 2-optimal")
             << " exact=" << (r.exact ? "yes" : "no") << " time=" << dt << "s";
    o.require(r.exact, "exact integer gains");
    o.require(search_finds == !r.two_optimal, "agrees with the move search");
    if (r.first && search_finds) {
      o.require(*r.first == *find_improving_2move(layered->instance, t), "same first witness");
    }
    o.require(dt < 60.0, "under 60 seconds");
  });

  Corpus corpus;
  report(4, "certificates on 200 random instances", [&](Outcome& o) {
    ExperimentConfig cfg;
    cfg.seed = 20240601;
    cfg.trials = 200;
    cfg.n_min = 6;
    cfg.n_max = 12;
    cfg.grid = 1000;
    const auto t0 = Clock::now();
    std::size_t passed = 0, triangle = 0, two_opt_checks = 0, violations = 0, within = 0;
    double worst = 0.0;
    for (const TrialSeeds& s : trial_seeds(cfg)) {
      const Instance inst = gen_random(s.n, cfg.grid, PNorm(cfg.p), s.instance);
      Rng start(s.start);
      const Tour heur = two_opt(inst, random_tour(inst.size(), start));
      const Tour opt = exact_opt(inst).tour;
      const Certificate c = certify_pair(inst, opt, heur);
      passed += c.passed();
      within += c.ratio <= c.bound;
      worst = std::max(worst, c.ratio);
      for (const ChordSetReport& set : c.sets) {
        triangle += set.inequalities.triangle_checked;
        two_opt_checks += set.inequalities.two_opt_checked;
        violations += set.inequalities.violations.size();
        if (set.tree) corpus.trees.push_back(set.tree->tree);
      }
      corpus.instances.push_back(inst);
      corpus.heuristic.push_back(heur);
    }
    const double dt = seconds_since(t0);
    o.detail << " passed=" << passed << "/200 triangle-checks=" << triangle
             << " two-opt-checks=" << two_opt_checks << " violations=" << violations
             << " ratio<=bound=" << within << "/200 max-ratio=" << worst
             << " arborescences=" << corpus.trees.size() << " time=" << dt << "s";
    o.require(passed == 200, "all certificates pass");
    o.require(violations == 0, "combined inequalities on every edge");
    o.require(within == 200, "ratio within bound");
    o.require(dt < 300.0, "under 5 minutes");
  });

  report(5, "lemma suite on certificate and synthetic arborescences", [&](Outcome& o) {
    std::size_t ok = 0, total = 0, main_cases = 0, checks = 0;
    auto run = [&](const Arborescence& a) {
      const LemmaSuiteReport r = verify_lemma_suite(a);
      ++total;
      ok += r.passed();
      main_cases += r.main_applies;
      checks += r.light_checks + r.weight_checks + r.band_checks + r.cover_checks;
    };
    for (const Arborescence& a : corpus.trees) run(a);
    const std::size_t from_certificates = total;
    Rng rng(77);
    std::size_t synthetic_feasible = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto m = static_cast<std::size_t>(rng.between(1, 50));
      const Arborescence a = random_feasible_arborescence(m, rng);
      synthetic_feasible += verify_combined_inequalities(a).passed();
      run(a);
    }
    o.detail << " arborescences=" << total << " (" << from_certificates << " from certificates)"
             << " passed=" << ok << " checks=" << checks << " main-lemma-cases=" << main_cases;
    o.require(from_certificates > 0, "certificate arborescences available");
    o.require(synthetic_feasible == 1000, "synthetic arborescences feasible");
    o.require(ok == total, "every lemma check passes");
  });

  report(6, "2-optimal tours are simple; collinear 2-Opt is optimal", [&](Outcome& o) {
    std::size_t simple = 0;
    for (std::size_t i = 0; i < corpus.instances.size(); ++i) {
      simple += is_simple(corpus.instances[i], corpus.heuristic[i]).simple;
    }
    Rng rng(606);
    std::size_t equal = 0;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const auto n = static_cast<std::size_t>(rng.between(3, 9));
      const Instance inst = testing::random_collinear_instance(rng, n);
      if (!is_degenerate(inst)) throw InternalError("collinear generator produced a proper triangle");
      const double heur = tour_length(inst, two_opt(inst, random_tour(n, rng)));
      const double opt = exact_opt(inst).length;
      const double rel = std::fabs(heur - opt) / opt;
      worst = std::max(worst, rel);
      equal += rel <= 1e-12;
    }
    o.detail << " simple=" << simple << "/" << corpus.instances.size() << " collinear-equal=" << equal
             << "/50 worst-rel-gap=" << worst;
    o.require(!corpus.instances.empty() && simple == corpus.instances.size(), "all simple");
    o.require(equal == 50, "collinear lengths equal");
  });

  report(7, "Held-Karp against permutation enumeration", [&](Outcome& o) {
    Rng rng(707);
    std::size_t equal = 0;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const auto n = static_cast<std::size_t>(rng.between(3, 8));
      const Instance inst = gen_random(n, 1000, PNorm(2), rng.next());
      const double hk = held_karp(inst).length;
      const double bf = brute_force_opt(inst).length;
      const double rel = std::fabs(hk - bf) / bf;
      worst = std::max(worst, rel);
      equal += rel <= 1e-12;
    }
    o.detail << " equal=" << equal << "/50 worst-rel-gap=" << worst;
    o.require(equal == 50, "lengths agree");
  });

  report(8, "bounding-box perimeter bound on convex polygons", [&](Outcome& o) {
    Rng rng(808);
    std::size_t ok = 0, total = 0;
    double tightest = INFINITY;
    for (int i = 0; i < 10000; ++i) {
      const auto samples = static_cast<std::size_t>(rng.between(3, 30));
      const auto poly = testing::random_convex_polygon(rng, samples, 1000);
      for (double p : {1.0, 2.0, 3.0}) {
        const PNorm norm(p);
        const double per = polygon_perimeter(poly, norm);
        const double bound = perimeter_lower_bound(poly, norm);
        ++total;
        ok += per >= bound * (1.0 - 1e-9);
        tightest = std::min(tightest, per / bound);
      }
    }
    o.detail << " checked=" << total << " held=" << ok << " min-perimeter/bound=" << tightest;
    o.require(ok == total && total == 30000, "bound holds everywhere");
  });

  report(9, "spatial family with unit-length tours", [&](Outcome& o) {
    const ThreeDInstance g = generate_3d_instance(8);
    auto unit_edges = [&](const std::vector<std::pair<std::size_t, std::size_t>>& es) {
      std::size_t c = 0;
      for (auto [a, b] : es) c += std::fabs(g.instance.dist(a, b) - 1.0) <= 1e-12;
      return c;
    };
    const std::size_t tu = unit_edges(g.t_edges), su = unit_edges(g.s_edges);
    const double tl = tour_length(g.instance, g.t), sl = tour_length(g.instance, g.s);
    const bool s_two_opt = is_k_optimal(g.instance, g.s, 2).optimal;
    o.detail << " points=" << g.instance.size() << " T-unit-edges=" << tu << "/" << g.t_edges.size()
             << " S-unit-edges=" << su << "/" << g.s_edges.size() << " lengths=" << tl << "," << sl
             << " S-2-optimal=" << (s_two_opt ? "yes" : "no");
    o.require(g.instance.size() == 32, "32 points");
    o.require(g.t_edges.size() == 32 && tu == 32, "T has 32 unit edges");
    o.require(g.s_edges.size() == 32 && su == 32, "S has 32 unit edges");
    o.require(testing::is_hamiltonian_cycle(32, g.t_edges) && testing::is_hamiltonian_cycle(32, g.s_edges),
              "both are tours");
    o.require(std::fabs(tl - 32.0) <= 32e-12 && std::fabs(sl - 32.0) <= 32e-12, "total length 32");
    o.require(s_two_opt, "S is 2-optimal");
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
