#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "kopt/arborescence.hpp"
#include "kopt/certificate.hpp"
#include "kopt/error.hpp"
#include "kopt/exact.hpp"
#include "kopt/lowerbound.hpp"
#include "kopt/random.hpp"
#include "kopt/tour.hpp"

namespace kopt {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "kopt-lab/1";

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::size_t n_min = 6;
  std::size_t n_max = 12;
  std::int64_t grid = 1000;
  double p = 2.0;
  std::size_t trials = 10;
  bool timing = false;  // wall-clock fields break byte-for-byte reproducibility
};

inline Json edge_json(const DirectedEdge& e) { return Json::array({e.from, e.to}); }

inline Json tour_json(const Tour& t) {
  Json a = Json::array();
  for (std::size_t v : t.order()) a.push_back(v);
  return a;
}

inline Json lemma_json(const LemmaSuiteReport& r) {
  Json j;
  j["passed"] = r.passed();
  j["l_values"] = r.l_values;
  j["light_checks"] = r.light_checks;
  j["weight_checks"] = r.weight_checks;
  j["band_checks"] = r.band_checks;
  j["cover_checks"] = r.cover_checks;
  j["main_applies"] = r.main_applies;
  j["main_bound"] = r.main_bound;
  j["log_base"] = r.log_base;
  Json f = Json::array();
  for (const LemmaFailure& x : r.failures) {
    f.push_back({{"lemma", x.lemma}, {"l", x.l}, {"r", x.r}, {"lhs", x.lhs}, {"rhs", x.rhs}});
  }
  j["failures"] = std::move(f);
  return j;
}

inline Json chord_set_json(const ChordSetReport& s) {
  Json j;
  j["name"] = s.name;
  j["chords"] = s.chords;
  j["length"] = s.length;
  j["direct"] = s.direct;
  j["allowance"] = s.allowance;
  j["within"] = s.within;
  j["passed"] = s.passed();
  if (s.tree) {
    const Arborescence& a = s.tree->tree;
    const double c = a.c_total(), w = a.w_total();
    Json arb;
    arb["edges"] = a.size();
    arb["c"] = c;
    arb["w"] = w;
    arb["c_over_w"] = c / w;
    arb["weights_consistent"] = s.weights_consistent;
    arb["triangle_checked"] = s.inequalities.triangle_checked;
    arb["two_opt_checked"] = s.inequalities.two_opt_checked;
    Json v = Json::array();
    for (const InequalityViolation& x : s.inequalities.violations) {
      v.push_back({{"which", x.which}, {"edge", x.edge}, {"lhs", x.lhs}, {"rhs", x.rhs},
                   {"slack", x.slack()}});
    }
    arb["violations"] = std::move(v);
    arb["lemmas"] = lemma_json(s.lemmas);
    j["arborescence"] = std::move(arb);
  } else {
    j["arborescence"] = nullptr;
  }
  return j;
}

inline Json certificate_json(const Certificate& c) {
  Json j;
  j["passed"] = c.passed();
  j["n"] = c.n;
  j["nprime"] = c.nprime;
  j["crossings"] = c.crossings;
  j["t_length"] = c.t_length;
  j["s_length"] = c.s_length;
  j["ratio"] = c.ratio;
  j["bound"] = c.bound;
  j["bound_formula"] = "4*max(18, 12*log2(n')/log2(log2(n'))) + 1";
  j["bound_origin"] = "implementation-derived constant";
  j["lengths_preserved"] = c.lengths_preserved;
  j["sprime_two_optimal"] = c.sprime_two_optimal;
  j["partition_exact"] = c.partition_exact;
  j["on_tour"] = {{"edges", c.on_tour}, {"length", c.on_tour_length}, {"within", c.on_tour_within}};
  j["interior_reference"] = c.interior_reference ? edge_json(*c.interior_reference) : Json(nullptr);
  j["exterior_reference"] = c.exterior_reference ? edge_json(*c.exterior_reference) : Json(nullptr);
  Json sets = Json::array();
  for (const ChordSetReport& s : c.sets) sets.push_back(chord_set_json(s));
  j["sets"] = std::move(sets);
  j["failures"] = c.failures();
  return j;
}

inline Json scan_json(const ScanReport& r) {
  Json j;
  j["n"] = r.n;
  j["pairs"] = r.pairs;
  j["improving"] = r.improving;
  j["two_optimal"] = r.two_optimal;
  j["exact"] = r.exact;
  auto move = [](const std::optional<TwoMove>& m) {
    return m ? Json{{"i", m->i}, {"j", m->j}, {"gain", m->gain}} : Json(nullptr);
  };
  j["first"] = move(r.first);
  j["best"] = move(r.best);
  return j;
}

struct TrialSeeds {
  std::size_t n = 0;
  std::uint64_t instance = 0;
  std::uint64_t start = 0;
};

// Seeds for every trial come from one master stream, drawn up front so that a
// trial's inputs never depend on how earlier trials went.
inline std::vector<TrialSeeds> trial_seeds(const ExperimentConfig& cfg) {
  if (cfg.n_min > cfg.n_max) throw InvalidArgument("n range is empty");
  Rng master(cfg.seed);
  std::vector<TrialSeeds> out(cfg.trials);
  for (TrialSeeds& t : out) {
    t.n = static_cast<std::size_t>(
        master.between(static_cast<std::int64_t>(cfg.n_min), static_cast<std::int64_t>(cfg.n_max)));
    t.instance = master.next();
    t.start = master.next();
  }
  return out;
}

struct TrialOutcome {
  Json record;
  bool passed = false;
  double ratio = 0.0;
  double bound = 0.0;
};

inline TrialOutcome run_trial(const ExperimentConfig& cfg, std::size_t index, const TrialSeeds& seeds) {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  TrialOutcome out;
  Json& j = out.record;
  j["trial"] = index;
  j["n"] = seeds.n;
  j["p"] = cfg.p;
  j["instance_seed"] = seeds.instance;
  j["start_seed"] = seeds.start;
  try {
    if (seeds.n > kMaxHeldKarp) throw InvalidArgument("exact ratios need n <= 18");
    const Instance inst = gen_random(seeds.n, cfg.grid, PNorm(cfg.p), seeds.instance);
    j["instance"] = inst.id();
    Rng start_rng(seeds.start);
    std::size_t moves = 0;
    const Tour s = two_opt(inst, random_tour(inst.size(), start_rng), &moves);
    const ExactSolution opt = exact_opt(inst);
    j["two_opt_moves"] = moves;
    j["heuristic_length"] = tour_length(inst, s);
    j["exact_length"] = opt.length;
    j["heuristic_tour"] = tour_json(s);
    j["exact_tour"] = tour_json(opt.tour);
    j["simple"] = is_simple(inst, s).simple;
    const Certificate cert = certify_pair(inst, opt.tour, s);
    j["ratio"] = cert.ratio;
    j["bound"] = cert.bound;
    j["crossings"] = cert.crossings;
    j["certificate"] = certificate_json(cert);
    out.passed = cert.passed() && j["simple"].get<bool>();
    out.ratio = cert.ratio;
    out.bound = cert.bound;
    j["status"] = out.passed ? "passed" : "failed";
  } catch (const std::exception& e) {
    j["status"] = "failed";
    j["error"] = e.what();
    out.passed = false;
  }
  if (cfg.timing) {
    j["seconds"] = std::chrono::duration<double>(Clock::now() - started).count();
  }
  return out;
}

// gen_random -> two_opt from a random start -> exact_opt -> certify_pair for
// each trial, then the aggregate.
inline Json run_experiment(const ExperimentConfig& cfg) {
  Json report;
  report["schema"] = kReportSchema;
  report["generator"] = std::string(Rng::kName);
  report["config"] = {{"seed", cfg.seed},   {"n_min", cfg.n_min},   {"n_max", cfg.n_max},
                      {"grid", cfg.grid},   {"p", cfg.p},           {"trials", cfg.trials}};
  Json trials = Json::array();
  std::size_t passed = 0, failed = 0, ratios = 0;
  double max_ratio = 0.0, sum_ratio = 0.0, max_ratio_over_bound = 0.0;
  const auto seeds = trial_seeds(cfg);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    TrialOutcome t = run_trial(cfg, i, seeds[i]);
    if (t.passed) {
      ++passed;
    } else {
      ++failed;
    }
    if (t.bound > 0.0) {
      ++ratios;
      sum_ratio += t.ratio;
      if (t.ratio > max_ratio) max_ratio = t.ratio;
      if (t.ratio / t.bound > max_ratio_over_bound) max_ratio_over_bound = t.ratio / t.bound;
    }
    trials.push_back(std::move(t.record));
  }
  report["trials"] = std::move(trials);
  Json agg;
  agg["trials"] = seeds.size();
  agg["passed"] = passed;
  agg["failed"] = failed;
  if (ratios > 0) {
    agg["max_ratio"] = max_ratio;
    agg["mean_ratio"] = sum_ratio / static_cast<double>(ratios);
    agg["max_ratio_over_bound"] = max_ratio_over_bound;
  } else {
    agg["max_ratio"] = nullptr;
    agg["mean_ratio"] = nullptr;
    agg["max_ratio_over_bound"] = nullptr;
  }
  report["aggregate"] = std::move(agg);
  return report;
}

inline bool report_passed(const Json& report) {
  return report.at("aggregate").at("failed").get<std::size_t>() == 0;
}

}  // namespace kopt
