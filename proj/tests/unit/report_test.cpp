#include <gtest/gtest.h>

#include "kopt/random.hpp"
#include "kopt/report.hpp"

namespace kopt {
namespace {

TEST(GenRandomTest, Deterministic) {
  const Instance a = gen_random(8, 1000, PNorm(2), 1);
  const Instance b = gen_random(8, 1000, PNorm(2), 1);
  ASSERT_EQ(a.size(), 8u);
  for (std::size_t v = 0; v < 8; ++v) EXPECT_EQ(a.point(v), b.point(v));
  const Instance c = gen_random(8, 1000, PNorm(2), 2);
  bool differs = false;
  for (std::size_t v = 0; v < 8; ++v) differs = differs || a.point(v) != c.point(v);
  EXPECT_TRUE(differs);
}

TEST(GenRandomTest, GeneralPosition) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = gen_random(20, 100, PNorm(2), seed);
    EXPECT_TRUE(in_general_position(inst));
    for (const Point& p : inst.points()) {
      EXPECT_TRUE(p.is_integral());
      EXPECT_GE(p.x, 0);
      EXPECT_LE(p.x, 100);
    }
  }
  EXPECT_TRUE(in_general_position(gen_random(3, 3, PNorm(2), 9)));
}

TEST(GenRandomTest, Preconditions) {
  EXPECT_THROW(gen_random(10, 5, PNorm(2), 1), InvalidArgument);
  EXPECT_THROW(gen_random(0, 5, PNorm(2), 1), InvalidArgument);
  // A 5x5 grid holds at most 10 points with no three collinear.
  EXPECT_THROW(gen_random(11, 4, PNorm(2), 1), Error);
}

TEST(RngTest, RangesAndReproducibility) {
  Rng a(7), b(7);
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.between(-3, 3);
    EXPECT_EQ(x, b.between(-3, 3));
    EXPECT_GE(x, -3);
    EXPECT_LE(x, 3);
    const double u = a.unit();
    b.unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  // First output of mt19937_64 with the default seed, fixed by the standard.
  Rng d(5489);
  EXPECT_EQ(d.next(), 14514284786278117030ull);
}

TEST(ReportTest, EmptyRunHasHeaderOnly) {
  ExperimentConfig cfg;
  cfg.trials = 0;
  const Json r = run_experiment(cfg);
  EXPECT_EQ(r["schema"], "kopt-lab/1");
  EXPECT_EQ(r["generator"], "mt19937_64");
  EXPECT_TRUE(r["trials"].empty());
  EXPECT_EQ(r["aggregate"]["trials"], 0);
  EXPECT_TRUE(r["aggregate"]["max_ratio"].is_null());
  EXPECT_TRUE(report_passed(r));
}

TEST(ReportTest, DeterministicAndPassing) {
  ExperimentConfig cfg;
  cfg.seed = 99;
  cfg.trials = 12;
  const std::string a = run_experiment(cfg).dump();
  const std::string b = run_experiment(cfg).dump();
  EXPECT_EQ(a, b);
  const Json r = Json::parse(a);
  EXPECT_TRUE(report_passed(r));
  EXPECT_EQ(r["config"]["seed"], 99);
  ASSERT_EQ(r["trials"].size(), 12u);
  for (std::size_t i = 0; i < 12; ++i) {
    const Json& t = r["trials"][i];
    EXPECT_EQ(t["trial"], i);
    EXPECT_EQ(t["status"], "passed");
    EXPECT_GE(t["ratio"].get<double>(), 1.0 - 1e-12);
    EXPECT_LE(t["ratio"].get<double>(), t["bound"].get<double>());
    EXPECT_FALSE(t.contains("seconds"));
    EXPECT_EQ(t["certificate"]["sets"].size(), 4u);
  }
  EXPECT_LE(r["aggregate"]["max_ratio_over_bound"].get<double>(), 1.0);
}

TEST(ReportTest, OptimalHeuristicGivesRatioOne) {
  ExperimentConfig cfg;
  cfg.seed = 3;
  cfg.trials = 30;
  cfg.n_min = cfg.n_max = 6;
  const Json r = run_experiment(cfg);
  bool found = false;
  for (const Json& t : r["trials"]) {
    if (t["heuristic_length"].get<double>() <= t["exact_length"].get<double>() * (1 + 1e-12)) {
      EXPECT_NEAR(t["ratio"].get<double>(), 1.0, 1e-12);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(ReportTest, FailedTrialIsRecordedAndRunContinues) {
  ExperimentConfig cfg;
  cfg.trials = 2;
  cfg.n_min = cfg.n_max = 19;  // beyond the exact solver
  const Json r = run_experiment(cfg);
  ASSERT_EQ(r["trials"].size(), 2u);
  for (const Json& t : r["trials"]) {
    EXPECT_EQ(t["status"], "failed");
    EXPECT_TRUE(t.contains("error"));
  }
  EXPECT_FALSE(report_passed(r));
}

TEST(ReportTest, TimingIsOptIn) {
  ExperimentConfig cfg;
  cfg.trials = 1;
  cfg.timing = true;
  EXPECT_TRUE(run_experiment(cfg)["trials"][0].contains("seconds"));
}

}  // namespace
}  // namespace kopt
