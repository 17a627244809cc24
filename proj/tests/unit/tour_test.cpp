#include <gtest/gtest.h>

#include <cmath>
#include <variant>
#include <vector>

#include "kopt/exact.hpp"
#include "kopt/random.hpp"
#include "kopt/tour.hpp"
#include "oracles.hpp"

namespace kopt {
namespace {

Instance square(long side) {
  return Instance::planar({{0, 0}, {side, 0}, {side, side}, {0, side}});
}

// (0,0), (2,2), (2,0), (0,2) visited in index order.
Instance crossed_square() { return Instance::planar({{0, 0}, {2, 2}, {2, 0}, {0, 2}}); }

TEST(TourTest, RejectsNonPermutations) {
  EXPECT_THROW(Tour({0, 0, 1}), InvalidArgument);
  EXPECT_THROW(Tour({0, 3, 1}), InvalidArgument);
  EXPECT_NO_THROW(Tour({2, 0, 1}));
}

TEST(TourTest, FromEdges) {
  const std::vector<std::pair<std::size_t, std::size_t>> ring = {{0, 2}, {2, 1}, {1, 3}, {3, 0}};
  const Tour t = tour_from_edges(4, ring);
  EXPECT_EQ(std::vector<std::size_t>(t.order().begin(), t.order().end()),
            (std::vector<std::size_t>{0, 2, 1, 3}));
  const std::vector<std::pair<std::size_t, std::size_t>> two = {{0, 1}, {1, 0}, {2, 3}, {3, 2}};
  EXPECT_THROW(tour_from_edges(4, two), InvalidArgument);
  const std::vector<std::pair<std::size_t, std::size_t>> split = {{0, 1}, {1, 2}, {2, 0},
                                                                  {3, 4}, {4, 5}, {5, 3}};
  EXPECT_THROW(tour_from_edges(6, split), InvalidArgument);
}

TEST(TourTest, Lengths) {
  EXPECT_DOUBLE_EQ(tour_length(square(2), Tour::identity(4)), 8.0);
  // Two diagonals of length 2 sqrt 2 and two sides of length 2.
  EXPECT_NEAR(tour_length(crossed_square(), Tour::identity(4)), 4 * std::sqrt(2.0) + 4, 1e-12);
  EXPECT_THROW(tour_length(square(2), Tour::identity(3)), InvalidArgument);
}

TEST(TwoMoveTest, UncrossesSquare) {
  const Instance inst = crossed_square();
  const Tour t = Tour::identity(4);
  const auto m = find_improving_2move(inst, t);
  ASSERT_TRUE(m.has_value());
  EXPECT_NEAR(m->gain, 4 * std::sqrt(2.0) - 4, 1e-12);
  const Tour u = apply_2move(t, *m);
  EXPECT_DOUBLE_EQ(tour_length(inst, u), 8.0);
  EXPECT_FALSE(find_improving_2move(inst, u).has_value());
  EXPECT_FALSE(find_improving_2move(square(2), Tour::identity(4)).has_value());
}

TEST(TwoMoveTest, OrdersCollinearPoints) {
  const Instance inst = Instance::planar({{0, 0}, {2, 0}, {1, 0}, {3, 0}});
  const auto m = find_improving_2move(inst, Tour::identity(4));
  ASSERT_TRUE(m.has_value());
  EXPECT_GT(m->gain, 0.0);
}

TEST(TwoMoveTest, GainMatchesLengthDifference) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = gen_random(9, 1000, PNorm(2), rng.next());
    const Tour t = random_tour(9, rng);
    detail::for_each_two_move(inst, t, [&](std::size_t i, std::size_t j, double gain, double) {
      const Tour u = apply_2move(t, TwoMove{i, j, gain});
      EXPECT_NEAR(tour_length(inst, t) - tour_length(inst, u), gain, 1e-9);
      return true;
    });
  }
}

TEST(TwoMoveTest, RejectsAdjacentPositions) {
  const Tour t = Tour::identity(6);
  EXPECT_THROW(apply_2move(t, TwoMove{1, 2, 0}), InvalidArgument);
  EXPECT_THROW(apply_2move(t, TwoMove{0, 5, 0}), InvalidArgument);
  EXPECT_THROW(apply_2move(t, TwoMove{3, 1, 0}), InvalidArgument);
}

TEST(TwoOptTest, FixedPointAndSquare) {
  std::size_t moves = 99;
  EXPECT_EQ(two_opt(square(3), Tour::identity(4), &moves), Tour::identity(4));
  EXPECT_EQ(moves, 0u);
  EXPECT_DOUBLE_EQ(tour_length(crossed_square(), two_opt(crossed_square(), Tour::identity(4))), 8.0);
}

TEST(TwoOptTest, OutputsAreTwoOptimalAndSimple) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.between(4, 12));
    const Instance inst = gen_random(n, 1000, PNorm(2), rng.next());
    const Tour s = two_opt(inst, random_tour(n, rng));
    EXPECT_TRUE(is_k_optimal(inst, s, 2).optimal);
    EXPECT_TRUE(testing::naive_two_optimal(inst, s));
    EXPECT_TRUE(is_simple(inst, s).simple);
  }
}

TEST(ThreeMoveTest, GainMatchesLengthDifferenceForAllPatterns) {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = gen_random(8, 500, PNorm(2), rng.next());
    const Tour t = random_tour(8, rng);
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = i + 1; j < 8; ++j) {
        for (std::size_t k = j + 1; k < 8; ++k) {
          for (Reconnection r : kReconnections) {
            const ThreeMove m{i, j, k, r, 0.0};
            const Tour u = apply_3move(t, m);
            ASSERT_EQ(u.size(), 8u);
            EXPECT_NEAR(tour_length(inst, t) - tour_length(inst, u), three_move_gain(inst, t, m), 1e-9);
          }
        }
      }
    }
  }
}

TEST(KOptimalityTest, Verdicts) {
  EXPECT_TRUE(is_k_optimal(square(2), Tour::identity(4), 2).optimal);
  const KOptVerdict v = is_k_optimal(crossed_square(), Tour::identity(4), 2);
  EXPECT_FALSE(v.optimal);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(std::holds_alternative<TwoMove>(*v.witness));
  EXPECT_THROW(is_k_optimal(square(2), Tour::identity(4), 4), Unsupported);
}

TEST(KOptimalityTest, OptimaAreThreeOptimal) {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.between(5, 9));
    const Instance inst = gen_random(n, 1000, PNorm(2), rng.next());
    EXPECT_TRUE(is_k_optimal(inst, exact_opt(inst).tour, 3).optimal);
  }
}

TEST(KOptimalityTest, ThreeOptReachesLocalOptimum) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = gen_random(10, 1000, PNorm(2), rng.next());
    const Tour start = random_tour(10, rng);
    const Tour t = three_opt(inst, start);
    EXPECT_TRUE(is_k_optimal(inst, t, 3).optimal);
    EXPECT_TRUE(is_k_optimal(inst, t, 2).optimal);
    EXPECT_LE(tour_length(inst, t), tour_length(inst, start));
  }
}

TEST(SimplicityTest, SquareAndCrossedSquare) {
  EXPECT_TRUE(is_simple(square(2), Tour::identity(4)).simple);
  const SimplicityVerdict v = is_simple(crossed_square(), Tour::identity(4));
  EXPECT_FALSE(v.simple);
  ASSERT_TRUE(v.witness.has_value());
  // Edges 0: (0,0)-(2,2) and 2: (2,0)-(0,2) are the diagonals.
  EXPECT_EQ(*v.witness, std::make_pair(std::size_t{0}, std::size_t{2}));
  EXPECT_EQ(v.relation, RelationKind::kCross);
}

TEST(DegeneracyTest, Examples) {
  EXPECT_TRUE(is_degenerate(Instance::planar({{0, 0}, {1, 1}, {2, 2}})));
  EXPECT_FALSE(is_degenerate(Instance::planar({{0, 0}, {1, 0}, {0, 1}})));
  EXPECT_TRUE(is_degenerate(Instance::planar({{0, 0}, {1, 1}})));
}

TEST(DegeneracyTest, CollinearTwoOptIsOptimal) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.between(3, 9));
    const Instance inst = testing::random_collinear_instance(rng, n);
    ASSERT_TRUE(is_degenerate(inst));
    const double heuristic = tour_length(inst, two_opt(inst, random_tour(n, rng)));
    EXPECT_NEAR(heuristic, brute_force_opt(inst).length, 1e-12 * heuristic);
  }
}

TEST(InstanceTest, RejectsDuplicates) {
  EXPECT_THROW(Instance::planar({{0, 0}, {1, 1}, {0, 0}}), InvalidArgument);
  EXPECT_THROW(Instance::spatial({{0, 0, 0}, {0, 0, 0}}), InvalidArgument);
}

TEST(InstanceTest, ExactLengthsOnlyForIntegerManhattan) {
  EXPECT_TRUE(Instance::planar({{0, 0}, {1, 2}}, PNorm(1)).exact_lengths());
  EXPECT_FALSE(Instance::planar({{0, 0}, {1, 2}}, PNorm(2)).exact_lengths());
  EXPECT_FALSE(Instance::planar({{Rational(1, 2), 0}, {1, 2}}, PNorm(1)).exact_lengths());
}

}  // namespace
}  // namespace kopt
