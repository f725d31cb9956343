#include "trimcache/fading.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "trimcache/error.hpp"
#include "trimcache/objective.hpp"
#include "trimcache/scenario_gen.hpp"
#include "trimcache/solver_gen.hpp"

namespace trimcache {
namespace {

struct Case {
  Scenario scenario;
  Placement placement;
};

Case make_case(std::uint64_t seed) {
  Case c{generate_scenario(fixtures::small_special(3, 8, 6), seed), {}};
  c.placement = trimcaching_gen(c.scenario, build_rate_table(c.scenario)).placement;
  return c;
}

TEST(Fading, UnitGainsReproduceExpectedRates) {
  const auto c = make_case(3);
  const std::vector<double> ones(c.scenario.num_servers() * c.scenario.num_users(), 1.0);
  EXPECT_EQ(realized_hit_units(c.scenario, c.placement, ones),
            hit_units(c.scenario, build_rate_table(c.scenario), c.placement));
}

TEST(Fading, InfiniteBudgetsHitEverythingCovered) {
  auto c = make_case(4);
  for (auto& u : c.scenario.users) u = c.scenario.servers[0].position;
  for (std::size_t k = 0; k < c.scenario.num_users(); ++k) {
    for (std::size_t i = 0; i < c.scenario.num_models(); ++i) {
      c.scenario.demand.set_budget(static_cast<UserId>(k), static_cast<ModelId>(i),
                                   std::numeric_limits<double>::infinity());
    }
  }
  Placement all(c.scenario.num_servers(), c.scenario.num_models());
  for (ModelId i = 0; i < static_cast<ModelId>(c.scenario.num_models()); ++i) all.set(0, i);
  const auto stats = evaluate_fading(c.scenario, all, 200, 1);
  EXPECT_EQ(stats.mean, 1.0);
  EXPECT_EQ(stats.stddev, 0.0);
}

TEST(Fading, IndependentOfThreadCount) {
  const auto c = make_case(5);
  const auto one = evaluate_fading(c.scenario, c.placement, 300, 99, 1);
  const auto four = evaluate_fading(c.scenario, c.placement, 300, 99, 4);
  EXPECT_EQ(one.mean, four.mean);
  EXPECT_EQ(one.stddev, four.stddev);
  EXPECT_EQ(one.realizations, 300);
  EXPECT_GE(one.mean, 0.0);
  EXPECT_LE(one.mean, 1.0);
}

// The spread of the averaged ratio across seeds shrinks like 1/sqrt(n).
TEST(Fading, VarianceShrinksWithRealizations) {
  const auto c = make_case(6);
  auto spread = [&](int n) {
    double s1 = 0.0, s2 = 0.0;
    constexpr int reps = 60;
    for (int r = 0; r < reps; ++r) {
      const double v = evaluate_fading(c.scenario, c.placement, n, 1000 + static_cast<std::uint64_t>(r), 4).mean;
      s1 += v;
      s2 += v * v;
    }
    const double mean = s1 / reps;
    return s2 / reps - mean * mean;
  };
  const double small = spread(25);
  const double large = spread(100);
  ASSERT_GT(small, 0.0);
  EXPECT_NEAR(small / large, 4.0, 2.0);
}

TEST(Fading, RejectsBadArguments) {
  const auto c = make_case(7);
  EXPECT_THROW(evaluate_fading(c.scenario, c.placement, 0, 1), ValidationError);
  EXPECT_THROW(evaluate_fading(c.scenario, c.placement, 10, 1, 0), ValidationError);
}

}  // namespace
}  // namespace trimcache
