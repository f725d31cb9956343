#include "trimcache/objective.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "trimcache/scenario_gen.hpp"
#include "trimcache/solver_spec.hpp"

namespace trimcache {
namespace {

Placement random_placement(std::size_t M, std::size_t I, std::mt19937_64& rng, int one_in) {
  Placement x(M, I);
  for (std::size_t m = 0; m < M; ++m) {
    for (std::size_t i = 0; i < I; ++i) {
      if (rng() % static_cast<unsigned>(one_in) == 0) x.set(static_cast<ServerId>(m), static_cast<ModelId>(i));
    }
  }
  return x;
}

TEST(Storage, SharedAndIndependentAccounting) {
  auto s = fixtures::make_scenario(fixtures::two_model_library(), {{0, 0}}, 900 * kMegabyte, {{10, 0}});
  fixtures::fill_demand(s, 1);
  Placement x(1, 2);
  EXPECT_EQ(storage_used(s.library, x, 0), 0);
  x.set(0, 0);
  x.set(0, 1);
  EXPECT_EQ(storage_used(s.library, x, 0), 900 * kMegabyte);
  EXPECT_EQ(storage_used_independent(s.library, x, 0), 1300 * kMegabyte);
  EXPECT_TRUE(is_feasible(s, x));
  s.servers[0].capacity -= 1;
  EXPECT_FALSE(is_feasible(s, x));
}

TEST(HitRatio, EmptyAndFullPlacements) {
  auto s = generate_scenario(fixtures::small_special(2, 4, 3), 4);
  for (auto& u : s.users) u = s.servers[0].position;
  for (std::size_t k = 0; k < s.num_users(); ++k) {
    for (std::size_t i = 0; i < s.num_models(); ++i) {
      s.demand.set_budget(static_cast<UserId>(k), static_cast<ModelId>(i), std::numeric_limits<double>::infinity());
    }
  }
  const auto rates = build_rate_table(s);
  Placement x(s.num_servers(), s.num_models());
  EXPECT_EQ(hit_ratio(s, rates, x), 0.0);
  for (std::size_t m = 0; m < s.num_servers(); ++m) {
    for (std::size_t i = 0; i < s.num_models(); ++i) x.set(static_cast<ServerId>(m), static_cast<ModelId>(i));
  }
  EXPECT_EQ(hit_ratio(s, rates, x), 1.0);
}

TEST(HitRatio, UncoveredUsersStayInDenominator) {
  auto lib = build_library({{0, kMegabyte}}, {{0, {0}}});
  auto s = fixtures::make_scenario(lib, {{0, 0}}, kGigabyte, {{10, 0}, {900, 900}});
  fixtures::fill_demand(s, 500000);
  const auto rates = build_rate_table(s);
  Placement x(1, 1);
  x.set(0, 0);
  EXPECT_EQ(hit_units(s, rates, x), 500000);
  EXPECT_DOUBLE_EQ(hit_ratio(s, rates, x), 0.5);
}

class ObjectiveRandom : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ObjectiveRandom, MatchesDirectSummation) {
  const auto s = generate_scenario(fixtures::small_special(2, 5, 3), GetParam());
  const auto rates = build_rate_table(s);
  const auto reach = oracle::reach(s);
  std::mt19937_64 rng(GetParam());
  for (int t = 0; t < 20; ++t) {
    const auto x = random_placement(2, 3, rng, 2);
    EXPECT_EQ(hit_units(s, rates, x), oracle::hit_units(s, reach, x));
  }
}

TEST_P(ObjectiveRandom, ResidualUtilitiesMatchDirectSum) {
  const auto s = generate_scenario(fixtures::small_special(3, 6, 5), GetParam());
  const auto rates = build_rate_table(s);
  const auto reach = oracle::reach_of(rates);
  std::mt19937_64 rng(GetParam());
  ServedMask served(s.num_users(), s.num_models());
  std::vector<std::uint8_t> bits(s.num_users() * s.num_models(), 0);
  for (std::size_t k = 0; k < s.num_users(); ++k) {
    for (std::size_t i = 0; i < s.num_models(); ++i) {
      if (rng() % 3 == 0) {
        served.mark(static_cast<UserId>(k), static_cast<ModelId>(i));
        bits[k * s.num_models() + i] = 1;
      }
    }
  }
  for (std::size_t m = 0; m < s.num_servers(); ++m) {
    const auto u = residual_utilities(s, rates, served, static_cast<ServerId>(m));
    ASSERT_EQ(u.size(), s.num_models());
    for (std::size_t i = 0; i < s.num_models(); ++i) EXPECT_EQ(u[i], oracle::residual(s, reach, bits, m, i));
  }
}

TEST_P(ObjectiveRandom, UpdateServedProperties) {
  const auto s = generate_scenario(fixtures::small_special(2, 6, 4), GetParam());
  const auto rates = build_rate_table(s);
  ServedMask empty(s.num_users(), s.num_models());
  EXPECT_EQ(update_served(s, rates, empty, 0, {}), empty);
  const std::vector<ModelId> placed{0, 2};
  const auto once = update_served(s, rates, empty, 0, placed);
  EXPECT_EQ(update_served(s, rates, once, 0, placed), once);
  for (std::size_t k = 0; k < s.num_users(); ++k) {
    for (std::size_t i = 0; i < s.num_models(); ++i) {
      const auto uk = static_cast<UserId>(k);
      const auto mi = static_cast<ModelId>(i);
      const bool expect = (i == 0 || i == 2) && rates.reachable(0, uk, mi);
      EXPECT_EQ(once.served(uk, mi), expect);
    }
  }
  // never clears
  const auto more = update_served(s, rates, once, 1, std::vector<ModelId>{1});
  for (std::size_t k = 0; k < s.num_users(); ++k) {
    for (std::size_t i = 0; i < s.num_models(); ++i) {
      if (once.served(static_cast<UserId>(k), static_cast<ModelId>(i))) {
        EXPECT_TRUE(more.served(static_cast<UserId>(k), static_cast<ModelId>(i)));
      }
    }
  }
}

TEST_P(ObjectiveRandom, AllServedMeansZeroUtility) {
  const auto s = generate_scenario(fixtures::small_special(2, 4, 4), GetParam());
  const auto rates = build_rate_table(s);
  ServedMask all(s.num_users(), s.num_models());
  for (std::size_t k = 0; k < s.num_users(); ++k) {
    for (std::size_t i = 0; i < s.num_models(); ++i) all.mark(static_cast<UserId>(k), static_cast<ModelId>(i));
  }
  for (DemandUnits u : residual_utilities(s, rates, all, 1)) EXPECT_EQ(u, 0);
}

// Monotone and submodular over placement elements.
TEST_P(ObjectiveRandom, MonotoneSubmodular) {
  const auto s = generate_scenario(fixtures::small_special(3, 8, 6), GetParam());
  const auto rates = build_rate_table(s);
  std::mt19937_64 rng(GetParam() * 31 + 1);
  const std::size_t M = s.num_servers();
  const std::size_t I = s.num_models();
  for (int t = 0; t < 200; ++t) {
    const auto S = random_placement(M, I, rng, 4);
    auto T = S;
    for (std::size_t m = 0; m < M; ++m) {
      for (std::size_t i = 0; i < I; ++i) {
        if (rng() % 3 == 0) T.set(static_cast<ServerId>(m), static_cast<ModelId>(i));
      }
    }
    const auto m = static_cast<ServerId>(rng() % M);
    const auto i = static_cast<ModelId>(rng() % I);
    if (T.at(m, i)) continue;
    auto Sx = S;
    auto Tx = T;
    Sx.set(m, i);
    Tx.set(m, i);
    const auto fS = hit_units(s, rates, S);
    const auto fT = hit_units(s, rates, T);
    EXPECT_LE(fS, fT);
    EXPECT_GE(hit_units(s, rates, Sx) - fS, hit_units(s, rates, Tx) - fT);
  }
}

// Sum of per-server residual gains of any sequential placement equals the
// hit demand of the union.
TEST_P(ObjectiveRandom, DecompositionIdentity) {
  const auto s = generate_scenario(fixtures::small_special(3, 8, 6), GetParam());
  const auto rates = build_rate_table(s);
  std::mt19937_64 rng(GetParam() + 17);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_placement(s.num_servers(), s.num_models(), rng, 3);
    ServedMask served(s.num_users(), s.num_models());
    DemandUnits sum = 0;
    for (std::size_t m = 0; m < s.num_servers(); ++m) {
      const auto sm = static_cast<ServerId>(m);
      const auto u = residual_utilities(s, rates, served, sm);
      const auto row = x.models_on(sm);
      for (ModelId i : row) sum += u[static_cast<std::size_t>(i)];
      served = update_served(s, rates, std::move(served), sm, row);
    }
    EXPECT_EQ(sum, hit_units(s, rates, x));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ObjectiveRandom, ::testing::Range<std::uint64_t>(1, 9));

}  // namespace
}  // namespace trimcache
