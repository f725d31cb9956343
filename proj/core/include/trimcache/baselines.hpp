#pragma once

#include <cstdint>

#include "trimcache/placement.hpp"
#include "trimcache/radio.hpp"
#include "trimcache/scenario.hpp"
#include "trimcache/solver_gen.hpp"

namespace trimcache {

// Greedy that ignores parameter sharing: every placed model is charged its
// full download size against capacity.
GreedyResult independent_caching(const Scenario& scenario, const RateTable& rates);

struct OracleBudget {
  std::uint64_t max_states = 50'000'000;  // placements evaluated
  double time_limit_s = 600.0;
};

struct OracleResult {
  Placement placement;
  DemandUnits hit_units = 0;
  double hit_ratio = 0.0;
  std::uint64_t states_visited = 0;
};

// Exhaustive search over all placements satisfying block-union capacity on
// every server. Rows that overflow capacity are pruned with all their
// supersets. Ties resolve to the lexicographically smallest X. Throws
// BudgetExceeded when the state or time budget runs out.
OracleResult exhaustive_search(const Scenario& scenario, const RateTable& rates, const OracleBudget& budget = {});

// Feasible model subsets of one server (block-union size <= capacity), in
// lexicographic order of their 0/1 indicator vectors.
std::vector<std::vector<ModelId>> feasible_rows(const ModelLibrary& library, Bytes capacity,
                                                std::uint64_t max_rows = 50'000'000);

// Largest number of (server, model) pairs in any feasible placement.
std::size_t max_feasible_cardinality(const Scenario& scenario);

}  // namespace trimcache
