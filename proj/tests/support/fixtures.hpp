#pragma once

#include <cstdint>
#include <vector>

#include "trimcache/trimcache.hpp"

namespace trimcache::fixtures {

// blocks {b0: 0.4 GB, b1: 0.2 GB, b2: 0.3 GB}; A = {b0, b1}, B = {b0, b2}.
ModelLibrary two_model_library();

// Default radio, identical capacities. Probabilities start at zero and
// budgets at 1 s.
Scenario make_scenario(ModelLibrary library, std::vector<Point> servers, Bytes capacity, std::vector<Point> users);

// Uniform demand of `units` for every (k, i).
void fill_demand(Scenario& s, DemandUnits units);

// Small special-case instances: M servers and K users in a 400 m square,
// I models from two ancestors with short chains, 600 MB per server.
ScenarioParams small_special(int servers, int users, int models);

// Random library with the general derivation pattern, for property tests.
ModelLibrary random_library(std::uint64_t seed, int models);

// Scaling workload: `beta` carrier blocks (60 MB), carrier j shared by
// models 2j and 2j+1, plus one specific block per model. Servers sit 700 m
// apart with five users each inside 40 m; the backhaul is too slow for any
// relay, so servers do not interact. Every carrier subset fits.
Scenario complexity_scenario(int servers, int models, int beta, std::uint64_t seed);

}  // namespace trimcache::fixtures
