#pragma once

#include <cstdint>
#include <span>

#include "trimcache/placement.hpp"
#include "trimcache/scenario.hpp"

namespace trimcache {

struct FadingStats {
  double mean = 0.0;
  double stddev = 0.0;  // across realizations
  int realizations = 0;
};

// Hit demand for one channel realization: link_gains is an M x K row-major
// array of power gains applied to the expected received power.
DemandUnits realized_hit_units(const Scenario& scenario, const Placement& placement,
                               std::span<const double> link_gains);

// Averages the realized hit ratio over i.i.d. unit-mean exponential link
// gains. Realization r draws from derive_seed(seed, {r}), so results do not
// depend on the thread count.
FadingStats evaluate_fading(const Scenario& scenario, const Placement& placement, int n_realizations,
                            std::uint64_t seed, int threads = 1);

}  // namespace trimcache
