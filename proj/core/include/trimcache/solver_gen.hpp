#pragma once

#include <vector>

#include "trimcache/objective.hpp"
#include "trimcache/placement.hpp"
#include "trimcache/radio.hpp"
#include "trimcache/scenario.hpp"

namespace trimcache {

enum class StorageAccounting {
  kShared,       // blocks common to several placed models are stored once
  kIndependent,  // every placed model pays its full download size
};

struct GreedyOptions {
  StorageAccounting accounting = StorageAccounting::kShared;
  // Rank candidates by gain per incremental byte instead of absolute gain.
  bool density = false;
};

struct MarginalGain {
  DemandUnits gain = 0;        // newly hit demand
  Bytes incremental_bytes = 0; // extra storage on the server
};

struct GreedyStep {
  ServerId server = 0;
  ModelId model = 0;
  DemandUnits gain = 0;
  Bytes incremental_bytes = 0;
};

// Incremental state of the global greedy: placement, per-server placed
// blocks and used bytes, and which requests are already hit.
class GreedyState {
 public:
  GreedyState(const Scenario& scenario, const RateTable& rates, StorageAccounting accounting);

  const Placement& placement() const { return placement_; }
  Bytes used(ServerId m) const { return used_[static_cast<std::size_t>(m)]; }
  bool hit(UserId k, ModelId i) const { return hit_[static_cast<std::size_t>(k) * models_ + static_cast<std::size_t>(i)] != 0; }
  DemandUnits hit_total() const { return hit_total_; }

  // Gain and extra bytes of adding model i to server m (x_{m,i} must be 0).
  MarginalGain marginal_gain(ServerId m, ModelId i) const;
  bool fits(ServerId m, Bytes incremental_bytes) const;

  void place(ServerId m, ModelId i);

 private:
  const Scenario* scenario_;
  const RateTable* rates_;
  StorageAccounting accounting_;
  std::size_t models_;
  Placement placement_;
  std::vector<std::vector<std::uint8_t>> has_block_;
  std::vector<Bytes> used_;
  std::vector<std::uint8_t> hit_;
  DemandUnits hit_total_ = 0;
};

struct GreedyResult {
  Placement placement;
  std::vector<GreedyStep> steps;
};

// Repeatedly adds the feasible (server, model) pair with the largest
// marginal gain; ties prefer fewer incremental bytes, then lower server id,
// then lower model id. Stops when no feasible pair has positive gain.
GreedyResult greedy_placement(const Scenario& scenario, const RateTable& rates, const GreedyOptions& options = {});

// Greedy with block-sharing storage accounting.
GreedyResult trimcaching_gen(const Scenario& scenario, const RateTable& rates, bool density = false);

}  // namespace trimcache
