#pragma once

#include <span>
#include <vector>

#include "trimcache/placement.hpp"
#include "trimcache/radio.hpp"
#include "trimcache/scenario.hpp"

namespace trimcache {

// Storage occupied on server m: every block of every placed model counted once.
Bytes storage_used(const ModelLibrary& library, const Placement& placement, ServerId m);

// Storage when each placed model is charged its full download size.
Bytes storage_used_independent(const ModelLibrary& library, const Placement& placement, ServerId m);

// True iff every server's block-union footprint fits its capacity.
bool is_feasible(const Scenario& scenario, const Placement& placement);

// Demand (1e-6 units) of requests (k, i) served within budget by at least
// one server holding model i.
DemandUnits hit_units(const Scenario& scenario, const RateTable& rates, const Placement& placement);

// Expected cache hit ratio: hit_units / total demand. Users covered by no
// server still count in the denominator.
double hit_ratio(const Scenario& scenario, const RateTable& rates, const Placement& placement);

double to_ratio(const Scenario& scenario, DemandUnits units);

// Requests already satisfied by servers decided earlier in a successive
// solve. A set bit means the request no longer contributes utility.
class ServedMask {
 public:
  ServedMask() = default;
  ServedMask(std::size_t users, std::size_t models) : models_(models), served_(users * models, 0) {}

  bool served(UserId k, ModelId i) const { return served_[idx(k, i)] != 0; }
  void mark(UserId k, ModelId i) { served_[idx(k, i)] = 1; }
  std::size_t num_models() const { return models_; }
  std::size_t num_users() const { return models_ == 0 ? 0 : served_.size() / models_; }

  friend bool operator==(const ServedMask&, const ServedMask&) = default;

 private:
  std::size_t idx(UserId k, ModelId i) const {
    return static_cast<std::size_t>(k) * models_ + static_cast<std::size_t>(i);
  }

  std::size_t models_ = 0;
  std::vector<std::uint8_t> served_;
};

// u(m, i) = sum over users k of p(k,i) * reach(m,k,i) * [not served(k,i)],
// for every model i (zeros included).
std::vector<DemandUnits> residual_utilities(const Scenario& scenario, const RateTable& rates,
                                            const ServedMask& served, ServerId m);

// Marks every request (k, i) with i in placed and reach(m,k,i). Never clears.
ServedMask update_served(const Scenario& scenario, const RateTable& rates, ServedMask served, ServerId m,
                         std::span<const ModelId> placed);

}  // namespace trimcache
