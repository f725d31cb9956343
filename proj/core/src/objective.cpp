#include "trimcache/objective.hpp"

#include "trimcache/error.hpp"

namespace trimcache {

namespace {

void check_dims(const Scenario& scenario, const RateTable& rates, const Placement& placement) {
  if (placement.num_servers() != scenario.num_servers() || placement.num_models() != scenario.num_models()) {
    throw ValidationError("placement is " + std::to_string(placement.num_servers()) + "x" +
                          std::to_string(placement.num_models()) + ", scenario needs " +
                          std::to_string(scenario.num_servers()) + "x" + std::to_string(scenario.num_models()));
  }
  if (rates.num_servers() != scenario.num_servers() || rates.num_users() != scenario.num_users() ||
      rates.num_models() != scenario.num_models()) {
    throw ValidationError("rate table does not match scenario dimensions");
  }
}

}  // namespace

Bytes storage_used(const ModelLibrary& library, const Placement& placement, ServerId m) {
  const auto models = placement.models_on(m);
  return library.union_size(models);
}

Bytes storage_used_independent(const ModelLibrary& library, const Placement& placement, ServerId m) {
  Bytes total = 0;
  for (ModelId i : placement.models_on(m)) total += library.model(i).download_size;
  return total;
}

bool is_feasible(const Scenario& scenario, const Placement& placement) {
  for (std::size_t m = 0; m < scenario.num_servers(); ++m) {
    if (storage_used(scenario.library, placement, static_cast<ServerId>(m)) > scenario.servers[m].capacity) {
      return false;
    }
  }
  return true;
}

DemandUnits hit_units(const Scenario& scenario, const RateTable& rates, const Placement& placement) {
  check_dims(scenario, rates, placement);
  const std::size_t M = scenario.num_servers();
  DemandUnits hits = 0;
  for (std::size_t k = 0; k < scenario.num_users(); ++k) {
    for (std::size_t i = 0; i < scenario.num_models(); ++i) {
      const auto uk = static_cast<UserId>(k);
      const auto mi = static_cast<ModelId>(i);
      const DemandUnits p = scenario.demand.probability(uk, mi);
      if (p == 0) continue;
      for (std::size_t m = 0; m < M; ++m) {
        const auto sm = static_cast<ServerId>(m);
        if (placement.at(sm, mi) && rates.reachable(sm, uk, mi)) {
          hits += p;
          break;
        }
      }
    }
  }
  return hits;
}

double to_ratio(const Scenario& scenario, DemandUnits units) {
  return static_cast<double>(units) / static_cast<double>(scenario.demand.total());
}

double hit_ratio(const Scenario& scenario, const RateTable& rates, const Placement& placement) {
  return to_ratio(scenario, hit_units(scenario, rates, placement));
}

std::vector<DemandUnits> residual_utilities(const Scenario& scenario, const RateTable& rates,
                                            const ServedMask& served, ServerId m) {
  const std::size_t I = scenario.num_models();
  std::vector<DemandUnits> u(I, 0);
  for (std::size_t k = 0; k < scenario.num_users(); ++k) {
    const auto uk = static_cast<UserId>(k);
    for (std::size_t i = 0; i < I; ++i) {
      const auto mi = static_cast<ModelId>(i);
      if (!served.served(uk, mi) && rates.reachable(m, uk, mi)) u[i] += scenario.demand.probability(uk, mi);
    }
  }
  return u;
}

ServedMask update_served(const Scenario& scenario, const RateTable& rates, ServedMask served, ServerId m,
                         std::span<const ModelId> placed) {
  for (ModelId i : placed) {
    for (std::size_t k = 0; k < scenario.num_users(); ++k) {
      const auto uk = static_cast<UserId>(k);
      if (rates.reachable(m, uk, i)) served.mark(uk, i);
    }
  }
  return served;
}

}  // namespace trimcache
