#include "trimcache/solver_gen.hpp"

#include "int128.hpp"

namespace trimcache {

GreedyState::GreedyState(const Scenario& scenario, const RateTable& rates, StorageAccounting accounting)
    : scenario_(&scenario),
      rates_(&rates),
      accounting_(accounting),
      models_(scenario.num_models()),
      placement_(scenario.num_servers(), scenario.num_models()),
      has_block_(scenario.num_servers(), std::vector<std::uint8_t>(scenario.library.num_blocks(), 0)),
      used_(scenario.num_servers(), 0),
      hit_(scenario.num_users() * scenario.num_models(), 0) {}

MarginalGain GreedyState::marginal_gain(ServerId m, ModelId i) const {
  MarginalGain g;
  for (std::size_t k = 0; k < scenario_->num_users(); ++k) {
    const auto uk = static_cast<UserId>(k);
    if (!hit(uk, i) && rates_->reachable(m, uk, i)) g.gain += scenario_->demand.probability(uk, i);
  }
  const auto& model = scenario_->library.model(i);
  if (accounting_ == StorageAccounting::kIndependent) {
    g.incremental_bytes = model.download_size;
  } else {
    const auto& blocks = has_block_[static_cast<std::size_t>(m)];
    for (BlockId j : model.block_ids) {
      if (!blocks[static_cast<std::size_t>(j)]) g.incremental_bytes += scenario_->library.block(j).size_bytes;
    }
  }
  return g;
}

bool GreedyState::fits(ServerId m, Bytes incremental_bytes) const {
  return used(m) + incremental_bytes <= scenario_->servers[static_cast<std::size_t>(m)].capacity;
}

void GreedyState::place(ServerId m, ModelId i) {
  const MarginalGain g = marginal_gain(m, i);
  placement_.set(m, i);
  used_[static_cast<std::size_t>(m)] += g.incremental_bytes;
  for (BlockId j : scenario_->library.model(i).block_ids) {
    has_block_[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = 1;
  }
  for (std::size_t k = 0; k < scenario_->num_users(); ++k) {
    const auto uk = static_cast<UserId>(k);
    if (rates_->reachable(m, uk, i)) hit_[k * models_ + static_cast<std::size_t>(i)] = 1;
  }
  hit_total_ += g.gain;
}

namespace {

struct Candidate {
  ServerId m;
  ModelId i;
  MarginalGain g;
};

// True when a ranks strictly before b.
bool ranks_before(const Candidate& a, const Candidate& b, bool density) {
  if (density) {
    // gain / bytes compared by cross-multiplication; zero bytes ranks first
    const bool a_free = a.g.incremental_bytes == 0;
    const bool b_free = b.g.incremental_bytes == 0;
    if (a_free != b_free) return a_free;
    if (!a_free) {
      const detail::Int128 lhs = static_cast<detail::Int128>(a.g.gain) * b.g.incremental_bytes;
      const detail::Int128 rhs = static_cast<detail::Int128>(b.g.gain) * a.g.incremental_bytes;
      if (lhs != rhs) return lhs > rhs;
    }
  }
  if (a.g.gain != b.g.gain) return a.g.gain > b.g.gain;
  if (a.g.incremental_bytes != b.g.incremental_bytes) return a.g.incremental_bytes < b.g.incremental_bytes;
  if (a.m != b.m) return a.m < b.m;
  return a.i < b.i;
}

}  // namespace

GreedyResult greedy_placement(const Scenario& scenario, const RateTable& rates, const GreedyOptions& options) {
  const std::size_t M = scenario.num_servers();
  const std::size_t I = scenario.num_models();
  GreedyState state(scenario, rates, options.accounting);

  // Cached marginals: a placement on (m*, i*) only changes gains of model i*
  // on every server and incremental bytes of every model on server m*.
  std::vector<MarginalGain> cache(M * I);
  for (std::size_t m = 0; m < M; ++m) {
    for (std::size_t i = 0; i < I; ++i) {
      cache[m * I + i] = state.marginal_gain(static_cast<ServerId>(m), static_cast<ModelId>(i));
    }
  }

  GreedyResult result;
  for (;;) {
    bool found = false;
    Candidate best{};
    for (std::size_t m = 0; m < M; ++m) {
      for (std::size_t i = 0; i < I; ++i) {
        const auto sm = static_cast<ServerId>(m);
        const auto mi = static_cast<ModelId>(i);
        const MarginalGain& g = cache[m * I + i];
        if (state.placement().at(sm, mi) || g.gain <= 0 || !state.fits(sm, g.incremental_bytes)) continue;
        const Candidate c{sm, mi, g};
        if (!found || ranks_before(c, best, options.density)) {
          best = c;
          found = true;
        }
      }
    }
    if (!found) break;

    state.place(best.m, best.i);
    result.steps.push_back({best.m, best.i, best.g.gain, best.g.incremental_bytes});
    for (std::size_t m = 0; m < M; ++m) {
      cache[m * I + static_cast<std::size_t>(best.i)] = state.marginal_gain(static_cast<ServerId>(m), best.i);
    }
    for (std::size_t i = 0; i < I; ++i) {
      cache[static_cast<std::size_t>(best.m) * I + i] = state.marginal_gain(best.m, static_cast<ModelId>(i));
    }
  }
  result.placement = state.placement();
  return result;
}

GreedyResult trimcaching_gen(const Scenario& scenario, const RateTable& rates, bool density) {
  return greedy_placement(scenario, rates, {StorageAccounting::kShared, density});
}

}  // namespace trimcache
