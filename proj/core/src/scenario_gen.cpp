#include "trimcache/scenario_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "trimcache/error.hpp"

namespace trimcache {

void TopologyParams::validate() const {
  if (!(area_side_m > 0.0)) throw ValidationError("topology.area_side_m must be positive");
  if (n_servers < 1) throw ValidationError("topology.n_servers must be >= 1");
  if (n_users < 1) throw ValidationError("topology.n_users must be >= 1");
  if (capacity < 0) throw ValidationError("topology.capacity must be nonnegative");
}

void LibraryParams::validate() const {
  if (n_models < 1) throw ValidationError("library.n_models must be >= 1");
  if (mode == LibraryMode::kSpecial && n_roots < 1) throw ValidationError("library.n_roots must be >= 1");
  if (chain_length < 0) throw ValidationError("library.chain_length must be >= 0");
  if (!(shared_fraction >= 0.0 && shared_fraction < 1.0)) {
    throw ValidationError("library.shared_fraction must lie in [0, 1)");
  }
  if (!(min_freeze_fraction >= 0.0 && min_freeze_fraction <= 1.0)) {
    throw ValidationError("library.min_freeze_fraction must lie in [0, 1]");
  }
  if (min_model_size < 1 || max_model_size < min_model_size) {
    throw ValidationError("library model size range must satisfy 1 <= min <= max");
  }
  if (mode == LibraryMode::kGeneral && depth < 1) throw ValidationError("library.depth must be >= 1");
  if (parent_fanout < 1) throw ValidationError("library.parent_fanout must be >= 1");
}

void DemandParams::validate() const {
  if (!(zipf_s >= 0.0)) throw ValidationError("demand.zipf_s must be nonnegative");
  if (!(budget_min_s > 0.0 && budget_max_s >= budget_min_s)) {
    throw ValidationError("demand budget range must satisfy 0 < min <= max");
  }
  if (!(inference_share >= 0.0 && inference_share < 1.0)) {
    throw ValidationError("demand.inference_share must lie in [0, 1)");
  }
}

Topology sample_topology(const TopologyParams& params, Rng& server_rng, Rng& user_rng) {
  params.validate();
  std::uniform_real_distribution<double> coord(0.0, params.area_side_m);
  Topology t;
  for (int m = 0; m < params.n_servers; ++m) {
    const double x = coord(server_rng);
    const double y = coord(server_rng);
    t.servers.push_back({{x, y}, params.capacity});
  }
  for (int k = 0; k < params.n_users; ++k) {
    const double x = coord(user_rng);
    const double y = coord(user_rng);
    t.users.push_back({x, y});
  }
  return t;
}

Topology sample_topology(const TopologyParams& params, Rng& rng) { return sample_topology(params, rng, rng); }

std::vector<double> zipf_weights(int n, double s) {
  std::vector<double> w(static_cast<std::size_t>(std::max(n, 0)));
  for (int r = 1; r <= n; ++r) w[static_cast<std::size_t>(r - 1)] = std::pow(static_cast<double>(r), -s);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

std::vector<DemandUnits> largest_remainder(const std::vector<double>& weights, DemandUnits total) {
  const long double sum = std::accumulate(weights.begin(), weights.end(), 0.0L);
  if (!(sum > 0.0L)) throw ValidationError("largest_remainder: weights must have a positive sum");
  std::vector<DemandUnits> out(weights.size());
  std::vector<std::pair<long double, std::size_t>> remainders;
  DemandUnits assigned = 0;
  for (std::size_t n = 0; n < weights.size(); ++n) {
    if (weights[n] < 0.0) throw ValidationError("largest_remainder: negative weight");
    const long double exact = static_cast<long double>(weights[n]) * static_cast<long double>(total) / sum;
    out[n] = static_cast<DemandUnits>(std::floor(exact));
    assigned += out[n];
    remainders.emplace_back(exact - static_cast<long double>(out[n]), n);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t n = 0; assigned < total; ++n, ++assigned) ++out[remainders[n % remainders.size()].second];
  return out;
}

DemandMatrix sample_demand(const DemandParams& params, int n_users, int n_models, Rng& rng) {
  params.validate();
  if (n_users < 1 || n_models < 1) throw ValidationError("sample_demand: need at least one user and one model");
  const auto I = static_cast<std::size_t>(n_models);
  const auto by_rank = largest_remainder(zipf_weights(n_models, params.zipf_s), kDemandScale);

  DemandMatrix d(static_cast<std::size_t>(n_users), I);
  std::vector<std::size_t> order(I);  // order[rank] = model
  std::iota(order.begin(), order.end(), 0);
  if (params.global_popularity) std::shuffle(order.begin(), order.end(), rng);

  std::uniform_real_distribution<double> budget(params.budget_min_s, params.budget_max_s);
  for (int k = 0; k < n_users; ++k) {
    if (!params.global_popularity) {
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
    }
    for (std::size_t r = 0; r < I; ++r) d.set_probability(k, static_cast<ModelId>(order[r]), by_rank[r]);
    for (std::size_t i = 0; i < I; ++i) {
      const double b = budget(rng);
      d.set_budget(k, static_cast<ModelId>(i), b);
      d.set_inference(k, static_cast<ModelId>(i), params.inference_share * b);
    }
  }
  return d;
}

namespace {

// Accumulates blocks and models with dense ids.
class LibraryBuilder {
 public:
  BlockId add_block(Bytes size) {
    blocks_.push_back({static_cast<BlockId>(blocks_.size()), size});
    return blocks_.back().id;
  }
  void add_model(std::vector<BlockId> ids) {
    models_.push_back({static_cast<ModelId>(models_.size()), std::move(ids)});
  }
  ModelLibrary build() { return build_library(std::move(blocks_), std::move(models_)); }

 private:
  std::vector<ParameterBlock> blocks_;
  std::vector<ModelSpec> models_;
};

struct Backbone {
  Bytes size = 0;        // full model size
  Bytes chain_block = 0; // size of each freezable block
};

Backbone sample_backbone(const LibraryParams& p, Rng& rng) {
  std::uniform_int_distribution<Bytes> size(p.min_model_size, p.max_model_size);
  Backbone b;
  b.size = size(rng);
  if (p.chain_length > 0) {
    b.chain_block = static_cast<Bytes>(std::floor(static_cast<double>(b.size) * p.shared_fraction / p.chain_length));
  }
  return b;
}

int sample_prefix(const LibraryParams& p, Rng& rng) {
  const int lo = static_cast<int>(std::ceil(p.min_freeze_fraction * p.chain_length));
  std::uniform_int_distribution<int> len(std::min(lo, p.chain_length), p.chain_length);
  return len(rng);
}

void add_head(LibraryBuilder& builder, std::vector<BlockId>& ids, Bytes remaining, int model,
              std::vector<std::string>* warnings) {
  if (remaining > 0) {
    ids.push_back(builder.add_block(remaining));
  } else if (warnings) {
    warnings->push_back("model " + std::to_string(model) + " has no specific bytes");
  }
}

ModelLibrary synth_special(const LibraryParams& p, Rng& rng, std::vector<std::string>* warnings) {
  LibraryBuilder builder;
  std::vector<Backbone> roots;
  for (int r = 0; r < p.n_roots; ++r) roots.push_back(sample_backbone(p, rng));
  // chain blocks are created on first use so no block is orphaned
  std::vector<std::vector<BlockId>> chains(roots.size());
  std::uniform_int_distribution<int> pick_root(0, p.n_roots - 1);

  for (int i = 0; i < p.n_models; ++i) {
    const auto r = static_cast<std::size_t>(pick_root(rng));
    const Backbone& root = roots[r];
    const int prefix = root.chain_block > 0 ? sample_prefix(p, rng) : 0;
    std::vector<BlockId> ids;
    for (int n = 0; n < prefix; ++n) {
      if (static_cast<std::size_t>(n) == chains[r].size()) chains[r].push_back(builder.add_block(root.chain_block));
      ids.push_back(chains[r][static_cast<std::size_t>(n)]);
    }
    add_head(builder, ids, root.size - prefix * root.chain_block, i, warnings);
    builder.add_model(std::move(ids));
  }
  return builder.build();
}

ModelLibrary synth_general(const LibraryParams& p, Rng& rng, std::vector<std::string>* warnings) {
  LibraryBuilder builder;
  const int n_first = std::max(1, (p.n_models + p.parent_fanout) / (p.parent_fanout + 1));
  const int derived = p.n_models - n_first;
  const int generations = std::max(1, p.depth - 1);

  struct Derived {
    Backbone backbone;
    std::vector<BlockId> chain;
  };
  std::vector<std::vector<Derived>> gens(static_cast<std::size_t>(p.depth));
  int model = 0;

  for (int n = 0; n < n_first; ++n, ++model) {
    Derived d{sample_backbone(p, rng), {}};
    std::vector<BlockId> ids;
    if (d.backbone.chain_block > 0) {
      for (int c = 0; c < p.chain_length; ++c) d.chain.push_back(builder.add_block(d.backbone.chain_block));
    }
    ids = d.chain;
    add_head(builder, ids, d.backbone.size - static_cast<Bytes>(d.chain.size()) * d.backbone.chain_block, model,
             warnings);
    builder.add_model(std::move(ids));
    gens[0].push_back(std::move(d));
  }

  for (int n = 0; n < derived; ++n, ++model) {
    // derived models are spread evenly over generations 2..depth
    const int g = p.depth == 1 ? 0 : 1 + static_cast<int>(static_cast<long long>(n) * generations / derived);
    const auto& parents = gens[static_cast<std::size_t>(g - (g > 0 ? 1 : 0))];
    std::uniform_int_distribution<std::size_t> pick(0, parents.size() - 1);
    const Derived& parent = parents[pick(rng)];
    Derived d{parent.backbone, {}};
    const int prefix = parent.chain.empty() ? 0 : sample_prefix(p, rng);
    for (int c = 0; c < prefix; ++c) d.chain.push_back(parent.chain[static_cast<std::size_t>(c)]);
    for (std::size_t c = d.chain.size(); c < parent.chain.size(); ++c) {
      d.chain.push_back(builder.add_block(d.backbone.chain_block));
    }
    std::vector<BlockId> ids = d.chain;
    add_head(builder, ids, d.backbone.size - static_cast<Bytes>(d.chain.size()) * d.backbone.chain_block, model,
             warnings);
    builder.add_model(std::move(ids));
    gens[static_cast<std::size_t>(g)].push_back(std::move(d));
  }
  return builder.build();
}

}  // namespace

ModelLibrary synth_library(const LibraryParams& params, Rng& rng, std::vector<std::string>* warnings) {
  params.validate();
  return params.mode == LibraryMode::kSpecial ? synth_special(params, rng, warnings)
                                              : synth_general(params, rng, warnings);
}

Scenario generate_scenario(const ScenarioParams& params, std::uint64_t seed) {
  Rng server_rng(derive_seed(seed, {label_hash("servers")}));
  Rng user_rng(derive_seed(seed, {label_hash("users")}));
  Rng lib_rng(derive_seed(seed, {label_hash("library")}));
  Rng demand_rng(derive_seed(seed, {label_hash("demand")}));

  Scenario s;
  s.radio = params.radio;
  s.area_side_m = params.topology.area_side_m;
  auto topo = sample_topology(params.topology, server_rng, user_rng);
  s.servers = std::move(topo.servers);
  s.users = std::move(topo.users);
  s.library = synth_library(params.library, lib_rng);
  s.demand = sample_demand(params.demand, params.topology.n_users, static_cast<int>(s.library.num_models()), demand_rng);
  s.validate();
  return s;
}

}  // namespace trimcache
