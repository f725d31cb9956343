#include "fixtures.hpp"

#include <cmath>
#include <random>

namespace trimcache::fixtures {

ModelLibrary two_model_library() {
  return build_library({{0, 400 * kMegabyte}, {1, 200 * kMegabyte}, {2, 300 * kMegabyte}},
                       {{0, {0, 1}}, {1, {0, 2}}});
}

Scenario make_scenario(ModelLibrary library, std::vector<Point> servers, Bytes capacity, std::vector<Point> users) {
  Scenario s;
  s.library = std::move(library);
  s.radio = default_radio();
  for (Point p : servers) s.servers.push_back({p, capacity});
  s.users = std::move(users);
  s.demand = DemandMatrix(s.users.size(), s.library.num_models());
  return s;
}

void fill_demand(Scenario& s, DemandUnits units) {
  for (std::size_t k = 0; k < s.num_users(); ++k) {
    for (std::size_t i = 0; i < s.num_models(); ++i) {
      s.demand.set_probability(static_cast<UserId>(k), static_cast<ModelId>(i), units);
    }
  }
}

ScenarioParams small_special(int servers, int users, int models) {
  ScenarioParams p;
  p.topology.area_side_m = 400.0;
  p.topology.n_servers = servers;
  p.topology.n_users = users;
  p.topology.capacity = 600 * kMegabyte;
  p.library.mode = LibraryMode::kSpecial;
  p.library.n_models = models;
  p.library.n_roots = 2;
  p.library.chain_length = 2;
  return p;
}

ModelLibrary random_library(std::uint64_t seed, int models) {
  LibraryParams p;
  p.mode = LibraryMode::kGeneral;
  p.n_models = models;
  p.chain_length = 3;
  p.parent_fanout = 2;
  p.depth = 3;
  Rng rng(seed);
  return synth_library(p, rng);
}

Scenario complexity_scenario(int servers, int models, int beta, std::uint64_t seed) {
  if (models < 2 * beta) throw ValidationError("complexity_scenario needs models >= 2 * beta");
  Rng rng(seed);
  std::vector<ParameterBlock> blocks;
  std::vector<ModelSpec> specs;
  for (int j = 0; j < beta; ++j) blocks.push_back({j, 60 * kMegabyte});
  Bytes specific = 0;
  for (int i = 0; i < models; ++i) {
    const Bytes size = std::uniform_int_distribution<Bytes>(80, 160)(rng) * kMegabyte;
    const BlockId own = beta + i;
    blocks.push_back({own, size});
    specific += size;
    ModelSpec m{i, {own}};
    if (i < 2 * beta) m.block_ids.push_back(i / 2);
    specs.push_back(std::move(m));
  }
  const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(servers))));
  std::vector<Point> server_pos, user_pos;
  std::uniform_real_distribution<double> jitter(-28.0, 28.0);
  for (int m = 0; m < servers; ++m) {
    const Point c{400.0 + 700.0 * (m % side), 400.0 + 700.0 * (m / side)};
    server_pos.push_back(c);
    for (int k = 0; k < 5; ++k) user_pos.push_back({c.x + jitter(rng), c.y + jitter(rng)});
  }
  const Bytes capacity = beta * 60 * kMegabyte + specific * 2 / 5;
  auto s = make_scenario(build_library(std::move(blocks), std::move(specs)), server_pos, capacity, user_pos);
  s.area_side_m = 800.0 + 700.0 * side;
  s.radio.inter_server_rate_bps = 1e6;
  DemandParams d;
  d.budget_min_s = 4.0;
  d.budget_max_s = 6.0;
  s.demand = sample_demand(d, static_cast<int>(user_pos.size()), models, rng);
  s.validate();
  return s;
}

}  // namespace trimcache::fixtures
