#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace trimcache::oracle {

double rate(const RadioParams& radio, Point server, Point user, int n_assoc) {
  const double d = std::max(std::hypot(server.x - user.x, server.y - user.y), radio.min_distance_m);
  const double b = radio.total_bandwidth_hz / (radio.active_prob * n_assoc);
  const double p = radio.total_power_w / (radio.active_prob * n_assoc);
  return b * std::log2(1.0 + p * radio.gamma0 / std::pow(d, radio.alpha0) / (radio.noise_psd_w_per_hz * b));
}

namespace {

bool covers(const Scenario& s, std::size_t m, std::size_t k) {
  const Point a = s.servers[m].position;
  const Point b = s.users[k];
  return std::hypot(a.x - b.x, a.y - b.y) <= s.radio.coverage_radius_m;
}

int load(const Scenario& s, std::size_t m) {
  int n = 0;
  for (std::size_t k = 0; k < s.users.size(); ++k) n += covers(s, m, k) ? 1 : 0;
  return n;
}

}  // namespace

double latency(const Scenario& s, std::size_t m, std::size_t k, std::size_t i) {
  const double bits = 8.0 * static_cast<double>(s.library.model(static_cast<ModelId>(i)).download_size);
  const double t = s.demand.inference(static_cast<UserId>(k), static_cast<ModelId>(i));
  if (covers(s, m, k)) return bits / rate(s.radio, s.servers[m].position, s.users[k], load(s, m)) + t;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < s.servers.size(); ++r) {
    if (!covers(s, r, k)) continue;
    const double via = bits / s.radio.inter_server_rate_bps +
                       bits / rate(s.radio, s.servers[r].position, s.users[k], load(s, r));
    best = std::min(best, via);
  }
  return best + t;
}

Reach reach(const Scenario& s) {
  Reach r{s.num_servers(), s.num_users(), s.num_models(), {}};
  for (std::size_t m = 0; m < r.servers; ++m) {
    for (std::size_t k = 0; k < r.users; ++k) {
      for (std::size_t i = 0; i < r.models; ++i) {
        const double lat = latency(s, m, k, i);
        r.bits.push_back(lat <= s.demand.budget(static_cast<UserId>(k), static_cast<ModelId>(i)) ? 1 : 0);
      }
    }
  }
  return r;
}

Reach reach_of(const RateTable& rates) {
  Reach r{rates.num_servers(), rates.num_users(), rates.num_models(), {}};
  for (std::size_t m = 0; m < r.servers; ++m) {
    for (std::size_t k = 0; k < r.users; ++k) {
      for (std::size_t i = 0; i < r.models; ++i) {
        r.bits.push_back(rates.reachable(static_cast<ServerId>(m), static_cast<UserId>(k), static_cast<ModelId>(i)));
      }
    }
  }
  return r;
}

Bytes union_size(const ModelLibrary& lib, const std::vector<ModelId>& models) {
  std::set<BlockId> blocks;
  for (ModelId i : models) {
    for (BlockId j : lib.model(i).block_ids) blocks.insert(j);
  }
  Bytes total = 0;
  for (BlockId j : blocks) total += lib.block(j).size_bytes;
  return total;
}

DemandUnits hit_units(const Scenario& s, const Reach& r, const Placement& x) {
  DemandUnits total = 0;
  for (std::size_t k = 0; k < r.users; ++k) {
    for (std::size_t i = 0; i < r.models; ++i) {
      // 1 - prod_m (1 - x * reach)
      int miss = 1;
      for (std::size_t m = 0; m < r.servers; ++m) {
        miss *= 1 - static_cast<int>(x.at(static_cast<ServerId>(m), static_cast<ModelId>(i)) && r.at(m, k, i));
      }
      total += (1 - miss) * s.demand.probability(static_cast<UserId>(k), static_cast<ModelId>(i));
    }
  }
  return total;
}

std::int64_t best_subset(const std::vector<std::int64_t>& utilities, const std::vector<Bytes>& sizes, Bytes budget) {
  const std::size_t n = utilities.size();
  if (n > 24) throw std::invalid_argument("best_subset: too many items");
  std::int64_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::int64_t u = 0;
    Bytes w = 0;
    for (std::size_t e = 0; e < n; ++e) {
      if (mask >> e & 1) {
        u += utilities[e];
        w += sizes[e];
      }
    }
    if (w <= budget) best = std::max(best, u);
  }
  return best;
}

DemandUnits residual(const Scenario& s, const Reach& r, const std::vector<std::uint8_t>& served, std::size_t m,
                     std::size_t i) {
  DemandUnits u = 0;
  for (std::size_t k = 0; k < r.users; ++k) {
    if (r.at(m, k, i) && !served[k * r.models + i]) {
      u += s.demand.probability(static_cast<UserId>(k), static_cast<ModelId>(i));
    }
  }
  return u;
}

DemandUnits server_optimum(const Scenario& s, const Reach& r, const std::vector<std::uint8_t>& served,
                           std::size_t m) {
  const std::size_t n = r.models;
  if (n > 20) throw std::invalid_argument("server_optimum: too many models");
  DemandUnits best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<ModelId> chosen;
    DemandUnits u = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        chosen.push_back(static_cast<ModelId>(i));
        u += residual(s, r, served, m, i);
      }
    }
    if (u > best && union_size(s.library, chosen) <= s.servers[m].capacity) best = u;
  }
  return best;
}

namespace {

std::vector<std::uint64_t> fitting_rows(const Scenario& s, std::size_t m) {
  std::vector<std::uint64_t> rows;
  const std::size_t n = s.num_models();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<ModelId> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) chosen.push_back(static_cast<ModelId>(i));
    }
    if (union_size(s.library, chosen) <= s.servers[m].capacity) rows.push_back(mask);
  }
  return rows;
}

}  // namespace

DemandUnits optimum(const Scenario& s, const Reach& r) {
  const std::size_t M = s.num_servers();
  const std::size_t I = s.num_models();
  if (M * I > 24) throw std::invalid_argument("optimum: instance too large");
  std::vector<std::vector<std::uint64_t>> rows(M);
  for (std::size_t m = 0; m < M; ++m) rows[m] = fitting_rows(s, m);

  DemandUnits best = 0;
  std::vector<std::size_t> pick(M, 0);
  while (true) {
    Placement x(M, I);
    for (std::size_t m = 0; m < M; ++m) {
      for (std::size_t i = 0; i < I; ++i) {
        if (rows[m][pick[m]] >> i & 1) x.set(static_cast<ServerId>(m), static_cast<ModelId>(i));
      }
    }
    best = std::max(best, hit_units(s, r, x));
    std::size_t m = 0;
    while (m < M && ++pick[m] == rows[m].size()) pick[m++] = 0;
    if (m == M) break;
  }
  return best;
}

std::size_t gamma(const Scenario& s) {
  std::size_t total = 0;
  for (std::size_t m = 0; m < s.num_servers(); ++m) {
    std::size_t best = 0;
    for (std::uint64_t row : fitting_rows(s, m)) best = std::max<std::size_t>(best, std::popcount(row));
    total += best;
  }
  return total;
}

}  // namespace trimcache::oracle
