#include "trimcache/fading.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "trimcache/error.hpp"
#include "trimcache/objective.hpp"
#include "trimcache/radio.hpp"
#include "trimcache/rng.hpp"

namespace trimcache {

DemandUnits realized_hit_units(const Scenario& scenario, const Placement& placement,
                               std::span<const double> link_gains) {
  const auto positions = scenario.server_positions();
  auto links = compute_link_rates(scenario.radio, positions, scenario.users, link_gains);
  return hit_units(scenario, build_rate_table(scenario, std::move(links)), placement);
}

FadingStats evaluate_fading(const Scenario& scenario, const Placement& placement, int n_realizations,
                            std::uint64_t seed, int threads) {
  if (n_realizations < 1) throw ValidationError("evaluate_fading: need at least one realization");
  if (threads < 1) throw ValidationError("evaluate_fading: threads must be >= 1");
  const std::size_t links = scenario.servers.size() * scenario.users.size();
  const auto positions = scenario.server_positions();
  std::vector<double> ratios(static_cast<std::size_t>(n_realizations));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    std::vector<double> gains(links);
    std::exponential_distribution<double> exp1(1.0);
    for (int r = next++; r < n_realizations; r = next++) {
      try {
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(r)}));
        for (double& g : gains) g = exp1(rng);
        auto rates = compute_link_rates(scenario.radio, positions, scenario.users, gains);
        const auto table = build_rate_table(scenario, std::move(rates));
        ratios[static_cast<std::size_t>(r)] = hit_ratio(scenario, table, placement);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n_realizations;
      }
    }
  };

  const int n_threads = std::min(threads, n_realizations);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  // summed in realization order so the result is schedule-independent
  FadingStats stats;
  stats.realizations = n_realizations;
  double sum = 0.0;
  for (double v : ratios) sum += v;
  stats.mean = sum / n_realizations;
  double sq = 0.0;
  for (double v : ratios) sq += (v - stats.mean) * (v - stats.mean);
  stats.stddev = n_realizations > 1 ? std::sqrt(sq / (n_realizations - 1)) : 0.0;
  return stats;
}

}  // namespace trimcache
