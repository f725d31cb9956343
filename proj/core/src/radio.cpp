#include "trimcache/radio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "trimcache/error.hpp"
#include "trimcache/scenario.hpp"

namespace trimcache {

void RadioParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || std::isinf(v)) throw ValidationError(std::string("radio.") + name + " must be positive and finite");
  };
  positive(gamma0, "gamma0");
  positive(alpha0, "alpha0");
  positive(noise_psd_w_per_hz, "noise_psd");
  positive(total_bandwidth_hz, "total_bandwidth_hz");
  positive(total_power_w, "total_power");
  positive(inter_server_rate_bps, "inter_server_rate_bps");
  positive(coverage_radius_m, "coverage_radius_m");
  positive(min_distance_m, "min_distance_m");
  if (!(active_prob > 0.0 && active_prob <= 1.0)) throw ValidationError("radio.active_prob must be in (0, 1]");
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

RadioParams default_radio() {
  RadioParams r;
  r.noise_psd_w_per_hz = dbm_to_watts(-174.0);
  r.total_power_w = dbm_to_watts(43.0);
  return r;
}

double instantaneous_rate(const RadioParams& radio, Point server, Point user, int n_assoc_users,
                          double fading_power_gain) {
  if (n_assoc_users < 1) throw ValidationError("expected_rate: n_assoc_users must be >= 1");
  if (!(fading_power_gain >= 0.0)) throw ValidationError("instantaneous_rate: fading gain must be nonnegative");
  const double raw = distance(server, user);
  if (raw > radio.coverage_radius_m) {
    throw ValidationError("expected_rate: user at " + std::to_string(raw) + " m is outside the " +
                          std::to_string(radio.coverage_radius_m) + " m coverage radius");
  }
  const double d = std::max(raw, radio.min_distance_m);
  const double share = radio.active_prob * static_cast<double>(n_assoc_users);
  const double bandwidth = radio.total_bandwidth_hz / share;
  const double power = radio.total_power_w / share;
  const double snr = fading_power_gain * power * radio.gamma0 * std::pow(d, -radio.alpha0) /
                     (radio.noise_psd_w_per_hz * bandwidth);
  return bandwidth * std::log2(1.0 + snr);
}

double expected_rate(const RadioParams& radio, Point server, Point user, int n_assoc_users) {
  return instantaneous_rate(radio, server, user, n_assoc_users, 1.0);
}

LinkRates compute_link_rates(const RadioParams& radio, std::span<const Point> servers, std::span<const Point> users,
                             std::span<const double> link_gains) {
  const std::size_t M = servers.size();
  const std::size_t K = users.size();
  if (!link_gains.empty() && link_gains.size() != M * K) {
    throw ValidationError("compute_link_rates: expected " + std::to_string(M * K) + " link gains");
  }
  LinkRates out(M, K);
  for (std::size_t m = 0; m < M; ++m) {
    for (std::size_t k = 0; k < K; ++k) {
      if (distance(servers[m], users[k]) <= radio.coverage_radius_m) {
        out.covered_[m * K + k] = 1;
        out.assoc_[k].push_back(static_cast<ServerId>(m));
        ++out.load_[m];
      }
    }
  }
  for (std::size_t m = 0; m < M; ++m) {
    for (std::size_t k = 0; k < K; ++k) {
      if (!out.covered_[m * K + k]) continue;
      const double gain = link_gains.empty() ? 1.0 : link_gains[m * K + k];
      out.rate_[m * K + k] = instantaneous_rate(radio, servers[m], users[k], out.load_[m], gain);
    }
  }
  return out;
}

double e2e_latency(const Scenario& scenario, const LinkRates& rates, ServerId m, UserId k, ModelId i) {
  const double bits = 8.0 * static_cast<double>(scenario.library.model(i).download_size);
  const double infer = scenario.demand.inference(k, i);
  if (rates.covers(m, k)) return bits / rates.rate(m, k) + infer;

  const auto& assoc = rates.associated(k);
  if (assoc.empty()) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (ServerId relay : assoc) {
    best = std::min(best, bits / scenario.radio.inter_server_rate_bps + bits / rates.rate(relay, k));
  }
  return best + infer;
}

RateTable build_rate_table(const Scenario& scenario, LinkRates links) {
  const std::size_t M = scenario.num_servers();
  const std::size_t K = scenario.num_users();
  const std::size_t I = scenario.num_models();
  if (links.num_servers() != M || links.num_users() != K) {
    throw ValidationError("build_rate_table: link rates do not match scenario dimensions");
  }
  RateTable t;
  t.links_ = std::move(links);
  t.models_ = I;
  t.latency_.assign(M * K * I, 0.0);
  t.reach_.assign(M * K * I, 0);
  for (std::size_t m = 0; m < M; ++m) {
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t i = 0; i < I; ++i) {
        const auto sm = static_cast<ServerId>(m);
        const auto uk = static_cast<UserId>(k);
        const auto mi = static_cast<ModelId>(i);
        const double lat = e2e_latency(scenario, t.links_, sm, uk, mi);
        const std::size_t n = t.idx(sm, uk, mi);
        t.latency_[n] = lat;
        t.reach_[n] = std::isfinite(lat) && lat <= scenario.demand.budget(uk, mi) ? 1 : 0;
      }
    }
  }
  return t;
}

RateTable build_rate_table(const Scenario& scenario) {
  return build_rate_table(scenario,
                          compute_link_rates(scenario.radio, scenario.server_positions(), scenario.users));
}

}  // namespace trimcache
