#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "trimcache/types.hpp"

namespace trimcache {

class Scenario;

// Radio constants in SI units. The scenario file carries powers in dBm;
// conversion happens once at parse time.
struct RadioParams {
  double gamma0 = 1.0;                 // antenna factor
  double alpha0 = 4.0;                 // path-loss exponent
  double noise_psd_w_per_hz = 0.0;     // n0; set from -174 dBm/Hz by default_radio()
  double total_bandwidth_hz = 400e6;   // B
  double total_power_w = 0.0;          // P; 43 dBm by default_radio()
  double active_prob = 0.5;            // p_A
  double inter_server_rate_bps = 10e9; // C_{m,m'}
  double coverage_radius_m = 275.0;
  double min_distance_m = 1.0;

  void validate() const;

  friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Defaults: -174 dBm/Hz noise, 43 dBm / 400 MHz per server, p_A = 0.5,
// 10 Gbps backhaul, 275 m coverage, gamma0 = 1, alpha0 = 4.
RadioParams default_radio();

// Expected downlink rate (bits/s) from a server to one of n_assoc_users
// associated users. Bandwidth and power are split evenly over the expected
// number of active users. Throws ValidationError when the user lies outside
// the coverage radius or n_assoc_users < 1.
double expected_rate(const RadioParams& radio, Point server, Point user, int n_assoc_users);

// Same as expected_rate with the received power scaled by a fading power
// gain (unit-mean exponential for Rayleigh fading).
double instantaneous_rate(const RadioParams& radio, Point server, Point user, int n_assoc_users,
                          double fading_power_gain);

// Per-link downlink rates and association sets for one snapshot of user
// positions. rate(m, k) is 0 when k is not covered by m.
class LinkRates {
 public:
  LinkRates() = default;
  LinkRates(std::size_t servers, std::size_t users)
      : servers_(servers),
        users_(users),
        rate_(servers * users, 0.0),
        covered_(servers * users, 0),
        assoc_(users),
        load_(servers, 0) {}

  std::size_t num_servers() const { return servers_; }
  std::size_t num_users() const { return users_; }

  double rate(ServerId m, UserId k) const { return rate_[idx(m, k)]; }
  bool covers(ServerId m, UserId k) const { return covered_[idx(m, k)] != 0; }
  // Servers covering user k, ascending (M_k).
  const std::vector<ServerId>& associated(UserId k) const { return assoc_[static_cast<std::size_t>(k)]; }
  // Number of users inside server m's coverage (|K_m|).
  int load(ServerId m) const { return load_[static_cast<std::size_t>(m)]; }

  friend bool operator==(const LinkRates&, const LinkRates&) = default;

 private:
  friend LinkRates compute_link_rates(const RadioParams&, std::span<const Point>, std::span<const Point>,
                                      std::span<const double>);
  std::size_t idx(ServerId m, UserId k) const {
    return static_cast<std::size_t>(m) * users_ + static_cast<std::size_t>(k);
  }

  std::size_t servers_ = 0;
  std::size_t users_ = 0;
  std::vector<double> rate_;
  std::vector<std::uint8_t> covered_;
  std::vector<std::vector<ServerId>> assoc_;
  std::vector<int> load_;
};

// Computes association sets and rates. link_gains, when non-empty, is an
// M x K row-major array of fading power gains applied per link.
LinkRates compute_link_rates(const RadioParams& radio, std::span<const Point> servers,
                             std::span<const Point> users, std::span<const double> link_gains = {});

// Delivery latency (seconds) of model i from server m to user k: direct
// download when m covers k, otherwise the best relay through a covering
// server. Includes the on-device inference latency t_{k,i}. Returns +inf
// when no server covers k.
double e2e_latency(const Scenario& scenario, const LinkRates& rates, ServerId m, UserId k, ModelId i);

// Precomputed rates, latencies and the reachability indicator
// reach(m,k,i) = [latency(m,k,i) <= budget(k,i)].
class RateTable {
 public:
  RateTable() = default;

  std::size_t num_servers() const { return links_.num_servers(); }
  std::size_t num_users() const { return links_.num_users(); }
  std::size_t num_models() const { return models_; }

  const LinkRates& links() const { return links_; }
  double rate(ServerId m, UserId k) const { return links_.rate(m, k); }
  const std::vector<ServerId>& associated(UserId k) const { return links_.associated(k); }
  double latency(ServerId m, UserId k, ModelId i) const { return latency_[idx(m, k, i)]; }
  bool reachable(ServerId m, UserId k, ModelId i) const { return reach_[idx(m, k, i)] != 0; }

  friend bool operator==(const RateTable&, const RateTable&) = default;

 private:
  friend RateTable build_rate_table(const Scenario&, LinkRates);
  std::size_t idx(ServerId m, UserId k, ModelId i) const {
    return (static_cast<std::size_t>(m) * links_.num_users() + static_cast<std::size_t>(k)) * models_ +
           static_cast<std::size_t>(i);
  }

  LinkRates links_;
  std::size_t models_ = 0;
  std::vector<double> latency_;
  std::vector<std::uint8_t> reach_;
};

RateTable build_rate_table(const Scenario& scenario);
// Builds the table from externally computed link rates (e.g. a faded snapshot).
RateTable build_rate_table(const Scenario& scenario, LinkRates links);

}  // namespace trimcache
