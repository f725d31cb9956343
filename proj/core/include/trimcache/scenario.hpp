#pragma once

#include <string>
#include <vector>

#include "trimcache/library.hpp"
#include "trimcache/radio.hpp"
#include "trimcache/types.hpp"

namespace trimcache {

// Per-(user, model) request probability, latency budget and on-device
// inference latency. Probabilities are integers on the 1e-6 grid.
class DemandMatrix {
 public:
  DemandMatrix() = default;
  DemandMatrix(std::size_t users, std::size_t models)
      : users_(users),
        models_(models),
        probability_(users * models, 0),
        budget_(users * models, 1.0),
        inference_(users * models, 0.0) {}

  std::size_t num_users() const { return users_; }
  std::size_t num_models() const { return models_; }

  DemandUnits probability(UserId k, ModelId i) const { return probability_[idx(k, i)]; }
  double budget(UserId k, ModelId i) const { return budget_[idx(k, i)]; }
  double inference(UserId k, ModelId i) const { return inference_[idx(k, i)]; }

  void set_probability(UserId k, ModelId i, DemandUnits p) { probability_[idx(k, i)] = p; }
  void set_budget(UserId k, ModelId i, double seconds) { budget_[idx(k, i)] = seconds; }
  void set_inference(UserId k, ModelId i, double seconds) { inference_[idx(k, i)] = seconds; }

  DemandUnits total() const;

  // Throws ValidationError: negative probability, zero total demand,
  // non-positive budget, negative inference latency.
  void validate() const;

  friend bool operator==(const DemandMatrix&, const DemandMatrix&) = default;

 private:
  std::size_t idx(UserId k, ModelId i) const {
    return static_cast<std::size_t>(k) * models_ + static_cast<std::size_t>(i);
  }

  std::size_t users_ = 0;
  std::size_t models_ = 0;
  std::vector<DemandUnits> probability_;
  std::vector<double> budget_;
  std::vector<double> inference_;
};

struct EdgeServer {
  Point position;
  Bytes capacity = 0;

  friend bool operator==(const EdgeServer&, const EdgeServer&) = default;
};

// One experiment instance: library, radio constants, topology and demand.
class Scenario {
 public:
  ModelLibrary library;
  RadioParams radio;
  double area_side_m = 1000.0;
  std::vector<EdgeServer> servers;
  std::vector<Point> users;
  DemandMatrix demand;

  std::size_t num_servers() const { return servers.size(); }
  std::size_t num_users() const { return users.size(); }
  std::size_t num_models() const { return library.num_models(); }

  std::vector<Point> server_positions() const;

  // Checks dimensions and all component invariants; throws ValidationError.
  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Scenario document: {"library", "radio", "area_side_m", "servers",
// "users", "demand"}. Probabilities are decimal strings with at most six
// fractional digits; budgets may be the string "inf".
std::string scenario_to_json(const Scenario& scenario, int indent = 2);
Scenario scenario_from_json(const std::string& text);

// Radio section: keys as in RadioParams; powers as total_power_dbm or
// total_power_w, noise as noise_psd_dbm_per_hz or noise_psd_w_per_hz.
// Missing keys take default_radio() values.
RadioParams radio_from_json(const std::string& text, const std::string& path = "radio");

void save_scenario(const Scenario& scenario, const std::string& path);
Scenario load_scenario(const std::string& path);

// Exact conversions between decimal strings and the 1e-6 demand grid.
std::string format_probability(DemandUnits units);
DemandUnits parse_probability(const std::string& text);

}  // namespace trimcache
