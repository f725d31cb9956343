#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trimcache/library.hpp"
#include "trimcache/rng.hpp"
#include "trimcache/scenario.hpp"

namespace trimcache {

struct TopologyParams {
  double area_side_m = 1000.0;
  int n_servers = 10;
  int n_users = 10;
  Bytes capacity = kGigabyte;  // identical on every server

  void validate() const;
};

enum class LibraryMode {
  // Shared blocks come from a fixed set of pre-trained ancestors, so the
  // number of shared blocks does not grow with the library.
  kSpecial,
  // Later models reuse blocks of earlier fine-tuned models, so the number
  // of shared blocks grows with the library.
  kGeneral,
};

struct LibraryParams {
  LibraryMode mode = LibraryMode::kSpecial;
  int n_models = 30;
  int n_roots = 3;              // pre-trained ancestors (special mode)
  int chain_length = 4;         // freezable bottom blocks per backbone
  double shared_fraction = 0.7; // share of a backbone's bytes in its freezable chain
  double min_freeze_fraction = 0.5;  // shortest frozen prefix, as a fraction of chain_length
  Bytes min_model_size = 100 * kMegabyte;
  Bytes max_model_size = 300 * kMegabyte;
  int depth = 2;                // generations of derivation (general mode)
  int parent_fanout = 5;        // derived models per first-round model (general mode)

  void validate() const;
};

struct DemandParams {
  double zipf_s = 0.8;
  // One popularity ranking for all users instead of a per-user permutation.
  bool global_popularity = false;
  double budget_min_s = 0.5;
  double budget_max_s = 1.0;
  // Fraction of each sampled budget attributed to on-device inference
  // (t_{k,i}); 0 treats the whole budget as delivery deadline.
  double inference_share = 0.0;

  void validate() const;
};

struct ScenarioParams {
  TopologyParams topology;
  LibraryParams library;
  DemandParams demand;
  RadioParams radio = default_radio();
};

// Servers and users drawn i.i.d. uniform on the square.
struct Topology {
  std::vector<EdgeServer> servers;
  std::vector<Point> users;
};

Topology sample_topology(const TopologyParams& params, Rng& rng);
// Servers and users from separate streams: growing M keeps the users and
// the first servers in place, growing K keeps the servers.
Topology sample_topology(const TopologyParams& params, Rng& server_rng, Rng& user_rng);

// Zipf weights rank^-s normalized to one, ranks 1..n.
std::vector<double> zipf_weights(int n, double s);

// Quantizes nonnegative weights to integers summing exactly to `total`
// with the largest-remainder method (ties broken toward lower index).
std::vector<DemandUnits> largest_remainder(const std::vector<double>& weights, DemandUnits total);

DemandMatrix sample_demand(const DemandParams& params, int n_users, int n_models, Rng& rng);

// Synthetic parameter-sharing library. Warnings (e.g. models with no
// specific bytes) are appended to `warnings` when non-null.
ModelLibrary synth_library(const LibraryParams& params, Rng& rng, std::vector<std::string>* warnings = nullptr);

// Full scenario from independent sub-streams of `seed` (servers, users,
// library, demand), so changing one component's parameters leaves the
// others intact.
Scenario generate_scenario(const ScenarioParams& params, std::uint64_t seed);

}  // namespace trimcache
