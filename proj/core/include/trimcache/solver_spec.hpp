#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "trimcache/dp_select.hpp"
#include "trimcache/objective.hpp"
#include "trimcache/placement.hpp"
#include "trimcache/radio.hpp"
#include "trimcache/scenario.hpp"

namespace trimcache {

// A subset N of the shared blocks assumed cached on a server, with the
// models whose shared blocks all lie inside N.
struct Combination {
  std::uint64_t mask = 0;            // bit b <=> library.shared_blocks()[b]
  std::vector<BlockId> blocks;       // ascending
  Bytes shared_bytes = 0;            // d_N
  std::vector<ModelId> eligible;     // I_N, ascending
  std::vector<Bytes> specific_size;  // D_N(i) = D_i - (shared bytes of i), parallel to eligible
};

inline constexpr std::uint64_t kDefaultMaxCombinations = std::uint64_t{1} << 20;

// Calls visit(mask, shared_bytes) for every subset of the shared blocks whose
// total size fits capacity, in DFS order (including the empty set). Throws
// ResourceError when 2^(number of shared blocks) exceeds max_combinations.
void for_each_combination(const ModelLibrary& library, Bytes capacity, std::uint64_t max_combinations,
                          const std::function<void(std::uint64_t mask, Bytes shared_bytes)>& visit);

// Materializes every feasible combination with its eligible models.
std::vector<Combination> enumerate_combinations(const ModelLibrary& library, Bytes capacity,
                                                std::uint64_t max_combinations = kDefaultMaxCombinations);

// Utility quantizer. Exact mode keeps utilities in demand units; rounded
// mode maps u to floor(u / (epsilon * u_min)). Epsilon is held in parts per
// million so the rounding is exact integer arithmetic.
class Quantizer {
 public:
  static Quantizer exact() { return Quantizer(0); }
  // epsilon in (0, 1], resolved to the nearest 1e-6.
  static Quantizer rounded(double epsilon);
  static Quantizer from_epsilon(double epsilon) { return epsilon == 0.0 ? exact() : rounded(epsilon); }

  bool is_exact() const { return epsilon_ppm_ == 0; }
  std::int64_t epsilon_ppm() const { return epsilon_ppm_; }
  double epsilon() const { return static_cast<double>(epsilon_ppm_) / 1e6; }

  // u_min is the smallest positive utility of the server; u must be positive.
  std::int64_t quantize(DemandUnits u, DemandUnits u_min) const;

 private:
  explicit Quantizer(std::int64_t ppm) : epsilon_ppm_(ppm) {}
  std::int64_t epsilon_ppm_;
};

struct SpecOptions {
  Quantizer quantizer = Quantizer::rounded(0.1);
  std::uint64_t max_combinations = kDefaultMaxCombinations;
  std::size_t max_dp_cells = kDefaultMaxDpCells;
};

struct ServerSolution {
  std::vector<ModelId> models;      // ascending
  DemandUnits contribution = 0;     // sum of unquantized residual utilities
  Bytes storage = 0;                // block-union footprint of models
  std::vector<BlockId> combination; // winning shared-block set N
};

// Solves one server's residual subproblem: for every feasible combination,
// a knapsack over eligible models' specific bytes, scored with unquantized
// utilities. Ties prefer smaller d_N, then the lexicographically smaller N.
ServerSolution solve_server(const Scenario& scenario, const RateTable& rates, const ServedMask& served,
                            ServerId m, const SpecOptions& options = {});

struct SpecResult {
  Placement placement;
  std::vector<DemandUnits> contributions;  // per server
  DemandUnits total_contribution() const;
};

// Successive greedy over servers in index order.
SpecResult trimcaching_spec(const Scenario& scenario, const RateTable& rates, const SpecOptions& options = {});

}  // namespace trimcache
