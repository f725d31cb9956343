#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "trimcache/trimcache.hpp"

namespace trimcache::experiment {

enum class SweepAxis { kNone, kCapacity, kServers, kUsers };

std::string to_string(SweepAxis axis);

struct SolverConfig {
  // spec | gen | gen-density | independent | exhaustive
  std::string name;
  double epsilon = 0.1;  // spec only; 0 selects exact mode
  std::uint64_t max_combinations = kDefaultMaxCombinations;
  std::size_t max_dp_cells = kDefaultMaxDpCells;

  // Column label, e.g. "spec(eps=0.1)".
  std::string label() const;
};

struct MobilityConfig {
  MobilityPattern pattern = MobilityPattern::kPedestrian;
  double horizon_s = 7200.0;
  double slot_s = 5.0;
  // Overrides of the pattern's preset ranges.
  std::optional<Range> speed_mps;
  std::optional<Range> accel_mps2;
  std::optional<Range> turn_rate_radps;
};

struct ExperimentConfig {
  ScenarioParams scenario;
  SweepAxis axis = SweepAxis::kNone;
  std::vector<double> values;  // capacity in GB, or counts
  std::vector<SolverConfig> solvers;
  int n_topologies = 100;
  int n_fading = 1000;  // 0 reports expected-rate hit ratios only
  std::uint64_t seed = 1;
  int threads = 1;
  std::string output;
  std::string plot_data;
  std::string cells_output;
  // Wall-times make the CSV run-dependent, so they are opt-in.
  bool record_timing = false;
  // Same topology seeds for every sweep value instead of per-value seeds.
  bool paired_topologies = false;
  MobilityConfig mobility;
  OracleBudget oracle;
};

// Strict JSON parsing: unknown keys and bad values raise ValidationError
// naming the field path (e.g. "config.solvers[1].epsilon").
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

ScenarioParams apply_axis(ScenarioParams params, SweepAxis axis, double value);

// Seed of topology t at a sweep value: hash(master, value, t), or
// hash(master, t) with paired topologies.
std::uint64_t topology_seed(const ExperimentConfig& config, double value, int topology);

struct SolveOutcome {
  Placement placement;
  double seconds = 0.0;
  // Per-server successive-greedy contributions (spec only).
  std::vector<DemandUnits> contributions;
};

SolveOutcome run_solver(const SolverConfig& solver, const Scenario& scenario, const RateTable& rates,
                        const OracleBudget& oracle = {});

// Mean over servers with positive capacity of used / capacity.
double storage_utilization(const Scenario& scenario, const Placement& placement);

struct CellResult {
  double value = 0.0;
  int topology = 0;
  std::uint64_t seed = 0;
  std::string solver;
  double hit_ratio = 0.0;           // fading mean (or expected with n_fading = 0)
  double fading_std = 0.0;
  double expected_hit_ratio = 0.0;  // with average channel gains
  double solve_s = 0.0;
  double storage_util = 0.0;
  // Sum of per-server contributions minus hit units of the result (spec
  // only; always zero when the successive greedy decomposes exactly).
  DemandUnits decomposition_gap = 0;
  std::string reason;               // nonempty when the solver failed
};

struct ResultRow {
  double value = 0.0;
  std::string solver;
  int topologies = 0;  // successful cells
  double mean_hit_ratio = 0.0;
  double std_hit_ratio = 0.0;  // across topologies
  double mean_expected_hit_ratio = 0.0;
  double mean_solve_s = 0.0;
  double mean_storage_util = 0.0;
  int first_topology = 0;
  int last_topology = 0;
  std::string reason;
};

struct SweepResult {
  std::vector<CellResult> cells;  // value-major, then topology, then solver
  std::vector<ResultRow> rows;    // value-major, then solver in config order
};

SweepResult run_sweep(const ExperimentConfig& config);
void write_sweep_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<ResultRow>& rows);
void write_cells_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<CellResult>& cells);
// x, series, mean, std
void write_plot_data(std::ostream& out, const std::vector<ResultRow>& rows);

struct MobilityRow {
  int slot = 0;
  double t_s = 0.0;
  std::string solver;
  double mean_hit_ratio = 0.0;
  double std_hit_ratio = 0.0;
  double degradation = 0.0;  // 1 - mean(t) / mean(0)
};

// Places once on the initial snapshot, then moves users slot by slot and
// re-evaluates reachability from the new positions without re-placing.
// Rows: solver-major, one per slot (horizon / slot_s rows per solver).
std::vector<MobilityRow> run_mobility(const ExperimentConfig& config);
void write_mobility_csv(std::ostream& out, const std::vector<MobilityRow>& rows);
// Per-slot user positions of one topology's trace, as used by run_mobility.
void write_mobility_trace(std::ostream& out, const ExperimentConfig& config, int topology);

struct OracleRow {
  int topology = 0;
  std::uint64_t seed = 0;
  std::string solver;
  double optimum = 0.0;
  double hit_ratio = 0.0;
  double ratio_to_optimum = 0.0;
  std::size_t gamma = 0;
  double solver_s = 0.0;
  double oracle_s = 0.0;
  double speedup = 0.0;
  std::uint64_t oracle_states = 0;
  std::string reason;
};

std::vector<OracleRow> run_oracle_compare(const ExperimentConfig& config);
void write_oracle_csv(std::ostream& out, const std::vector<OracleRow>& rows);

}  // namespace trimcache::experiment
