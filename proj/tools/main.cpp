#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "experiment.hpp"

namespace ex = trimcache::experiment;
using namespace trimcache;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<int> threads;
};

void add_common(CLI::App* app, Common& c, bool config_required) {
  auto* opt = app->add_option("--config", c.config, "Experiment config (JSON)");
  if (config_required) opt->required()->check(CLI::ExistingFile);
  app->add_option("--seed", c.seed, "Master seed (overrides the config)");
  app->add_option("--out", c.out, "Output path (overrides the config; '-' for stdout)");
  app->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
}

ex::ExperimentConfig load(const Common& c) {
  auto config = c.config.empty() ? ex::ExperimentConfig{} : ex::load_config(c.config);
  if (c.seed) config.seed = *c.seed;
  if (c.threads) config.threads = *c.threads;
  if (!c.out.empty()) config.output = c.out;
  return config;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename F>
void emit(const std::string& path, F&& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  body(out);
  if (!out) throw Error("failed writing " + path);
}

ex::SolverConfig solver_named(const std::string& name, double epsilon) {
  ex::SolverConfig s;
  s.name = name;
  s.epsilon = epsilon;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parameter-sharing model placement on wireless edge networks"};
  app.require_subcommand(1);

  Common gen_c;
  auto* gen = app.add_subcommand("gen-scenario", "Generate one scenario from the config's scenario section");
  add_common(gen, gen_c, false);
  int gen_topology = 0;
  gen->add_option("--topology", gen_topology, "Topology index")->check(CLI::NonNegativeNumber);

  Common solve_c;
  auto* solve = app.add_subcommand("solve", "Place models on a scenario");
  add_common(solve, solve_c, false);
  std::string solve_scenario, solver_name = "spec";
  double epsilon = 0.1;
  solve->add_option("--scenario", solve_scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--solver", solver_name, "spec | gen | gen-density | independent | exhaustive")
      ->check(CLI::IsMember({"spec", "gen", "gen-density", "independent", "exhaustive"}));
  solve->add_option("--epsilon", epsilon, "Rounding epsilon for spec (0 = exact)")->check(CLI::Range(0.0, 1.0));

  Common eval_c;
  auto* evaluate = app.add_subcommand("evaluate", "Hit ratio of a placement, expected and under fading");
  add_common(evaluate, eval_c, false);
  std::string eval_scenario, eval_placement;
  int fading = 1000;
  evaluate->add_option("--scenario", eval_scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--placement", eval_placement, "Placement JSON")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--fading", fading, "Fading realizations (0 = expected only)")
      ->check(CLI::NonNegativeNumber);

  Common sweep_c;
  auto* sweep = app.add_subcommand("sweep", "Sweep one axis over random topologies");
  add_common(sweep, sweep_c, true);

  Common mob_c;
  auto* mobility = app.add_subcommand("mobility", "Hit ratio over time as users move");
  add_common(mobility, mob_c, true);
  std::string trace_out;
  mobility->add_option("--trace-out", trace_out, "Write topology 0's user trace as CSV");

  Common oracle_c;
  auto* oracle = app.add_subcommand("oracle-compare", "Compare solvers with the exhaustive optimum");
  add_common(oracle, oracle_c, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      const auto config = load(gen_c);
      const auto scenario =
          generate_scenario(config.scenario, ex::topology_seed(config, 0.0, gen_topology));
      emit(config.output, [&](std::ostream& out) { out << scenario_to_json(scenario) << '\n'; });
    } else if (solve->parsed()) {
      const auto config = load(solve_c);
      const auto scenario = scenario_from_json(read_file(solve_scenario));
      const auto rates = build_rate_table(scenario);
      const auto result = ex::run_solver(solver_named(solver_name, epsilon), scenario, rates, config.oracle);
      emit(config.output, [&](std::ostream& out) { out << placement_to_json(result.placement) << '\n'; });
      std::fprintf(stderr, "hit_ratio=%.10g solve_s=%.6g\n", hit_ratio(scenario, rates, result.placement),
                   result.seconds);
    } else if (evaluate->parsed()) {
      const auto config = load(eval_c);
      const auto scenario = scenario_from_json(read_file(eval_scenario));
      const auto placement = placement_from_json(read_file(eval_placement));
      if (!is_feasible(scenario, placement)) throw ValidationError("placement violates a storage budget");
      const auto rates = build_rate_table(scenario);
      const double expected = hit_ratio(scenario, rates, placement);
      FadingStats stats{expected, 0.0, 0};
      if (fading > 0) {
        stats = evaluate_fading(scenario, placement, fading, derive_seed(config.seed, {label_hash("fading")}),
                                config.threads);
      }
      emit(config.output, [&](std::ostream& out) {
        char line[256];
        std::snprintf(line, sizeof line, "expected_hit_ratio,fading_mean,fading_std,realizations\n%.10g,%.10g,%.10g,%d\n",
                      expected, stats.mean, stats.stddev, stats.realizations);
        out << line;
      });
    } else if (sweep->parsed()) {
      const auto config = load(sweep_c);
      if (config.axis == ex::SweepAxis::kNone) throw ValidationError("config.sweep: required for the sweep command");
      const auto result = ex::run_sweep(config);
      emit(config.output, [&](std::ostream& out) { ex::write_sweep_csv(out, config, result.rows); });
      if (!config.plot_data.empty()) {
        emit(config.plot_data, [&](std::ostream& out) { ex::write_plot_data(out, result.rows); });
      }
      if (!config.cells_output.empty()) {
        emit(config.cells_output, [&](std::ostream& out) { ex::write_cells_csv(out, config, result.cells); });
      }
    } else if (mobility->parsed()) {
      const auto config = load(mob_c);
      const auto rows = ex::run_mobility(config);
      emit(config.output, [&](std::ostream& out) { ex::write_mobility_csv(out, rows); });
      if (!trace_out.empty()) {
        emit(trace_out, [&](std::ostream& out) { ex::write_mobility_trace(out, config, 0); });
      }
    } else if (oracle->parsed()) {
      const auto config = load(oracle_c);
      const auto rows = ex::run_oracle_compare(config);
      emit(config.output, [&](std::ostream& out) { ex::write_oracle_csv(out, rows); });
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
