#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace trimcache::experiment {

using json = nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string type_name(const json& v) { return v.type_name(); }

// Typed access with the field path in every error.
template <typename T>
T as(const json& v, const std::string& path) {
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw ValidationError(path + ": expected a boolean, got " + type_name(v));
    return v.get<bool>();
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw ValidationError(path + ": expected a string, got " + type_name(v));
    return v.get<std::string>();
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number()) throw ValidationError(path + ": expected an integer, got " + type_name(v));
    const double d = v.get<double>();
    if (v.is_number_float() && (std::floor(d) != d || !std::isfinite(d))) {
      throw ValidationError(path + ": expected an integer, got " + v.dump());
    }
    if (std::is_unsigned_v<T> && d < 0) throw ValidationError(path + ": must be nonnegative");
    if (v.is_number_unsigned()) return static_cast<T>(v.get<std::uint64_t>());
    if (v.is_number_integer()) return static_cast<T>(v.get<std::int64_t>());
    return static_cast<T>(d);
  } else {
    if (!v.is_number()) throw ValidationError(path + ": expected a number, got " + type_name(v));
    return v.get<T>();
  }
}

// Object reader that rejects keys nobody asked for.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ValidationError(path_ + ": expected an object, got " + type_name(j_));
  }

  template <typename T>
  T get(const std::string& key, T fallback) {
    known_.insert(key);
    return j_.contains(key) ? as<T>(j_.at(key), at(key)) : fallback;
  }

  const json* child(const std::string& key) {
    known_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  std::string at(const std::string& key) const { return path_ + "." + key; }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!known_.count(key)) throw ValidationError(at(key) + ": unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> known_;
};

Bytes scaled_bytes(double v, double unit, const std::string& path) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError(path + ": must be a nonnegative number");
  return static_cast<Bytes>(std::llround(v * unit));
}

void parse_topology(Fields f, TopologyParams& t) {
  t.area_side_m = f.get("area_side_m", t.area_side_m);
  t.n_servers = f.get("n_servers", t.n_servers);
  t.n_users = f.get("n_users", t.n_users);
  if (f.child("capacity_gb")) {
    t.capacity = scaled_bytes(f.get("capacity_gb", 0.0), 1e9, f.at("capacity_gb"));
  }
  f.finish();
}

void parse_library(Fields f, LibraryParams& l) {
  const auto mode = f.get<std::string>("mode", l.mode == LibraryMode::kSpecial ? "special" : "general");
  if (mode == "special") {
    l.mode = LibraryMode::kSpecial;
  } else if (mode == "general") {
    l.mode = LibraryMode::kGeneral;
  } else {
    throw ValidationError(f.at("mode") + ": expected \"special\" or \"general\"");
  }
  l.n_models = f.get("n_models", l.n_models);
  l.n_roots = f.get("n_roots", l.n_roots);
  l.chain_length = f.get("chain_length", l.chain_length);
  l.shared_fraction = f.get("shared_fraction", l.shared_fraction);
  l.min_freeze_fraction = f.get("min_freeze_fraction", l.min_freeze_fraction);
  if (f.child("min_model_size_mb")) {
    l.min_model_size = scaled_bytes(f.get("min_model_size_mb", 0.0), 1e6, f.at("min_model_size_mb"));
  }
  if (f.child("max_model_size_mb")) {
    l.max_model_size = scaled_bytes(f.get("max_model_size_mb", 0.0), 1e6, f.at("max_model_size_mb"));
  }
  l.depth = f.get("depth", l.depth);
  l.parent_fanout = f.get("parent_fanout", l.parent_fanout);
  f.finish();
}

void parse_demand(Fields f, DemandParams& d) {
  d.zipf_s = f.get("zipf_s", d.zipf_s);
  d.global_popularity = f.get("global_popularity", d.global_popularity);
  d.budget_min_s = f.get("budget_min_s", d.budget_min_s);
  d.budget_max_s = f.get("budget_max_s", d.budget_max_s);
  d.inference_share = f.get("inference_share", d.inference_share);
  f.finish();
}

SolverConfig parse_solver(const json& j, const std::string& path) {
  SolverConfig s;
  if (j.is_string()) {
    s.name = j.get<std::string>();
  } else {
    Fields f(j, path);
    s.name = f.get<std::string>("name", "");
    s.epsilon = f.get("epsilon", s.epsilon);
    s.max_combinations = f.get("max_combinations", s.max_combinations);
    s.max_dp_cells = f.get("max_dp_cells", s.max_dp_cells);
    f.finish();
  }
  static const std::set<std::string> names{"spec", "gen", "gen-density", "independent", "exhaustive"};
  if (!names.count(s.name)) {
    throw ValidationError(path + ".name: unknown solver '" + s.name +
                          "' (expected spec, gen, gen-density, independent or exhaustive)");
  }
  if (!(s.epsilon >= 0.0 && s.epsilon <= 1.0)) throw ValidationError(path + ".epsilon: must lie in [0, 1]");
  if (s.max_combinations < 1) throw ValidationError(path + ".max_combinations: must be >= 1");
  if (s.max_dp_cells < 1) throw ValidationError(path + ".max_dp_cells: must be >= 1");
  return s;
}

SweepAxis parse_axis(const std::string& name, const std::string& path) {
  if (name == "capacity_gb") return SweepAxis::kCapacity;
  if (name == "n_servers") return SweepAxis::kServers;
  if (name == "n_users") return SweepAxis::kUsers;
  throw ValidationError(path + ": unknown axis '" + name + "' (expected capacity_gb, n_servers or n_users)");
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}


// Runs jobs [0, n) on up to `threads` workers; the first exception wins.
void parallel_for(int n, int threads, const std::function<void(int)>& job) {
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  const int workers = std::max(1, std::min(threads, n));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? kNaN : s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v) {
  if (v.size() < 2) return v.empty() ? kNaN : 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::vector<double> sweep_values(const ExperimentConfig& c) {
  return c.axis == SweepAxis::kNone ? std::vector<double>{0.0} : c.values;
}

MobilityParams mobility_params(const ExperimentConfig& config) {
  auto p = MobilityParams::preset(config.mobility.pattern);
  p.slot_s = config.mobility.slot_s;
  if (config.mobility.speed_mps) p.speed_mps = *config.mobility.speed_mps;
  if (config.mobility.accel_mps2) p.accel_mps2 = *config.mobility.accel_mps2;
  if (config.mobility.turn_rate_radps) p.turn_rate_radps = *config.mobility.turn_rate_radps;
  return p;
}

}  // namespace

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kNone: return "none";
    case SweepAxis::kCapacity: return "capacity_gb";
    case SweepAxis::kServers: return "n_servers";
    case SweepAxis::kUsers: return "n_users";
  }
  return "none";
}

std::string SolverConfig::label() const {
  if (name != "spec") return name;
  return "spec(eps=" + fmt(epsilon) + ")";
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: not valid JSON: ") + e.what());
  }
  ExperimentConfig c;
  Fields f(j, "config");
  c.seed = f.get("seed", c.seed);
  c.n_topologies = f.get("n_topologies", c.n_topologies);
  c.n_fading = f.get("n_fading", c.n_fading);
  c.threads = f.get("threads", c.threads);
  c.output = f.get("output", c.output);
  c.plot_data = f.get("plot_data", c.plot_data);
  c.cells_output = f.get("cells_output", c.cells_output);
  c.record_timing = f.get("record_timing", c.record_timing);
  c.paired_topologies = f.get("paired_topologies", c.paired_topologies);
  if (c.n_topologies < 1) throw ValidationError("config.n_topologies: must be >= 1");
  if (c.n_fading < 0) throw ValidationError("config.n_fading: must be >= 0");
  if (c.threads < 1) throw ValidationError("config.threads: must be >= 1");

  if (const json* s = f.child("scenario")) {
    Fields sf(*s, "config.scenario");
    if (const json* t = sf.child("topology")) parse_topology(Fields(*t, sf.at("topology")), c.scenario.topology);
    if (const json* l = sf.child("library")) parse_library(Fields(*l, sf.at("library")), c.scenario.library);
    if (const json* d = sf.child("demand")) parse_demand(Fields(*d, sf.at("demand")), c.scenario.demand);
    if (const json* r = sf.child("radio")) c.scenario.radio = radio_from_json(r->dump(), sf.at("radio"));
    sf.finish();
  }
  const auto validate_part = [](const std::string& path, const std::function<void()>& check) {
    try {
      check();
    } catch (const ValidationError& e) {
      throw ValidationError(path + ": " + e.what());
    }
  };
  validate_part("config.scenario.topology", [&] { c.scenario.topology.validate(); });
  validate_part("config.scenario.library", [&] { c.scenario.library.validate(); });
  validate_part("config.scenario.demand", [&] { c.scenario.demand.validate(); });

  if (const json* s = f.child("sweep")) {
    Fields sf(*s, "config.sweep");
    c.axis = parse_axis(sf.get<std::string>("axis", ""), sf.at("axis"));
    const json* values = sf.child("values");
    if (!values || !values->is_array() || values->empty()) {
      throw ValidationError(sf.at("values") + ": expected a non-empty array");
    }
    for (std::size_t n = 0; n < values->size(); ++n) {
      const auto path = sf.at("values") + "[" + std::to_string(n) + "]";
      const double v = as<double>((*values)[n], path);
      if (c.axis == SweepAxis::kCapacity && !(v >= 0.0)) throw ValidationError(path + ": must be >= 0");
      if (c.axis != SweepAxis::kCapacity && (v < 1.0 || std::floor(v) != v)) {
        throw ValidationError(path + ": must be a positive integer");
      }
      c.values.push_back(v);
    }
    sf.finish();
  }

  if (const json* s = f.child("solvers")) {
    if (!s->is_array() || s->empty()) throw ValidationError("config.solvers: expected a non-empty array");
    for (std::size_t n = 0; n < s->size(); ++n) {
      c.solvers.push_back(parse_solver((*s)[n], "config.solvers[" + std::to_string(n) + "]"));
    }
  } else {
    c.solvers = {{"spec"}, {"gen"}, {"independent"}};
  }

  if (const json* m = f.child("mobility")) {
    Fields mf(*m, "config.mobility");
    const auto pattern = mf.get<std::string>("pattern", to_string(c.mobility.pattern));
    try {
      c.mobility.pattern = parse_mobility_pattern(pattern);
    } catch (const ValidationError& e) {
      throw ValidationError(mf.at("pattern") + ": " + e.what());
    }
    c.mobility.horizon_s = mf.get("horizon_s", c.mobility.horizon_s);
    c.mobility.slot_s = mf.get("slot_s", c.mobility.slot_s);
    const auto range = [&](const char* key, std::optional<Range>& dst) {
      const json* r = mf.child(key);
      if (!r) return;
      if (!r->is_array() || r->size() != 2) throw ValidationError(mf.at(key) + ": expected [lo, hi]");
      dst = Range{as<double>((*r)[0], mf.at(key) + "[0]"), as<double>((*r)[1], mf.at(key) + "[1]")};
    };
    range("speed_mps", c.mobility.speed_mps);
    range("accel_mps2", c.mobility.accel_mps2);
    range("turn_rate_radps", c.mobility.turn_rate_radps);
    if (!(c.mobility.slot_s > 0.0)) throw ValidationError(mf.at("slot_s") + ": must be positive");
    if (!(c.mobility.horizon_s >= c.mobility.slot_s)) {
      throw ValidationError(mf.at("horizon_s") + ": must be at least one slot");
    }
    mf.finish();
    try {
      mobility_params(c).validate();
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("config.mobility: ") + e.what());
    }
  }

  if (const json* o = f.child("oracle")) {
    Fields of(*o, "config.oracle");
    c.oracle.max_states = of.get("max_states", c.oracle.max_states);
    c.oracle.time_limit_s = of.get("time_limit_s", c.oracle.time_limit_s);
    if (c.oracle.max_states < 1) throw ValidationError(of.at("max_states") + ": must be >= 1");
    if (!(c.oracle.time_limit_s > 0.0)) throw ValidationError(of.at("time_limit_s") + ": must be positive");
    of.finish();
  }
  f.finish();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ScenarioParams apply_axis(ScenarioParams params, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::kNone: break;
    case SweepAxis::kCapacity: params.topology.capacity = static_cast<Bytes>(std::llround(value * 1e9)); break;
    case SweepAxis::kServers: params.topology.n_servers = static_cast<int>(value); break;
    case SweepAxis::kUsers: params.topology.n_users = static_cast<int>(value); break;
  }
  return params;
}

std::uint64_t topology_seed(const ExperimentConfig& config, double value, int topology) {
  const auto t = static_cast<std::uint64_t>(topology);
  if (config.paired_topologies || config.axis == SweepAxis::kNone) return derive_seed(config.seed, {t});
  return derive_seed(config.seed, {double_bits(value), t});
}

SolveOutcome run_solver(const SolverConfig& solver, const Scenario& scenario, const RateTable& rates,
                        const OracleBudget& oracle) {
  SolveOutcome out;
  const auto start = std::chrono::steady_clock::now();
  if (solver.name == "spec") {
    SpecOptions opt;
    opt.quantizer = Quantizer::from_epsilon(solver.epsilon);
    opt.max_combinations = solver.max_combinations;
    opt.max_dp_cells = solver.max_dp_cells;
    auto res = trimcaching_spec(scenario, rates, opt);
    out.placement = std::move(res.placement);
    out.contributions = std::move(res.contributions);
  } else if (solver.name == "gen") {
    out.placement = trimcaching_gen(scenario, rates).placement;
  } else if (solver.name == "gen-density") {
    out.placement = trimcaching_gen(scenario, rates, true).placement;
  } else if (solver.name == "independent") {
    out.placement = independent_caching(scenario, rates).placement;
  } else if (solver.name == "exhaustive") {
    out.placement = exhaustive_search(scenario, rates, oracle).placement;
  } else {
    throw ValidationError("unknown solver '" + solver.name + "'");
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

double storage_utilization(const Scenario& scenario, const Placement& placement) {
  double sum = 0.0;
  int n = 0;
  for (std::size_t m = 0; m < scenario.num_servers(); ++m) {
    const Bytes cap = scenario.servers[m].capacity;
    if (cap <= 0) continue;
    sum += static_cast<double>(storage_used(scenario.library, placement, static_cast<ServerId>(m))) /
           static_cast<double>(cap);
    ++n;
  }
  return n == 0 ? 0.0 : sum / n;
}

SweepResult run_sweep(const ExperimentConfig& config) {
  const auto values = sweep_values(config);
  const int T = config.n_topologies;
  const std::size_t S = config.solvers.size();
  SweepResult result;
  result.cells.resize(values.size() * static_cast<std::size_t>(T) * S);

  parallel_for(static_cast<int>(values.size()) * T, config.threads, [&](int job) {
    const auto v = static_cast<std::size_t>(job / T);
    const int t = job % T;
    const std::uint64_t seed = topology_seed(config, values[v], t);
    const auto scenario = generate_scenario(apply_axis(config.scenario, config.axis, values[v]), seed);
    const auto rates = build_rate_table(scenario);
    for (std::size_t s = 0; s < S; ++s) {
      CellResult& cell = result.cells[(v * static_cast<std::size_t>(T) + static_cast<std::size_t>(t)) * S + s];
      cell.value = values[v];
      cell.topology = t;
      cell.seed = seed;
      cell.solver = config.solvers[s].label();
      try {
        const auto out = run_solver(config.solvers[s], scenario, rates, config.oracle);
        cell.solve_s = out.seconds;
        cell.expected_hit_ratio = hit_ratio(scenario, rates, out.placement);
        if (!out.contributions.empty()) {
          DemandUnits sum = 0;
          for (DemandUnits u : out.contributions) sum += u;
          cell.decomposition_gap = sum - hit_units(scenario, rates, out.placement);
        }
        cell.storage_util = storage_utilization(scenario, out.placement);
        if (config.n_fading > 0) {
          const auto stats = evaluate_fading(scenario, out.placement, config.n_fading,
                                             derive_seed(seed, {label_hash("fading")}));
          cell.hit_ratio = stats.mean;
          cell.fading_std = stats.stddev;
        } else {
          cell.hit_ratio = cell.expected_hit_ratio;
        }
      } catch (const Error& e) {
        cell.hit_ratio = cell.fading_std = cell.expected_hit_ratio = cell.solve_s = cell.storage_util = kNaN;
        cell.reason = e.what();
      }
    }
  });

  for (std::size_t v = 0; v < values.size(); ++v) {
    for (std::size_t s = 0; s < S; ++s) {
      ResultRow row;
      row.value = values[v];
      row.solver = config.solvers[s].label();
      row.first_topology = 0;
      row.last_topology = T - 1;
      std::vector<double> hit, expected, secs, util;
      int failed = 0;
      std::string first_reason;
      for (int t = 0; t < T; ++t) {
        const auto& cell = result.cells[(v * static_cast<std::size_t>(T) + static_cast<std::size_t>(t)) * S + s];
        if (!cell.reason.empty()) {
          if (failed++ == 0) first_reason = cell.reason;
          continue;
        }
        hit.push_back(cell.hit_ratio);
        expected.push_back(cell.expected_hit_ratio);
        secs.push_back(cell.solve_s);
        util.push_back(cell.storage_util);
      }
      row.topologies = static_cast<int>(hit.size());
      if (failed > 0) {
        row.mean_hit_ratio = row.std_hit_ratio = row.mean_expected_hit_ratio = kNaN;
        row.mean_solve_s = row.mean_storage_util = kNaN;
        row.reason = std::to_string(failed) + " of " + std::to_string(T) + " topologies failed: " + first_reason;
      } else {
        row.mean_hit_ratio = mean_of(hit);
        row.std_hit_ratio = std_of(hit);
        row.mean_expected_hit_ratio = mean_of(expected);
        row.mean_solve_s = mean_of(secs);
        row.mean_storage_util = mean_of(util);
      }
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<ResultRow>& rows) {
  out << "axis,value,solver,topologies,mean_hit_ratio,std_hit_ratio,mean_expected_hit_ratio,mean_solve_s,"
         "mean_storage_util,topology_range,reason\n";
  for (const auto& r : rows) {
    out << to_string(config.axis) << ',' << fmt(r.value) << ',' << csv_text(r.solver) << ',' << r.topologies << ','
        << fmt(r.mean_hit_ratio) << ',' << fmt(r.std_hit_ratio) << ',' << fmt(r.mean_expected_hit_ratio) << ','
        << (config.record_timing ? fmt(r.mean_solve_s) : "") << ',' << fmt(r.mean_storage_util) << ','
        << r.first_topology << '-' << r.last_topology << ',' << csv_text(r.reason) << '\n';
  }
}

void write_cells_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<CellResult>& cells) {
  out << "axis,value,topology,seed,solver,hit_ratio,fading_std,expected_hit_ratio,solve_s,storage_util,reason\n";
  for (const auto& c : cells) {
    out << to_string(config.axis) << ',' << fmt(c.value) << ',' << c.topology << ',' << c.seed << ','
        << csv_text(c.solver) << ',' << fmt(c.hit_ratio) << ',' << fmt(c.fading_std) << ','
        << fmt(c.expected_hit_ratio) << ',' << (config.record_timing ? fmt(c.solve_s) : "") << ','
        << fmt(c.storage_util) << ',' << csv_text(c.reason) << '\n';
  }
}

void write_plot_data(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "x,series,mean,std\n";
  for (const auto& r : rows) {
    out << fmt(r.value) << ',' << csv_text(r.solver) << ',' << fmt(r.mean_hit_ratio) << ',' << fmt(r.std_hit_ratio)
        << '\n';
  }
}

namespace {

int mobility_slots(const ExperimentConfig& config) {
  return static_cast<int>(std::llround(config.mobility.horizon_s / config.mobility.slot_s));
}

}  // namespace

std::vector<MobilityRow> run_mobility(const ExperimentConfig& config) {
  const int T = config.n_topologies;
  const std::size_t S = config.solvers.size();
  const int slots = mobility_slots(config);
  const auto params = mobility_params(config);
  // hits[t][s][slot]
  std::vector<std::vector<std::vector<double>>> hits(static_cast<std::size_t>(T));
  std::vector<std::string> reasons(S);
  std::mutex reason_mu;

  parallel_for(T, config.threads, [&](int t) {
    const std::uint64_t seed = topology_seed(config, 0.0, t);
    auto scenario = generate_scenario(config.scenario, seed);
    const auto rates = build_rate_table(scenario);
    std::vector<Placement> placements;
    std::vector<bool> ok;
    for (std::size_t s = 0; s < S; ++s) {
      try {
        placements.push_back(run_solver(config.solvers[s], scenario, rates, config.oracle).placement);
        ok.push_back(true);
      } catch (const Error& e) {
        placements.emplace_back();
        ok.push_back(false);
        std::lock_guard lock(reason_mu);
        if (reasons[s].empty()) reasons[s] = e.what();
      }
    }
    auto& h = hits[static_cast<std::size_t>(t)];
    h.assign(S, std::vector<double>(static_cast<std::size_t>(slots), kNaN));
    Rng rng(derive_seed(seed, {label_hash("mobility")}));
    auto state = init_mobility(scenario.users, params, rng);
    for (int slot = 0; slot < slots; ++slot) {
      if (slot > 0) mobility_step(state, params, scenario.area_side_m, rng);
      scenario.users = state.positions;
      const auto now = build_rate_table(scenario);
      for (std::size_t s = 0; s < S; ++s) {
        if (ok[s]) h[s][static_cast<std::size_t>(slot)] = hit_ratio(scenario, now, placements[s]);
      }
    }
  });

  std::vector<MobilityRow> rows;
  for (std::size_t s = 0; s < S; ++s) {
    double initial = kNaN;
    for (int slot = 0; slot < slots; ++slot) {
      std::vector<double> v;
      for (int t = 0; t < T; ++t) v.push_back(hits[static_cast<std::size_t>(t)][s][static_cast<std::size_t>(slot)]);
      MobilityRow row;
      row.slot = slot;
      row.t_s = slot * config.mobility.slot_s;
      row.solver = config.solvers[s].label();
      row.mean_hit_ratio = mean_of(v);
      row.std_hit_ratio = std_of(v);
      if (slot == 0) initial = row.mean_hit_ratio;
      row.degradation = initial > 0.0 ? 1.0 - row.mean_hit_ratio / initial : 0.0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_mobility_csv(std::ostream& out, const std::vector<MobilityRow>& rows) {
  out << "slot,t_s,solver,mean_hit_ratio,std_hit_ratio,degradation\n";
  for (const auto& r : rows) {
    out << r.slot << ',' << fmt(r.t_s) << ',' << csv_text(r.solver) << ',' << fmt(r.mean_hit_ratio) << ','
        << fmt(r.std_hit_ratio) << ',' << fmt(r.degradation) << '\n';
  }
}

void write_mobility_trace(std::ostream& out, const ExperimentConfig& config, int topology) {
  const std::uint64_t seed = topology_seed(config, 0.0, topology);
  const auto scenario = generate_scenario(config.scenario, seed);
  const auto params = mobility_params(config);
  Rng rng(derive_seed(seed, {label_hash("mobility")}));
  const auto state = init_mobility(scenario.users, params, rng);
  write_trace_csv(out, state, params, scenario.area_side_m, mobility_slots(config) - 1, rng);
}

std::vector<OracleRow> run_oracle_compare(const ExperimentConfig& config) {
  const int T = config.n_topologies;
  std::vector<std::vector<OracleRow>> per_topology(static_cast<std::size_t>(T));
  parallel_for(T, config.threads, [&](int t) {
    const std::uint64_t seed = topology_seed(config, 0.0, t);
    const auto scenario = generate_scenario(config.scenario, seed);
    const auto rates = build_rate_table(scenario);
    auto& rows = per_topology[static_cast<std::size_t>(t)];

    OracleResult opt;
    double oracle_s = kNaN;
    std::string failure;
    try {
      const auto start = std::chrono::steady_clock::now();
      opt = exhaustive_search(scenario, rates, config.oracle);
      oracle_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    } catch (const BudgetExceeded& e) {
      failure = std::string(e.what()) + " (" + std::to_string(e.states_visited()) + " states visited)";
      opt.states_visited = e.states_visited();
    }
    const std::size_t gamma = failure.empty() ? max_feasible_cardinality(scenario) : 0;

    for (const auto& solver : config.solvers) {
      if (solver.name == "exhaustive") continue;
      OracleRow row;
      row.topology = t;
      row.seed = seed;
      row.solver = solver.label();
      row.oracle_states = opt.states_visited;
      row.gamma = gamma;
      row.oracle_s = oracle_s;
      try {
        const auto out = run_solver(solver, scenario, rates, config.oracle);
        row.hit_ratio = hit_ratio(scenario, rates, out.placement);
        row.solver_s = out.seconds;
      } catch (const Error& e) {
        row.hit_ratio = row.solver_s = kNaN;
        row.reason = e.what();
      }
      if (!failure.empty()) {
        row.optimum = row.ratio_to_optimum = row.speedup = kNaN;
        row.reason = row.reason.empty() ? failure : row.reason + "; " + failure;
      } else {
        row.optimum = opt.hit_ratio;
        row.ratio_to_optimum = opt.hit_units > 0 ? row.hit_ratio / opt.hit_ratio : 1.0;
        row.speedup = row.solver_s > 0.0 ? oracle_s / row.solver_s : std::numeric_limits<double>::infinity();
      }
      rows.push_back(std::move(row));
    }
  });
  std::vector<OracleRow> rows;
  for (auto& v : per_topology) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

void write_oracle_csv(std::ostream& out, const std::vector<OracleRow>& rows) {
  out << "topology,seed,solver,optimum_hit_ratio,hit_ratio,ratio_to_optimum,gamma,solver_s,oracle_s,speedup,"
         "oracle_states,reason\n";
  for (const auto& r : rows) {
    out << r.topology << ',' << r.seed << ',' << csv_text(r.solver) << ',' << fmt(r.optimum) << ','
        << fmt(r.hit_ratio) << ',' << fmt(r.ratio_to_optimum) << ',' << r.gamma << ',' << fmt(r.solver_s) << ','
        << fmt(r.oracle_s) << ',' << fmt(r.speedup) << ',' << r.oracle_states << ',' << csv_text(r.reason) << '\n';
  }
}

}  // namespace trimcache::experiment
