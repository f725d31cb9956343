#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json_util.hpp"
#include "trimcache/scenario.hpp"

namespace trimcache {

namespace detail {

json library_to_json_value(const ModelLibrary& library) {
  json blocks = json::array();
  for (const auto& b : library.blocks()) blocks.push_back({{"id", b.id}, {"size_bytes", b.size_bytes}});
  json models = json::array();
  for (const auto& m : library.models()) models.push_back({{"id", m.id}, {"block_ids", m.block_ids}});
  return {{"blocks", blocks}, {"models", models}};
}

ModelLibrary library_from_json_value(const json& j, const std::string& path) {
  const auto& jb = field(j, "blocks", path);
  const auto& jm = field(j, "models", path);
  if (!jb.is_array()) throw ValidationError(path + ".blocks: expected an array");
  if (!jm.is_array()) throw ValidationError(path + ".models: expected an array");
  std::vector<ParameterBlock> blocks;
  for (std::size_t n = 0; n < jb.size(); ++n) {
    const auto p = path + ".blocks[" + std::to_string(n) + "]";
    blocks.push_back({get<BlockId>(jb[n], "id", p), get<Bytes>(jb[n], "size_bytes", p)});
  }
  std::vector<ModelSpec> models;
  for (std::size_t n = 0; n < jm.size(); ++n) {
    const auto p = path + ".models[" + std::to_string(n) + "]";
    models.push_back({get<ModelId>(jm[n], "id", p), get<std::vector<BlockId>>(jm[n], "block_ids", p)});
  }
  return build_library(std::move(blocks), std::move(models));
}

}  // namespace detail

namespace {

using detail::json;

json budget_to_json(double seconds) {
  if (std::isinf(seconds)) return "inf";
  return seconds;
}

double budget_from_json(const json& v, const std::string& path) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw ValidationError(path + ": expected a number or \"inf\"");
  }
  return detail::as<double>(v, path);
}

json radio_to_json(const RadioParams& r) {
  return {{"gamma0", r.gamma0},
          {"alpha0", r.alpha0},
          {"noise_psd_w_per_hz", r.noise_psd_w_per_hz},
          {"total_bandwidth_hz", r.total_bandwidth_hz},
          {"total_power_w", r.total_power_w},
          {"active_prob", r.active_prob},
          {"inter_server_rate_bps", r.inter_server_rate_bps},
          {"coverage_radius_m", r.coverage_radius_m},
          {"min_distance_m", r.min_distance_m}};
}

// Powers may be given in dBm (..._dbm) or watts (..._w), not both.
double power_field(const json& j, const char* dbm_key, const char* w_key, const std::string& path, double fallback) {
  const bool has_dbm = j.contains(dbm_key);
  const bool has_w = j.contains(w_key);
  if (has_dbm && has_w) throw ValidationError(path + ": give either " + dbm_key + " or " + w_key);
  if (has_dbm) return dbm_to_watts(detail::get<double>(j, dbm_key, path));
  if (has_w) return detail::get<double>(j, w_key, path);
  return fallback;
}

}  // namespace

RadioParams detail::radio_from_json_value(const json& j, const std::string& path) {
  const RadioParams d = default_radio();
  RadioParams r;
  r.gamma0 = detail::get_or(j, "gamma0", path, d.gamma0);
  r.alpha0 = detail::get_or(j, "alpha0", path, d.alpha0);
  r.noise_psd_w_per_hz = power_field(j, "noise_psd_dbm_per_hz", "noise_psd_w_per_hz", path, d.noise_psd_w_per_hz);
  r.total_bandwidth_hz = detail::get_or(j, "total_bandwidth_hz", path, d.total_bandwidth_hz);
  r.total_power_w = power_field(j, "total_power_dbm", "total_power_w", path, d.total_power_w);
  r.active_prob = detail::get_or(j, "active_prob", path, d.active_prob);
  r.inter_server_rate_bps = detail::get_or(j, "inter_server_rate_bps", path, d.inter_server_rate_bps);
  r.coverage_radius_m = detail::get_or(j, "coverage_radius_m", path, d.coverage_radius_m);
  r.min_distance_m = detail::get_or(j, "min_distance_m", path, d.min_distance_m);
  try {
    r.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return r;
}

RadioParams radio_from_json(const std::string& text, const std::string& path) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": not valid JSON: " + e.what());
  }
  return detail::radio_from_json_value(j, path);
}

std::string scenario_to_json(const Scenario& s, int indent) {
  json servers = json::array();
  for (const auto& srv : s.servers) {
    servers.push_back({{"x", srv.position.x}, {"y", srv.position.y}, {"capacity_bytes", srv.capacity}});
  }
  json users = json::array();
  for (const auto& u : s.users) users.push_back({{"x", u.x}, {"y", u.y}});

  json prob = json::array(), budget = json::array(), infer = json::array();
  for (std::size_t k = 0; k < s.demand.num_users(); ++k) {
    json pr = json::array(), br = json::array(), ir = json::array();
    for (std::size_t i = 0; i < s.demand.num_models(); ++i) {
      const auto uk = static_cast<UserId>(k);
      const auto mi = static_cast<ModelId>(i);
      pr.push_back(format_probability(s.demand.probability(uk, mi)));
      br.push_back(budget_to_json(s.demand.budget(uk, mi)));
      ir.push_back(s.demand.inference(uk, mi));
    }
    prob.push_back(std::move(pr));
    budget.push_back(std::move(br));
    infer.push_back(std::move(ir));
  }

  json j = {{"library", detail::library_to_json_value(s.library)},
            {"radio", radio_to_json(s.radio)},
            {"area_side_m", s.area_side_m},
            {"servers", servers},
            {"users", users},
            {"demand", {{"probability", prob}, {"budget_s", budget}, {"inference_s", infer}}}};
  return j.dump(indent);
}

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario is not valid JSON: ") + e.what());
  }
  const std::string root = "scenario";
  Scenario s;
  s.library = detail::library_from_json_value(detail::field(j, "library", root), root + ".library");
  s.radio = j.contains("radio") ? detail::radio_from_json_value(j["radio"], root + ".radio") : default_radio();
  s.area_side_m = detail::get_or(j, "area_side_m", root, 1000.0);

  const auto& js = detail::field(j, "servers", root);
  if (!js.is_array()) throw ValidationError(root + ".servers: expected an array");
  for (std::size_t m = 0; m < js.size(); ++m) {
    const auto p = root + ".servers[" + std::to_string(m) + "]";
    s.servers.push_back({{detail::get<double>(js[m], "x", p), detail::get<double>(js[m], "y", p)},
                         detail::get<Bytes>(js[m], "capacity_bytes", p)});
  }
  const auto& ju = detail::field(j, "users", root);
  if (!ju.is_array()) throw ValidationError(root + ".users: expected an array");
  for (std::size_t k = 0; k < ju.size(); ++k) {
    const auto p = root + ".users[" + std::to_string(k) + "]";
    s.users.push_back({detail::get<double>(ju[k], "x", p), detail::get<double>(ju[k], "y", p)});
  }

  const auto& jd = detail::field(j, "demand", root);
  const std::size_t K = s.users.size();
  const std::size_t I = s.library.num_models();
  s.demand = DemandMatrix(K, I);
  auto matrix = [&](const char* key, bool required) -> const json* {
    if (!jd.contains(key)) {
      if (required) throw ValidationError(root + ".demand." + key + ": missing");
      return nullptr;
    }
    const auto& mtx = jd[key];
    const auto p = root + ".demand." + key;
    if (!mtx.is_array() || mtx.size() != K) throw ValidationError(p + ": expected " + std::to_string(K) + " rows");
    for (std::size_t k = 0; k < K; ++k) {
      if (!mtx[k].is_array() || mtx[k].size() != I) {
        throw ValidationError(p + "[" + std::to_string(k) + "]: expected " + std::to_string(I) + " entries");
      }
    }
    return &mtx;
  };
  const json* jp = matrix("probability", true);
  const json* jb = matrix("budget_s", true);
  const json* ji = matrix("inference_s", false);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < I; ++i) {
      const auto cell = "[" + std::to_string(k) + "][" + std::to_string(i) + "]";
      const auto uk = static_cast<UserId>(k);
      const auto mi = static_cast<ModelId>(i);
      const auto& pv = (*jp)[k][i];
      if (!pv.is_string()) {
        throw ValidationError(root + ".demand.probability" + cell + ": expected a decimal string");
      }
      try {
        s.demand.set_probability(uk, mi, parse_probability(pv.get<std::string>()));
      } catch (const ValidationError& e) {
        throw ValidationError(root + ".demand.probability" + cell + ": " + e.what());
      }
      s.demand.set_budget(uk, mi, budget_from_json((*jb)[k][i], root + ".demand.budget_s" + cell));
      if (ji) s.demand.set_inference(uk, mi, detail::as<double>((*ji)[k][i], root + ".demand.inference_s" + cell));
    }
  }
  s.validate();
  return s;
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << scenario_to_json(scenario) << '\n';
  if (!out) throw Error("failed writing " + path);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

}  // namespace trimcache
