#include "trimcache/placement.hpp"

#include <algorithm>

#include "json_util.hpp"

namespace trimcache {

std::vector<ModelId> Placement::models_on(ServerId m) const {
  std::vector<ModelId> out;
  for (std::size_t i = 0; i < models_; ++i) {
    if (x_[static_cast<std::size_t>(m) * models_ + i]) out.push_back(static_cast<ModelId>(i));
  }
  return out;
}

std::size_t Placement::count() const {
  return static_cast<std::size_t>(std::count(x_.begin(), x_.end(), std::uint8_t{1}));
}

std::vector<std::vector<std::uint8_t>> Placement::block_matrix(const ModelLibrary& library) const {
  std::vector<std::vector<std::uint8_t>> y(servers_, std::vector<std::uint8_t>(library.num_blocks(), 0));
  for (std::size_t m = 0; m < servers_; ++m) {
    for (std::size_t i = 0; i < models_; ++i) {
      if (!x_[m * models_ + i]) continue;
      for (BlockId j : library.model(static_cast<ModelId>(i)).block_ids) y[m][static_cast<std::size_t>(j)] = 1;
    }
  }
  return y;
}

std::string placement_to_json(const Placement& placement, int indent) {
  detail::json rows = detail::json::array();
  for (std::size_t m = 0; m < placement.num_servers(); ++m) {
    rows.push_back(placement.models_on(static_cast<ServerId>(m)));
  }
  detail::json j = {{"servers", placement.num_servers()}, {"models", placement.num_models()}, {"rows", rows}};
  return j.dump(indent);
}

Placement placement_from_json(const std::string& text) {
  detail::json j;
  try {
    j = detail::json::parse(text);
  } catch (const detail::json::parse_error& e) {
    throw ValidationError(std::string("placement is not valid JSON: ") + e.what());
  }
  const auto servers = detail::get<std::size_t>(j, "servers", "placement");
  const auto models = detail::get<std::size_t>(j, "models", "placement");
  const auto& rows = detail::field(j, "rows", "placement");
  if (!rows.is_array() || rows.size() != servers) {
    throw ValidationError("placement.rows: expected " + std::to_string(servers) + " rows");
  }
  Placement p(servers, models);
  for (std::size_t m = 0; m < servers; ++m) {
    const std::string path = "placement.rows[" + std::to_string(m) + "]";
    for (auto i : detail::as<std::vector<long long>>(rows[m], path)) {
      if (i < 0 || static_cast<std::size_t>(i) >= models) {
        throw ValidationError(path + ": model id " + std::to_string(i) + " out of range");
      }
      p.set(static_cast<ServerId>(m), static_cast<ModelId>(i));
    }
  }
  return p;
}

}  // namespace trimcache
