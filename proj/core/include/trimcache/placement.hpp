#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trimcache/library.hpp"
#include "trimcache/types.hpp"

namespace trimcache {

// Binary server x model placement matrix X. Value type: copy to modify.
class Placement {
 public:
  Placement() = default;
  Placement(std::size_t servers, std::size_t models)
      : servers_(servers), models_(models), x_(servers * models, 0) {}

  std::size_t num_servers() const { return servers_; }
  std::size_t num_models() const { return models_; }

  bool at(ServerId m, ModelId i) const { return x_[index(m, i)] != 0; }
  void set(ServerId m, ModelId i, bool placed = true) { x_[index(m, i)] = placed ? 1 : 0; }

  // Models cached on server m, ascending.
  std::vector<ModelId> models_on(ServerId m) const;
  std::size_t count() const;

  // Block-level image y[m][j] = 1 iff some model placed on m contains j.
  std::vector<std::vector<std::uint8_t>> block_matrix(const ModelLibrary& library) const;

  friend bool operator==(const Placement&, const Placement&) = default;
  // Row-major lexicographic order over the 0/1 entries.
  friend auto operator<=>(const Placement& a, const Placement& b) { return a.x_ <=> b.x_; }

 private:
  std::size_t index(ServerId m, ModelId i) const {
    return static_cast<std::size_t>(m) * models_ + static_cast<std::size_t>(i);
  }

  std::size_t servers_ = 0;
  std::size_t models_ = 0;
  std::vector<std::uint8_t> x_;
};

// {"servers": M, "models": I, "rows": [[model ids on server 0], ...]}
std::string placement_to_json(const Placement& placement, int indent = 2);
Placement placement_from_json(const std::string& text);

}  // namespace trimcache
