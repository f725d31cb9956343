#include "trimcache/library.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "json.hpp"
#include "json_util.hpp"
#include "trimcache/error.hpp"

namespace trimcache {

namespace {

template <typename T, typename IdOf>
void check_dense_ids(const std::vector<T>& items, IdOf id_of, const char* kind) {
  std::vector<bool> seen(items.size(), false);
  for (const auto& item : items) {
    const auto id = id_of(item);
    if (id < 0 || static_cast<std::size_t>(id) >= items.size()) {
      throw ValidationError(std::string(kind) + " id " + std::to_string(id) +
                            " is out of the dense range [0, " + std::to_string(items.size()) + ")");
    }
    if (seen[static_cast<std::size_t>(id)]) {
      throw ValidationError("duplicate " + std::string(kind) + " id " + std::to_string(id));
    }
    seen[static_cast<std::size_t>(id)] = true;
  }
}

}  // namespace

ModelLibrary build_library(std::vector<ParameterBlock> blocks, std::vector<ModelSpec> models) {
  check_dense_ids(blocks, [](const ParameterBlock& b) { return b.id; }, "block");
  check_dense_ids(models, [](const ModelSpec& m) { return m.id; }, "model");
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(models.begin(), models.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

  for (const auto& b : blocks) {
    if (b.size_bytes <= 0) {
      throw ValidationError("block " + std::to_string(b.id) + " has non-positive size " +
                            std::to_string(b.size_bytes));
    }
  }

  ModelLibrary lib;
  lib.blocks_ = std::move(blocks);
  lib.block_to_models_.assign(lib.blocks_.size(), {});
  lib.models_.reserve(models.size());

  for (auto& spec : models) {
    if (spec.block_ids.empty()) {
      throw ValidationError("model " + std::to_string(spec.id) + " has no blocks");
    }
    std::sort(spec.block_ids.begin(), spec.block_ids.end());
    if (std::adjacent_find(spec.block_ids.begin(), spec.block_ids.end()) != spec.block_ids.end()) {
      throw ValidationError("model " + std::to_string(spec.id) + " lists a block twice");
    }
    Model m{spec.id, std::move(spec.block_ids), 0};
    for (BlockId j : m.block_ids) {
      if (j < 0 || static_cast<std::size_t>(j) >= lib.blocks_.size()) {
        throw ValidationError("model " + std::to_string(m.id) + " references unknown block " +
                              std::to_string(j));
      }
      m.download_size += lib.blocks_[static_cast<std::size_t>(j)].size_bytes;
      lib.block_to_models_[static_cast<std::size_t>(j)].push_back(m.id);
    }
    lib.models_.push_back(std::move(m));
  }

  for (std::size_t j = 0; j < lib.blocks_.size(); ++j) {
    if (lib.block_to_models_[j].empty()) {
      throw ValidationError("block " + std::to_string(j) + " belongs to no model");
    }
    if (lib.block_to_models_[j].size() >= 2) lib.shared_blocks_.push_back(static_cast<BlockId>(j));
  }

  lib.shared_of_.resize(lib.models_.size());
  lib.shared_size_.assign(lib.models_.size(), 0);
  for (const auto& m : lib.models_) {
    auto idx = static_cast<std::size_t>(m.id);
    for (BlockId j : m.block_ids) {
      if (lib.block_to_models_[static_cast<std::size_t>(j)].size() >= 2) {
        lib.shared_of_[idx].push_back(j);
        lib.shared_size_[idx] += lib.blocks_[static_cast<std::size_t>(j)].size_bytes;
      }
    }
  }
  return lib;
}

Bytes ModelLibrary::union_size(std::span<const ModelId> model_ids) const {
  if (model_ids.empty()) return 0;
  std::vector<bool> taken(blocks_.size(), false);
  Bytes total = 0;
  for (ModelId i : model_ids) {
    for (BlockId j : model(i).block_ids) {
      auto idx = static_cast<std::size_t>(j);
      if (!taken[idx]) {
        taken[idx] = true;
        total += blocks_[idx].size_bytes;
      }
    }
  }
  return total;
}

Bytes ModelLibrary::total_unique_bytes() const {
  return std::accumulate(blocks_.begin(), blocks_.end(), Bytes{0},
                         [](Bytes acc, const ParameterBlock& b) { return acc + b.size_bytes; });
}

std::string library_to_json(const ModelLibrary& library, int indent) {
  return detail::library_to_json_value(library).dump(indent);
}

ModelLibrary library_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("library manifest is not valid JSON: ") + e.what());
  }
  return detail::library_from_json_value(j, "library");
}

}  // namespace trimcache
