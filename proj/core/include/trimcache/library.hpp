#pragma once

#include <span>
#include <string>
#include <vector>

#include "trimcache/types.hpp"

namespace trimcache {

struct ParameterBlock {
  BlockId id = 0;
  Bytes size_bytes = 0;

  friend bool operator==(const ParameterBlock&, const ParameterBlock&) = default;
};

// Input record for build_library: a model id and the blocks it is made of.
struct ModelSpec {
  ModelId id = 0;
  std::vector<BlockId> block_ids;
};

struct Model {
  ModelId id = 0;
  std::vector<BlockId> block_ids;  // sorted, unique
  Bytes download_size = 0;         // sum of block sizes

  friend bool operator==(const Model&, const Model&) = default;
};

// A catalog of models described as sets of parameter blocks. A block that
// belongs to two or more models is "shared"; otherwise it is "specific".
// Immutable after construction.
class ModelLibrary {
 public:
  ModelLibrary() = default;

  std::size_t num_blocks() const { return blocks_.size(); }
  std::size_t num_models() const { return models_.size(); }

  const std::vector<ParameterBlock>& blocks() const { return blocks_; }
  const std::vector<Model>& models() const { return models_; }
  const ParameterBlock& block(BlockId j) const { return blocks_.at(static_cast<std::size_t>(j)); }
  const Model& model(ModelId i) const { return models_.at(static_cast<std::size_t>(i)); }

  // Models containing block j, ascending.
  const std::vector<ModelId>& models_with_block(BlockId j) const {
    return block_to_models_.at(static_cast<std::size_t>(j));
  }

  // Shared block ids, ascending. Its size is the number of shared blocks.
  const std::vector<BlockId>& shared_blocks() const { return shared_blocks_; }
  bool is_shared(BlockId j) const { return models_with_block(j).size() >= 2; }

  // Shared blocks of model i (ascending) and their total size.
  const std::vector<BlockId>& shared_blocks_of(ModelId i) const {
    return shared_of_.at(static_cast<std::size_t>(i));
  }
  Bytes shared_size_of(ModelId i) const { return shared_size_.at(static_cast<std::size_t>(i)); }
  Bytes specific_size_of(ModelId i) const { return model(i).download_size - shared_size_of(i); }

  // Size of the union of all blocks of the given models. Duplicate ids are
  // allowed and counted once.
  Bytes union_size(std::span<const ModelId> model_ids) const;

  // Sum of every block size (the footprint of caching the whole library).
  Bytes total_unique_bytes() const;

  friend bool operator==(const ModelLibrary& a, const ModelLibrary& b) {
    return a.blocks_ == b.blocks_ && a.models_ == b.models_;
  }

 private:
  friend ModelLibrary build_library(std::vector<ParameterBlock> blocks, std::vector<ModelSpec> models);

  std::vector<ParameterBlock> blocks_;
  std::vector<Model> models_;
  std::vector<std::vector<ModelId>> block_to_models_;
  std::vector<BlockId> shared_blocks_;
  std::vector<std::vector<BlockId>> shared_of_;
  std::vector<Bytes> shared_size_;
};

// Validates and indexes a library. Blocks and models may arrive in any
// order but their ids must be dense (0..J-1 and 0..I-1). Throws
// ValidationError naming the offending id on duplicate ids, gaps, dangling
// block references, empty models, non-positive sizes, or orphan blocks.
ModelLibrary build_library(std::vector<ParameterBlock> blocks, std::vector<ModelSpec> models);

// Library manifest: {"blocks": [{"id", "size_bytes"}], "models": [{"id", "block_ids"}]}.
std::string library_to_json(const ModelLibrary& library, int indent = 2);
ModelLibrary library_from_json(const std::string& text);

}  // namespace trimcache
