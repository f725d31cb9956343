#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "trimcache/types.hpp"

namespace trimcache {

// Minimum-bytes table for a 0/1 knapsack indexed by value:
// at(e, w) is the smallest total size of a subset of the first e items whose
// utilities sum to exactly w, or kUnreachable. Rows are stored sparsely
// (only finite cells), which is the same table with +inf cells implicit.
class DpTable {
 public:
  static constexpr Bytes kUnreachable = std::numeric_limits<Bytes>::max();

  struct Cell {
    std::int64_t value;
    Bytes bytes;
  };

  DpTable() = default;

  // Fills the table. Cells costing more than max_bytes are dropped: no
  // query with a budget up to max_bytes can use them. Throws ResourceError
  // when the number of kept cells would exceed max_cells.
  DpTable(std::span<const std::int64_t> utilities, std::span<const Bytes> sizes, std::size_t max_cells,
          Bytes max_bytes = kUnreachable);

  std::size_t num_items() const { return rows_.empty() ? 0 : rows_.size() - 1; }
  std::int64_t max_value() const { return max_value_; }
  std::size_t finite_cells() const { return finite_cells_; }

  Bytes at(std::size_t e, std::int64_t w) const;
  const std::vector<Cell>& row(std::size_t e) const { return rows_[e]; }

  // Largest w with at(num_items(), w) <= budget (0 is always reachable).
  std::int64_t best_value(Bytes budget) const;

  // Item indices (ascending) realizing at(num_items(), w). On equal cost
  // the current item is excluded.
  std::vector<std::size_t> backtrack(std::int64_t w) const;

 private:
  std::vector<std::vector<Cell>> rows_;
  std::vector<Bytes> last_row_suffix_min_;
  std::vector<std::int64_t> utilities_;
  std::int64_t max_value_ = 0;
  std::size_t finite_cells_ = 0;
};

struct DpSelection {
  std::int64_t best_value = 0;
  std::vector<std::size_t> chosen;  // indices into the input, ascending
};

inline constexpr std::size_t kDefaultMaxDpCells = 10'000'000;

// Max-utility subset under a size budget. Utilities must be positive.
DpSelection dp_select(std::span<const std::int64_t> utilities, std::span<const Bytes> sizes, Bytes budget,
                      std::size_t max_cells = kDefaultMaxDpCells);

}  // namespace trimcache
