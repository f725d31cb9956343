#include "trimcache/baselines.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <string>

#include "trimcache/error.hpp"
#include "trimcache/objective.hpp"

namespace trimcache {

GreedyResult independent_caching(const Scenario& scenario, const RateTable& rates) {
  return greedy_placement(scenario, rates, {StorageAccounting::kIndependent, false});
}

namespace {

class RowEnumerator {
 public:
  RowEnumerator(const ModelLibrary& library, Bytes capacity, std::uint64_t max_rows)
      : lib_(library), capacity_(capacity), max_rows_(max_rows), refs_(library.num_blocks(), 0) {}

  std::vector<std::vector<ModelId>> run() {
    if (capacity_ >= 0) rec(0);
    return std::move(rows_);
  }

 private:
  // Exclude-before-include yields rows in lexicographic order of the 0/1
  // indicator vector.
  void rec(std::size_t i) {
    if (i == lib_.num_models()) {
      if (rows_.size() >= max_rows_) {
        throw BudgetExceeded("feasible row enumeration exceeded " + std::to_string(max_rows_) + " rows",
                             rows_.size());
      }
      rows_.push_back(current_);
      return;
    }
    rec(i + 1);
    const auto& blocks = lib_.model(static_cast<ModelId>(i)).block_ids;
    Bytes extra = 0;
    for (BlockId j : blocks) {
      if (refs_[static_cast<std::size_t>(j)] == 0) extra += lib_.block(j).size_bytes;
    }
    if (used_ + extra > capacity_) return;  // every superset overflows too
    for (BlockId j : blocks) ++refs_[static_cast<std::size_t>(j)];
    used_ += extra;
    current_.push_back(static_cast<ModelId>(i));
    rec(i + 1);
    current_.pop_back();
    used_ -= extra;
    for (BlockId j : blocks) --refs_[static_cast<std::size_t>(j)];
  }

  const ModelLibrary& lib_;
  Bytes capacity_;
  std::uint64_t max_rows_;
  std::vector<int> refs_;
  Bytes used_ = 0;
  std::vector<ModelId> current_;
  std::vector<std::vector<ModelId>> rows_;
};

using Bitset = std::vector<std::uint64_t>;

class Exhaustive {
 public:
  Exhaustive(const Scenario& scenario, const RateTable& rates, const OracleBudget& budget)
      : scenario_(scenario), budget_(budget), start_(std::chrono::steady_clock::now()) {
    const std::size_t K = scenario.num_users();
    const std::size_t I = scenario.num_models();
    pairs_ = K * I;
    words_ = (pairs_ + 63) / 64;
    weight_.resize(pairs_);
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t i = 0; i < I; ++i) {
        weight_[k * I + i] = scenario.demand.probability(static_cast<UserId>(k), static_cast<ModelId>(i));
      }
    }
    for (std::size_t m = 0; m < scenario.num_servers(); ++m) {
      const auto sm = static_cast<ServerId>(m);
      rows_.push_back(feasible_rows(scenario.library, scenario.servers[m].capacity, budget.max_states));
      std::vector<Bitset> cov;
      cov.reserve(rows_.back().size());
      for (const auto& row : rows_.back()) {
        Bitset b(words_, 0);
        for (ModelId i : row) {
          for (std::size_t k = 0; k < K; ++k) {
            if (rates.reachable(sm, static_cast<UserId>(k), i)) {
              const std::size_t n = k * I + static_cast<std::size_t>(i);
              b[n / 64] |= std::uint64_t{1} << (n % 64);
            }
          }
        }
        cov.push_back(std::move(b));
      }
      coverage_.push_back(std::move(cov));
    }
    choice_.assign(scenario.num_servers(), 0);
  }

  OracleResult run() {
    Bitset acc(words_, 0);
    rec(0, acc);
    OracleResult out;
    out.placement = Placement(scenario_.num_servers(), scenario_.num_models());
    for (std::size_t m = 0; m < best_choice_.size(); ++m) {
      for (ModelId i : rows_[m][best_choice_[m]]) out.placement.set(static_cast<ServerId>(m), i);
    }
    out.hit_units = best_value_;
    out.hit_ratio = to_ratio(scenario_, best_value_);
    out.states_visited = states_;
    return out;
  }

 private:
  DemandUnits value_of(const Bitset& b) const {
    DemandUnits v = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = b[w];
      while (bits) {
        v += weight_[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))];
        bits &= bits - 1;
      }
    }
    return v;
  }

  void rec(std::size_t m, const Bitset& acc) {
    if (m == rows_.size()) {
      ++states_;
      if (states_ > budget_.max_states) {
        throw BudgetExceeded("exhaustive search exceeded " + std::to_string(budget_.max_states) + " states",
                             states_);
      }
      if ((states_ & 0xfff) == 0) check_time();
      const DemandUnits v = value_of(acc);
      if (!have_best_ || v > best_value_) {
        have_best_ = true;
        best_value_ = v;
        best_choice_ = choice_;
      }
      return;
    }
    Bitset next(words_);
    for (std::size_t r = 0; r < rows_[m].size(); ++r) {
      for (std::size_t w = 0; w < words_; ++w) next[w] = acc[w] | coverage_[m][r][w];
      choice_[m] = r;
      rec(m + 1, next);
    }
  }

  void check_time() const {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    if (elapsed.count() > budget_.time_limit_s) {
      throw BudgetExceeded("exhaustive search exceeded its " + std::to_string(budget_.time_limit_s) +
                               " s time limit",
                           states_);
    }
  }

  const Scenario& scenario_;
  OracleBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::size_t pairs_ = 0;
  std::size_t words_ = 0;
  std::vector<DemandUnits> weight_;
  std::vector<std::vector<std::vector<ModelId>>> rows_;
  std::vector<std::vector<Bitset>> coverage_;
  std::vector<std::size_t> choice_;
  std::vector<std::size_t> best_choice_;
  DemandUnits best_value_ = 0;
  bool have_best_ = false;
  std::uint64_t states_ = 0;
};

}  // namespace

std::vector<std::vector<ModelId>> feasible_rows(const ModelLibrary& library, Bytes capacity, std::uint64_t max_rows) {
  return RowEnumerator(library, capacity, max_rows).run();
}

OracleResult exhaustive_search(const Scenario& scenario, const RateTable& rates, const OracleBudget& budget) {
  if (budget.max_states == 0 || !(budget.time_limit_s > 0.0)) {
    throw ValidationError("oracle budget must be positive");
  }
  return Exhaustive(scenario, rates, budget).run();
}

std::size_t max_feasible_cardinality(const Scenario& scenario) {
  std::size_t total = 0;
  for (const auto& server : scenario.servers) {
    std::size_t best = 0;
    for (const auto& row : feasible_rows(scenario.library, server.capacity)) best = std::max(best, row.size());
    total += best;
  }
  return total;
}

}  // namespace trimcache
