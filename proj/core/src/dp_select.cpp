#include "trimcache/dp_select.hpp"

#include <algorithm>
#include <string>

#include "trimcache/error.hpp"

namespace trimcache {

DpTable::DpTable(std::span<const std::int64_t> utilities, std::span<const Bytes> sizes, std::size_t max_cells,
                 Bytes max_bytes) {
  if (utilities.size() != sizes.size()) throw ValidationError("dp_select: utilities and sizes differ in length");
  for (std::size_t n = 0; n < utilities.size(); ++n) {
    if (utilities[n] <= 0) throw ValidationError("dp_select: utility of item " + std::to_string(n) + " is not positive");
    if (sizes[n] < 0) throw ValidationError("dp_select: size of item " + std::to_string(n) + " is negative");
  }
  utilities_.assign(utilities.begin(), utilities.end());
  rows_.reserve(utilities.size() + 1);
  rows_.push_back({Cell{0, 0}});
  finite_cells_ = 1;

  for (std::size_t e = 0; e < utilities.size(); ++e) {
    const auto& prev = rows_.back();
    const std::int64_t u = utilities[e];
    const Bytes s = sizes[e];
    std::vector<Cell> next;
    next.reserve(prev.size() * 2);
    auto keep = [&](Cell c) {
      if (c.bytes <= max_bytes) next.push_back(c);
    };
    // Merge prev with prev shifted by (u, s); both are sorted by value.
    std::size_t a = 0, b = 0;
    while (a < prev.size() || b < prev.size()) {
      if (b == prev.size() || (a < prev.size() && prev[a].value < prev[b].value + u)) {
        keep(prev[a++]);
      } else if (a == prev.size() || prev[b].value + u < prev[a].value) {
        keep({prev[b].value + u, prev[b].bytes + s});
        ++b;
      } else {
        keep({prev[a].value, std::min(prev[a].bytes, prev[b].bytes + s)});
        ++a;
        ++b;
      }
    }
    finite_cells_ += next.size();
    if (finite_cells_ > max_cells) {
      throw ResourceError("DP table exceeds " + std::to_string(max_cells) +
                          " cells; use a larger rounding epsilon");
    }
    max_value_ += u;
    rows_.push_back(std::move(next));
  }

  const auto& last = rows_.back();
  last_row_suffix_min_.resize(last.size());
  Bytes running = kUnreachable;
  for (std::size_t n = last.size(); n-- > 0;) {
    running = std::min(running, last[n].bytes);
    last_row_suffix_min_[n] = running;
  }
}

Bytes DpTable::at(std::size_t e, std::int64_t w) const {
  const auto& r = rows_.at(e);
  auto it = std::lower_bound(r.begin(), r.end(), w, [](const Cell& c, std::int64_t v) { return c.value < v; });
  return it != r.end() && it->value == w ? it->bytes : kUnreachable;
}

std::int64_t DpTable::best_value(Bytes budget) const {
  if (budget < 0) throw ValidationError("dp_select: negative budget");
  // suffix minima are nondecreasing; find the last index still within budget
  auto it = std::upper_bound(last_row_suffix_min_.begin(), last_row_suffix_min_.end(), budget);
  const auto n = static_cast<std::size_t>(it - last_row_suffix_min_.begin());
  return rows_.back()[n - 1].value;
}

std::vector<std::size_t> DpTable::backtrack(std::int64_t w) const {
  if (at(num_items(), w) == kUnreachable) throw ValidationError("dp backtrack: value is not reachable");
  std::vector<std::size_t> chosen;
  for (std::size_t e = num_items(); e > 0; --e) {
    if (at(e - 1, w) == at(e, w)) continue;
    chosen.push_back(e - 1);
    w -= utilities_[e - 1];
  }
  std::reverse(chosen.begin(), chosen.end());
  return chosen;
}

DpSelection dp_select(std::span<const std::int64_t> utilities, std::span<const Bytes> sizes, Bytes budget,
                      std::size_t max_cells) {
  DpTable table(utilities, sizes, max_cells, std::max<Bytes>(budget, 0));
  DpSelection out;
  out.best_value = table.best_value(budget);
  out.chosen = table.backtrack(out.best_value);
  return out;
}

}  // namespace trimcache
