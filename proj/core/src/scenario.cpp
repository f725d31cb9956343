#include "trimcache/scenario.hpp"

#include <cmath>
#include <numeric>

#include "trimcache/error.hpp"

namespace trimcache {

DemandUnits DemandMatrix::total() const {
  return std::accumulate(probability_.begin(), probability_.end(), DemandUnits{0});
}

void DemandMatrix::validate() const {
  for (std::size_t k = 0; k < users_; ++k) {
    for (std::size_t i = 0; i < models_; ++i) {
      const auto where = "demand(" + std::to_string(k) + "," + std::to_string(i) + ")";
      const auto n = k * models_ + i;
      if (probability_[n] < 0) throw ValidationError(where + ": negative probability");
      if (!(budget_[n] > 0.0)) throw ValidationError(where + ": latency budget must be positive");
      if (!(inference_[n] >= 0.0) || std::isinf(inference_[n])) {
        throw ValidationError(where + ": inference latency must be finite and nonnegative");
      }
    }
  }
  if (total() <= 0) throw ValidationError("demand: total request probability is zero");
}

std::vector<Point> Scenario::server_positions() const {
  std::vector<Point> out;
  out.reserve(servers.size());
  for (const auto& s : servers) out.push_back(s.position);
  return out;
}

void Scenario::validate() const {
  radio.validate();
  if (!(area_side_m > 0.0)) throw ValidationError("scenario: area side must be positive");
  if (servers.empty()) throw ValidationError("scenario: no servers");
  if (users.empty()) throw ValidationError("scenario: no users");
  if (library.num_models() == 0) throw ValidationError("scenario: empty model library");
  for (std::size_t m = 0; m < servers.size(); ++m) {
    if (servers[m].capacity < 0) {
      throw ValidationError("server " + std::to_string(m) + ": negative capacity");
    }
  }
  if (demand.num_users() != users.size() || demand.num_models() != library.num_models()) {
    throw ValidationError("scenario: demand matrix is " + std::to_string(demand.num_users()) + "x" +
                          std::to_string(demand.num_models()) + ", expected " + std::to_string(users.size()) +
                          "x" + std::to_string(library.num_models()));
  }
  demand.validate();
}

std::string format_probability(DemandUnits units) {
  if (units < 0) throw ValidationError("probability must be nonnegative");
  std::string frac = std::to_string(units % kDemandScale);
  frac.insert(0, 6 - frac.size(), '0');
  return std::to_string(units / kDemandScale) + "." + frac;
}

DemandUnits parse_probability(const std::string& text) {
  auto fail = [&](const char* why) -> DemandUnits {
    throw ValidationError("probability \"" + text + "\": " + why);
  };
  if (text.empty()) return fail("empty");
  const auto dot = text.find('.');
  const std::string whole = text.substr(0, dot);
  const std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) return fail("no digits");
  if (frac.size() > 6) return fail("more than six fractional digits");
  for (char c : whole + frac) {
    if (c < '0' || c > '9') return fail("expected a plain decimal");
  }
  if (whole.size() > 12) return fail("too large");
  DemandUnits units = whole.empty() ? 0 : std::stoll(whole) * kDemandScale;
  if (!frac.empty()) {
    std::string padded = frac;
    padded.append(6 - frac.size(), '0');
    units += std::stoll(padded);
  }
  return units;
}

}  // namespace trimcache
