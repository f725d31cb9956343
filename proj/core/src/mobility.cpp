#include "trimcache/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "trimcache/error.hpp"

namespace trimcache {

MobilityPattern parse_mobility_pattern(const std::string& name) {
  if (name == "pedestrian") return MobilityPattern::kPedestrian;
  if (name == "bike") return MobilityPattern::kBike;
  if (name == "vehicle") return MobilityPattern::kVehicle;
  throw ValidationError("unknown mobility pattern '" + name + "' (expected pedestrian, bike or vehicle)");
}

std::string to_string(MobilityPattern pattern) {
  switch (pattern) {
    case MobilityPattern::kPedestrian: return "pedestrian";
    case MobilityPattern::kBike: return "bike";
    case MobilityPattern::kVehicle: return "vehicle";
  }
  return "unknown";
}

MobilityParams MobilityParams::preset(MobilityPattern pattern) {
  constexpr double pi = std::numbers::pi;
  MobilityParams p;
  p.pattern = pattern;
  switch (pattern) {
    case MobilityPattern::kPedestrian:
      p.speed_mps = {0.5, 1.8};
      p.accel_mps2 = {-0.3, 0.3};
      p.turn_rate_radps = {-pi / 4, pi / 4};
      break;
    case MobilityPattern::kBike:
      p.speed_mps = {2.0, 8.0};
      p.accel_mps2 = {-1.0, 1.0};
      p.turn_rate_radps = {-pi / 3, pi / 3};
      break;
    case MobilityPattern::kVehicle:
      p.speed_mps = {5.5, 20.0};
      p.accel_mps2 = {-3.0, 3.0};
      p.turn_rate_radps = {-pi / 2, pi / 2};
      break;
  }
  return p;
}

void MobilityParams::validate() const {
  auto check = [](const Range& r, const char* name) {
    if (!(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi)) {
      throw ValidationError(std::string("mobility ") + name + " range must be finite with lo <= hi");
    }
  };
  check(speed_mps, "speed");
  check(accel_mps2, "acceleration");
  check(turn_rate_radps, "turn rate");
  check(initial_heading_rad, "initial heading");
  if (speed_mps.lo < 0.0) throw ValidationError("mobility speed must be nonnegative");
  if (!(slot_s > 0.0)) throw ValidationError("mobility slot length must be positive");
}

namespace {

double uniform(const Range& r, Rng& rng) {
  if (r.lo == r.hi) return r.lo;
  return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

// Folds a coordinate back into [0, side]; flips the direction component
// once per wall hit.
double reflect(double v, double side, bool& flipped) {
  flipped = false;
  const double period = 2.0 * side;
  v = std::fmod(v, period);
  if (v < 0.0) v += period;
  if (v > side) {
    v = period - v;
    flipped = true;
  }
  return v;
}

}  // namespace

MobilityState init_mobility(const std::vector<Point>& positions, const MobilityParams& params, Rng& rng) {
  params.validate();
  MobilityState s;
  s.positions = positions;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    s.speeds.push_back(uniform(params.speed_mps, rng));
    s.headings.push_back(uniform(params.initial_heading_rad, rng));
  }
  return s;
}

void mobility_step(MobilityState& state, const MobilityParams& params, double area_side_m, Rng& rng) {
  if (!(area_side_m > 0.0)) throw ValidationError("mobility area side must be positive");
  for (std::size_t k = 0; k < state.positions.size(); ++k) {
    double speed = state.speeds[k] + uniform(params.accel_mps2, rng) * params.slot_s;
    speed = std::clamp(speed, params.speed_mps.lo, params.speed_mps.hi);
    double heading = state.headings[k] + uniform(params.turn_rate_radps, rng) * params.slot_s;

    double dx = std::cos(heading);
    double dy = std::sin(heading);
    Point& p = state.positions[k];
    bool fx = false;
    bool fy = false;
    p.x = reflect(p.x + speed * params.slot_s * dx, area_side_m, fx);
    p.y = reflect(p.y + speed * params.slot_s * dy, area_side_m, fy);
    if (fx) dx = -dx;
    if (fy) dy = -dy;
    if (fx || fy) heading = std::atan2(dy, dx);

    state.speeds[k] = speed;
    state.headings[k] = std::remainder(heading, 2.0 * std::numbers::pi);
  }
}

void write_trace_csv(std::ostream& out, MobilityState state, const MobilityParams& params, double area_side_m,
                     int slots, Rng& rng) {
  out << "slot,t_s,user,x,y\n";
  auto dump = [&](int slot) {
    for (std::size_t k = 0; k < state.positions.size(); ++k) {
      out << slot << ',' << slot * params.slot_s << ',' << k << ',' << state.positions[k].x << ','
          << state.positions[k].y << '\n';
    }
  };
  dump(0);
  for (int t = 1; t <= slots; ++t) {
    mobility_step(state, params, area_side_m, rng);
    dump(t);
  }
}

}  // namespace trimcache
