#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "trimcache/rng.hpp"
#include "trimcache/types.hpp"

namespace trimcache {

enum class MobilityPattern { kPedestrian, kBike, kVehicle };

MobilityPattern parse_mobility_pattern(const std::string& name);
std::string to_string(MobilityPattern pattern);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct MobilityParams {
  MobilityPattern pattern = MobilityPattern::kPedestrian;
  Range speed_mps;
  Range accel_mps2;
  Range turn_rate_radps;
  Range initial_heading_rad{0.0, 3.14159265358979323846};
  double slot_s = 5.0;

  static MobilityParams preset(MobilityPattern pattern);
  void validate() const;
};

struct MobilityState {
  std::vector<Point> positions;
  std::vector<double> speeds;    // m/s
  std::vector<double> headings;  // rad
};

MobilityState init_mobility(const std::vector<Point>& positions, const MobilityParams& params, Rng& rng);

// One slot: speed += accel * slot (clamped to the speed range), heading +=
// turn * slot, then the user advances; walls of the square reflect.
void mobility_step(MobilityState& state, const MobilityParams& params, double area_side_m, Rng& rng);

// Writes "slot,t_s,user,x,y" rows for `slots` steps starting at the
// initial positions.
void write_trace_csv(std::ostream& out, MobilityState state, const MobilityParams& params, double area_side_m,
                     int slots, Rng& rng);

}  // namespace trimcache
