#pragma once

#include <cstdint>

namespace trimcache {

using BlockId = std::int32_t;
using ModelId = std::int32_t;
using ServerId = std::int32_t;
using UserId = std::int32_t;

// Storage sizes are whole bytes so capacity checks are exact.
using Bytes = std::int64_t;

// Request probabilities live on a fixed 1e-6 grid; one unit is 1e-6.
using DemandUnits = std::int64_t;
inline constexpr DemandUnits kDemandScale = 1'000'000;

inline constexpr Bytes kKilobyte = 1'000;
inline constexpr Bytes kMegabyte = 1'000'000;
inline constexpr Bytes kGigabyte = 1'000'000'000;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

}  // namespace trimcache
