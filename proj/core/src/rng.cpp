#include "trimcache/rng.hpp"

#include <bit>
#include <cmath>

#include "trimcache/types.hpp"

namespace trimcache {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = mix64(master);
  for (std::uint64_t k : keys) {
    h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
  }
  return h;
}

std::uint64_t label_hash(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t double_bits(double value) {
  if (value == 0.0) value = 0.0;  // fold -0.0 into +0.0
  return std::bit_cast<std::uint64_t>(value);
}

}  // namespace trimcache
