#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace trimcache {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix64(std::uint64_t x);

// Derives a sub-seed from a master seed and a path of integer keys. The
// result depends on every key and on their order.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

// Stable 64-bit hash of a string label (FNV-1a), for naming sub-streams.
std::uint64_t label_hash(std::string_view label);

// Bit pattern of a double, so sweep values can key sub-seeds.
std::uint64_t double_bits(double value);

}  // namespace trimcache
