#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace trimcache {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad ids, inconsistent dimensions, out-of-range parameters.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A solver would exceed a configured enumeration or memory cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// The exhaustive oracle ran out of its state or time budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t states_visited)
      : Error(what), states_visited_(states_visited) {}

  std::uint64_t states_visited() const { return states_visited_; }

 private:
  std::uint64_t states_visited_;
};

}  // namespace trimcache
