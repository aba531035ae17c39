#pragma once

#include <stdexcept>
#include <string>

namespace flipflow {

// Exit-code taxonomy used by the CLI: input errors map to 1, capacity
// errors to 2, internal invariant failures (theorem contradictions) to 3.

class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

class InternalInvariantError : public std::runtime_error {
 public:
  explicit InternalInvariantError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace flipflow
