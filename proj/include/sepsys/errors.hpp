#pragma once

#include <stdexcept>
#include <string>

namespace sepsys {

/// Malformed or out-of-contract input.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured enumeration or solver budget was exceeded.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal invariant failed. Signals a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace sepsys
