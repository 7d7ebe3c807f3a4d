#pragma once

#include <stdexcept>

namespace s3flow {

/// Stream-line integration failures (equilibrium start, step rejection).
class DynamicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fibre location and linking-number failures.
class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace s3flow
