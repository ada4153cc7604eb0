#pragma once

#include <stdexcept>
#include <string>

namespace mq {

// Invalid or inconsistent model/game parameters, including discretization
// steps that push a probability outside [0, 1].
class model_error : public std::runtime_error {
 public:
  explicit model_error(const std::string& what) : std::runtime_error(what) {}
};

// Iterative solver failed to reach its tolerance within the iteration cap.
// Carries the last observed residual for diagnostics.
class solver_error : public std::runtime_error {
 public:
  solver_error(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual_(last_residual) {}
  double last_residual() const { return last_residual_; }

 private:
  double last_residual_ = 0.0;
};

// Configuration file rejected: bad schema, unknown keys, or invalid values.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mq
