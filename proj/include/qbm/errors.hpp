// errors.hpp — exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace qbm {

// A numerical routine failed to reach its requested tolerance. Carries the
// error estimate actually achieved so callers can report it.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved_error)
      : std::runtime_error(what + " (achieved error estimate " +
                           std::to_string(achieved_error) + ")"),
        achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

}  // namespace qbm
