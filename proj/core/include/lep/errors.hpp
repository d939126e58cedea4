#pragma once

#include <stdexcept>
#include <string>

namespace lep {

// Shape/dimension mismatch in an array operation. Message names the
// operation and the offending shapes.
class ShapeError : public std::runtime_error {
 public:
  explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated precondition of a documented contract (non-scalar loss,
// out-of-order sampling, sigma <= 0, ...).
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& msg) : std::logic_error(msg) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lep
