#pragma once

#include <stdexcept>
#include <string>

namespace kl {

// Invalid arguments or shape mismatches.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two evaluation routes that must agree did not.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a validity contract (metric not positive, Higgs field not holomorphic...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kl
