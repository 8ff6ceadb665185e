#pragma once

#include <stdexcept>

namespace classify {

// An exact enumeration would exceed its configured cap.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A consistency check that should never fail did fail.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace classify
