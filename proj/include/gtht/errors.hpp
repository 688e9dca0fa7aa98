#pragma once

#include <stdexcept>
#include <string>

namespace gtht {

// Invalid argument values (out-of-range indices, malformed parameters).
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Work estimate exceeds the configured enumeration cap.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File or text-format problems; message carries path/line context.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical routine could not bracket or converge; message carries
// the endpoint diagnostics.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gtht
