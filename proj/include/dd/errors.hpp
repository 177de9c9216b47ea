#pragma once

#include <stdexcept>
#include <string>

namespace dd {

// Bad arguments to an operation (precondition violation).
struct invalid_input : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad file contents (schema or value-level validation).
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Stream/file failures.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dd
