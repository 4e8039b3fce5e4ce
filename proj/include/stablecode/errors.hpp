#pragma once

#include <stdexcept>
#include <string>

namespace stablecode {

/// Thrown when an operation would exceed a hard size/memory cap.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace stablecode
