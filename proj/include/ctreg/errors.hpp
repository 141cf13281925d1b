#pragma once

#include <stdexcept>

namespace ctreg {

// malformed input text (JSON config, CSV path files)
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// filesystem failures (atomic writes, missing directories)
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ctreg
