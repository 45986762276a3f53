#pragma once

#include <stdexcept>
#include <string>

namespace humaq {

// Bad argument to a library call (out-of-range index, non-finite reward, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configuration violates one of its invariants.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A persisted file is malformed or has the wrong shape/version.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace humaq
