#pragma once

#include <stdexcept>
#include <string>

namespace aasynth {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (game, strategy, partition files).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace aasynth
