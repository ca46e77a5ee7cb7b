#pragma once

#include <stdexcept>
#include <string>

namespace twistvol {

// Exit-code mapping used by the CLI:
//   InputError      -> 2 (malformed files, bad flags)
//   HypothesisError -> 1 (a theorem's stated hypothesis is not met)
//   NumericError    -> 3 (integrator / root finder diagnostics)

class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class HypothesisError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace twistvol
