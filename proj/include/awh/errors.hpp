#pragma once

#include <stdexcept>
#include <string>

namespace awh {

/// Invalid parameters or malformed configuration. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sampler invariant was violated; the run cannot continue.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace awh
