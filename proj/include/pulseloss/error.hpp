#pragma once

#include <stdexcept>
#include <string>

namespace pulseloss {

/// Invalid input: violated invariants of line geometry, waveforms, grids or
/// configuration files. The CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A valid request that the chosen method cannot serve (e.g. the resolvent
/// path on a sampled waveform). The CLI maps it to exit code 3.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Query outside the validity domain of an approximate formula or of a
/// numerically guarded path.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// t_delta search did not reach the requested level.
class UnreachableError : public std::runtime_error {
 public:
  UnreachableError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  /// Largest U_sigma/V seen during the search.
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace pulseloss
