#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace finperf {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or malformed input text.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// An enumeration or solve would exceed a configured cap.
class ResourceError : public Error {
 public:
  ResourceError(std::string const& what, std::size_t partial)
      : Error(what), partial_(partial) {}

  // Number of items produced before the cap was hit.
  std::size_t partial() const noexcept { return partial_; }

 private:
  std::size_t partial_;
};

// A mathematical claim that was checked did not hold. Carries a witness.
class VerificationFailure : public Error {
 public:
  VerificationFailure(std::string const& what, std::string witness)
      : Error(what), witness_(std::move(witness)) {}

  std::string const& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

// find_orbit_p_vector could not find a usable direction.
class NoSuchVector : public Error {
 public:
  using Error::Error;
};

}  // namespace finperf
