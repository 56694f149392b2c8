#pragma once

#include <stdexcept>
#include <string>

namespace svea {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite input or an argument outside the mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation too close to a pole of dc = dn/cn.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, double location, double distance)
      : Error(what), location_(location), distance_(distance) {}

  // Argument at which evaluation was attempted.
  double location() const noexcept { return location_; }
  // Estimated distance from that argument to the nearest pole.
  double distance() const noexcept { return distance_; }

 private:
  double location_;
  double distance_;
};

// A KG-only operation received an NLS model (or vice versa).
class FamilyMismatchError : public Error {
 public:
  using Error::Error;
};

// Solution parameters violate a published relation (e.g. 15 sigma^2 = 16 lambda).
class ConstraintError : public Error {
 public:
  using Error::Error;
};

// Time step too large for the configured dt * max|V| guard.
class StabilityGuardError : public Error {
 public:
  using Error::Error;
};

// Unparseable or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace svea
