#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dob {

// Base for every error raised by the library. Callers that do not care about
// the category can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Iterative method hit its cap; carries the best iterate seen.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<std::complex<double>> best)
      : Error(what), best_iterate_(std::move(best)) {}

  const std::vector<std::complex<double>>& best_iterate() const { return best_iterate_; }

 private:
  std::vector<std::complex<double>> best_iterate_;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// A state or stage value became non-finite at `time()`.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

class DegenerateModel : public Error {
 public:
  using Error::Error;
};

class PoleOnAxis : public Error {
 public:
  PoleOnAxis(const std::string& what, double omega) : Error(what), omega_(omega) {}
  double omega() const { return omega_; }

 private:
  double omega_;
};

class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

// Scenario document problem. `field()` is the dotted path of the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace dob
