#pragma once

#include <stdexcept>
#include <string>

namespace trion {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Quadrature or iteration did not reach the requested accuracy.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved_tolerance() const { return achieved_; }

 private:
  double achieved_;
};

class SingularBasisError : public Error {
 public:
  using Error::Error;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

class ConstraintError : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  PoleError(const std::string& what, double location)
      : Error(what), location_(location) {}
  double location() const { return location_; }

 private:
  double location_;
};

class FitError : public Error {
 public:
  FitError(const std::string& what, double best_chi2)
      : Error(what), best_chi2_(best_chi2) {}
  double best_chi2() const { return best_chi2_; }

 private:
  double best_chi2_;
};

class BoundaryError : public Error {
 public:
  using Error::Error;
};

// Node count did not settle under outer-boundary escalation.
class CountUncertainError : public Error {
 public:
  CountUncertainError(const std::string& what, int lower, int upper)
      : Error(what), lower_(lower), upper_(upper) {}
  int lower() const { return lower_; }
  int upper() const { return upper_; }

 private:
  int lower_, upper_;
};

class SearchError : public Error {
 public:
  using Error::Error;
};

}  // namespace trion
