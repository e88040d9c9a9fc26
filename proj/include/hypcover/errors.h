#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hypcover {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A precondition on caller-supplied data was violated.
class InvalidInput : public Error {
public:
  using Error::Error;
};

// A triangle or hexagon is numerically degenerate.
class DegenerateGeometry : public Error {
public:
  using Error::Error;
};

class FactorizationFailure : public Error {
public:
  FactorizationFailure(const std::string& what, long pivot) : Error(what), pivot_(pivot) {}
  long pivot() const { return pivot_; }

private:
  long pivot_;
};

class ConvergenceFailure : public Error {
public:
  ConvergenceFailure(const std::string& what, std::vector<double> residuals)
      : Error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& bestResiduals() const { return residuals_; }

private:
  std::vector<double> residuals_;
};

} // namespace hypcover
