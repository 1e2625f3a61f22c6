#pragma once

#include <stdexcept>
#include <string>

namespace imexcouple {

struct GridError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when a state violates rho > 0, p > 0 or T > 0. The cell indices are
// 1-based; zero means the location is unknown.
struct StateError : std::runtime_error {
  StateError(const std::string& what, int i = 0, int j = 0)
      : std::runtime_error(what), cell_i(i), cell_j(j) {}
  int cell_i;
  int cell_j;
};

struct BoundaryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TableauError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  SolverError(const std::string& what, double residual = 0.0, int stage = -1)
      : std::runtime_error(what), residual_norm(residual), stage_index(stage) {}
  double residual_norm;
  int stage_index;
};

struct ConfigError : std::runtime_error {
  ConfigError(const std::string& what, int line_number = 0)
      : std::runtime_error(what), line(line_number) {}
  int line;
};

}  // namespace imexcouple
