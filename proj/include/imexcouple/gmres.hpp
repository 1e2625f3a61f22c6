#pragma once

#include <functional>
#include <span>

namespace imexcouple {

struct KrylovSettings {
  double tolerance = 1e-4;
  int restart = 30;
  int max_iterations = 500;
  double absolute_tolerance = 0.0;

  bool operator==(const KrylovSettings&) const = default;
};

struct GmresResult {
  int iterations = 0;
  double residual_norm = 0.0;  // ||b - A x|| at exit
  double initial_norm = 0.0;   // ||b - A x0||
  bool converged = false;
};

using LinearMap = std::function<void(std::span<const double>, std::span<double>)>;

// Restarted GMRES with modified Gram-Schmidt. Stops once
// ||b - A x|| <= max(tolerance * ||b - A x0||, absolute_tolerance). x holds
// x0 on entry.
GmresResult gmres(const LinearMap& apply, std::span<const double> b, std::span<double> x,
                  const KrylovSettings& settings);

}  // namespace imexcouple
