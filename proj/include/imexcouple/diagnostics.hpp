#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "imexcouple/coupling.hpp"
#include "imexcouple/state.hpp"

namespace imexcouple {

// Discrete L2 norms sqrt(sum_K |K| dq^2). The momentum entry combines both
// momentum components.
struct ErrorReport {
  double rho = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
};

// Throws GridError when the layouts differ.
ErrorReport l2_error(const ConservedField& q, const ConservedField& ref);
// Accumulates over both subdomains.
ErrorReport l2_error(const CoupledState& q, const CoupledState& ref);

// order_k = log(e_{k-1}/e_k) / log(ratio_k); the first entry is empty, as is
// any entry with a zero or non-finite error. ratios[k] is the refinement
// factor between levels k-1 and k.
std::vector<std::optional<double>> observed_order(const std::vector<double>& errors,
                                                  const std::vector<double>& ratios);
std::vector<std::optional<double>> observed_order(const std::vector<double>& errors, double ratio);

struct ConservationSample {
  double time = 0.0;
  double mass1 = 0.0;
  double mass2 = 0.0;
  double energy1 = 0.0;
  double energy2 = 0.0;
};

ConservationSample conservation_sample(const CoupledState& s);

// max_K (a + |u|) dt / min(dx, dz).
double courant_number(const ConservedField& q, double dt);
std::pair<double, double> courant_numbers(const CoupledState& s, double dt1, double dt2);

// Averages a nested fine field onto a coarse grid covering the same region.
// Throws GridError unless the fine grid refines the coarse one by integer
// factors.
ConservedField restrict_average(const ConservedField& fine, const StructuredGrid2D& coarse);

}  // namespace imexcouple
