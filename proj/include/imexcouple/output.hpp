#pragma once

#include <optional>
#include <string>
#include <vector>

#include "imexcouple/coupling.hpp"
#include "imexcouple/diagnostics.hpp"

namespace imexcouple {

// Comma-separated, header "x,z,rho,u,w,p,T", values as %.16e, one row per
// cell in storage order.
std::string field_csv(const ConservedField& q);
// "step,time,mass1,mass2,mass_loss,energy_loss,cr1,cr2".
std::string diagnostics_csv(const std::vector<DiagnosticsRow>& rows);

struct ConvergenceRow {
  double size = 0.0;  // h or dt
  ErrorReport error;
  std::optional<double> order_rho;
  std::optional<double> order_momentum;
  std::optional<double> order_energy;
};

// Columns: size, rho error, order, momentum error, order, energy error,
// order. Missing orders are written as "-".
std::string convergence_csv(const std::vector<ConvergenceRow>& rows, const std::string& size_label);
// Fixed-width version of the same table for terminals.
std::string convergence_text(const std::vector<ConvergenceRow>& rows, const std::string& size_label);

// Throws std::runtime_error naming the path on failure.
void write_text(const std::string& path, const std::string& content);

// Writes field files (<prefix>_d1.csv, <prefix>_d2.csv) for one state.
void write_fields(const std::string& dir, const std::string& prefix, const CoupledState& s);

}  // namespace imexcouple
