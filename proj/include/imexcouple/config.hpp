#pragma once

#include <string>
#include <vector>

#include "imexcouple/cases.hpp"
#include "imexcouple/coupling.hpp"

namespace imexcouple {

// Everything needed to reproduce one run.
struct RunConfig {
  CaseSpec case_spec;
  GridSizes grid;
  GradientStencil stencil = GradientStencil::FullNeighborhood;
  CouplingConfig coupling;
  double t_end = 0.0;
  std::string output_dir = "out";
  long diagnostics_every = 1;
  long snapshot_every = 0;

  bool operator==(const RunConfig&) const;
};

// Defaults of a case: reference mesh, scheme, step size and final time.
RunConfig default_run_config(const std::string& case_name);

// INI-style text:
//   [section]
//   key = value      # comment
// Sections: case, grid, scheme, coupling, time, output. `case.name` selects
// the defaults every other key overrides. Overrides have the form
// "section.key=value" and win over the file. Throws ConfigError.
RunConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides = {});
RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides = {});

// Canonical text listing every key; parse_config_text(echo_config(c)) == c.
std::string echo_config(const RunConfig& config);

GradientStencil parse_stencil(const std::string& s);
const char* to_string(GradientStencil s);
LinearOperatorKind parse_operator(const std::string& s);
CouplingMode parse_mode(const std::string& s);

}  // namespace imexcouple
