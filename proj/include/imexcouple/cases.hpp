#pragma once

#include <map>
#include <string>
#include <vector>

#include "imexcouple/coupling.hpp"
#include "imexcouple/numflux.hpp"

namespace imexcouple {

// Named benchmark with its numeric parameters. Every case has a fixed key
// set; case_defaults lists it.
struct CaseSpec {
  std::string name;
  std::map<std::string, double> params;

  double get(const std::string& key) const;
  bool operator==(const CaseSpec&) const = default;
};

std::vector<std::string> case_names();
// Throws ConfigError for an unknown case.
CaseSpec case_defaults(const std::string& name);
bool case_is_coupled(const std::string& name);
bool case_has_exact_solution(const std::string& name);

struct GridSizes {
  int nx = 0;
  int nz1 = 0;
  int nz2 = 0;  // ignored for single-domain cases

  bool operator==(const GridSizes&) const = default;
};

NavierStokesSystem case_system(const CaseSpec& spec, const GridSizes& sizes,
                               GradientStencil stencil = GradientStencil::FullNeighborhood);

// Point values of the initial condition at cell centres. Throws StateError
// when a cell is inadmissible.
CoupledState init_case(const CaseSpec& spec, const NavierStokesSystem& system);

// Translating density wave sampled at cell centres at time t.
ConservedField exact_density_wave(double t, const StructuredGrid2D& grid, const FluidParams& params,
                                  const CaseSpec& spec);

}  // namespace imexcouple
