#pragma once

#include <vector>

#include "imexcouple/grid.hpp"
#include "imexcouple/numflux.hpp"
#include "imexcouple/state.hpp"

namespace imexcouple {

enum class BoundaryKind { Periodic, IsothermalWall, AdiabaticWall, Interface };

// wall_u is the wall's tangential velocity; wall_T applies to isothermal walls.
struct BoundarySpec {
  BoundaryKind kind = BoundaryKind::Periodic;
  double wall_u = 0.0;
  double wall_T = 0.0;

  static BoundarySpec periodic() { return {BoundaryKind::Periodic, 0.0, 0.0}; }
  static BoundarySpec isothermal(double u, double T) { return {BoundaryKind::IsothermalWall, u, T}; }
  static BoundarySpec adiabatic(double u = 0.0) { return {BoundaryKind::AdiabaticWall, u, 0.0}; }
  static BoundarySpec interface() { return {BoundaryKind::Interface, 0.0, 0.0}; }
  bool is_wall_like() const { return kind != BoundaryKind::Periodic; }
};

struct BoundarySet {
  BoundarySpec left;
  BoundarySpec right;
  BoundarySpec bottom;
  BoundarySpec top;
};

// Throws BoundaryError for unpaired periodic sides, an interface on a
// lateral side, or a non-positive isothermal wall temperature.
void validate_boundaries(const BoundarySet& bc);

struct BulkCoefficients {
  double b_u = 0.0;
  double b_T = 0.0;
};

// b_u = 2 mu1 mu2 / (dz2 mu1 + dz1 mu2), b_T likewise with kappa. Zero when
// both transport coefficients vanish.
BulkCoefficients bulk_coefficients(double mu1, double mu2, double kappa1, double kappa2, double dz1,
                                   double dz2);

struct InterfaceFluxes {
  double sigma_xz = 0.0;
  double pi_z = 0.0;
};

InterfaceFluxes interface_fluxes(double u1, double T1, double u2, double T2,
                                 const BulkCoefficients& coeffs);

// Lower is the top edge of the lower subdomain, Upper the bottom edge of the
// upper one.
enum class InterfaceSide { Lower, Upper };

struct WallState {
  double u = 0.0;
  double T = 0.0;
};

WallState interface_wall_states(double u, double T, const InterfaceFluxes& fluxes, double dz,
                                double mu, double kappa, InterfaceSide side);

// Per-column wall data seen by one side of the interface.
struct InterfaceWall {
  std::vector<double> u;
  std::vector<double> T;
};

struct InterfaceExchange {
  std::vector<double> sigma_xz;
  std::vector<double> pi_z;
  InterfaceWall lower;
  InterfaceWall upper;

  const InterfaceWall& side(InterfaceSide s) const { return s == InterfaceSide::Lower ? lower : upper; }
};

// Evaluates the interface closure from the first cell layer of each side.
// Throws GridError when the column counts differ.
InterfaceExchange exchange_interface(const ConservedField& lower, const ConservedField& upper);

// Mirror state across a solid face normal to `normal_axis`: tangential
// velocity reflected about wall_u, normal velocity negated, temperature
// reflected about wall_T (isothermal) or copied (adiabatic), pressure copied.
Vec4 wall_ghost(const Vec4& interior, Axis normal_axis, double wall_u, bool isothermal,
                double wall_T, const FluidParams& params);

// Copies the interior into a ghosted array and closes every ghost cell,
// corners included. `wall` supplies the interface side's data and may be
// null when no side is an interface.
Ghosted<Vec4> fill_ghosts(const ConservedField& q, const BoundarySet& bc, const InterfaceWall* wall);

}  // namespace imexcouple
