#pragma once

#include "imexcouple/boundary.hpp"
#include "imexcouple/grid.hpp"
#include "imexcouple/numflux.hpp"
#include "imexcouple/state.hpp"

namespace imexcouple {

// Everything needed to evaluate the spatial operator of one subdomain.
struct DomainSpec {
  StructuredGrid2D grid;
  FluidParams params;
  BoundarySet bc;
  GradientStencil stencil = GradientStencil::FullNeighborhood;
};

enum class FluxParts { All, Inviscid, Viscous };

// R(q) = -(F*_{i+1/2} - F*_{i-1/2})/dx - (G*_{j+1/2} - G*_{j-1/2})/dz with
// each face flux evaluated once. Solid and interface faces carry no mass
// flux. Throws StateError naming the first inadmissible cell.
RhsField assemble_rhs(const ConservedField& q, const BoundarySet& bc, const InterfaceWall* wall,
                      GradientStencil stencil = GradientStencil::FullNeighborhood,
                      FluxParts parts = FluxParts::All);

inline RhsField assemble_rhs(const ConservedField& q, const DomainSpec& domain,
                             const InterfaceWall* wall, FluxParts parts = FluxParts::All) {
  return assemble_rhs(q, domain.bc, wall, domain.stencil, parts);
}

// sum_K |K| R_rho(K).
double global_mass_rate(const RhsField& r);

// sum_K |K| q(K) per component.
Vec4 integrate(const ConservedField& q);

}  // namespace imexcouple
