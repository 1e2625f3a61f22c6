#include "imexcouple/boundary.hpp"

#include <sstream>

#include "imexcouple/error.hpp"

namespace imexcouple {

void validate_boundaries(const BoundarySet& bc) {
  auto periodic = [](const BoundarySpec& s) { return s.kind == BoundaryKind::Periodic; };
  if (periodic(bc.left) != periodic(bc.right)) {
    throw BoundaryError("left/right periodicity must be paired");
  }
  if (periodic(bc.bottom) != periodic(bc.top)) {
    throw BoundaryError("bottom/top periodicity must be paired");
  }
  if (bc.left.kind == BoundaryKind::Interface || bc.right.kind == BoundaryKind::Interface) {
    throw BoundaryError("interface allowed on bottom or top only");
  }
  if (bc.bottom.kind == BoundaryKind::Interface && bc.top.kind == BoundaryKind::Interface) {
    throw BoundaryError("at most one interface side per subdomain");
  }
  for (const BoundarySpec* s : {&bc.left, &bc.right, &bc.bottom, &bc.top}) {
    if (s->kind == BoundaryKind::IsothermalWall && !(s->wall_T > 0.0)) {
      throw BoundaryError("isothermal wall temperature must be positive");
    }
  }
}

BulkCoefficients bulk_coefficients(double mu1, double mu2, double kappa1, double kappa2, double dz1,
                                   double dz2) {
  if (!(dz1 > 0.0) || !(dz2 > 0.0)) throw std::invalid_argument("cell heights must be positive");
  BulkCoefficients c;
  const double du = dz2 * mu1 + dz1 * mu2;
  const double dT = dz2 * kappa1 + dz1 * kappa2;
  c.b_u = du > 0.0 ? 2.0 * mu1 * mu2 / du : 0.0;
  c.b_T = dT > 0.0 ? 2.0 * kappa1 * kappa2 / dT : 0.0;
  return c;
}

InterfaceFluxes interface_fluxes(double u1, double T1, double u2, double T2,
                                 const BulkCoefficients& coeffs) {
  return {coeffs.b_u * (u2 - u1), -coeffs.b_T * (T2 - T1)};
}

WallState interface_wall_states(double u, double T, const InterfaceFluxes& fluxes, double dz,
                                double mu, double kappa, InterfaceSide side) {
  const double s = side == InterfaceSide::Lower ? 1.0 : -1.0;
  WallState w{u, T};
  if (mu > 0.0) w.u = u + s * fluxes.sigma_xz * dz / (2.0 * mu);
  if (kappa > 0.0) w.T = T - s * fluxes.pi_z * dz / (2.0 * kappa);
  return w;
}

InterfaceExchange exchange_interface(const ConservedField& lower, const ConservedField& upper) {
  const auto& g1 = lower.grid();
  const auto& g2 = upper.grid();
  if (g1.nx != g2.nx) {
    throw GridError("interface grids are not conforming: " + std::to_string(g1.nx) + " vs " +
                    std::to_string(g2.nx) + " columns");
  }
  const auto& p1 = lower.params();
  const auto& p2 = upper.params();
  const BulkCoefficients bulk =
      bulk_coefficients(p1.mu, p2.mu, p1.kappa(), p2.kappa(), g1.dz, g2.dz);
  const std::size_t n = static_cast<std::size_t>(g1.nx);
  InterfaceExchange ex;
  ex.sigma_xz.resize(n);
  ex.pi_z.resize(n);
  ex.lower.u.resize(n);
  ex.lower.T.resize(n);
  ex.upper.u.resize(n);
  ex.upper.T.resize(n);
  for (int i = 1; i <= g1.nx; ++i) {
    const Vec4 a = lower(i, g1.nz);
    const Vec4 b = upper(i, 1);
    const double u1 = a[kMomX] / a[kRho];
    const double u2 = b[kMomX] / b[kRho];
    const double T1 = p1.gamma * pressure(a, p1.gamma) / a[kRho];
    const double T2 = p2.gamma * pressure(b, p2.gamma) / b[kRho];
    const InterfaceFluxes f = interface_fluxes(u1, T1, u2, T2, bulk);
    const WallState w1 = interface_wall_states(u1, T1, f, g1.dz, p1.mu, p1.kappa(), InterfaceSide::Lower);
    const WallState w2 = interface_wall_states(u2, T2, f, g2.dz, p2.mu, p2.kappa(), InterfaceSide::Upper);
    const std::size_t k = static_cast<std::size_t>(i - 1);
    ex.sigma_xz[k] = f.sigma_xz;
    ex.pi_z[k] = f.pi_z;
    ex.lower.u[k] = w1.u;
    ex.lower.T[k] = w1.T;
    ex.upper.u[k] = w2.u;
    ex.upper.T[k] = w2.T;
  }
  return ex;
}

Vec4 wall_ghost(const Vec4& interior, Axis normal_axis, double wall_u, bool isothermal,
                double wall_T, const FluidParams& params) {
  const double gamma = params.gamma;
  const double rho = interior[kRho];
  const double u = interior[kMomX] / rho;
  const double w = interior[kMomZ] / rho;
  const double p = (gamma - 1.0) * (interior[kEnergy] - 0.5 * rho * (u * u + w * w));
  const double T = gamma * p / rho;
  double ug, wg;
  if (normal_axis == Axis::Z) {
    ug = 2.0 * wall_u - u;
    wg = -w;
  } else {
    ug = -u;
    wg = 2.0 * wall_u - w;
  }
  const double Tg = isothermal ? 2.0 * wall_T - T : T;
  if (!(Tg > 0.0) || !(p > 0.0)) {
    std::ostringstream os;
    os << "ghost state inadmissible: T_g=" << Tg << ", p=" << p;
    throw StateError(os.str());
  }
  const double rg = gamma * p / Tg;
  return {rg, rg * ug, rg * wg, p / (gamma - 1.0) + 0.5 * rg * (ug * ug + wg * wg)};
}

namespace {

Vec4 side_ghost(const Vec4& interior, const BoundarySpec& s, Axis axis, const InterfaceWall* wall,
                int column, const FluidParams& params) {
  switch (s.kind) {
    case BoundaryKind::IsothermalWall:
      return wall_ghost(interior, axis, s.wall_u, true, s.wall_T, params);
    case BoundaryKind::AdiabaticWall:
      return wall_ghost(interior, axis, s.wall_u, false, 0.0, params);
    case BoundaryKind::Interface: {
      if (wall == nullptr) throw BoundaryError("interface side needs wall data");
      const std::size_t k = static_cast<std::size_t>(column - 1);
      return wall_ghost(interior, axis, wall->u[k], true, wall->T[k], params);
    }
    case BoundaryKind::Periodic:
      break;
  }
  throw std::logic_error("side_ghost called on periodic side");
}

}  // namespace

Ghosted<Vec4> fill_ghosts(const ConservedField& q, const BoundarySet& bc, const InterfaceWall* wall) {
  const auto& g = q.grid();
  const auto& params = q.params();
  const int nx = g.nx;
  const int nz = g.nz;
  if (wall != nullptr && (wall->u.size() != static_cast<std::size_t>(nx) ||
                          wall->T.size() != static_cast<std::size_t>(nx))) {
    throw BoundaryError("interface wall data has wrong column count");
  }
  Ghosted<Vec4> out(nx, nz);
  for (int j = 1; j <= nz; ++j) {
    for (int i = 1; i <= nx; ++i) out(i, j) = q(i, j);
  }
  for (int i = 1; i <= nx; ++i) {
    if (bc.bottom.kind == BoundaryKind::Periodic) {
      out(i, 0) = out(i, nz);
      out(i, nz + 1) = out(i, 1);
    } else {
      out(i, 0) = side_ghost(out(i, 1), bc.bottom, Axis::Z, wall, i, params);
      out(i, nz + 1) = side_ghost(out(i, nz), bc.top, Axis::Z, wall, i, params);
    }
  }
  for (int j = 0; j <= nz + 1; ++j) {
    if (bc.left.kind == BoundaryKind::Periodic) {
      out(0, j) = out(nx, j);
      out(nx + 1, j) = out(1, j);
    } else {
      out(0, j) = side_ghost(out(1, j), bc.left, Axis::X, wall, 0, params);
      out(nx + 1, j) = side_ghost(out(nx, j), bc.right, Axis::X, wall, 0, params);
    }
  }
  out.mark_closed();
  return out;
}

}  // namespace imexcouple
