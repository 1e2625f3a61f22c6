#include "imexcouple/residual.hpp"

namespace imexcouple {

namespace {

VelTemp velocity_temperature(const Vec4& q, double gamma) {
  const double rho = q[kRho];
  const double u = q[kMomX] / rho;
  const double w = q[kMomZ] / rho;
  const double p = (gamma - 1.0) * (q[kEnergy] - 0.5 * rho * (u * u + w * w));
  return {u, w, gamma * p / rho};
}

inline void scatter(RhsField& r, std::size_t left, std::size_t right, const Vec4& f) {
  double* vl = r.data() + 4 * left;
  double* vr = r.data() + 4 * right;
  for (int k = 0; k < 4; ++k) {
    vl[k] -= f[k];
    vr[k] += f[k];
  }
}

inline void scatter_left(RhsField& r, std::size_t left, const Vec4& f) {
  double* v = r.data() + 4 * left;
  for (int k = 0; k < 4; ++k) v[k] -= f[k];
}

inline void scatter_right(RhsField& r, std::size_t right, const Vec4& f) {
  double* v = r.data() + 4 * right;
  for (int k = 0; k < 4; ++k) v[k] += f[k];
}

// Tangential derivatives of ghost cells along their own ghost layer, or the
// wrapped interior gradient across periodic sides.
void close_ghost_gradients(GradientPair<3>& pg, const Ghosted<VelTemp>& vt, const StructuredGrid2D& g,
                           const BoundarySet& bc) {
  const int nx = g.nx;
  const int nz = g.nz;
  if (bc.bottom.kind == BoundaryKind::Periodic) {
    for (int i = 1; i <= nx; ++i) {
      pg.d_dx(i, 0) = pg.d_dx(i, nz);
      pg.d_dz(i, 0) = pg.d_dz(i, nz);
      pg.d_dx(i, nz + 1) = pg.d_dx(i, 1);
      pg.d_dz(i, nz + 1) = pg.d_dz(i, 1);
    }
  } else {
    const double s = 1.0 / (2.0 * g.dx);
    for (int jg : {0, nz + 1}) {
      for (int i = 1; i <= nx; ++i) {
        for (int k = 0; k < 3; ++k) pg.d_dx(i, jg)[k] = (vt(i + 1, jg)[k] - vt(i - 1, jg)[k]) * s;
      }
    }
  }
  if (bc.left.kind == BoundaryKind::Periodic) {
    for (int j = 1; j <= nz; ++j) {
      pg.d_dx(0, j) = pg.d_dx(nx, j);
      pg.d_dz(0, j) = pg.d_dz(nx, j);
      pg.d_dx(nx + 1, j) = pg.d_dx(1, j);
      pg.d_dz(nx + 1, j) = pg.d_dz(1, j);
    }
  } else {
    const double s = 1.0 / (2.0 * g.dz);
    for (int ig : {0, nx + 1}) {
      for (int j = 1; j <= nz; ++j) {
        for (int k = 0; k < 3; ++k) pg.d_dz(ig, j)[k] = (vt(ig, j + 1)[k] - vt(ig, j - 1)[k]) * s;
      }
    }
  }
}

}  // namespace

RhsField assemble_rhs(const ConservedField& q, const BoundarySet& bc, const InterfaceWall* wall,
                      GradientStencil stencil, FluxParts parts) {
  const auto& g = q.grid();
  const auto& params = q.params();
  const double gamma = params.gamma;
  const int nx = g.nx;
  const int nz = g.nz;
  check_admissible(q);

  const bool inviscid = parts != FluxParts::Viscous;
  const bool viscous = parts != FluxParts::Inviscid && params.mu > 0.0;
  const bool periodic_x = bc.left.kind == BoundaryKind::Periodic;
  const bool periodic_z = bc.bottom.kind == BoundaryKind::Periodic;

  RhsField r(g, params);
  const Ghosted<Vec4> G = fill_ghosts(q, bc, wall);

  GradientPair<4> grad;
  if (inviscid) grad = ls_gradients(G, g, stencil);

  Ghosted<VelTemp> vt;
  GradientPair<3> pg;
  if (viscous) {
    vt = Ghosted<VelTemp>(nx, nz);
    for (int j = 0; j <= nz + 1; ++j) {
      for (int i = 0; i <= nx + 1; ++i) vt(i, j) = velocity_temperature(G(i, j), gamma);
    }
    vt.mark_closed();
    pg = ls_gradients(vt, g, stencil);
    close_ghost_gradients(pg, vt, g, bc);
  }

  const double inv_dx = 1.0 / g.dx;
  const double inv_dz = 1.0 / g.dz;
  const double hx = 0.5 * g.dx;
  const double hz = 0.5 * g.dz;

  // Faces normal to x: face i sits between ghosted columns i and i+1.
  for (int j = 1; j <= nz; ++j) {
    for (int i = periodic_x ? 1 : 0; i <= nx; ++i) {
      const int ir = (periodic_x && i == nx) ? 1 : i + 1;
      Vec4 f{0.0, 0.0, 0.0, 0.0};
      if (inviscid) {
        if (i == 0 && !periodic_x) {
          const Vec4 qr = face_value(G(1, j), -hx * grad.d_dx(1, j), gamma);
          f = -1.0 * wall_flux(qr, -1.0, 0.0, gamma);
        } else if (i == nx && !periodic_x) {
          const Vec4 ql = face_value(G(nx, j), hx * grad.d_dx(nx, j), gamma);
          f = wall_flux(ql, 1.0, 0.0, gamma);
        } else {
          const Vec4 ql = face_value(G(i, j), hx * grad.d_dx(i, j), gamma);
          const Vec4 qr = face_value(G(ir, j), -hx * grad.d_dx(ir, j), gamma);
          f = roe_flux(ql, qr, 1.0, 0.0, gamma);
        }
      }
      if (viscous) {
        const ViscousFaceData d = common_face_gradients(vt(i, j), vt(i + 1, j), pg.d_dz(i, j),
                                                        pg.d_dz(i + 1, j), g.dx, Axis::X);
        f -= viscous_flux(d, 1.0, 0.0, params);
      }
      f = inv_dx * f;
      if (i == 0) {
        scatter_right(r, g.index(1, j), f);
      } else if (i == nx && !periodic_x) {
        scatter_left(r, g.index(nx, j), f);
      } else {
        scatter(r, g.index(i, j), g.index(ir, j), f);
      }
    }
  }

  // Faces normal to z.
  for (int j = periodic_z ? 1 : 0; j <= nz; ++j) {
    const int jr = (periodic_z && j == nz) ? 1 : j + 1;
    for (int i = 1; i <= nx; ++i) {
      Vec4 f{0.0, 0.0, 0.0, 0.0};
      if (inviscid) {
        if (j == 0 && !periodic_z) {
          const Vec4 qr = face_value(G(i, 1), -hz * grad.d_dz(i, 1), gamma);
          f = -1.0 * wall_flux(qr, 0.0, -1.0, gamma);
        } else if (j == nz && !periodic_z) {
          const Vec4 ql = face_value(G(i, nz), hz * grad.d_dz(i, nz), gamma);
          f = wall_flux(ql, 0.0, 1.0, gamma);
        } else {
          const Vec4 ql = face_value(G(i, j), hz * grad.d_dz(i, j), gamma);
          const Vec4 qr = face_value(G(i, jr), -hz * grad.d_dz(i, jr), gamma);
          f = roe_flux(ql, qr, 0.0, 1.0, gamma);
        }
      }
      if (viscous) {
        const ViscousFaceData d = common_face_gradients(vt(i, j), vt(i, j + 1), pg.d_dx(i, j),
                                                        pg.d_dx(i, j + 1), g.dz, Axis::Z);
        f -= viscous_flux(d, 0.0, 1.0, params);
      }
      f = inv_dz * f;
      if (j == 0) {
        scatter_right(r, g.index(i, 1), f);
      } else if (j == nz && !periodic_z) {
        scatter_left(r, g.index(i, nz), f);
      } else {
        scatter(r, g.index(i, j), g.index(i, jr), f);
      }
    }
  }
  return r;
}

double global_mass_rate(const RhsField& r) {
  double s = 0.0;
  const std::size_t n = r.cell_count();
  const double* v = r.data();
  for (std::size_t k = 0; k < n; ++k) s += v[4 * k];
  return s * r.grid().cell_measure();
}

Vec4 integrate(const ConservedField& q) {
  Vec4 s{0.0, 0.0, 0.0, 0.0};
  const std::size_t n = q.cell_count();
  const double* v = q.data();
  for (std::size_t k = 0; k < n; ++k) {
    for (int c = 0; c < 4; ++c) s[c] += v[4 * k + c];
  }
  return q.grid().cell_measure() * s;
}

}  // namespace imexcouple
