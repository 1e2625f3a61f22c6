#include "imexcouple/numflux.hpp"

#include <cmath>
#include <sstream>

#include "imexcouple/error.hpp"

namespace imexcouple {

ScalarGradients ls_gradients(const Ghosted<double>& f, const StructuredGrid2D& grid,
                             GradientStencil stencil) {
  if (!f.closed()) throw std::logic_error("ls_gradients: ghost layer not closed");
  Ghosted<std::array<double, 1>> wrapped(grid.nx, grid.nz);
  for (int j = 0; j <= grid.nz + 1; ++j) {
    for (int i = 0; i <= grid.nx + 1; ++i) wrapped(i, j)[0] = f(i, j);
  }
  wrapped.mark_closed();
  const auto g = ls_gradients(wrapped, grid, stencil);
  ScalarGradients out;
  out.d_dx.resize(grid.cell_count());
  out.d_dz.resize(grid.cell_count());
  for (int j = 1; j <= grid.nz; ++j) {
    for (int i = 1; i <= grid.nx; ++i) {
      out.d_dx[grid.index(i, j)] = g.d_dx(i, j)[0];
      out.d_dz[grid.index(i, j)] = g.d_dz(i, j)[0];
    }
  }
  return out;
}

Vec4 euler_flux(const Vec4& q, double nx, double nz, double gamma) {
  const double rho = q[kRho];
  const double u = q[kMomX] / rho;
  const double w = q[kMomZ] / rho;
  const double p = (gamma - 1.0) * (q[kEnergy] - 0.5 * rho * (u * u + w * w));
  const double un = u * nx + w * nz;
  return {rho * un, q[kMomX] * un + p * nx, q[kMomZ] * un + p * nz, (q[kEnergy] + p) * un};
}

Mat4 euler_jacobian(const Vec4& q, double nx, double nz, double gamma) {
  const double rho = q[kRho];
  const double u = q[kMomX] / rho;
  const double w = q[kMomZ] / rho;
  const double g1 = gamma - 1.0;
  const double phi = 0.5 * g1 * (u * u + w * w);
  const double p = g1 * q[kEnergy] - phi * rho;
  const double H = (q[kEnergy] + p) / rho;
  const double un = u * nx + w * nz;
  return {0.0,
          nx,
          nz,
          0.0,
          phi * nx - u * un,
          un - (gamma - 2.0) * u * nx,
          u * nz - g1 * w * nx,
          g1 * nx,
          phi * nz - w * un,
          w * nx - g1 * u * nz,
          un - (gamma - 2.0) * w * nz,
          g1 * nz,
          un * (phi - H),
          H * nx - g1 * u * un,
          H * nz - g1 * w * un,
          gamma * un};
}

namespace {

[[noreturn]] void throw_roe_state(const char* what, double value) {
  std::ostringstream os;
  os << "Roe flux: " << what << " " << value;
  throw StateError(os.str());
}

}  // namespace

Vec4 roe_dissipation(const Vec4& qL, const Vec4& qR, double nx, double nz, double gamma) {
  const double g1 = gamma - 1.0;
  const double rl = qL[kRho];
  const double rr = qR[kRho];
  if (!(rl > 0.0)) throw_roe_state("non-positive left density", rl);
  if (!(rr > 0.0)) throw_roe_state("non-positive right density", rr);
  const double ul = qL[kMomX] / rl, wl = qL[kMomZ] / rl;
  const double ur = qR[kMomX] / rr, wr = qR[kMomZ] / rr;
  const double pl = g1 * (qL[kEnergy] - 0.5 * rl * (ul * ul + wl * wl));
  const double pr = g1 * (qR[kEnergy] - 0.5 * rr * (ur * ur + wr * wr));
  if (!(pl > 0.0)) throw_roe_state("non-positive left pressure", pl);
  if (!(pr > 0.0)) throw_roe_state("non-positive right pressure", pr);
  const double hl = (qL[kEnergy] + pl) / rl;
  const double hr = (qR[kEnergy] + pr) / rr;

  const double sl = std::sqrt(rl);
  const double sr = std::sqrt(rr);
  const double inv = 1.0 / (sl + sr);
  const double u = (sl * ul + sr * ur) * inv;
  const double w = (sl * wl + sr * wr) * inv;
  const double H = (sl * hl + sr * hr) * inv;
  const double q2 = u * u + w * w;
  const double a2 = g1 * (H - 0.5 * q2);
  if (!(a2 > 0.0)) throw_roe_state("non-positive Roe sound speed squared", a2);
  const double a = std::sqrt(a2);
  const double rho = sl * sr;

  const double tx = -nz, tz = nx;
  const double un = u * nx + w * nz;
  const double ut = u * tx + w * tz;
  const double d_rho = rr - rl;
  const double d_p = pr - pl;
  const double d_un = (ur - ul) * nx + (wr - wl) * nz;
  const double d_ut = (ur - ul) * tx + (wr - wl) * tz;

  const double l1 = std::abs(un - a);
  const double l2 = std::abs(un);
  const double l4 = std::abs(un + a);

  const double a1 = l1 * (d_p - rho * a * d_un) / (2.0 * a2);
  const double a2w = l2 * (d_rho - d_p / a2);
  const double a3 = l2 * rho * d_ut;
  const double a4 = l4 * (d_p + rho * a * d_un) / (2.0 * a2);

  Vec4 d;
  d[kRho] = a1 + a2w + a4;
  d[kMomX] = a1 * (u - a * nx) + a2w * u + a3 * tx + a4 * (u + a * nx);
  d[kMomZ] = a1 * (w - a * nz) + a2w * w + a3 * tz + a4 * (w + a * nz);
  d[kEnergy] = a1 * (H - un * a) + a2w * 0.5 * q2 + a3 * ut + a4 * (H + un * a);
  return 0.5 * d;
}

Vec4 roe_flux(const Vec4& qL, const Vec4& qR, double nx, double nz, double gamma) {
  const Vec4 d = roe_dissipation(qL, qR, nx, nz, gamma);
  const Vec4 fl = euler_flux(qL, nx, nz, gamma);
  const Vec4 fr = euler_flux(qR, nx, nz, gamma);
  return {0.5 * (fl[0] + fr[0]) - d[0], 0.5 * (fl[1] + fr[1]) - d[1], 0.5 * (fl[2] + fr[2]) - d[2],
          0.5 * (fl[3] + fr[3]) - d[3]};
}

Vec4 wall_flux(const Vec4& q, double nx, double nz, double gamma) {
  const double rho = q[kRho];
  if (!(rho > 0.0)) throw_roe_state("non-positive wall-face density", rho);
  const double u = q[kMomX] / rho;
  const double w = q[kMomZ] / rho;
  const double p = (gamma - 1.0) * (q[kEnergy] - 0.5 * rho * (u * u + w * w));
  if (!(p > 0.0)) throw_roe_state("non-positive wall-face pressure", p);
  const double un = u * nx + w * nz;
  const double a = std::sqrt(gamma * p / rho);
  const double p_star = p + rho * un * un + rho * a * un;
  return {0.0, p_star * nx, p_star * nz, 0.0};
}

Vec4 face_value(const Vec4& q, const Vec4& dq, double gamma) {
  const Vec4 f = q + dq;
  if (f[kRho] > 0.0 && pressure(f, gamma) > 0.0) return f;
  return q;
}

std::vector<FaceStates> reconstruct_face_states(const Ghosted<Vec4>& q, const GradientPair<4>& grad,
                                                const StructuredGrid2D& grid, Axis axis) {
  std::vector<FaceStates> faces;
  if (axis == Axis::X) {
    const double h = 0.5 * grid.dx;
    faces.reserve(static_cast<std::size_t>(grid.nx - 1) * grid.nz);
    for (int j = 1; j <= grid.nz; ++j) {
      for (int i = 1; i < grid.nx; ++i) {
        faces.push_back({q(i, j) + h * grad.d_dx(i, j), q(i + 1, j) - h * grad.d_dx(i + 1, j)});
      }
    }
  } else {
    const double h = 0.5 * grid.dz;
    faces.reserve(static_cast<std::size_t>(grid.nz - 1) * grid.nx);
    for (int i = 1; i <= grid.nx; ++i) {
      for (int j = 1; j < grid.nz; ++j) {
        faces.push_back({q(i, j) + h * grad.d_dz(i, j), q(i, j + 1) - h * grad.d_dz(i, j + 1)});
      }
    }
  }
  return faces;
}

ViscousFaceData common_face_gradients(const VelTemp& a, const VelTemp& b, const VelTemp& grad_t_a,
                                      const VelTemp& grad_t_b, double spacing, Axis axis) {
  ViscousFaceData d;
  d.u = 0.5 * (a[0] + b[0]);
  d.w = 0.5 * (a[1] + b[1]);
  const double inv = 1.0 / spacing;
  if (axis == Axis::X) {
    d.du_dx = (b[0] - a[0]) * inv;
    d.dw_dx = (b[1] - a[1]) * inv;
    d.dT_dx = (b[2] - a[2]) * inv;
    d.du_dz = 0.5 * (grad_t_a[0] + grad_t_b[0]);
    d.dw_dz = 0.5 * (grad_t_a[1] + grad_t_b[1]);
    d.dT_dz = 0.5 * (grad_t_a[2] + grad_t_b[2]);
  } else {
    d.du_dz = (b[0] - a[0]) * inv;
    d.dw_dz = (b[1] - a[1]) * inv;
    d.dT_dz = (b[2] - a[2]) * inv;
    d.du_dx = 0.5 * (grad_t_a[0] + grad_t_b[0]);
    d.dw_dx = 0.5 * (grad_t_a[1] + grad_t_b[1]);
    d.dT_dx = 0.5 * (grad_t_a[2] + grad_t_b[2]);
  }
  return d;
}

Vec4 viscous_flux(const ViscousFaceData& d, double nx, double nz, const FluidParams& params) {
  const double mu = params.mu;
  const double div = d.du_dx + d.dw_dz;
  const double sxx = mu * (2.0 * d.du_dx - (2.0 / 3.0) * div);
  const double szz = mu * (2.0 * d.dw_dz - (2.0 / 3.0) * div);
  const double sxz = mu * (d.du_dz + d.dw_dx);
  const double k = params.kappa();
  const double tx = sxx * nx + sxz * nz;
  const double tz = sxz * nx + szz * nz;
  return {0.0, tx, tz, tx * d.u + tz * d.w + k * (d.dT_dx * nx + d.dT_dz * nz)};
}

}  // namespace imexcouple
