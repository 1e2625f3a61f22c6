#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "imexcouple/grid.hpp"
#include "imexcouple/state.hpp"

namespace imexcouple {

enum class Axis { X, Z };

// Neighbourhood used by the cell-centred least-squares gradient.
// FullNeighborhood fits all eight surrounding cells with equal weight, which
// reduces to the averaged central difference over the three adjacent rows
// (columns). FaceNeighbors uses the four edge-sharing cells only.
enum class GradientStencil { FaceNeighbors, FullNeighborhood };

template <std::size_t N>
struct GradientPair {
  Ghosted<std::array<double, N>> d_dx;
  Ghosted<std::array<double, N>> d_dz;
};

// Least-squares gradients on interior cells of a ghost-closed array. Ghost
// entries of the result are left zero. Throws std::logic_error if the
// ghost layer has not been closed.
template <std::size_t N>
GradientPair<N> ls_gradients(const Ghosted<std::array<double, N>>& f, const StructuredGrid2D& grid,
                             GradientStencil stencil) {
  if (!f.closed()) throw std::logic_error("ls_gradients: ghost layer not closed");
  const int nx = grid.nx;
  const int nz = grid.nz;
  GradientPair<N> g{Ghosted<std::array<double, N>>(nx, nz), Ghosted<std::array<double, N>>(nx, nz)};
  if (stencil == GradientStencil::FaceNeighbors) {
    const double sx = 1.0 / (2.0 * grid.dx);
    const double sz = 1.0 / (2.0 * grid.dz);
    for (int j = 1; j <= nz; ++j) {
      for (int i = 1; i <= nx; ++i) {
        auto& gx = g.d_dx(i, j);
        auto& gz = g.d_dz(i, j);
        const auto& e = f(i + 1, j);
        const auto& w = f(i - 1, j);
        const auto& n = f(i, j + 1);
        const auto& s = f(i, j - 1);
        for (std::size_t k = 0; k < N; ++k) {
          gx[k] = (e[k] - w[k]) * sx;
          gz[k] = (n[k] - s[k]) * sz;
        }
      }
    }
  } else {
    const double sx = 1.0 / (6.0 * grid.dx);
    const double sz = 1.0 / (6.0 * grid.dz);
    for (int j = 1; j <= nz; ++j) {
      for (int i = 1; i <= nx; ++i) {
        auto& gx = g.d_dx(i, j);
        auto& gz = g.d_dz(i, j);
        const auto& ne = f(i + 1, j + 1);
        const auto& e = f(i + 1, j);
        const auto& se = f(i + 1, j - 1);
        const auto& nw = f(i - 1, j + 1);
        const auto& w = f(i - 1, j);
        const auto& sw = f(i - 1, j - 1);
        const auto& n = f(i, j + 1);
        const auto& s = f(i, j - 1);
        for (std::size_t k = 0; k < N; ++k) {
          gx[k] = ((ne[k] - nw[k]) + (e[k] - w[k]) + (se[k] - sw[k])) * sx;
          gz[k] = ((ne[k] - se[k]) + (n[k] - s[k]) + (nw[k] - sw[k])) * sz;
        }
      }
    }
  }
  return g;
}

// Scalar convenience form: returns (d/dx, d/dz) per interior cell in grid
// storage order.
struct ScalarGradients {
  std::vector<double> d_dx;
  std::vector<double> d_dz;
};
ScalarGradients ls_gradients(const Ghosted<double>& f, const StructuredGrid2D& grid,
                             GradientStencil stencil);

// Physical inviscid flux F(q).n for a unit normal n.
Vec4 euler_flux(const Vec4& q, double nx, double nz, double gamma);

// d(F(q).n)/dq, row-major.
Mat4 euler_jacobian(const Vec4& q, double nx, double nz, double gamma);

// 0.5*|A_roe|(qR - qL), Roe-averaged, no entropy fix. Throws StateError on
// inadmissible input.
Vec4 roe_dissipation(const Vec4& qL, const Vec4& qR, double nx, double nz, double gamma);

// Roe flux 0.5*(F(qL)+F(qR)).n - 0.5*|A_roe|(qR - qL).
Vec4 roe_flux(const Vec4& qL, const Vec4& qR, double nx, double nz, double gamma);

// Roe flux between a face state and its mirror image across a solid face with
// outward normal n. Only the pressure term survives: (0, p* n, 0).
Vec4 wall_flux(const Vec4& q_face, double nx, double nz, double gamma);

struct FaceStates {
  Vec4 left;
  Vec4 right;
};

// q + dq, or q itself when q + dq has non-positive density or pressure.
Vec4 face_value(const Vec4& q, const Vec4& dq, double gamma);

// Linear reconstruction on the interior faces normal to `axis`, i.e. faces
// between cells (i, j) and (i+1, j) for axis X. Faces are ordered with the
// tangential index outermost.
std::vector<FaceStates> reconstruct_face_states(const Ghosted<Vec4>& q, const GradientPair<4>& grad,
                                                const StructuredGrid2D& grid, Axis axis);

// Common face values entering the viscous flux.
struct ViscousFaceData {
  double u = 0.0;
  double w = 0.0;
  double du_dx = 0.0;
  double du_dz = 0.0;
  double dw_dx = 0.0;
  double dw_dz = 0.0;
  double dT_dx = 0.0;
  double dT_dz = 0.0;
};

// u, w, T per cell.
using VelTemp = std::array<double, 3>;

// Common face values between cell a (lower index) and cell b along `axis`:
// arithmetic-mean velocity, two-point normal derivative, and tangential
// derivative averaged from the two cell gradients.
ViscousFaceData common_face_gradients(const VelTemp& a, const VelTemp& b, const VelTemp& grad_t_a,
                                      const VelTemp& grad_t_b, double spacing, Axis axis);

// F^V.n from common face values; mass component is zero.
Vec4 viscous_flux(const ViscousFaceData& d, double nx, double nz, const FluidParams& params);

}  // namespace imexcouple
