#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "imexcouple/grid.hpp"

namespace imexcouple {

// Conserved 4-vector (rho, rho*u, rho*w, rho*E); also used for fluxes and
// residual entries.
using Vec4 = std::array<double, 4>;
using Mat4 = std::array<double, 16>;

inline constexpr int kRho = 0;
inline constexpr int kMomX = 1;
inline constexpr int kMomZ = 2;
inline constexpr int kEnergy = 3;

inline Vec4 operator+(const Vec4& a, const Vec4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline Vec4 operator-(const Vec4& a, const Vec4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline Vec4 operator*(double s, const Vec4& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }
inline Vec4& operator+=(Vec4& a, const Vec4& b) {
  for (int k = 0; k < 4; ++k) a[k] += b[k];
  return a;
}
inline Vec4& operator-=(Vec4& a, const Vec4& b) {
  for (int k = 0; k < 4; ++k) a[k] -= b[k];
  return a;
}
inline Vec4 matvec(const Mat4& m, const Vec4& v) {
  Vec4 r{};
  for (int r_ = 0; r_ < 4; ++r_) {
    r[r_] = m[4 * r_] * v[0] + m[4 * r_ + 1] * v[1] + m[4 * r_ + 2] * v[2] + m[4 * r_ + 3] * v[3];
  }
  return r;
}

using ConservedCell = Vec4;

struct PrimitiveCell {
  double rho = 0.0;
  double u = 0.0;
  double w = 0.0;
  double p = 0.0;
  double T = 0.0;
};

// Nondimensional fluid constants. cp = 1/(gamma-1), kappa = cp*mu/Pr.
struct FluidParams {
  double gamma = 1.4;
  double prandtl = 0.72;
  double mu = 0.0;

  double cp() const { return 1.0 / (gamma - 1.0); }
  double kappa() const { return cp() * mu / prandtl; }
};

// Throws std::invalid_argument unless gamma > 1, Pr > 0, mu >= 0.
FluidParams make_fluid_params(double gamma, double prandtl, double mu);

// Throws StateError if rho <= 0 or p <= 0.
PrimitiveCell primitive_from_conserved(const ConservedCell& q, const FluidParams& params);
ConservedCell conserved_from_primitive(const PrimitiveCell& prim, const FluidParams& params);

inline double pressure(const Vec4& q, double gamma) {
  return (gamma - 1.0) * (q[kEnergy] - 0.5 * (q[kMomX] * q[kMomX] + q[kMomZ] * q[kMomZ]) / q[kRho]);
}

// Throws StateError if rho <= 0 or p <= 0.
double sound_speed(double rho, double p, double gamma);

// Per-cell 4-vectors on one subdomain grid. The same container holds
// conserved states and residuals.
class CellField {
 public:
  CellField() = default;
  CellField(const StructuredGrid2D& grid, const FluidParams& params)
      : grid_(grid), params_(params), values_(4 * grid.cell_count(), 0.0) {}

  const StructuredGrid2D& grid() const { return grid_; }
  const FluidParams& params() const { return params_; }
  std::size_t cell_count() const { return grid_.cell_count(); }

  Vec4 at(std::size_t k) const {
    const double* v = values_.data() + 4 * k;
    return {v[0], v[1], v[2], v[3]};
  }
  void set(std::size_t k, const Vec4& q) {
    double* v = values_.data() + 4 * k;
    v[0] = q[0];
    v[1] = q[1];
    v[2] = q[2];
    v[3] = q[3];
  }
  Vec4 operator()(int i, int j) const { return at(grid_.index(i, j)); }
  void set(int i, int j, const Vec4& q) { set(grid_.index(i, j), q); }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }

 private:
  StructuredGrid2D grid_{};
  FluidParams params_{};
  std::vector<double> values_;
};

using ConservedField = CellField;
using RhsField = CellField;

// y += a * x on the value arrays. Layouts must match.
void axpy(double a, const CellField& x, CellField& y);
CellField zeros_like(const CellField& f);
double max_abs_difference(const CellField& a, const CellField& b);

// Returns the first cell violating admissibility, as a StateError, or does
// nothing when every cell is admissible.
void check_admissible(const ConservedField& q);

}  // namespace imexcouple
