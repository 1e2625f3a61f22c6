#include "imexcouple/state.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "imexcouple/error.hpp"

namespace imexcouple {

FluidParams make_fluid_params(double gamma, double prandtl, double mu) {
  if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
  if (!(prandtl > 0.0)) throw std::invalid_argument("Prandtl number must be positive");
  if (!(mu >= 0.0)) throw std::invalid_argument("viscosity must be non-negative");
  return FluidParams{gamma, prandtl, mu};
}

PrimitiveCell primitive_from_conserved(const ConservedCell& q, const FluidParams& params) {
  const double rho = q[kRho];
  if (!(rho > 0.0)) {
    std::ostringstream os;
    os << "non-positive density " << rho;
    throw StateError(os.str());
  }
  PrimitiveCell prim;
  prim.rho = rho;
  prim.u = q[kMomX] / rho;
  prim.w = q[kMomZ] / rho;
  prim.p = (params.gamma - 1.0) * (q[kEnergy] - 0.5 * rho * (prim.u * prim.u + prim.w * prim.w));
  if (!(prim.p > 0.0)) {
    std::ostringstream os;
    os << "non-positive pressure " << prim.p;
    throw StateError(os.str());
  }
  prim.T = params.gamma * prim.p / rho;
  return prim;
}

ConservedCell conserved_from_primitive(const PrimitiveCell& prim, const FluidParams& params) {
  const double rho = prim.rho;
  if (!(rho > 0.0) || !(prim.p > 0.0)) {
    std::ostringstream os;
    os << "inadmissible primitive state rho=" << rho << ", p=" << prim.p;
    throw StateError(os.str());
  }
  return {rho, rho * prim.u, rho * prim.w,
          prim.p / (params.gamma - 1.0) + 0.5 * rho * (prim.u * prim.u + prim.w * prim.w)};
}

double sound_speed(double rho, double p, double gamma) {
  if (!(rho > 0.0) || !(p > 0.0)) {
    std::ostringstream os;
    os << "sound speed undefined for rho=" << rho << ", p=" << p;
    throw StateError(os.str());
  }
  return std::sqrt(gamma * p / rho);
}

void axpy(double a, const CellField& x, CellField& y) {
  auto xs = x.values();
  auto ys = y.values();
  if (xs.size() != ys.size()) throw std::invalid_argument("axpy on fields of different size");
  for (std::size_t k = 0; k < ys.size(); ++k) ys[k] += a * xs[k];
}

CellField zeros_like(const CellField& f) { return CellField(f.grid(), f.params()); }

double max_abs_difference(const CellField& a, const CellField& b) {
  auto as = a.values();
  auto bs = b.values();
  if (as.size() != bs.size()) throw std::invalid_argument("fields of different size");
  double m = 0.0;
  for (std::size_t k = 0; k < as.size(); ++k) m = std::max(m, std::abs(as[k] - bs[k]));
  return m;
}

void check_admissible(const ConservedField& q) {
  const auto& g = q.grid();
  for (int j = 1; j <= g.nz; ++j) {
    for (int i = 1; i <= g.nx; ++i) {
      const Vec4 c = q(i, j);
      const double p = pressure(c, q.params().gamma);
      if (!(c[kRho] > 0.0) || !(p > 0.0)) {
        std::ostringstream os;
        os << "inadmissible state in cell (" << i << ", " << j << "): rho=" << c[kRho]
           << ", p=" << p;
        throw StateError(os.str(), i, j);
      }
    }
  }
}

}  // namespace imexcouple
