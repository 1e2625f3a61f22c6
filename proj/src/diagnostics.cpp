#include "imexcouple/diagnostics.hpp"

#include <cmath>

#include "imexcouple/error.hpp"

namespace imexcouple {

namespace {

struct SquaredSums {
  double rho = 0.0;
  double mom = 0.0;
  double energy = 0.0;
};

void accumulate(const ConservedField& q, const ConservedField& ref, SquaredSums& s) {
  if (q.grid().nx != ref.grid().nx || q.grid().nz != ref.grid().nz) {
    throw GridError("l2_error: grids differ");
  }
  const double m = q.grid().cell_measure();
  const std::size_t n = q.cell_count();
  const double* a = q.data();
  const double* b = ref.data();
  for (std::size_t k = 0; k < n; ++k) {
    const double d0 = a[4 * k] - b[4 * k];
    const double d1 = a[4 * k + 1] - b[4 * k + 1];
    const double d2 = a[4 * k + 2] - b[4 * k + 2];
    const double d3 = a[4 * k + 3] - b[4 * k + 3];
    s.rho += m * d0 * d0;
    s.mom += m * (d1 * d1 + d2 * d2);
    s.energy += m * d3 * d3;
  }
}

ErrorReport finish(const SquaredSums& s) {
  return {std::sqrt(s.rho), std::sqrt(s.mom), std::sqrt(s.energy)};
}

}  // namespace

ErrorReport l2_error(const ConservedField& q, const ConservedField& ref) {
  SquaredSums s;
  accumulate(q, ref, s);
  return finish(s);
}

ErrorReport l2_error(const CoupledState& q, const CoupledState& ref) {
  SquaredSums s;
  accumulate(q.q1, ref.q1, s);
  if (q.q2.has_value() != ref.q2.has_value()) throw GridError("l2_error: subdomain count differs");
  if (q.q2) accumulate(*q.q2, *ref.q2, s);
  return finish(s);
}

std::vector<std::optional<double>> observed_order(const std::vector<double>& errors,
                                                  const std::vector<double>& ratios) {
  if (ratios.size() != errors.size()) throw std::invalid_argument("one ratio per level expected");
  std::vector<std::optional<double>> out(errors.size());
  for (std::size_t k = 1; k < errors.size(); ++k) {
    const double a = errors[k - 1];
    const double b = errors[k];
    if (a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b) && ratios[k] > 0.0 &&
        ratios[k] != 1.0) {
      out[k] = std::log(a / b) / std::log(ratios[k]);
    }
  }
  return out;
}

std::vector<std::optional<double>> observed_order(const std::vector<double>& errors, double ratio) {
  return observed_order(errors, std::vector<double>(errors.size(), ratio));
}

ConservationSample conservation_sample(const CoupledState& s) {
  ConservationSample c;
  c.time = s.time;
  const Vec4 a = integrate(s.q1);
  c.mass1 = a[kRho];
  c.energy1 = a[kEnergy];
  if (s.q2) {
    const Vec4 b = integrate(*s.q2);
    c.mass2 = b[kRho];
    c.energy2 = b[kEnergy];
  }
  return c;
}

double courant_number(const ConservedField& q, double dt) {
  const double gamma = q.params().gamma;
  const double h = std::min(q.grid().dx, q.grid().dz);
  double m = 0.0;
  for (std::size_t k = 0; k < q.cell_count(); ++k) {
    const Vec4 c = q.at(k);
    const double u = c[kMomX] / c[kRho];
    const double w = c[kMomZ] / c[kRho];
    const double p = pressure(c, gamma);
    const double a = std::sqrt(gamma * p / c[kRho]);
    m = std::max(m, a + std::sqrt(u * u + w * w));
  }
  return m * dt / h;
}

std::pair<double, double> courant_numbers(const CoupledState& s, double dt1, double dt2) {
  return {courant_number(s.q1, dt1), s.q2 ? courant_number(*s.q2, dt2) : 0.0};
}

ConservedField restrict_average(const ConservedField& fine, const StructuredGrid2D& coarse) {
  const auto& f = fine.grid();
  if (f.nx % coarse.nx != 0 || f.nz % coarse.nz != 0) {
    throw GridError("restrict_average: fine grid is not nested in the coarse grid");
  }
  const int rx = f.nx / coarse.nx;
  const int rz = f.nz / coarse.nz;
  const double tol = 1e-9 * std::max(std::abs(f.x1() - f.x0), std::abs(f.z1() - f.z0));
  if (std::abs(f.x0 - coarse.x0) > tol || std::abs(f.z0 - coarse.z0) > tol ||
      std::abs(f.x1() - coarse.x1()) > tol || std::abs(f.z1() - coarse.z1()) > tol) {
    throw GridError("restrict_average: grids cover different regions");
  }
  ConservedField out(coarse, fine.params());
  const double w = 1.0 / (rx * rz);
  for (int J = 1; J <= coarse.nz; ++J) {
    for (int I = 1; I <= coarse.nx; ++I) {
      Vec4 s{0.0, 0.0, 0.0, 0.0};
      for (int b = 0; b < rz; ++b) {
        for (int a = 0; a < rx; ++a) s += fine((I - 1) * rx + a + 1, (J - 1) * rz + b + 1);
      }
      out.set(I, J, w * s);
    }
  }
  return out;
}

}  // namespace imexcouple
