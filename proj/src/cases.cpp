#include "imexcouple/cases.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "imexcouple/error.hpp"

namespace imexcouple {

namespace {

constexpr double kPi = std::numbers::pi;

using Params = std::map<std::string, double>;

Params fluid_defaults(double mu) { return {{"gamma", 1.4}, {"prandtl", 0.72}, {"mu", mu}}; }

Params extent_coupled() {
  return {{"x_min", -5.0}, {"x_max", 5.0}, {"z_min", -5.0}, {"z_interface", 0.0}, {"z_max", 5.0}};
}

Params merge(Params a, const Params& b) {
  a.insert(b.begin(), b.end());
  return a;
}

FluidParams fluid(const CaseSpec& spec) {
  return make_fluid_params(spec.get("gamma"), spec.get("prandtl"), spec.get("mu"));
}

// Isentropic vortex of strength beta and width alpha around (xc, zc).
PrimitiveCell vortex(double x, double z, double xc, double zc, double alpha, double beta,
                     double u_inf, double T_inf, double gamma) {
  const double xt = x - xc;
  const double zt = z - zc;
  const double r2 = xt * xt + zt * zt;
  const double e = std::exp(alpha * (1.0 - r2));
  PrimitiveCell p;
  p.rho = std::pow(1.0 - (gamma - 1.0) * beta * beta / (8.0 * alpha * gamma * kPi * kPi) * e,
                   1.0 / (gamma - 1.0));
  const double s = beta / (2.0 * kPi) * std::exp(0.5 * alpha * (1.0 - r2));
  p.u = u_inf + s * zt;
  p.w = -s * xt;
  p.p = T_inf / gamma * std::pow(p.rho, gamma);
  p.T = gamma * p.p / p.rho;
  return p;
}

template <class F>
ConservedField sample(const DomainSpec& d, F&& f) {
  ConservedField q(d.grid, d.params);
  for (int j = 1; j <= d.grid.nz; ++j) {
    for (int i = 1; i <= d.grid.nx; ++i) {
      const auto [x, z] = cell_center(d.grid, i, j);
      const PrimitiveCell p = f(x, z);
      if (!(p.rho > 0.0) || !(p.p > 0.0)) {
        std::ostringstream os;
        os << "initial condition inadmissible at cell (" << i << ", " << j << ")";
        throw StateError(os.str(), i, j);
      }
      q.set(i, j, conserved_from_primitive(p, d.params));
    }
  }
  return q;
}

PrimitiveCell density_wave_point(double x, double z, double t, const CaseSpec& s) {
  const double u = s.get("u_inf");
  const double w = s.get("w_inf");
  PrimitiveCell p;
  p.rho = s.get("rho_inf") + s.get("amplitude") * std::sin(2.0 * kPi * (x - u * t)) *
                                 std::cos(2.0 * kPi * (z - w * t));
  p.u = u;
  p.w = w;
  p.p = s.get("p_inf");
  return p;
}

}  // namespace

double CaseSpec::get(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw ConfigError("case '" + name + "' has no parameter '" + key + "'");
  return it->second;
}

std::vector<std::string> case_names() {
  return {"density-wave", "taylor-green", "two-vortices", "wind-driven", "khi"};
}

CaseSpec case_defaults(const std::string& name) {
  CaseSpec s;
  s.name = name;
  if (name == "density-wave") {
    s.params = merge(fluid_defaults(0.0), {{"rho_inf", 1.0}, {"u_inf", 1.0}, {"w_inf", 1.0},
                                           {"p_inf", 1.0}, {"amplitude", 0.5}});
  } else if (name == "taylor-green") {
    s.params = merge(fluid_defaults(1e-3), {{"rho_inf", 1.0}, {"u_inf", 0.1}, {"p_inf", 1.0 / 1.4}});
  } else if (name == "two-vortices") {
    s.params = merge(merge(fluid_defaults(1.0 / 5000.0), extent_coupled()),
                     {{"u_inf1", 0.05}, {"u_inf2", 0.1}, {"T_inf1", 1.1}, {"T_inf2", 1.0},
                      {"alpha", 2.0}, {"beta1", 0.1}, {"beta2", 0.5}, {"xc1", 0.0}, {"zc1", -2.5},
                      {"xc2", 0.0}, {"zc2", 2.5}, {"wall_u_bottom", 0.05}, {"wall_T_bottom", 1.1},
                      {"wall_u_top", 0.1}, {"wall_T_top", 1.0}});
  } else if (name == "wind-driven") {
    s.params = merge(merge(fluid_defaults(1.0 / 5000.0), extent_coupled()),
                     {{"T_inf1", 1.1}, {"T_inf2", 1.0}, {"u_inf2", 0.1}, {"wall_u_bottom", 0.0},
                      {"wall_T_bottom", 1.0}, {"wall_u_top", 0.1}, {"wall_T_top", 0.9}});
  } else if (name == "khi") {
    s.params = merge(merge(fluid_defaults(1.0 / 5000.0), extent_coupled()),
                     {{"T_inf1", 1.1}, {"alpha", 5.0}, {"beta", 0.5}, {"xc", 0.0}, {"zc", -3.0},
                      {"jet_width", 0.05}, {"jet_amplitude", 0.01}, {"jet_sigma", 0.2},
                      {"s1", 2.0}, {"s2", 3.0}, {"u_inf2", 0.1}, {"wall_u_bottom", 0.0},
                      {"wall_T_bottom", 1.0}, {"wall_u_top", 0.1}, {"wall_T_top", 0.9}});
  } else {
    throw ConfigError("unknown case '" + name + "'");
  }
  return s;
}

bool case_is_coupled(const std::string& name) {
  return name == "two-vortices" || name == "wind-driven" || name == "khi";
}

bool case_has_exact_solution(const std::string& name) { return name == "density-wave"; }

NavierStokesSystem case_system(const CaseSpec& spec, const GridSizes& sizes, GradientStencil stencil) {
  const FluidParams fp = fluid(spec);
  if (!case_is_coupled(spec.name)) {
    DomainSpec d;
    d.grid = build_grid(sizes.nx, sizes.nz1, {0.0, 1.0}, {0.0, 1.0});
    d.params = fp;
    d.bc = {BoundarySpec::periodic(), BoundarySpec::periodic(), BoundarySpec::periodic(),
            BoundarySpec::periodic()};
    d.stencil = stencil;
    return NavierStokesSystem(d);
  }
  const Interval xr{spec.get("x_min"), spec.get("x_max")};
  DomainSpec lo, up;
  lo.grid = build_grid(sizes.nx, sizes.nz1, xr, {spec.get("z_min"), spec.get("z_interface")});
  up.grid = build_grid(sizes.nx, sizes.nz2, xr, {spec.get("z_interface"), spec.get("z_max")});
  lo.params = fp;
  up.params = fp;
  lo.stencil = stencil;
  up.stencil = stencil;
  const BoundarySpec bottom = BoundarySpec::isothermal(spec.get("wall_u_bottom"), spec.get("wall_T_bottom"));
  const BoundarySpec top = BoundarySpec::isothermal(spec.get("wall_u_top"), spec.get("wall_T_top"));
  if (spec.name == "two-vortices") {
    lo.bc = {BoundarySpec::periodic(), BoundarySpec::periodic(), bottom, BoundarySpec::interface()};
  } else {
    lo.bc = {BoundarySpec::adiabatic(), BoundarySpec::adiabatic(), bottom, BoundarySpec::interface()};
  }
  up.bc = {BoundarySpec::periodic(), BoundarySpec::periodic(), BoundarySpec::interface(), top};
  return NavierStokesSystem(lo, up);
}

CoupledState init_case(const CaseSpec& spec, const NavierStokesSystem& system) {
  const double gamma = spec.get("gamma");
  const DomainSpec& lo = system.lower();
  CoupledState s;
  if (spec.name == "density-wave") {
    s.q1 = sample(lo, [&](double x, double z) { return density_wave_point(x, z, 0.0, spec); });
  } else if (spec.name == "taylor-green") {
    const double rho = spec.get("rho_inf");
    const double u0 = spec.get("u_inf");
    const double p0 = spec.get("p_inf");
    s.q1 = sample(lo, [&](double x, double z) {
      PrimitiveCell p;
      p.rho = rho;
      p.u = u0 * std::cos(2.0 * kPi * x) * std::sin(2.0 * kPi * z);
      p.w = -u0 * std::sin(2.0 * kPi * x) * std::cos(2.0 * kPi * z);
      p.p = p0 + rho * u0 * u0 / 4.0 * (std::cos(4.0 * kPi * x) + std::cos(4.0 * kPi * z));
      return p;
    });
  } else if (spec.name == "two-vortices") {
    const double alpha = spec.get("alpha");
    s.q1 = sample(lo, [&](double x, double z) {
      return vortex(x, z, spec.get("xc1"), spec.get("zc1"), alpha, spec.get("beta1"),
                    spec.get("u_inf1"), spec.get("T_inf1"), gamma);
    });
    s.q2 = sample(*system.upper(), [&](double x, double z) {
      return vortex(x, z, spec.get("xc2"), spec.get("zc2"), alpha, spec.get("beta2"),
                    spec.get("u_inf2"), spec.get("T_inf2"), gamma);
    });
  } else if (spec.name == "wind-driven") {
    s.q1 = sample(lo, [&](double, double) {
      PrimitiveCell p;
      p.rho = 1.0;
      p.p = spec.get("T_inf1") / gamma;
      return p;
    });
    s.q2 = sample(*system.upper(), [&](double, double) {
      PrimitiveCell p;
      p.rho = 1.0;
      p.u = spec.get("u_inf2");
      p.p = spec.get("T_inf2") / gamma;
      return p;
    });
  } else if (spec.name == "khi") {
    s.q1 = sample(lo, [&](double x, double z) {
      return vortex(x, z, spec.get("xc"), spec.get("zc"), spec.get("alpha"), spec.get("beta"), 0.0,
                    spec.get("T_inf1"), gamma);
    });
    const double a = spec.get("jet_width");
    const double A = spec.get("jet_amplitude");
    const double sig = spec.get("jet_sigma");
    const double s1 = spec.get("s1");
    const double s2 = spec.get("s2");
    const double u0 = spec.get("u_inf2");
    s.q2 = sample(*system.upper(), [&](double x, double z) {
      const double jet = std::tanh((z - s1) / a) - std::tanh((z - s2) / a);
      PrimitiveCell p;
      p.rho = 1.0 + 0.5 * jet;
      p.u = u0 + (jet - 1.0);
      p.w = A * std::sin(2.0 * kPi * x) *
            (std::exp(-(z - s1) * (z - s1) / (sig * sig)) + std::exp(-(z - s2) * (z - s2) / (sig * sig)));
      p.p = 1.0 / gamma;
      return p;
    });
  } else {
    throw ConfigError("unknown case '" + spec.name + "'");
  }
  return s;
}

ConservedField exact_density_wave(double t, const StructuredGrid2D& grid, const FluidParams& params,
                                  const CaseSpec& spec) {
  DomainSpec d;
  d.grid = grid;
  d.params = params;
  return sample(d, [&](double x, double z) { return density_wave_point(x, z, t, spec); });
}

}  // namespace imexcouple
