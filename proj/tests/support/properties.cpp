#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "imexcouple/cases.hpp"
#include "imexcouple/coupling.hpp"
#include "imexcouple/linop.hpp"
#include "imexcouple/numflux.hpp"
#include "imexcouple/residual.hpp"
#include "imexcouple/tableau.hpp"

namespace imexcouple::testing {

namespace {

Vec4 random_state(std::mt19937_64& rng, const FluidParams& fp) {
  std::uniform_real_distribution<double> rho(0.5, 2.0), vel(-1.5, 1.5), p(0.3, 2.0);
  PrimitiveCell c;
  c.rho = rho(rng);
  c.u = vel(rng);
  c.w = vel(rng);
  c.p = p(rng);
  return conserved_from_primitive(c, fp);
}

std::pair<double, double> random_normal(std::mt19937_64& rng) {
  static const double n[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  const int k = static_cast<int>(rng() % 4);
  return {n[k][0], n[k][1]};
}

double rel(const Vec4& a, const Vec4& b) {
  double d = 0.0, s = 1.0;
  for (int k = 0; k < 4; ++k) {
    d = std::max(d, std::abs(a[k] - b[k]));
    s = std::max(s, std::abs(b[k]));
  }
  return d / s;
}

PropertyResult finish(std::string name, double worst, double bound) {
  PropertyResult r;
  r.name = std::move(name);
  r.worst = worst;
  r.bound = bound;
  r.ok = worst <= bound;
  return r;
}

}  // namespace

PropertyResult roe_consistency(int pairs, unsigned seed) {
  std::mt19937_64 rng(seed);
  const FluidParams fp = make_fluid_params(1.4, 0.72, 0.0);
  double worst = 0.0;
  for (int k = 0; k < pairs; ++k) {
    const Vec4 q = random_state(rng, fp);
    const auto [nx, nz] = random_normal(rng);
    worst = std::max(worst, rel(roe_flux(q, q, nx, nz, fp.gamma), euler_flux(q, nx, nz, fp.gamma)));
  }
  return finish("roe consistency F(q,q,n) = F(q).n", worst, 1e-13);
}

PropertyResult roe_antisymmetry(int pairs, unsigned seed) {
  std::mt19937_64 rng(seed);
  const FluidParams fp = make_fluid_params(1.4, 0.72, 0.0);
  double worst = 0.0;
  for (int k = 0; k < pairs; ++k) {
    const Vec4 a = random_state(rng, fp);
    const Vec4 b = random_state(rng, fp);
    const auto [nx, nz] = random_normal(rng);
    const Vec4 f = roe_flux(a, b, nx, nz, fp.gamma);
    const Vec4 g = roe_flux(b, a, -nx, -nz, fp.gamma);
    worst = std::max(worst, rel(f, -1.0 * g));
  }
  return finish("roe antisymmetry F(a,b,n) = -F(b,a,-n)", worst, 1e-13);
}

PropertyResult tableau_conditions() {
  double worst = 0.0;
  int failed = 0;
  std::size_t count = 0;
  std::ostringstream bad;
  for (const std::string& name : tableau_names()) {
    for (const TableauCheck& c : validate_tableau(tableau(name))) {
      ++count;
      worst = std::max(worst, c.residual);
      if (!c.ok) {
        ++failed;
        bad << name << ":" << c.condition << " ";
      }
    }
  }
  PropertyResult r = finish("tableau conditions (" + std::to_string(count) + " checks)", worst, 1e-13);
  r.ok = failed == 0;
  r.detail = bad.str();
  return r;
}

PropertyResult linop_oracle(const std::string& boundaries) {
  const int n = 4;
  DomainSpec d;
  d.params = make_fluid_params(1.4, 0.72, 1e-2);
  d.stencil = GradientStencil::FaceNeighbors;
  InterfaceWall wall;
  const InterfaceWall* wp = nullptr;
  if (boundaries == "periodic") {
    d.grid = build_grid(n, n, {0.0, 1.0}, {0.0, 1.0});
    d.bc = {BoundarySpec::periodic(), BoundarySpec::periodic(), BoundarySpec::periodic(),
            BoundarySpec::periodic()};
  } else {
    d.grid = build_grid(n, n, {0.0, 1.0}, {-1.0, 0.0});
    d.bc = {BoundarySpec::adiabatic(), BoundarySpec::adiabatic(), BoundarySpec::isothermal(0.05, 1.1),
            BoundarySpec::interface()};
    for (int i = 0; i < n; ++i) {
      wall.u.push_back(0.08 + 0.01 * i);
      wall.T.push_back(1.05 - 0.01 * i);
    }
    wp = &wall;
  }
  ConservedField ref(d.grid, d.params);
  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= n; ++i) {
      const auto [x, z] = cell_center(d.grid, i, j);
      PrimitiveCell c;
      c.rho = 1.0 + 0.2 * std::sin(2.0 * std::numbers::pi * x) * std::cos(std::numbers::pi * z);
      c.u = 0.3 + 0.1 * std::cos(2.0 * std::numbers::pi * z);
      c.w = 0.2 + 0.05 * std::sin(2.0 * std::numbers::pi * x);
      c.p = 1.0 / 1.4 + 0.05 * std::cos(2.0 * std::numbers::pi * (x + z));
      ref.set(i, j, conserved_from_primitive(c, d.params));
    }
  }
  const LinearOperator op(LinearOperatorKind::Full, d, ref, wp);
  const std::vector<double> m = assemble_dense(op);
  const std::size_t N = ref.values().size();

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<double> v(N);
    for (double& x : v) x = u(rng);
    const double eps = 1e-6;
    ConservedField qp = ref, qm = ref;
    for (std::size_t k = 0; k < N; ++k) {
      qp.values()[k] += eps * v[k];
      qm.values()[k] -= eps * v[k];
    }
    const RhsField rp = assemble_rhs(qp, d.bc, wp, d.stencil);
    const RhsField rm = assemble_rhs(qm, d.bc, wp, d.stencil);
    double num = 0.0, den = 0.0;
    for (std::size_t r = 0; r < N; ++r) {
      double lv = 0.0;
      for (std::size_t k = 0; k < N; ++k) lv += m[r * N + k] * v[k];
      const double fd = (rp.values()[r] - rm.values()[r]) / (2.0 * eps);
      num += (lv - fd) * (lv - fd);
      den += fd * fd;
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  return finish("dense L vs FD of residual, 4x4 " + boundaries, worst, 1e-5);
}

PropertyResult vertical_locality() {
  const CaseSpec spec = case_defaults("two-vortices");
  const NavierStokesSystem sys = case_system(spec, {6, 8, 4});
  const CoupledState s = init_case(spec, sys);
  const InterfaceExchange ex = exchange_interface(s.q1, *s.q2);
  const LinearOperator op(LinearOperatorKind::Vertical, sys.lower(), s.q1, &ex.lower);
  const auto& g = sys.lower().grid;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double leak = 0.0;
  double mismatch = 0.0;
  for (int col = 1; col <= g.nx; ++col) {
    ConservedField v(g, s.q1.params());
    std::vector<double> cv(4 * static_cast<std::size_t>(g.nz)), out(cv.size());
    for (int j = 1; j <= g.nz; ++j) {
      const Vec4 x{u(rng), u(rng), u(rng), u(rng)};
      v.set(col, j, x);
      for (int c = 0; c < 4; ++c) cv[4 * static_cast<std::size_t>(j - 1) + c] = x[c];
    }
    const RhsField r = op.apply(v);
    op.apply_column(col, cv, out);
    for (int j = 1; j <= g.nz; ++j) {
      for (int i = 1; i <= g.nx; ++i) {
        const Vec4 y = r(i, j);
        for (int c = 0; c < 4; ++c) {
          if (i != col) leak = std::max(leak, std::abs(y[c]));
          else mismatch = std::max(mismatch, std::abs(y[c] - out[4 * static_cast<std::size_t>(j - 1) + c]));
        }
      }
    }
  }
  PropertyResult r = finish("Lz column locality", std::max(leak, mismatch), 0.0);
  std::ostringstream os;
  os << "off-column " << leak << ", column apply mismatch " << mismatch;
  r.detail = os.str();
  return r;
}

PropertyResult explicit_limit_identity() {
  const CaseSpec spec = case_defaults("two-vortices");
  const NavierStokesSystem sys = case_system(spec, {8, 10, 6});
  const CoupledState s = init_case(spec, sys);
  double worst = 0.0;
  for (const char* name : {"ark2", "ark3", "ark4"}) {
    const IMEXTableau lim = explicit_limit(tableau(name));
    CouplingConfig cfg;
    cfg.scheme = name;
    cfg.dt = 0.01;
    const CoupledState a = step_tight(s, sys, cfg, lim);
    const CoupledState b = step_rk(s, sys, tableau(name), cfg.dt);
    worst = std::max({worst, max_abs_difference(a.q1, b.q1), max_abs_difference(*a.q2, *b.q2)});
  }
  return finish("explicit limit of IMEX driver == RK driver (bitwise)", worst, 0.0);
}

PropertyResult dense_output_endpoint(unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const FluidParams fp = make_fluid_params(1.4, 0.72, 0.0);
  const StructuredGrid2D g = build_grid(5, 3, {0.0, 1.0}, {0.0, 1.0});
  double worst = 0.0;
  for (const std::string& name : tableau_names()) {
    const IMEXTableau& tab = tableau(name);
    for (int trial = 0; trial < 20; ++trial) {
      ConservedField qn(g, fp);
      for (double& v : qn.values()) v = u(rng);
      std::vector<ConservedField> R;
      for (int i = 0; i < tab.stages; ++i) {
        ConservedField r(g, fp);
        for (double& v : r.values()) v = u(rng);
        R.push_back(r);
      }
      const double dt = 0.1 + 0.4 * (u(rng) + 1.0);
      ConservedField expect = qn;
      for (int i = 0; i < tab.stages; ++i) axpy(dt * tab.b[static_cast<std::size_t>(i)], R[static_cast<std::size_t>(i)], expect);
      const ConservedField got = dense_output(qn, R, tab, dt, 1.0);
      worst = std::max(worst, max_abs_difference(got, expect));
      const ConservedField start = dense_output(qn, R, tab, dt, 0.0);
      worst = std::max(worst, max_abs_difference(start, qn));
    }
  }
  return finish("dense output endpoints theta=0,1", worst, 1e-13);
}

std::vector<PropertyResult> all_properties() {
  return {roe_consistency(1000, 1),    roe_antisymmetry(1000, 2),    tableau_conditions(),
          linop_oracle("periodic"),    linop_oracle("walls"),        vertical_locality(),
          explicit_limit_identity(),   dense_output_endpoint(3)};
}

}  // namespace imexcouple::testing
