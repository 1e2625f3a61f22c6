#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "imexcouple/boundary.hpp"
#include "imexcouple/error.hpp"
#include "imexcouple/residual.hpp"

using namespace imexcouple;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

ConservedField uniform(const StructuredGrid2D& g, const FluidParams& fp, const PrimitiveCell& p) {
  ConservedField q(g, fp);
  for (std::size_t k = 0; k < q.cell_count(); ++k) q.set(k, conserved_from_primitive(p, fp));
  return q;
}

}  // namespace

TEST_CASE("bulk coefficients") {
  const auto b = bulk_coefficients(0.3, 0.3, 0.5, 0.5, 0.1, 0.1);
  CHECK(b.b_u == Approx(0.3 / 0.1));
  CHECK(b.b_T == Approx(0.5 / 0.1));
  const auto lim = bulk_coefficients(0.2, 0.4, 1.0, 1.0, 1e-12, 0.5);
  CHECK(lim.b_u == Approx(2.0 * 0.4 / 0.5).epsilon(1e-9));
  const double mu = 1.0 / 5000.0;
  const auto v = bulk_coefficients(mu, mu, 1.0, 1.0, 0.0625, 0.0625);
  CHECK(v.b_u == Approx(0.0032).epsilon(1e-14));
  const auto zero = bulk_coefficients(0.0, 0.0, 0.0, 0.0, 0.1, 0.1);
  CHECK(zero.b_u == 0.0);
  CHECK(zero.b_T == 0.0);
}

TEST_CASE("interface fluxes") {
  const BulkCoefficients c{0.0032, 0.0032};
  CHECK(interface_fluxes(0.2, 1.0, 0.2, 1.5, c).sigma_xz == 0.0);
  CHECK(interface_fluxes(0.1, 1.0, 0.3, 1.0, c).pi_z == 0.0);
  const auto f = interface_fluxes(0.0, 1.1, 0.1, 1.0, c);
  CHECK(f.pi_z == Approx(0.00032));
  CHECK(f.sigma_xz == Approx(0.00032));
}

TEST_CASE("interface wall states") {
  const auto none = interface_wall_states(0.3, 1.2, {0.0, 0.0}, 0.1, 1e-3, 1e-3, InterfaceSide::Lower);
  CHECK(none.u == 0.3);
  CHECK(none.T == 1.2);

  const double mu = 1.0 / 5000.0;
  const auto w = interface_wall_states(0.0, 1.0, {0.0032 * 0.1, 0.0}, 0.0625, mu, 1.0, InterfaceSide::Lower);
  CHECK(w.u == Approx(0.05));

  // equal properties and spacing: both sides see the mean
  const double kappa = make_fluid_params(1.4, 0.72, mu).kappa();
  const double dz = 0.05, u1 = 0.02, u2 = 0.12, T1 = 1.1, T2 = 0.95;
  const auto c = bulk_coefficients(mu, mu, kappa, kappa, dz, dz);
  const auto f = interface_fluxes(u1, T1, u2, T2, c);
  const auto lo = interface_wall_states(u1, T1, f, dz, mu, kappa, InterfaceSide::Lower);
  const auto up = interface_wall_states(u2, T2, f, dz, mu, kappa, InterfaceSide::Upper);
  CHECK(lo.u == Approx(0.5 * (u1 + u2)).epsilon(1e-13));
  CHECK(up.u == Approx(0.5 * (u1 + u2)).epsilon(1e-13));
  CHECK(lo.T == Approx(0.5 * (T1 + T2)).epsilon(1e-13));
  CHECK(up.T == Approx(0.5 * (T1 + T2)).epsilon(1e-13));

  const auto inviscid = interface_wall_states(0.4, 1.3, {0.1, 0.1}, 0.1, 0.0, 0.0, InterfaceSide::Upper);
  CHECK(inviscid.u == 0.4);
  CHECK(inviscid.T == 1.3);
}

TEST_CASE("exchange is continuous across the interface") {
  const auto fp = make_fluid_params(1.4, 0.72, 1.0 / 5000.0);
  const auto g1 = build_grid(5, 4, {0.0, 1.0}, {-1.0, 0.0});
  const auto g2 = build_grid(5, 2, {0.0, 1.0}, {0.0, 1.0});
  ConservedField q1 = uniform(g1, fp, {1.0, 0.05, 0.0, 1.1 / 1.4, 0.0});
  ConservedField q2 = uniform(g2, fp, {1.0, 0.1, 0.0, 1.0 / 1.4, 0.0});
  const auto ex = exchange_interface(q1, q2);
  const auto c = bulk_coefficients(fp.mu, fp.mu, fp.kappa(), fp.kappa(), g1.dz, g2.dz);
  for (int i = 0; i < 5; ++i) {
    CHECK(ex.sigma_xz[static_cast<std::size_t>(i)] == Approx(c.b_u * 0.05));
    CHECK(ex.pi_z[static_cast<std::size_t>(i)] == Approx(c.b_T * 0.1));
    // the wall states reproduce the same stress from either side
    const double s1 = fp.mu * (ex.lower.u[static_cast<std::size_t>(i)] - 0.05) / (0.5 * g1.dz);
    const double s2 = fp.mu * (0.1 - ex.upper.u[static_cast<std::size_t>(i)]) / (0.5 * g2.dz);
    CHECK(s1 == Approx(ex.sigma_xz[static_cast<std::size_t>(i)]));
    CHECK(s2 == Approx(ex.sigma_xz[static_cast<std::size_t>(i)]));
  }
  const auto g3 = build_grid(4, 2, {0.0, 1.0}, {0.0, 1.0});
  CHECK_THROWS_AS(exchange_interface(q1, uniform(g3, fp, {1.0, 0.1, 0.0, 1.0 / 1.4, 0.0})), GridError);
}

TEST_CASE("ghost cells") {
  const auto fp = make_fluid_params(1.4, 0.72, 0.0);
  SUBCASE("periodic x") {
    const auto g = build_grid(4, 2, {0.0, 1.0}, {0.0, 1.0});
    ConservedField q(g, fp);
    for (int j = 1; j <= 2; ++j)
      for (int i = 1; i <= 4; ++i) q.set(i, j, conserved_from_primitive({1.0 + 0.1 * i + 0.01 * j, 0.0, 0.0, 1.0, 0.0}, fp));
    const BoundarySet bc{BoundarySpec::periodic(), BoundarySpec::periodic(), BoundarySpec::adiabatic(),
                         BoundarySpec::adiabatic()};
    const auto gh = fill_ghosts(q, bc, nullptr);
    CHECK(gh.closed());
    for (int j = 1; j <= 2; ++j) {
      CHECK(gh(0, j) == q(4, j));
      CHECK(gh(5, j) == q(1, j));
    }
    // corners come from the already filled wall rows
    CHECK(gh(0, 0) == gh(4, 0));
  }
  SUBCASE("stationary adiabatic wall") {
    const Vec4 in = conserved_from_primitive({1.0, 0.2, 0.1, 1.0 / 1.4, 0.0}, fp);
    const Vec4 gq = wall_ghost(in, Axis::Z, 0.0, false, 0.0, fp);
    const auto p = primitive_from_conserved(gq, fp);
    CHECK(p.u == Approx(-0.2));
    CHECK(p.w == Approx(-0.1));
    CHECK(p.T == Approx(1.0));
  }
  SUBCASE("moving isothermal lid") {
    const Vec4 in = conserved_from_primitive({1.0, 0.0, 0.0, 1.0 / 1.4, 0.0}, fp);
    const auto p = primitive_from_conserved(wall_ghost(in, Axis::Z, 0.05, true, 0.9, fp), fp);
    CHECK(p.u == Approx(0.1));
    CHECK(0.5 * (p.u + 0.0) == Approx(0.05));
    CHECK(p.T == Approx(0.8));
    CHECK(p.p == Approx(1.0 / 1.4));
  }
  SUBCASE("interface requires wall data") {
    const auto g = build_grid(3, 2, {0.0, 1.0}, {0.0, 1.0});
    const auto q = uniform(g, fp, {1.0, 0.0, 0.0, 1.0, 0.0});
    const BoundarySet bc{BoundarySpec::periodic(), BoundarySpec::periodic(), BoundarySpec::adiabatic(),
                         BoundarySpec::interface()};
    CHECK_THROWS(fill_ghosts(q, bc, nullptr));
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(validate_boundaries({BoundarySpec::periodic(), BoundarySpec::adiabatic(),
                                         BoundarySpec::adiabatic(), BoundarySpec::adiabatic()}),
                    BoundaryError);
    CHECK_THROWS_AS(validate_boundaries({BoundarySpec::interface(), BoundarySpec::adiabatic(),
                                         BoundarySpec::adiabatic(), BoundarySpec::adiabatic()}),
                    BoundaryError);
  }
}

TEST_CASE("rest state is a discrete equilibrium") {
  const auto fp = make_fluid_params(1.4, 0.72, 1e-3);
  const auto g = build_grid(6, 5, {0.0, 1.0}, {0.0, 1.0});
  const auto q = uniform(g, fp, {1.0, 0.0, 0.0, 1.0 / 1.4, 0.0});
  const BoundarySet bc{BoundarySpec::periodic(), BoundarySpec::periodic(), BoundarySpec::adiabatic(),
                       BoundarySpec::adiabatic()};
  for (auto st : {GradientStencil::FullNeighborhood, GradientStencil::FaceNeighbors}) {
    const auto r = assemble_rhs(q, bc, nullptr, st);
    for (double v : r.values()) CHECK(std::abs(v) <= 1e-13);
  }
}

TEST_CASE("single cell with walls on every side") {
  const auto fp = make_fluid_params(1.4, 0.72, 0.0);
  const auto g = build_grid(1, 1, {0.0, 0.5}, {0.0, 0.5});
  const PrimitiveCell p{1.2, 0.2, 0.0, 0.9, 0.0};
  const auto q = uniform(g, fp, p);
  const BoundarySet bc{BoundarySpec::adiabatic(), BoundarySpec::adiabatic(), BoundarySpec::adiabatic(),
                       BoundarySpec::adiabatic()};
  const auto r = assemble_rhs(q, bc, nullptr);
  const double a = std::sqrt(1.4 * p.p / p.rho);
  const double right = p.p + p.rho * 0.04 + p.rho * a * 0.2;
  const double left = p.p + p.rho * 0.04 - p.rho * a * 0.2;
  const Vec4 v = r(1, 1);
  CHECK(v[0] == 0.0);
  CHECK(v[1] == Approx(-(right - left) / 0.5));
  CHECK(v[2] == Approx(0.0));
  CHECK(v[3] == 0.0);
}

TEST_CASE("density wave mass residual approximates the divergence") {
  const auto fp = make_fluid_params(1.4, 0.72, 0.0);
  const BoundarySet bc{BoundarySpec::periodic(), BoundarySpec::periodic(), BoundarySpec::periodic(),
                       BoundarySpec::periodic()};
  double prev = 0.0;
  for (int n : {20, 40, 80}) {
    const auto g = build_grid(n, n, {0.0, 1.0}, {0.0, 1.0});
    ConservedField q(g, fp);
    for (int j = 1; j <= n; ++j)
      for (int i = 1; i <= n; ++i) {
        const auto [x, z] = cell_center(g, i, j);
        q.set(i, j, conserved_from_primitive({1.0 + 0.5 * std::sin(2 * kPi * x) * std::cos(2 * kPi * z), 1.0, 1.0, 1.0, 0.0}, fp));
      }
    const auto r = assemble_rhs(q, bc, nullptr);
    double err = 0.0;
    for (int j = 1; j <= n; ++j)
      for (int i = 1; i <= n; ++i) {
        const auto [x, z] = cell_center(g, i, j);
        const double exact = -kPi * (std::cos(2 * kPi * x) * std::cos(2 * kPi * z) -
                                     std::sin(2 * kPi * x) * std::sin(2 * kPi * z));
        err = std::max(err, std::abs(r(i, j)[0] - exact));
      }
    if (prev > 0.0) CHECK(std::log2(prev / err) > 1.8);
    prev = err;
    CHECK(std::abs(global_mass_rate(r)) <= 1e-12);
  }
}

TEST_CASE("mass rate telescopes with walls and interface") {
  const auto fp = make_fluid_params(1.4, 0.72, 1e-2);
  const auto g = build_grid(7, 6, {0.0, 1.0}, {-1.0, 0.0});
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.3, 0.3), r(0.8, 1.2);
  ConservedField q(g, fp);
  for (std::size_t k = 0; k < q.cell_count(); ++k) q.set(k, conserved_from_primitive({r(rng), u(rng), u(rng), r(rng), 0.0}, fp));
  InterfaceWall wall{std::vector<double>(7, 0.05), std::vector<double>(7, 1.0)};
  const BoundarySet bc{BoundarySpec::periodic(), BoundarySpec::periodic(), BoundarySpec::isothermal(0.0, 1.1),
                       BoundarySpec::interface()};
  const auto res = assemble_rhs(q, bc, &wall);
  CHECK(std::abs(global_mass_rate(res)) <= 1e-13);
  const BoundarySet box{BoundarySpec::adiabatic(), BoundarySpec::adiabatic(), BoundarySpec::adiabatic(0.1),
                        BoundarySpec::isothermal(0.2, 0.9)};
  CHECK(std::abs(global_mass_rate(assemble_rhs(q, box, nullptr))) <= 1e-13);

  RhsField one(g, fp);
  one.set(3, 3, {1.0, 0.0, 0.0, 0.0});
  const auto g10 = build_grid(10, 10, {0.0, 1.0}, {0.0, 1.0});
  RhsField single(g10, fp);
  single.set(4, 4, {1.0, 0.0, 0.0, 0.0});
  CHECK(global_mass_rate(single) == Approx(0.01));
}

TEST_CASE("assemble_rhs rejects inadmissible cells") {
  const auto fp = make_fluid_params(1.4, 0.72, 0.0);
  const auto g = build_grid(3, 3, {0.0, 1.0}, {0.0, 1.0});
  auto q = uniform(g, fp, {1.0, 0.0, 0.0, 1.0, 0.0});
  q.set(2, 3, {-0.1, 0.0, 0.0, 1.0});
  const BoundarySet bc{BoundarySpec::periodic(), BoundarySpec::periodic(), BoundarySpec::periodic(),
                       BoundarySpec::periodic()};
  try {
    (void)assemble_rhs(q, bc, nullptr);
    FAIL("expected StateError");
  } catch (const StateError& e) {
    CHECK(e.cell_i == 2);
    CHECK(e.cell_j == 3);
  }
}
