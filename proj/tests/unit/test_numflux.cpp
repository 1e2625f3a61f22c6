#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "imexcouple/numflux.hpp"

using namespace imexcouple;
using doctest::Approx;

namespace {

// Scalar field sampled at centres, ghosts included.
Ghosted<double> sampled(const StructuredGrid2D& g, const std::function<double(double, double)>& f) {
  Ghosted<double> a(g.nx, g.nz);
  for (int j = 0; j <= g.nz + 1; ++j) {
    for (int i = 0; i <= g.nx + 1; ++i) a(i, j) = f(g.x0 + (i - 0.5) * g.dx, g.z0 + (j - 0.5) * g.dz);
  }
  a.mark_closed();
  return a;
}

const FluidParams kAir = make_fluid_params(1.4, 0.72, 0.0);

}  // namespace

TEST_CASE("gradients are exact for linear fields") {
  const auto g = build_grid(7, 5, {0.0, 0.7}, {0.0, 1.0});
  for (auto st : {GradientStencil::FullNeighborhood, GradientStencil::FaceNeighbors}) {
    const auto r = ls_gradients(sampled(g, [](double x, double) { return 2.0 * x; }), g, st);
    for (std::size_t k = 0; k < r.d_dx.size(); ++k) {
      CHECK(r.d_dx[k] == Approx(2.0).epsilon(1e-12));
      CHECK(std::abs(r.d_dz[k]) <= 1e-12);
    }
    const auto c = ls_gradients(sampled(g, [](double, double) { return 3.0; }), g, st);
    for (std::size_t k = 0; k < c.d_dx.size(); ++k) {
      CHECK(c.d_dx[k] == 0.0);
      CHECK(c.d_dz[k] == 0.0);
    }
    const auto m = ls_gradients(sampled(g, [](double x, double z) { return 1.5 * x - 0.5 * z + 2.0; }), g, st);
    for (std::size_t k = 0; k < m.d_dx.size(); ++k) {
      CHECK(m.d_dx[k] == Approx(1.5).epsilon(1e-12));
      CHECK(m.d_dz[k] == Approx(-0.5).epsilon(1e-12));
    }
  }
}

TEST_CASE("gradient of x^2 is the central difference") {
  // centre x = 0.5 is cell 5 with dx = 0.1
  const auto g = build_grid(10, 3, {0.0, 1.0}, {0.0, 0.3});
  for (auto st : {GradientStencil::FullNeighborhood, GradientStencil::FaceNeighbors}) {
    const auto r = ls_gradients(sampled(g, [](double x, double) { return x * x; }), g, st);
    const auto k = g.index(5, 2);
    CHECK(cell_center(g, 5, 2).first == Approx(0.45));
    CHECK(r.d_dx[k] == Approx((0.55 * 0.55 - 0.35 * 0.35) / 0.2));
  }
  const auto h = build_grid(3, 3, {0.35, 0.65}, {0.0, 0.3});
  const auto r = ls_gradients(sampled(h, [](double x, double) { return x * x; }), h,
                              GradientStencil::FullNeighborhood);
  CHECK(r.d_dx[h.index(2, 2)] == Approx(1.0).epsilon(1e-13));
}

TEST_CASE("gradients reject open ghost layers") {
  const auto g = build_grid(3, 3, {0.0, 1.0}, {0.0, 1.0});
  Ghosted<double> a(3, 3);
  CHECK_THROWS_AS(ls_gradients(a, g, GradientStencil::FullNeighborhood), std::logic_error);
}

TEST_CASE("face reconstruction") {
  const auto g = build_grid(4, 1, {0.0, 0.4}, {0.0, 0.1});
  const auto build = [&](const std::function<double(double)>& f) {
    Ghosted<Vec4> q(g.nx, g.nz);
    for (int j = 0; j <= 2; ++j) {
      for (int i = 0; i <= g.nx + 1; ++i) {
        const double v = f((i - 0.5) * g.dx);
        q(i, j) = {v, v, v, v};
      }
    }
    q.mark_closed();
    return q;
  };
  SUBCASE("constant") {
    const auto q = build([](double) { return 1.25; });
    const auto faces = reconstruct_face_states(q, ls_gradients(q, g, GradientStencil::FaceNeighbors), g, Axis::X);
    CHECK(faces.size() == 3);
    for (const auto& f : faces) {
      CHECK(f.left[0] == 1.25);
      CHECK(f.right[0] == 1.25);
    }
  }
  SUBCASE("linear field is exact at the face") {
    const auto q = build([](double x) { return 2.0 * x; });
    const auto faces = reconstruct_face_states(q, ls_gradients(q, g, GradientStencil::FaceNeighbors), g, Axis::X);
    CHECK(faces[0].left[0] == Approx(0.2));
    CHECK(faces[0].right[0] == Approx(0.2));
  }
  SUBCASE("x^2 at x = 0.2") {
    const auto q = build([](double x) { return x * x; });
    const auto faces = reconstruct_face_states(q, ls_gradients(q, g, GradientStencil::FaceNeighbors), g, Axis::X);
    // face 1 sits between centres 0.15 and 0.25
    CHECK(faces[1].left[0] == Approx(0.0375));
    CHECK(faces[1].right[0] == Approx(0.0375));
  }
}

TEST_CASE("face_value falls back to the cell value for inadmissible faces") {
  const Vec4 q{1.0, 0.0, 0.0, 2.5};
  const Vec4 ok = face_value(q, Vec4{0.1, 0.2, 0.0, 0.3}, 1.4);
  CHECK(ok[0] == Approx(1.1));
  CHECK(ok[1] == Approx(0.2));
  CHECK(ok[3] == Approx(2.8));
  CHECK(face_value(q, Vec4{-1.5, 0.0, 0.0, 0.0}, 1.4) == q);
  CHECK(face_value(q, Vec4{0.0, 0.0, 0.0, -3.0}, 1.4) == q);
  // kinetic energy 3.125 exceeds rho E
  CHECK(face_value(q, Vec4{0.0, 2.5, 0.0, 0.0}, 1.4) == q);
}

TEST_CASE("Roe flux consistency and upwinding") {
  const Vec4 rest = conserved_from_primitive({1.0, 0.0, 0.0, 1.0 / 1.4, 1.0}, kAir);
  const Vec4 fx = roe_flux(rest, rest, 1.0, 0.0, 1.4);
  CHECK(fx[0] == 0.0);
  CHECK(fx[1] == Approx(1.0 / 1.4));
  CHECK(fx[2] == 0.0);
  CHECK(fx[3] == 0.0);
  const Vec4 fz = roe_flux(rest, rest, 0.0, 1.0, 1.4);
  CHECK(fz[2] == Approx(1.0 / 1.4));

  PrimitiveCell a{1.0, 2.0, 0.1, 1.0 / 1.4, 0.0};
  PrimitiveCell b{0.9, 2.2, -0.1, 0.8 / 1.4, 0.0};
  const Vec4 qa = conserved_from_primitive(a, kAir);
  const Vec4 qb = conserved_from_primitive(b, kAir);
  const Vec4 f = roe_flux(qa, qb, 1.0, 0.0, 1.4);
  const Vec4 e = euler_flux(qa, 1.0, 0.0, 1.4);
  for (int k = 0; k < 4; ++k) CHECK(f[k] == Approx(e[k]).epsilon(1e-13));
  const Vec4 back = roe_flux(qb, qa, -1.0, 0.0, 1.4);
  const Vec4 eb = euler_flux(qa, -1.0, 0.0, 1.4);
  for (int k = 0; k < 4; ++k) CHECK(back[k] == Approx(eb[k]).epsilon(1e-13));
}

TEST_CASE("Roe dissipation vanishes for equal states and the wall flux carries no mass") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0), p(0.3, 2.0);
  for (int k = 0; k < 100; ++k) {
    const Vec4 q = conserved_from_primitive({p(rng), u(rng), u(rng), p(rng), 0.0}, kAir);
    const Vec4 d = roe_dissipation(q, q, 0.0, 1.0, 1.4);
    for (int c = 0; c < 4; ++c) CHECK(d[c] == 0.0);
    const Vec4 w = wall_flux(q, 0.0, 1.0, 1.4);
    CHECK(w[0] == 0.0);
    CHECK(w[1] == 0.0);
    CHECK(w[3] == 0.0);
    const double wn = q[2] / q[0];
    const double pr = pressure(q, 1.4);
    CHECK(w[2] == Approx(pr + q[0] * wn * wn + q[0] * std::sqrt(1.4 * pr / q[0]) * wn));
  }
}

TEST_CASE("Euler Jacobian matches finite differences") {
  const Vec4 q = conserved_from_primitive({1.1, 0.3, -0.2, 0.9, 0.0}, kAir);
  for (auto [nx, nz] : {std::pair{1.0, 0.0}, std::pair{0.0, -1.0}}) {
    const Mat4 J = euler_jacobian(q, nx, nz, 1.4);
    for (int c = 0; c < 4; ++c) {
      Vec4 qp = q, qm = q;
      qp[c] += 1e-6;
      qm[c] -= 1e-6;
      const Vec4 d = (1.0 / 2e-6) * (euler_flux(qp, nx, nz, 1.4) - euler_flux(qm, nx, nz, 1.4));
      for (int r = 0; r < 4; ++r) CHECK(J[r * 4 + c] == Approx(d[r]).epsilon(1e-7));
    }
  }
}

TEST_CASE("common face gradients") {
  SUBCASE("u linear in z") {
    const auto d = common_face_gradients({0.1, 0.0, 1.0}, {0.3, 0.0, 1.0}, {0, 0, 0}, {0, 0, 0}, 0.1, Axis::Z);
    CHECK(d.du_dz == Approx(2.0));
    CHECK(d.u == Approx(0.2));
    CHECK(d.dT_dx == 0.0);
    CHECK(d.dT_dz == 0.0);
  }
  SUBCASE("u = z^2") {
    const auto d = common_face_gradients({0.0025, 0.0, 1.0}, {0.0225, 0.0, 1.0}, {0, 0, 0}, {0, 0, 0}, 0.1, Axis::Z);
    CHECK(d.du_dz == Approx(0.2));
  }
  SUBCASE("tangential derivative averages the cells") {
    const auto d = common_face_gradients({0, 0, 1}, {0, 0, 1}, {1.0, 2.0, 3.0}, {3.0, 4.0, 5.0}, 0.1, Axis::Z);
    CHECK(d.du_dx == Approx(2.0));
    CHECK(d.dw_dx == Approx(3.0));
    CHECK(d.dT_dx == Approx(4.0));
  }
}

TEST_CASE("viscous flux") {
  const auto fp = make_fluid_params(1.4, 0.72, 1.0);
  ViscousFaceData z;
  Vec4 f = viscous_flux(z, 0.0, 1.0, fp);
  for (int k = 0; k < 4; ++k) CHECK(f[k] == 0.0);

  ViscousFaceData shear;
  shear.u = 0.3;
  shear.du_dz = 1.0;
  f = viscous_flux(shear, 0.0, 1.0, fp);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == Approx(1.0));
  CHECK(f[2] == Approx(0.0));
  CHECK(f[3] == Approx(0.3));

  ViscousFaceData heat;
  heat.dT_dz = 1.0;
  f = viscous_flux(heat, 0.0, 1.0, fp);
  CHECK(f[3] == Approx(3.4722).epsilon(1e-4));
  CHECK(f[3] == Approx(2.5 / 0.72));
}
