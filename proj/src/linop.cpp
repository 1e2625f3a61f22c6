#include "imexcouple/linop.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "imexcouple/error.hpp"

namespace imexcouple {

const char* to_string(LinearOperatorKind kind) {
  switch (kind) {
    case LinearOperatorKind::Full:
      return "L";
    case LinearOperatorKind::Inviscid:
      return "LI";
    case LinearOperatorKind::Vertical:
      return "Lz";
  }
  return "?";
}

namespace {

constexpr double kFdEpsilon = 1e-8;

template <class F>
Mat4 fd_jacobian(const Vec4& q, F&& f) {
  const Vec4 base = f(q);
  Mat4 J{};
  for (int k = 0; k < 4; ++k) {
    Vec4 qp = q;
    const double h = kFdEpsilon * std::max(1.0, std::abs(q[k]));
    qp[k] += h;
    const double step = qp[k] - q[k];
    const Vec4 fp = f(qp);
    for (int r = 0; r < 4; ++r) J[4 * r + k] = (fp[r] - base[r]) / step;
  }
  return J;
}

Mat4 scaled(const Mat4& a, double s) {
  Mat4 r;
  for (int k = 0; k < 16; ++k) r[k] = s * a[k];
  return r;
}

Mat4 minus(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int k = 0; k < 16; ++k) r[k] = a[k] - b[k];
  return r;
}

inline void matvec_add(const Mat4& m, const Vec4& v, Vec4& out) {
  for (int r = 0; r < 4; ++r) {
    out[r] += m[4 * r] * v[0] + m[4 * r + 1] * v[1] + m[4 * r + 2] * v[2] + m[4 * r + 3] * v[3];
  }
}

bool is_wall(const BoundarySpec& s) { return s.kind != BoundaryKind::Periodic; }

}  // namespace

LinearOperator::Line LinearOperator::build_line(const std::vector<Vec4>& ref, bool periodic,
                                                const Vec4& nrm, const BoundarySpec& lo,
                                                const BoundarySpec& hi, Axis axis, double wall_u_lo,
                                                double wall_T_lo, double wall_u_hi,
                                                double wall_T_hi) const {
  const double gamma = domain_.params.gamma;
  const double nx = nrm[0];
  const double nz = nrm[1];
  Line line;
  line.n = static_cast<int>(ref.size()) - 2;
  line.periodic = periodic;
  const int n = line.n;
  line.jl.assign(static_cast<std::size_t>(n + 1), Mat4{});
  line.jr.assign(static_cast<std::size_t>(n + 1), Mat4{});

  auto at = [&](int j) -> const Vec4& {
    if (periodic) {
      const int k = ((j - 1) % n + n) % n + 1;
      return ref[static_cast<std::size_t>(k)];
    }
    return ref[static_cast<std::size_t>(j)];
  };

  if (!periodic) {
    const bool iso_lo = lo.kind != BoundaryKind::AdiabaticWall;
    const bool iso_hi = hi.kind != BoundaryKind::AdiabaticWall;
    line.ghost_lo = fd_jacobian(ref[1], [&](const Vec4& q) {
      return wall_ghost(q, axis, wall_u_lo, iso_lo, wall_T_lo, domain_.params);
    });
    line.ghost_hi = fd_jacobian(ref[static_cast<std::size_t>(n)], [&](const Vec4& q) {
      return wall_ghost(q, axis, wall_u_hi, iso_hi, wall_T_hi, domain_.params);
    });
  }

  for (int f = periodic ? 1 : 0; f <= n; ++f) {
    if (!periodic && f == 0) {
      const Vec4 qf = at(1) - 0.25 * (at(2) - at(0));
      line.jl[0] = fd_jacobian(qf, [&](const Vec4& q) { return -1.0 * wall_flux(q, -nx, -nz, gamma); });
      continue;
    }
    if (!periodic && f == n) {
      const Vec4 qf = at(n) + 0.25 * (at(n + 1) - at(n - 1));
      line.jl[static_cast<std::size_t>(n)] =
          fd_jacobian(qf, [&](const Vec4& q) { return wall_flux(q, nx, nz, gamma); });
      continue;
    }
    const Vec4 qL = at(f) + 0.25 * (at(f + 1) - at(f - 1));
    const Vec4 qR = at(f + 1) - 0.25 * (at(f + 2) - at(f));
    const Mat4 dL = fd_jacobian(qL, [&](const Vec4& q) { return roe_dissipation(q, qR, nx, nz, gamma); });
    const Mat4 dR = fd_jacobian(qR, [&](const Vec4& q) { return roe_dissipation(qL, q, nx, nz, gamma); });
    line.jl[static_cast<std::size_t>(f)] = minus(scaled(euler_jacobian(qL, nx, nz, gamma), 0.5), dL);
    line.jr[static_cast<std::size_t>(f)] = minus(scaled(euler_jacobian(qR, nx, nz, gamma), 0.5), dR);
  }
  return line;
}

void LinearOperator::apply_line(const Line& line, const double* q, std::size_t stride, double* out,
                                double inv_h) {
  const int n = line.n;
  std::vector<Vec4> d(static_cast<std::size_t>(n + 2));
  for (int j = 1; j <= n; ++j) {
    const double* c = q + stride * static_cast<std::size_t>(j - 1);
    d[static_cast<std::size_t>(j)] = {c[0], c[1], c[2], c[3]};
  }
  if (line.periodic) {
    d[0] = d[static_cast<std::size_t>(n)];
    d[static_cast<std::size_t>(n + 1)] = d[1];
  } else {
    d[0] = matvec(line.ghost_lo, d[1]);
    d[static_cast<std::size_t>(n + 1)] = matvec(line.ghost_hi, d[static_cast<std::size_t>(n)]);
  }
  auto at = [&](int j) -> const Vec4& {
    if (line.periodic && (j < 0 || j > n + 1)) {
      const int k = ((j - 1) % n + n) % n + 1;
      return d[static_cast<std::size_t>(k)];
    }
    return d[static_cast<std::size_t>(j)];
  };

  std::vector<Vec4> F(static_cast<std::size_t>(n + 1), Vec4{0.0, 0.0, 0.0, 0.0});
  for (int f = line.periodic ? 1 : 0; f <= n; ++f) {
    Vec4& flux = F[static_cast<std::size_t>(f)];
    if (!line.periodic && f == 0) {
      const Vec4 df = at(1) - 0.25 * (at(2) - at(0));
      matvec_add(line.jl[0], df, flux);
    } else if (!line.periodic && f == n) {
      const Vec4 df = at(n) + 0.25 * (at(n + 1) - at(n - 1));
      matvec_add(line.jl[static_cast<std::size_t>(n)], df, flux);
    } else {
      const Vec4 dL = at(f) + 0.25 * (at(f + 1) - at(f - 1));
      const Vec4 dR = at(f + 1) - 0.25 * (at(f + 2) - at(f));
      matvec_add(line.jl[static_cast<std::size_t>(f)], dL, flux);
      matvec_add(line.jr[static_cast<std::size_t>(f)], dR, flux);
    }
  }
  if (line.periodic) F[0] = F[static_cast<std::size_t>(n)];
  for (int j = 1; j <= n; ++j) {
    double* o = out + stride * static_cast<std::size_t>(j - 1);
    const Vec4& fr = F[static_cast<std::size_t>(j)];
    const Vec4& fl = F[static_cast<std::size_t>(j - 1)];
    for (int k = 0; k < 4; ++k) o[k] -= (fr[k] - fl[k]) * inv_h;
  }
}

LinearOperator::LinearOperator(LinearOperatorKind kind, const DomainSpec& domain,
                               const ConservedField& reference, const InterfaceWall* frozen_wall)
    : kind_(kind), domain_(domain), reference_(reference) {
  const auto& g = domain.grid;
  if (reference.grid().nx != g.nx || reference.grid().nz != g.nz) {
    throw GridError("linear operator reference does not match the domain grid");
  }
  if (frozen_wall != nullptr) {
    wall_ = *frozen_wall;
    has_wall_ = true;
  }
  const InterfaceWall* wall = has_wall_ ? &wall_ : nullptr;
  const Ghosted<Vec4> G = fill_ghosts(reference, domain.bc, wall);
  const auto& bc = domain.bc;

  auto wall_data = [&](const BoundarySpec& s, int column, double& u, double& T) {
    u = s.wall_u;
    T = s.wall_T;
    if (s.kind == BoundaryKind::Interface) {
      u = wall_.u[static_cast<std::size_t>(column - 1)];
      T = wall_.T[static_cast<std::size_t>(column - 1)];
    }
  };

  const bool periodic_z = !is_wall(bc.bottom);
  columns_.reserve(static_cast<std::size_t>(g.nx));
  std::vector<Vec4> ref(static_cast<std::size_t>(g.nz + 2));
  for (int i = 1; i <= g.nx; ++i) {
    for (int j = 0; j <= g.nz + 1; ++j) ref[static_cast<std::size_t>(j)] = G(i, j);
    double ulo, Tlo, uhi, Thi;
    wall_data(bc.bottom, i, ulo, Tlo);
    wall_data(bc.top, i, uhi, Thi);
    columns_.push_back(build_line(ref, periodic_z, {0.0, 1.0, 0.0, 0.0}, bc.bottom, bc.top, Axis::Z,
                                  ulo, Tlo, uhi, Thi));
  }
  if (kind != LinearOperatorKind::Vertical) {
    const bool periodic_x = !is_wall(bc.left);
    rows_.reserve(static_cast<std::size_t>(g.nz));
    ref.assign(static_cast<std::size_t>(g.nx + 2), Vec4{});
    for (int j = 1; j <= g.nz; ++j) {
      for (int i = 0; i <= g.nx + 1; ++i) ref[static_cast<std::size_t>(i)] = G(i, j);
      rows_.push_back(build_line(ref, periodic_x, {1.0, 0.0, 0.0, 0.0}, bc.left, bc.right, Axis::X,
                                 bc.left.wall_u, bc.left.wall_T, bc.right.wall_u, bc.right.wall_T));
    }
  }
  if (kind == LinearOperatorKind::Full && domain.params.mu > 0.0) {
    viscous_ref_ = assemble_rhs(reference, bc, wall, domain.stencil, FluxParts::Viscous);
  }
}

RhsField LinearOperator::apply(const ConservedField& q) const {
  const auto& g = domain_.grid;
  RhsField out(q.grid(), q.params());
  const std::size_t row = 4 * static_cast<std::size_t>(g.nx);
  for (int i = 1; i <= g.nx; ++i) {
    const std::size_t off = 4 * static_cast<std::size_t>(i - 1);
    apply_line(columns_[static_cast<std::size_t>(i - 1)], q.data() + off, row, out.data() + off,
               1.0 / g.dz);
  }
  for (int j = 1; j <= static_cast<int>(rows_.size()); ++j) {
    const std::size_t off = row * static_cast<std::size_t>(j - 1);
    apply_line(rows_[static_cast<std::size_t>(j - 1)], q.data() + off, 4, out.data() + off, 1.0 / g.dx);
  }
  if (kind_ == LinearOperatorKind::Full && domain_.params.mu > 0.0) {
    double qmax = 0.0, rmax = 1.0;
    for (double v : q.values()) qmax = std::max(qmax, std::abs(v));
    for (double v : reference_.values()) rmax = std::max(rmax, std::abs(v));
    if (qmax > 0.0) {
      const double eps = kFdEpsilon * rmax / qmax;
      ConservedField shifted = reference_;
      axpy(eps, q, shifted);
      const RhsField v = assemble_rhs(shifted, domain_.bc, has_wall_ ? &wall_ : nullptr,
                                      domain_.stencil, FluxParts::Viscous);
      auto o = out.values();
      auto a = v.values();
      auto b = viscous_ref_.values();
      for (std::size_t k = 0; k < o.size(); ++k) o[k] += (a[k] - b[k]) / eps;
    }
  }
  return out;
}

void LinearOperator::apply_column(int i, std::span<const double> q, std::span<double> out) const {
  if (kind_ != LinearOperatorKind::Vertical) {
    throw std::logic_error("apply_column requires the vertical operator");
  }
  std::fill(out.begin(), out.end(), 0.0);
  apply_line(columns_.at(static_cast<std::size_t>(i - 1)), q.data(), 4, out.data(),
             1.0 / domain_.grid.dz);
}

StageSolveResult LinearOperator::solve(double alpha, const ConservedField& rhs,
                                       const ConservedField& initial_guess,
                                       const KrylovSettings& settings) const {
  StageSolveResult res;
  res.solution = initial_guess;
  if (alpha == 0.0) {
    res.solution = rhs;
    return res;
  }
  const auto& g = domain_.grid;
  auto fail = [&](double residual, double initial) {
    std::ostringstream os;
    os << "Krylov solve with " << to_string(kind_) << " did not converge: residual " << residual
       << " from " << initial << " after " << settings.max_iterations << " iterations";
    throw SolverError(os.str(), residual);
  };

  if (kind_ == LinearOperatorKind::Vertical) {
    const std::size_t n = 4 * static_cast<std::size_t>(g.nz);
    const std::size_t row = 4 * static_cast<std::size_t>(g.nx);
    std::vector<double> b(n), x(n), tmp(n);
    for (int i = 1; i <= g.nx; ++i) {
      const std::size_t off = 4 * static_cast<std::size_t>(i - 1);
      for (int j = 0; j < g.nz; ++j) {
        for (int k = 0; k < 4; ++k) {
          b[4 * j + k] = rhs.data()[off + row * j + k];
          x[4 * j + k] = initial_guess.data()[off + row * j + k];
        }
      }
      double bnorm = 0.0;
      for (double v : b) bnorm += v * v;
      KrylovSettings s = settings;
      s.absolute_tolerance = std::max(s.absolute_tolerance, 1e-13 * std::sqrt(bnorm));
      const LinearMap map = [&](std::span<const double> v, std::span<double> o) {
        apply_column(i, v, tmp);
        for (std::size_t k = 0; k < n; ++k) o[k] = v[k] - alpha * tmp[k];
      };
      const GmresResult gr = gmres(map, b, x, s);
      if (!gr.converged) fail(gr.residual_norm, gr.initial_norm);
      res.iterations += gr.iterations;
      res.max_iterations = std::max(res.max_iterations, gr.iterations);
      if (gr.initial_norm > 0.0) {
        res.residual_norm = std::max(res.residual_norm, gr.residual_norm / gr.initial_norm);
      }
      for (int j = 0; j < g.nz; ++j) {
        for (int k = 0; k < 4; ++k) res.solution.data()[off + row * j + k] = x[4 * j + k];
      }
    }
    return res;
  }

  double bnorm = 0.0;
  for (double v : rhs.values()) bnorm += v * v;
  KrylovSettings s = settings;
  s.absolute_tolerance = std::max(s.absolute_tolerance, 1e-13 * std::sqrt(bnorm));
  ConservedField work(rhs.grid(), rhs.params());
  const LinearMap map = [&](std::span<const double> v, std::span<double> o) {
    std::copy(v.begin(), v.end(), work.values().begin());
    const RhsField lv = apply(work);
    auto l = lv.values();
    for (std::size_t k = 0; k < o.size(); ++k) o[k] = v[k] - alpha * l[k];
  };
  const GmresResult gr = gmres(map, rhs.values(), res.solution.values(), s);
  if (!gr.converged) fail(gr.residual_norm, gr.initial_norm);
  res.iterations = gr.iterations;
  res.max_iterations = gr.iterations;
  res.residual_norm = gr.initial_norm > 0.0 ? gr.residual_norm / gr.initial_norm : 0.0;
  return res;
}

std::vector<double> assemble_dense(const LinearOperator& op) {
  const ConservedField& ref = op.reference();
  const std::size_t n = ref.values().size();
  std::vector<double> m(n * n);
  ConservedField e(ref.grid(), ref.params());
  for (std::size_t k = 0; k < n; ++k) {
    std::fill(e.values().begin(), e.values().end(), 0.0);
    e.values()[k] = 1.0;
    const RhsField col = op.apply(e);
    for (std::size_t r = 0; r < n; ++r) m[r * n + k] = col.values()[r];
  }
  return m;
}

}  // namespace imexcouple
