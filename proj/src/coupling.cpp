#include "imexcouple/coupling.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "imexcouple/diagnostics.hpp"
#include "imexcouple/error.hpp"

namespace imexcouple {

const char* to_string(CouplingMode mode) {
  switch (mode) {
    case CouplingMode::Tight:
      return "TC";
    case CouplingMode::Concurrent:
      return "CC";
    case CouplingMode::Sequential:
      return "SC";
  }
  return "?";
}

std::string CouplingConfig::label() const {
  std::string name = scheme;
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::toupper(c); });
  const IMEXTableau& tab = tableau(scheme);
  if (!tab.has_implicit()) return name;
  std::ostringstream os;
  os << name << "(" << to_string(op) << ", " << to_string(mode);
  if (mode != CouplingMode::Tight) os << substeps;
  os << ")";
  return os.str();
}

namespace {

class LinearStageOperator : public StageOperator {
 public:
  LinearStageOperator(LinearOperatorKind kind, const DomainSpec& domain,
                      const ConservedField& reference, const InterfaceWall* wall)
      : op_(kind, domain, reference, wall) {}
  ConservedField apply(const ConservedField& q) const override { return op_.apply(q); }
  StageSolveResult solve(double alpha, const ConservedField& rhs, const ConservedField& x0,
                         const KrylovSettings& settings) const override {
    return op_.solve(alpha, rhs, x0, settings);
  }

 private:
  LinearOperator op_;
};

void record(StepStats* stats, const StageSolveResult& r) {
  if (stats == nullptr) return;
  ++stats->stage_solves;
  stats->krylov_iterations += r.iterations;
  stats->max_krylov_iterations = std::max(stats->max_krylov_iterations, r.max_iterations);
}

double norm2(const ConservedField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s);
}

struct StageLoop {
  ConservedField q1;
  std::optional<ConservedField> q2;
  std::vector<ConservedField> r1;
};

// Shared stage loop. With advance_upper the upper subdomain runs through the
// same explicit stages; otherwise it stays frozen at q2n.
StageLoop stage_loop(const ConservedField& q1n, const ConservedField* q2n, const CoupledSystem& sys,
                     const CouplingConfig& cfg, const IMEXTableau& tab, double dt,
                     bool advance_upper, StepStats* stats) {
  const int s = tab.stages;
  const bool implicit = tab.has_implicit();
  const bool linearized = cfg.stiff == StiffTreatment::Linearized;
  const bool split = implicit && linearized;
  const bool upper = q2n != nullptr;

  std::vector<ConservedField> R1, N1, L1, R2;
  R1.reserve(static_cast<std::size_t>(s));
  if (split) {
    N1.reserve(static_cast<std::size_t>(s));
    L1.reserve(static_cast<std::size_t>(s));
  }
  std::unique_ptr<StageOperator> step_op;

  for (int i = 0; i < s; ++i) {
    std::optional<ConservedField> Q2;
    if (upper && advance_upper) {
      Q2 = *q2n;
      for (int j = 0; j < i; ++j) axpy(dt * tab.A(i, j), R2[static_cast<std::size_t>(j)], *Q2);
    }
    const ConservedField* partner = upper ? (advance_upper ? &*Q2 : q2n) : nullptr;

    ConservedField Qc = q1n;
    for (int j = 0; j < i; ++j) {
      if (!implicit) {
        axpy(dt * tab.A(i, j), R1[static_cast<std::size_t>(j)], Qc);
      } else if (linearized) {
        axpy(dt * tab.A(i, j), N1[static_cast<std::size_t>(j)], Qc);
        axpy(dt * tab.At(i, j), L1[static_cast<std::size_t>(j)], Qc);
      } else {
        axpy(dt * tab.At(i, j), R1[static_cast<std::size_t>(j)], Qc);
      }
    }

    const double alpha = implicit ? dt * tab.At(i, i) : 0.0;
    ConservedField Q1 = Qc;
    std::unique_ptr<StageOperator> stage_op;
    const StageOperator* op = nullptr;
    if (split) {
      if (cfg.reference == ReferencePolicy::Step) {
        if (!step_op) step_op = sys.linearize_lower(q1n, partner, cfg.op);
        op = step_op.get();
      } else {
        stage_op = sys.linearize_lower(Qc, partner, cfg.op);
        op = stage_op.get();
      }
      if (alpha != 0.0) {
        // predictor guess Qc + alpha L Qc
        ConservedField guess = Qc;
        axpy(alpha, op->apply(Qc), guess);
        StageSolveResult r = op->solve(alpha, Qc, guess, cfg.krylov);
        record(stats, r);
        Q1 = std::move(r.solution);
      }
    } else if (implicit && alpha != 0.0) {
      const double scale = std::max(1.0, norm2(Qc));
      for (int k = 0; k < cfg.newton_iterations; ++k) {
        ConservedField F = sys.rhs_lower(Q1, partner);
        // F <- Qc - (Q1 - alpha R(Q1))
        auto fv = F.values();
        auto qv = Q1.values();
        auto cv = Qc.values();
        for (std::size_t m = 0; m < fv.size(); ++m) fv[m] = cv[m] - qv[m] + alpha * fv[m];
        if (norm2(F) <= cfg.newton_tolerance * scale) break;
        const auto jac = sys.linearize_lower(Q1, partner, cfg.op);
        const ConservedField zero = zeros_like(Q1);
        StageSolveResult r = jac->solve(alpha, F, zero, cfg.krylov);
        record(stats, r);
        if (stats) ++stats->newton_iterations;
        axpy(1.0, r.solution, Q1);
      }
    }

    if (upper && advance_upper) {
      auto rr = sys.rhs_both(Q1, *Q2);
      R1.push_back(std::move(rr.first));
      R2.push_back(std::move(rr.second));
    } else {
      R1.push_back(sys.rhs_lower(Q1, partner));
    }
    if (split) {
      L1.push_back(op->apply(Q1));
      ConservedField n = R1.back();
      axpy(-1.0, L1.back(), n);
      N1.push_back(std::move(n));
    }
  }

  StageLoop out{q1n, std::nullopt, {}};
  if (split && !tab.same_weights()) {
    for (int i = 0; i < s; ++i) {
      axpy(dt * tab.b[static_cast<std::size_t>(i)], N1[static_cast<std::size_t>(i)], out.q1);
      axpy(dt * tab.b_tilde[static_cast<std::size_t>(i)], L1[static_cast<std::size_t>(i)], out.q1);
    }
  } else {
    const auto& w = (implicit && !linearized) ? tab.b_tilde : tab.b;
    for (int i = 0; i < s; ++i) axpy(dt * w[static_cast<std::size_t>(i)], R1[static_cast<std::size_t>(i)], out.q1);
  }
  if (upper && advance_upper) {
    out.q2 = *q2n;
    for (int i = 0; i < s; ++i) axpy(dt * tab.b[static_cast<std::size_t>(i)], R2[static_cast<std::size_t>(i)], *out.q2);
  }
  out.r1 = std::move(R1);
  return out;
}

}  // namespace

NavierStokesSystem::NavierStokesSystem(DomainSpec lower, std::optional<DomainSpec> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  validate_boundaries(lower_.bc);
  if (upper_) {
    validate_boundaries(upper_->bc);
    if (lower_.bc.top.kind != BoundaryKind::Interface || upper_->bc.bottom.kind != BoundaryKind::Interface) {
      throw BoundaryError("coupled subdomains must meet at an interface (lower top, upper bottom)");
    }
    if (lower_.grid.nx != upper_->grid.nx) {
      throw GridError("interface grids are not conforming");
    }
  } else if (lower_.bc.top.kind == BoundaryKind::Interface || lower_.bc.bottom.kind == BoundaryKind::Interface) {
    throw BoundaryError("interface side without a partner subdomain");
  }
}

ConservedField NavierStokesSystem::rhs_lower(const ConservedField& q1, const ConservedField* q2) const {
  if (!upper_) return assemble_rhs(q1, lower_, nullptr);
  const InterfaceExchange ex = exchange_interface(q1, *q2);
  return assemble_rhs(q1, lower_, &ex.lower);
}

ConservedField NavierStokesSystem::rhs_upper(const ConservedField& q1, const ConservedField& q2) const {
  const InterfaceExchange ex = exchange_interface(q1, q2);
  return assemble_rhs(q2, *upper_, &ex.upper);
}

std::pair<ConservedField, ConservedField> NavierStokesSystem::rhs_both(const ConservedField& q1,
                                                                       const ConservedField& q2) const {
  const InterfaceExchange ex = exchange_interface(q1, q2);
  return {assemble_rhs(q1, lower_, &ex.lower), assemble_rhs(q2, *upper_, &ex.upper)};
}

std::unique_ptr<StageOperator> NavierStokesSystem::linearize_lower(const ConservedField& reference,
                                                                   const ConservedField* q2,
                                                                   LinearOperatorKind kind) const {
  if (!upper_) return std::make_unique<LinearStageOperator>(kind, lower_, reference, nullptr);
  const InterfaceExchange ex = exchange_interface(reference, *q2);
  return std::make_unique<LinearStageOperator>(kind, lower_, reference, &ex.lower);
}

LowerStep step_lower(const ConservedField& q1, const ConservedField* q2, const CoupledSystem& sys,
                     const CouplingConfig& cfg, const IMEXTableau& tab, double dt, StepStats* stats) {
  StageLoop loop = stage_loop(q1, q2, sys, cfg, tab, dt, false, stats);
  return {std::move(loop.q1), std::move(loop.r1)};
}

ConservedField dense_output(const ConservedField& q1n, const std::vector<ConservedField>& stage_rhs,
                            const IMEXTableau& tab, double dt, double theta) {
  if (static_cast<int>(stage_rhs.size()) != tab.stages) {
    throw std::invalid_argument("dense_output needs one residual per stage");
  }
  ConservedField q = q1n;
  for (int i = 0; i < tab.stages; ++i) {
    axpy(dt * tab.dense_weight(i, theta), stage_rhs[static_cast<std::size_t>(i)], q);
  }
  return q;
}

CoupledState step_tight(const CoupledState& s, const CoupledSystem& sys, const CouplingConfig& cfg,
                        const IMEXTableau& tab, StepStats* stats) {
  const ConservedField* q2 = s.q2 ? &*s.q2 : nullptr;
  StageLoop loop = stage_loop(s.q1, q2, sys, cfg, tab, cfg.dt, true, stats);
  return {std::move(loop.q1), std::move(loop.q2), s.time + cfg.dt};
}

namespace {

ConservedField upper_substep(const ConservedField& q2, const CoupledSystem& sys, const IMEXTableau& tab,
                             double dt2, const std::function<const ConservedField&(int)>& partner) {
  const int s = tab.stages;
  std::vector<ConservedField> R2;
  R2.reserve(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    ConservedField Q2 = q2;
    for (int j = 0; j < i; ++j) axpy(dt2 * tab.A(i, j), R2[static_cast<std::size_t>(j)], Q2);
    R2.push_back(sys.rhs_upper(partner(i), Q2));
  }
  ConservedField out = q2;
  for (int i = 0; i < s; ++i) axpy(dt2 * tab.b[static_cast<std::size_t>(i)], R2[static_cast<std::size_t>(i)], out);
  return out;
}

}  // namespace

CoupledState step_loose(const CoupledState& s, const CoupledSystem& sys, const CouplingConfig& cfg,
                        const IMEXTableau& tab, StepStats* stats) {
  if (!s.q2 || !sys.has_upper()) return step_tight(s, sys, cfg, tab, stats);
  if (cfg.substeps < 1) throw std::invalid_argument("substeps must be at least 1");
  const double dt = cfg.dt;
  LowerStep lower = step_lower(s.q1, &*s.q2, sys, cfg, tab, dt, stats);

  const int ns = cfg.substeps;
  const double dt2 = dt / ns;
  ConservedField q2 = *s.q2;
  for (int k = 1; k <= ns; ++k) {
    if (cfg.mode == CouplingMode::Sequential) {
      std::vector<ConservedField> star;
      star.reserve(static_cast<std::size_t>(tab.stages));
      for (int i = 0; i < tab.stages; ++i) {
        const double theta = ((k - 1) + tab.c[static_cast<std::size_t>(i)]) / ns;
        star.push_back(dense_output(s.q1, lower.stage_rhs, tab, dt, theta));
      }
      q2 = upper_substep(q2, sys, tab, dt2, [&](int i) -> const ConservedField& {
        return star[static_cast<std::size_t>(i)];
      });
    } else {
      q2 = upper_substep(q2, sys, tab, dt2, [&](int) -> const ConservedField& { return s.q1; });
    }
  }
  return {std::move(lower.q_new), std::move(q2), s.time + dt};
}

CoupledState step_rk(const CoupledState& s, const CoupledSystem& sys, const IMEXTableau& tab, double dt) {
  const int st = tab.stages;
  const bool upper = s.q2.has_value();
  std::vector<ConservedField> R1, R2;
  for (int i = 0; i < st; ++i) {
    ConservedField Q1 = s.q1;
    for (int j = 0; j < i; ++j) axpy(dt * tab.A(i, j), R1[static_cast<std::size_t>(j)], Q1);
    if (upper) {
      ConservedField Q2 = *s.q2;
      for (int j = 0; j < i; ++j) axpy(dt * tab.A(i, j), R2[static_cast<std::size_t>(j)], Q2);
      auto rr = sys.rhs_both(Q1, Q2);
      R1.push_back(std::move(rr.first));
      R2.push_back(std::move(rr.second));
    } else {
      R1.push_back(sys.rhs_lower(Q1, nullptr));
    }
  }
  CoupledState out{s.q1, s.q2, s.time + dt};
  for (int i = 0; i < st; ++i) axpy(dt * tab.b[static_cast<std::size_t>(i)], R1[static_cast<std::size_t>(i)], out.q1);
  if (upper) {
    for (int i = 0; i < st; ++i) axpy(dt * tab.b[static_cast<std::size_t>(i)], R2[static_cast<std::size_t>(i)], *out.q2);
  }
  return out;
}

CoupledState step(const CoupledState& s, const CoupledSystem& sys, const CouplingConfig& cfg,
                  const IMEXTableau& tab, StepStats* stats) {
  if (cfg.mode == CouplingMode::Tight || !s.q2) return step_tight(s, sys, cfg, tab, stats);
  return step_loose(s, sys, cfg, tab, stats);
}

namespace {

DiagnosticsRow sample(const CoupledState& st, long n, const ConservationSample& initial, double dt1,
                      double dt2) {
  const ConservationSample c = conservation_sample(st);
  DiagnosticsRow row;
  row.step = n;
  row.time = st.time;
  row.mass1 = c.mass1;
  row.mass2 = c.mass2;
  const double m0 = initial.mass1 + initial.mass2;
  const double e0 = initial.energy1 + initial.energy2;
  row.mass_loss = std::abs((c.mass1 + c.mass2) - m0) / m0;
  row.energy_loss = (e0 - (c.energy1 + c.energy2)) / e0;
  const auto cr = courant_numbers(st, dt1, dt2);
  row.courant1 = cr.first;
  row.courant2 = cr.second;
  return row;
}

}  // namespace

RunResult run(const CoupledState& initial, const CoupledSystem& sys, const CouplingConfig& cfg,
              const RunOptions& options) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const IMEXTableau& tab = tableau(cfg.scheme);
  RunResult res;
  res.final_state = initial;
  const ConservationSample c0 = conservation_sample(initial);
  const double dt2_ratio = (cfg.mode == CouplingMode::Tight) ? 1.0 : 1.0 / std::max(1, cfg.substeps);
  if (options.diagnostics_every > 0) {
    res.diagnostics.push_back(sample(initial, 0, c0, cfg.dt, cfg.dt * dt2_ratio));
  }
  const double t0 = initial.time;
  const double t_end = options.t_end;
  const double span = t_end - t0;
  const long total = span > 0.0 ? static_cast<long>(std::ceil(span / cfg.dt - 1e-9)) : 0;
  CouplingConfig step_cfg = cfg;
  long n = 0;
  while (n < total) {
    const bool last = n + 1 == total;
    step_cfg.dt = last ? span - static_cast<double>(n) * cfg.dt : cfg.dt;
    try {
      CoupledState next = step(res.final_state, sys, step_cfg, tab, &res.stats);
      next.time = last ? t_end : t0 + static_cast<double>(n + 1) * cfg.dt;
      res.final_state = std::move(next);
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "step " << (n + 1) << " from t=" << res.final_state.time << " failed: " << e.what();
      throw RunFailure(os.str(), res.final_state);
    }
    ++n;
    if (options.diagnostics_every > 0 && (n % options.diagnostics_every == 0 || last)) {
      res.diagnostics.push_back(
          sample(res.final_state, n, c0, step_cfg.dt, step_cfg.dt * dt2_ratio));
    }
    if (options.snapshot_every > 0 && n % options.snapshot_every == 0) {
      res.snapshots.push_back(res.final_state);
    }
    if (options.on_step) options.on_step(res.final_state, n);
  }
  res.steps = n;
  return res;
}

}  // namespace imexcouple
