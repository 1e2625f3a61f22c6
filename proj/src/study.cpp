#include "imexcouple/study.hpp"

#include <chrono>
#include <cmath>

#include "imexcouple/error.hpp"

namespace imexcouple {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CoupledState restrict_state(const CoupledState& fine, const NavierStokesSystem& coarse) {
  CoupledState out;
  out.time = fine.time;
  out.q1 = restrict_average(fine.q1, coarse.lower().grid);
  if (fine.q2) out.q2 = restrict_average(*fine.q2, coarse.upper()->grid);
  return out;
}

}  // namespace

CaseRun run_case(const RunConfig& config, std::function<void(const CoupledState&, long)> on_step) {
  NavierStokesSystem sys = case_system(config.case_spec, config.grid, config.stencil);
  CoupledState init = init_case(config.case_spec, sys);
  RunOptions opts;
  opts.t_end = config.t_end;
  opts.diagnostics_every = config.diagnostics_every;
  opts.snapshot_every = 0;
  opts.on_step = std::move(on_step);
  RunResult res = run(init, sys, config.coupling, opts);
  return {std::move(sys), std::move(init), std::move(res)};
}

void fill_orders(std::vector<ConvergenceRow>& rows, double ratio) {
  std::vector<double> er, em, ee;
  for (const auto& r : rows) {
    er.push_back(r.error.rho);
    em.push_back(r.error.momentum);
    ee.push_back(r.error.energy);
  }
  const auto orr = observed_order(er, ratio);
  const auto om = observed_order(em, ratio);
  const auto oe = observed_order(ee, ratio);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].order_rho = orr[k];
    rows[k].order_momentum = om[k];
    rows[k].order_energy = oe[k];
  }
}

StudyResult convergence_study(const RunConfig& base, int levels, StudyAxis axis,
                              const StudyOptions& options) {
  if (levels < 1) throw ConfigError("levels must be at least 1");
  StudyResult out;
  out.size_label = axis == StudyAxis::Space ? "h" : "dt";
  RunConfig quiet = base;
  quiet.diagnostics_every = 0;

  const bool exact = axis == StudyAxis::Space && case_has_exact_solution(base.case_spec.name);
  CoupledState reference;
  if (!exact) {
    RunConfig ref = quiet;
    if (axis == StudyAxis::Space) {
      const int f = (1 << (levels - 1)) * options.reference_factor;
      ref.grid = {base.grid.nx * f, base.grid.nz1 * f, base.grid.nz2 * f};
    } else {
      ref.coupling = CouplingConfig{};
      ref.coupling.scheme = options.reference_scheme;
      ref.coupling.dt = options.reference_dt > 0.0 ? options.reference_dt
                                                   : base.coupling.dt / std::ldexp(1.0, levels - 1) / 8.0;
    }
    const auto t0 = std::chrono::steady_clock::now();
    CaseRun r = run_case(ref);
    out.reference_seconds = seconds_since(t0);
    reference = std::move(r.result.final_state);
  }

  for (int k = 0; k < levels; ++k) {
    RunConfig lv = quiet;
    const int f = 1 << k;
    if (axis == StudyAxis::Space) {
      lv.grid = {base.grid.nx * f, base.grid.nz1 * f, base.grid.nz2 * f};
    } else {
      lv.coupling.dt = base.coupling.dt / f;
    }
    const auto t0 = std::chrono::steady_clock::now();
    CaseRun r = run_case(lv);
    out.seconds.push_back(seconds_since(t0));
    ConvergenceRow row;
    const CoupledState& q = r.result.final_state;
    if (exact) {
      CoupledState e;
      e.q1 = exact_density_wave(q.time, r.system.lower().grid, r.system.lower().params, base.case_spec);
      row.error = l2_error(q, e);
    } else if (axis == StudyAxis::Space) {
      row.error = l2_error(q, restrict_state(reference, r.system));
    } else {
      row.error = l2_error(q, reference);
    }
    row.size = axis == StudyAxis::Space ? r.system.lower().grid.dx : lv.coupling.dt;
    out.rows.push_back(row);
  }
  fill_orders(out.rows);
  return out;
}

}  // namespace imexcouple
