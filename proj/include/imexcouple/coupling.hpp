#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "imexcouple/boundary.hpp"
#include "imexcouple/error.hpp"
#include "imexcouple/gmres.hpp"
#include "imexcouple/linop.hpp"
#include "imexcouple/residual.hpp"
#include "imexcouple/state.hpp"
#include "imexcouple/tableau.hpp"

namespace imexcouple {

// Linearized: stiff stage solve with L and N = R - L. Nonlinear: the stage
// equation Q - alpha R(Q) = rhs solved by Newton-Krylov with L as Jacobian.
enum class StiffTreatment { Linearized, Nonlinear };
enum class CouplingMode { Tight, Concurrent, Sequential };
// Linearization state: the accumulated stage right-hand side (Stage) or the
// state at the start of the step (Step).
enum class ReferencePolicy { Stage, Step };

const char* to_string(CouplingMode mode);

struct CouplingConfig {
  std::string scheme = "ark2";
  StiffTreatment stiff = StiffTreatment::Linearized;
  LinearOperatorKind op = LinearOperatorKind::Vertical;
  CouplingMode mode = CouplingMode::Tight;
  int substeps = 1;
  double dt = 0.01;
  KrylovSettings krylov{};
  ReferencePolicy reference = ReferencePolicy::Stage;
  int newton_iterations = 10;
  double newton_tolerance = 1e-10;

  bool operator==(const CouplingConfig&) const = default;

  // e.g. "ARK2(Lz, TC)", "ARK3(Lz, SC8)", "RK4".
  std::string label() const;
};

struct CoupledState {
  ConservedField q1;
  std::optional<ConservedField> q2;
  double time = 0.0;
};

// Operator used for the stiff stage solves of the lower subdomain.
class StageOperator {
 public:
  virtual ~StageOperator() = default;
  virtual ConservedField apply(const ConservedField& q) const = 0;
  virtual StageSolveResult solve(double alpha, const ConservedField& rhs,
                                 const ConservedField& initial_guess,
                                 const KrylovSettings& settings) const = 0;
};

// Spatial operators of a two-subdomain problem. The lower subdomain (index 1)
// is the stiff one. The partner argument supplies the other side of the
// interface and is ignored when there is no upper subdomain.
class CoupledSystem {
 public:
  virtual ~CoupledSystem() = default;
  virtual bool has_upper() const = 0;
  virtual ConservedField rhs_lower(const ConservedField& q1, const ConservedField* q2) const = 0;
  virtual ConservedField rhs_upper(const ConservedField& q1, const ConservedField& q2) const = 0;
  // Both residuals from one shared interface evaluation.
  virtual std::pair<ConservedField, ConservedField> rhs_both(const ConservedField& q1,
                                                             const ConservedField& q2) const {
    return {rhs_lower(q1, &q2), rhs_upper(q1, q2)};
  }
  // Linearization about `reference`, interface data taken from (reference,
  // q2) and held fixed.
  virtual std::unique_ptr<StageOperator> linearize_lower(const ConservedField& reference,
                                                         const ConservedField* q2,
                                                         LinearOperatorKind kind) const = 0;
};

// Navier-Stokes subdomains sharing a horizontal interface (or one domain).
class NavierStokesSystem : public CoupledSystem {
 public:
  explicit NavierStokesSystem(DomainSpec lower, std::optional<DomainSpec> upper = std::nullopt);

  bool has_upper() const override { return upper_.has_value(); }
  ConservedField rhs_lower(const ConservedField& q1, const ConservedField* q2) const override;
  ConservedField rhs_upper(const ConservedField& q1, const ConservedField& q2) const override;
  std::pair<ConservedField, ConservedField> rhs_both(const ConservedField& q1,
                                                     const ConservedField& q2) const override;
  std::unique_ptr<StageOperator> linearize_lower(const ConservedField& reference,
                                                 const ConservedField* q2,
                                                 LinearOperatorKind kind) const override;

  const DomainSpec& lower() const { return lower_; }
  const std::optional<DomainSpec>& upper() const { return upper_; }

 private:
  DomainSpec lower_;
  std::optional<DomainSpec> upper_;
};

struct StepStats {
  int stage_solves = 0;
  int krylov_iterations = 0;
  int max_krylov_iterations = 0;
  int newton_iterations = 0;
};

// Stage residuals kept for dense output: R_i = N_i + L_i of the lower domain.
struct LowerStep {
  ConservedField q_new;
  std::vector<ConservedField> stage_rhs;
};

// One IMEX step of the lower subdomain with the upper state frozen at q2.
LowerStep step_lower(const ConservedField& q1, const ConservedField* q2, const CoupledSystem& sys,
                     const CouplingConfig& cfg, const IMEXTableau& tab, double dt,
                     StepStats* stats = nullptr);

// Q1*(t_n + theta dt) = q1_n + dt sum_i B*_i(theta) R_i.
ConservedField dense_output(const ConservedField& q1n, const std::vector<ConservedField>& stage_rhs,
                            const IMEXTableau& tab, double dt, double theta);

// Monolithic step: both subdomains advance through the same stages with the
// interface evaluated from the current stage values.
CoupledState step_tight(const CoupledState& s, const CoupledSystem& sys, const CouplingConfig& cfg,
                        const IMEXTableau& tab, StepStats* stats = nullptr);

// Lower domain: one step of cfg.dt with the interface frozen at q2_n. Upper
// domain: cfg.substeps explicit steps using the lower state q1_n
// (Concurrent) or the dense-output interpolant (Sequential).
CoupledState step_loose(const CoupledState& s, const CoupledSystem& sys, const CouplingConfig& cfg,
                        const IMEXTableau& tab, StepStats* stats = nullptr);

// Explicit Runge-Kutta on the coupled system with the explicit tableau only.
CoupledState step_rk(const CoupledState& s, const CoupledSystem& sys, const IMEXTableau& tab,
                     double dt);

CoupledState step(const CoupledState& s, const CoupledSystem& sys, const CouplingConfig& cfg,
                  const IMEXTableau& tab, StepStats* stats = nullptr);

struct DiagnosticsRow {
  long step = 0;
  double time = 0.0;
  double mass1 = 0.0;
  double mass2 = 0.0;
  double mass_loss = 0.0;    // |M(t) - M(0)| / M(0), both domains
  double energy_loss = 0.0;  // (E(0) - E(t)) / E(0), both domains
  double courant1 = 0.0;
  double courant2 = 0.0;
};

struct RunOptions {
  double t_end = 0.0;
  long diagnostics_every = 1;  // 0 disables the series
  long snapshot_every = 0;     // 0 keeps the final state only
  std::function<void(const CoupledState&, long)> on_step;  // after every step
};

struct RunResult {
  CoupledState final_state;
  std::vector<DiagnosticsRow> diagnostics;
  std::vector<CoupledState> snapshots;
  long steps = 0;
  StepStats stats;
};

// Raised when a step fails; carries the last state that completed.
struct RunFailure : SolverError {
  RunFailure(const std::string& what, CoupledState last)
      : SolverError(what), last_valid(std::move(last)) {}
  CoupledState last_valid;
};

// Advances to t_end; the last step is shortened to land on t_end.
RunResult run(const CoupledState& initial, const CoupledSystem& sys, const CouplingConfig& cfg,
              const RunOptions& options);

}  // namespace imexcouple
