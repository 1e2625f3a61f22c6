#pragma once

#include <functional>
#include <string>
#include <vector>

#include "imexcouple/config.hpp"
#include "imexcouple/output.hpp"

namespace imexcouple {

// System, initial state and run of one configuration. on_step is forwarded to
// run().
struct CaseRun {
  NavierStokesSystem system;
  CoupledState initial;
  RunResult result;
};
CaseRun run_case(const RunConfig& config,
                 std::function<void(const CoupledState&, long)> on_step = nullptr);

enum class StudyAxis { Space, Time };

struct StudyOptions {
  // Space: reference mesh is the finest level refined by this factor, unless
  // the case has an exact solution.
  int reference_factor = 4;
  // Time: reference run on the base grid. A zero step means finest dt / 8.
  double reference_dt = 0.0;
  std::string reference_scheme = "rk4";
};

struct StudyResult {
  std::string size_label;  // "h" or "dt"
  std::vector<ConvergenceRow> rows;
  std::vector<double> seconds;  // wall-clock per level
  double reference_seconds = 0.0;
};

// Level k uses the base mesh refined by 2^k (Space) or dt / 2^k (Time).
StudyResult convergence_study(const RunConfig& base, int levels, StudyAxis axis,
                              const StudyOptions& options = {});

// Orders filled from the errors in place (ratio 2).
void fill_orders(std::vector<ConvergenceRow>& rows, double ratio = 2.0);

}  // namespace imexcouple
