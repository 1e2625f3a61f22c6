#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "imexcouple/config.hpp"
#include "imexcouple/error.hpp"
#include "imexcouple/output.hpp"
#include "imexcouple/study.hpp"
#include "imexcouple/tableau.hpp"

using namespace imexcouple;

namespace {

constexpr int kConfigFailure = 2;
constexpr int kSolverFailure = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string snapshot_name(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%07ld", step);
  return buf;
}

int cmd_run(const std::string& path, const std::vector<std::string>& sets) {
  const std::string text = slurp(path);
  const RunConfig cfg = parse_config_text(text, sets);
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output_dir);
  write_text((dir / "config.ini").string(), text);
  write_text((dir / "config.resolved.ini").string(), echo_config(cfg));

  std::cout << cfg.case_spec.name << "  " << cfg.coupling.label() << "  dt=" << cfg.coupling.dt
            << "  t_end=" << cfg.t_end << "\n";
  const auto t0 = std::chrono::steady_clock::now();
  const auto on_step = [&](const CoupledState& s, long n) {
    if (cfg.snapshot_every > 0 && n % cfg.snapshot_every == 0) {
      write_fields(dir.string(), snapshot_name(n), s);
    }
  };
  {
    NavierStokesSystem sys = case_system(cfg.case_spec, cfg.grid, cfg.stencil);
    write_fields(dir.string(), snapshot_name(0), init_case(cfg.case_spec, sys));
  }
  std::optional<CaseRun> run;
  try {
    run.emplace(run_case(cfg, on_step));
  } catch (const RunFailure& f) {
    write_fields(dir.string(), "last_valid", f.last_valid);
    throw;
  }
  const CaseRun& r = *run;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_fields(dir.string(), "final", r.result.final_state);
  if (cfg.diagnostics_every > 0) {
    write_text((dir / "diagnostics.csv").string(), diagnostics_csv(r.result.diagnostics));
  }
  std::cout << "steps " << r.result.steps << ", stage solves " << r.result.stats.stage_solves
            << ", krylov iterations " << r.result.stats.krylov_iterations << ", " << secs << " s\n";
  if (!r.result.diagnostics.empty()) {
    const DiagnosticsRow& d = r.result.diagnostics.back();
    std::printf("t=%.6g  mass loss %.3e  energy loss %.3e  Cr=(%.3g, %.3g)\n", d.time, d.mass_loss,
                d.energy_loss, d.courant1, d.courant2);
  }
  std::cout << "output in " << dir.string() << "\n";
  return 0;
}

int cmd_converge(const std::string& path, const std::vector<std::string>& sets, int levels,
                 const std::string& axis, const StudyOptions& opts) {
  const RunConfig cfg = parse_config(path, sets);
  if (axis != "space" && axis != "time") throw ConfigError("--axis must be space or time");
  const StudyAxis a = axis == "space" ? StudyAxis::Space : StudyAxis::Time;
  std::cout << cfg.case_spec.name << "  " << cfg.coupling.label() << "  " << axis << " study, " << levels
            << " levels\n";
  const StudyResult res = convergence_study(cfg, levels, a, opts);
  std::cout << convergence_text(res.rows, res.size_label);
  for (std::size_t k = 0; k < res.seconds.size(); ++k) {
    std::printf("level %zu: %.2f s\n", k, res.seconds[k]);
  }
  const std::filesystem::path dir(cfg.output_dir);
  write_text((dir / "config.resolved.ini").string(), echo_config(cfg));
  write_text((dir / "convergence.csv").string(), convergence_csv(res.rows, res.size_label));
  return 0;
}

int cmd_validate() {
  bool all = true;
  for (const std::string& name : tableau_names()) {
    const IMEXTableau& t = tableau(name);
    int bad = 0;
    double worst = 0.0;
    const auto checks = validate_tableau(t);
    for (const TableauCheck& c : checks) {
      if (!c.ok) {
        ++bad;
        std::printf("  %s: %s residual %.3e\n", name.c_str(), c.condition.c_str(), c.residual);
      }
      worst = std::max(worst, c.residual);
    }
    std::printf("%-5s %s  %zu conditions, max residual %.2e\n", name.c_str(), bad ? "FAIL" : "ok",
                checks.size(), worst);
    all = all && bad == 0;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partitioned IMEX solver for coupled compressible flow"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  auto* run = app.add_subcommand("run", "integrate one configuration");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--set", sets, "override, section.key=value");

  int levels = 4;
  std::string axis = "space";
  StudyOptions study;
  auto* conv = app.add_subcommand("converge", "convergence study");
  conv->add_option("config", config_path, "config file")->required();
  conv->add_option("--levels", levels, "number of levels")->check(CLI::PositiveNumber);
  conv->add_option("--axis", axis, "space or time")->check(CLI::IsMember({"space", "time"}));
  conv->add_option("--set", sets, "override, section.key=value");
  conv->add_option("--reference-factor", study.reference_factor, "space: reference refinement of the finest level");
  conv->add_option("--reference-dt", study.reference_dt, "time: reference step");
  conv->add_option("--reference-scheme", study.reference_scheme, "time: reference scheme");

  auto* val = app.add_subcommand("validate-tableaus", "check order conditions of all tableaus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigFailure;
  }

  try {
    if (*run) return cmd_run(config_path, sets);
    if (*conv) return cmd_converge(config_path, sets, levels, axis, study);
    if (*val) return cmd_validate();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const TableauError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const StateError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
