#include "imexcouple/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "imexcouple/error.hpp"
#include "imexcouple/tableau.hpp"

namespace imexcouple {

namespace {

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;  // 0 for command-line overrides
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string where(const Entry& e) {
  return e.line > 0 ? "line " + std::to_string(e.line) : "override";
}

std::string full_key(const Entry& e) { return e.section + "." + e.key; }

[[noreturn]] void bad_value(const Entry& e, const std::string& why) {
  throw ConfigError(where(e) + ": " + full_key(e) + ": " + why, e.line);
}

double to_double(const Entry& e) {
  double v = 0.0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  auto [p, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || p != end) bad_value(e, "expected a number, got '" + e.value + "'");
  return v;
}

long to_long(const Entry& e) {
  long v = 0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  auto [p, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || p != end) bad_value(e, "expected an integer, got '" + e.value + "'");
  return v;
}

const std::vector<std::string>& sections() {
  static const std::vector<std::string> s{"case", "grid", "scheme", "coupling", "time", "output"};
  return s;
}

std::vector<Entry> tokenize(const std::string& text) {
  std::vector<Entry> out;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    const auto c = raw.find_first_of("#;");
    const std::string line = trim(c == std::string::npos ? raw : raw.substr(0, c));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(n) + ": unterminated section header", n);
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (std::find(sections().begin(), sections().end(), section) == sections().end()) {
        throw ConfigError("line " + std::to_string(n) + ": unknown section [" + section + "]", n);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(n) + ": expected 'key = value'", n);
    }
    if (section.empty()) throw ConfigError("line " + std::to_string(n) + ": key outside a section", n);
    Entry e{section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), n};
    if (e.key.empty()) throw ConfigError("line " + std::to_string(n) + ": empty key", n);
    for (const Entry& prev : out) {
      if (prev.section == e.section && prev.key == e.key) {
        throw ConfigError("line " + std::to_string(n) + ": duplicate key " + full_key(e) +
                              " (first set on line " + std::to_string(prev.line) + ")",
                          n);
      }
    }
    out.push_back(e);
  }
  return out;
}

Entry parse_override(const std::string& s) {
  const auto eq = s.find('=');
  const std::string lhs = eq == std::string::npos ? "" : trim(s.substr(0, eq));
  const auto dot = lhs.find('.');
  if (eq == std::string::npos || dot == std::string::npos) {
    throw ConfigError("override '" + s + "': expected section.key=value");
  }
  Entry e{lower(trim(lhs.substr(0, dot))), trim(lhs.substr(dot + 1)), trim(s.substr(eq + 1)), 0};
  if (std::find(sections().begin(), sections().end(), e.section) == sections().end()) {
    throw ConfigError("override '" + s + "': unknown section [" + e.section + "]");
  }
  return e;
}

void apply(RunConfig& c, const Entry& e) {
  const std::string& s = e.section;
  const std::string& k = e.key;
  try {
    if (s == "case") {
      if (k == "name") return;
      auto it = c.case_spec.params.find(k);
      if (it == c.case_spec.params.end()) {
        throw ConfigError(where(e) + ": unknown key " + full_key(e) + " for case '" + c.case_spec.name + "'",
                          e.line);
      }
      it->second = to_double(e);
      return;
    }
    if (s == "grid") {
      if (k == "nx") c.grid.nx = static_cast<int>(to_long(e));
      else if (k == "nz1") c.grid.nz1 = static_cast<int>(to_long(e));
      else if (k == "nz2") c.grid.nz2 = static_cast<int>(to_long(e));
      else if (k == "stencil") c.stencil = parse_stencil(e.value);
      else throw ConfigError(where(e) + ": unknown key " + full_key(e), e.line);
      return;
    }
    if (s == "scheme") {
      if (k == "name") c.coupling.scheme = lower(e.value);
      else if (k == "operator") c.coupling.op = parse_operator(e.value);
      else if (k == "stiff") {
        const std::string v = lower(e.value);
        if (v == "linearized") c.coupling.stiff = StiffTreatment::Linearized;
        else if (v == "nonlinear") c.coupling.stiff = StiffTreatment::Nonlinear;
        else bad_value(e, "expected linearized or nonlinear");
      } else if (k == "reference") {
        const std::string v = lower(e.value);
        if (v == "stage") c.coupling.reference = ReferencePolicy::Stage;
        else if (v == "step") c.coupling.reference = ReferencePolicy::Step;
        else bad_value(e, "expected stage or step");
      } else if (k == "krylov_tolerance") c.coupling.krylov.tolerance = to_double(e);
      else if (k == "krylov_restart") c.coupling.krylov.restart = static_cast<int>(to_long(e));
      else if (k == "krylov_max_iterations") c.coupling.krylov.max_iterations = static_cast<int>(to_long(e));
      else if (k == "newton_iterations") c.coupling.newton_iterations = static_cast<int>(to_long(e));
      else if (k == "newton_tolerance") c.coupling.newton_tolerance = to_double(e);
      else throw ConfigError(where(e) + ": unknown key " + full_key(e), e.line);
      return;
    }
    if (s == "coupling") {
      if (k == "mode") c.coupling.mode = parse_mode(e.value);
      else if (k == "substeps") c.coupling.substeps = static_cast<int>(to_long(e));
      else throw ConfigError(where(e) + ": unknown key " + full_key(e), e.line);
      return;
    }
    if (s == "time") {
      if (k == "dt") c.coupling.dt = to_double(e);
      else if (k == "t_end") c.t_end = to_double(e);
      else throw ConfigError(where(e) + ": unknown key " + full_key(e), e.line);
      return;
    }
    if (s == "output") {
      if (k == "directory") c.output_dir = e.value;
      else if (k == "diagnostics_every") c.diagnostics_every = to_long(e);
      else if (k == "snapshot_every") c.snapshot_every = to_long(e);
      else throw ConfigError(where(e) + ": unknown key " + full_key(e), e.line);
      return;
    }
  } catch (const ConfigError& ex) {
    if (std::string(ex.what()).rfind(where(e), 0) == 0) throw;
    bad_value(e, ex.what());
  } catch (const std::exception& ex) {
    bad_value(e, ex.what());
  }
  throw ConfigError(where(e) + ": unknown section [" + s + "]", e.line);
}

void validate(const RunConfig& c) {
  const auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError(key + ": " + why);
  };
  try {
    (void)tableau(c.coupling.scheme);
  } catch (const TableauError& ex) {
    fail("scheme.name", ex.what());
  }
  const bool coupled = case_is_coupled(c.case_spec.name);
  if (c.grid.nx < 1) fail("grid.nx", "must be positive");
  if (c.grid.nz1 < 1) fail("grid.nz1", "must be positive");
  if (coupled && c.grid.nz2 < 1) fail("grid.nz2", "must be positive for a two-domain case");
  if (!(c.coupling.dt > 0.0)) fail("time.dt", "must be positive");
  if (!(c.t_end >= 0.0)) fail("time.t_end", "must be non-negative");
  if (c.coupling.substeps < 1) fail("coupling.substeps", "must be at least 1");
  if (!coupled && c.coupling.mode != CouplingMode::Tight) {
    fail("coupling.mode", "loose coupling needs a two-domain case");
  }
  if (!(c.coupling.krylov.tolerance > 0.0)) fail("scheme.krylov_tolerance", "must be positive");
  if (c.coupling.krylov.restart < 1) fail("scheme.krylov_restart", "must be positive");
  if (c.coupling.krylov.max_iterations < 1) fail("scheme.krylov_max_iterations", "must be positive");
  if (c.coupling.newton_iterations < 1) fail("scheme.newton_iterations", "must be positive");
  if (c.diagnostics_every < 0) fail("output.diagnostics_every", "must be non-negative");
  if (c.snapshot_every < 0) fail("output.snapshot_every", "must be non-negative");
  if (c.case_spec.get("gamma") <= 1.0) fail("case.gamma", "must exceed 1");
  if (c.case_spec.get("prandtl") <= 0.0) fail("case.prandtl", "must be positive");
  if (c.case_spec.get("mu") < 0.0) fail("case.mu", "must be non-negative");
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

bool RunConfig::operator==(const RunConfig&) const = default;

const char* to_string(GradientStencil s) {
  return s == GradientStencil::FaceNeighbors ? "face" : "full";
}

GradientStencil parse_stencil(const std::string& s) {
  const std::string v = lower(s);
  if (v == "full") return GradientStencil::FullNeighborhood;
  if (v == "face") return GradientStencil::FaceNeighbors;
  throw ConfigError("unknown stencil '" + s + "' (expected full or face)");
}

LinearOperatorKind parse_operator(const std::string& s) {
  const std::string v = lower(s);
  if (v == "l") return LinearOperatorKind::Full;
  if (v == "li") return LinearOperatorKind::Inviscid;
  if (v == "lz") return LinearOperatorKind::Vertical;
  throw ConfigError("unknown operator '" + s + "' (expected L, LI or Lz)");
}

CouplingMode parse_mode(const std::string& s) {
  const std::string v = lower(s);
  if (v == "tc" || v == "tight") return CouplingMode::Tight;
  if (v == "cc" || v == "concurrent") return CouplingMode::Concurrent;
  if (v == "sc" || v == "sequential") return CouplingMode::Sequential;
  throw ConfigError("unknown coupling mode '" + s + "' (expected TC, CC or SC)");
}

RunConfig default_run_config(const std::string& case_name) {
  RunConfig c;
  c.case_spec = case_defaults(case_name);
  c.output_dir = "out/" + case_name;
  CouplingConfig& k = c.coupling;
  if (case_name == "density-wave") {
    c.grid = {20, 20, 0};
    k.scheme = "rk4";
    k.dt = 6.25e-5;
    c.t_end = 0.1;
  } else if (case_name == "taylor-green") {
    c.grid = {20, 20, 0};
    k.scheme = "rk4";
    k.dt = 1e-6;
    c.t_end = 1e-3;
  } else if (case_name == "two-vortices") {
    c.grid = {320, 80, 80};
    k.scheme = "rk4";
    k.dt = 0.025;
    c.t_end = 1000.0;
    c.diagnostics_every = 40;
  } else if (case_name == "wind-driven") {
    c.grid = {100, 500, 80};
    k.scheme = "ark4";
    k.op = LinearOperatorKind::Vertical;
    k.dt = 0.05;
    c.t_end = 500.0;
    c.diagnostics_every = 20;
  } else if (case_name == "khi") {
    c.grid = {100, 400, 80};
    k.scheme = "ark4";
    k.op = LinearOperatorKind::Vertical;
    k.krylov.tolerance = 1e-2;
    k.dt = 0.05;
    c.t_end = 500.0;
    c.diagnostics_every = 20;
  }
  return c;
}

RunConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides) {
  std::vector<Entry> entries = tokenize(text);
  for (const std::string& o : overrides) {
    Entry e = parse_override(o);
    auto it = std::find_if(entries.begin(), entries.end(), [&](const Entry& x) {
      return x.section == e.section && x.key == e.key;
    });
    if (it != entries.end()) *it = e;
    else entries.push_back(e);
  }
  auto name = std::find_if(entries.begin(), entries.end(),
                           [](const Entry& e) { return e.section == "case" && e.key == "name"; });
  if (name == entries.end()) throw ConfigError("case.name is required");
  RunConfig c;
  try {
    c = default_run_config(lower(name->value));
  } catch (const ConfigError& ex) {
    throw ConfigError(where(*name) + ": case.name: " + ex.what(), name->line);
  }
  for (const Entry& e : entries) apply(c, e);
  validate(c);
  return c;
}

RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), overrides);
}

std::string echo_config(const RunConfig& c) {
  std::ostringstream os;
  const CouplingConfig& k = c.coupling;
  os << "[case]\n";
  os << "name = " << c.case_spec.name << "\n";
  for (const auto& [key, v] : c.case_spec.params) os << key << " = " << num(v) << "\n";
  os << "\n[grid]\n";
  os << "nx = " << c.grid.nx << "\n";
  os << "nz1 = " << c.grid.nz1 << "\n";
  os << "nz2 = " << c.grid.nz2 << "\n";
  os << "stencil = " << to_string(c.stencil) << "\n";
  os << "\n[scheme]\n";
  os << "name = " << k.scheme << "\n";
  os << "operator = " << to_string(k.op) << "\n";
  os << "stiff = " << (k.stiff == StiffTreatment::Linearized ? "linearized" : "nonlinear") << "\n";
  os << "reference = " << (k.reference == ReferencePolicy::Stage ? "stage" : "step") << "\n";
  os << "krylov_tolerance = " << num(k.krylov.tolerance) << "\n";
  os << "krylov_restart = " << k.krylov.restart << "\n";
  os << "krylov_max_iterations = " << k.krylov.max_iterations << "\n";
  os << "newton_iterations = " << k.newton_iterations << "\n";
  os << "newton_tolerance = " << num(k.newton_tolerance) << "\n";
  os << "\n[coupling]\n";
  os << "mode = " << to_string(k.mode) << "\n";
  os << "substeps = " << k.substeps << "\n";
  os << "\n[time]\n";
  os << "dt = " << num(k.dt) << "\n";
  os << "t_end = " << num(c.t_end) << "\n";
  os << "\n[output]\n";
  os << "directory = " << c.output_dir << "\n";
  os << "diagnostics_every = " << c.diagnostics_every << "\n";
  os << "snapshot_every = " << c.snapshot_every << "\n";
  return os.str();
}

}  // namespace imexcouple
