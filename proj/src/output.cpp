#include "imexcouple/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace imexcouple {

namespace {

void put(std::string& out, const char* fmt, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, fmt, v);
  out += buf;
}

void order_cell(std::string& out, const std::optional<double>& o, const char* fmt) {
  if (o) put(out, fmt, *o);
  else out += "-";
}

}  // namespace

std::string field_csv(const ConservedField& q) {
  std::string out = "x,z,rho,u,w,p,T\n";
  const auto& g = q.grid();
  for (int j = 1; j <= g.nz; ++j) {
    for (int i = 1; i <= g.nx; ++i) {
      const auto [x, z] = cell_center(g, i, j);
      const PrimitiveCell p = primitive_from_conserved(q(i, j), q.params());
      const double v[7] = {x, z, p.rho, p.u, p.w, p.p, p.T};
      for (int c = 0; c < 7; ++c) {
        if (c) out += ',';
        put(out, "%.16e", v[c]);
      }
      out += '\n';
    }
  }
  return out;
}

std::string diagnostics_csv(const std::vector<DiagnosticsRow>& rows) {
  std::string out = "step,time,mass1,mass2,mass_loss,energy_loss,cr1,cr2\n";
  for (const DiagnosticsRow& r : rows) {
    out += std::to_string(r.step);
    for (double v : {r.time, r.mass1, r.mass2, r.mass_loss, r.energy_loss, r.courant1, r.courant2}) {
      out += ',';
      put(out, "%.16e", v);
    }
    out += '\n';
  }
  return out;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows, const std::string& size_label) {
  std::string out = size_label + ",err_rho,order_rho,err_mom,order_mom,err_energy,order_energy\n";
  for (const ConvergenceRow& r : rows) {
    put(out, "%.16e", r.size);
    out += ',';
    put(out, "%.16e", r.error.rho);
    out += ',';
    order_cell(out, r.order_rho, "%.6f");
    out += ',';
    put(out, "%.16e", r.error.momentum);
    out += ',';
    order_cell(out, r.order_momentum, "%.6f");
    out += ',';
    put(out, "%.16e", r.error.energy);
    out += ',';
    order_cell(out, r.order_energy, "%.6f");
    out += '\n';
  }
  return out;
}

std::string convergence_text(const std::vector<ConvergenceRow>& rows, const std::string& size_label) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %-11s %-7s %-11s %-7s %-11s %-7s\n", size_label.c_str(), "rho",
                "order", "rho u", "order", "rho E", "order");
  os << buf;
  const auto ord = [](const std::optional<double>& o) {
    char b[16];
    if (o) std::snprintf(b, sizeof b, "%.3f", *o);
    else std::snprintf(b, sizeof b, "-");
    return std::string(b);
  };
  for (const ConvergenceRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%-12.6g %-11.4e %-7s %-11.4e %-7s %-11.4e %-7s\n", r.size, r.error.rho,
                  ord(r.order_rho).c_str(), r.error.momentum, ord(r.order_momentum).c_str(), r.error.energy,
                  ord(r.order_energy).c_str());
    os << buf;
  }
  return os.str();
}

void write_text(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_fields(const std::string& dir, const std::string& prefix, const CoupledState& s) {
  const std::filesystem::path d(dir);
  write_text((d / (prefix + "_d1.csv")).string(), field_csv(s.q1));
  if (s.q2) write_text((d / (prefix + "_d2.csv")).string(), field_csv(*s.q2));
}

}  // namespace imexcouple
