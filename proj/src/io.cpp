#include "pcfilm/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pcfilm/error.hpp"

namespace pcfilm::io {

std::string format(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string preamble(const std::string& mode, int workers, std::uint64_t seed) {
  return "# pcfilm " + mode + " workers=" + std::to_string(workers) + " seed=" + std::to_string(seed) + "\n";
}

void write_pressure(std::ostream& os, const FilmMesh& mesh, std::span<const double> p) {
  if (p.size() != mesh.size()) throw Error(ErrorKind::DimensionMismatch, "pressure field does not match the mesh");
  os << "i,j,theta,y,pressure\n";
  for (std::size_t j = 0; j < mesh.n_y; ++j) {
    for (std::size_t i = 0; i < mesh.n_theta; ++i) {
      os << i << ',' << j << ',' << format(mesh.theta(i)) << ',' << format(mesh.y(j)) << ','
         << format(p[mesh.index(i, j)]) << '\n';
    }
  }
}

void write_residuals(std::ostream& os, std::span<const double> history) {
  os << "iteration,relative_residual\n";
  for (std::size_t k = 0; k < history.size(); ++k) os << k << ',' << format(history[k]) << '\n';
}

namespace {

void put4(std::ostream& os, const Vec4& v) {
  for (double x : v) os << ',' << format(x);
}

}  // namespace

void write_trace(std::ostream& os, const SimulationTrace& trace) {
  os << "step,t,phi,coupling_length,inlet_pressure,e1,e2,e3,e4,edot1,edot2,edot3,edot4,residual,force_scale,"
        "converged,picard_iterations,backtracks,pcg_iterations,pcg_block_iterations,min_thickness,"
        "oil_F1,oil_F2,oil_F3,oil_F4,external_F1,external_F2,external_F3,external_F4,"
        "inertial_F1,inertial_F2,inertial_F3,inertial_F4,total_F1,total_F2,total_F3,total_F4\n";
  for (const StepRecord& r : trace.steps) {
    os << r.step << ',' << format(r.t) << ',' << format(r.shaft_angle) << ',' << format(r.coupling_length) << ','
       << format(r.inlet_pressure);
    put4(os, r.e);
    put4(os, r.edot);
    os << ',' << format(r.residual) << ',' << format(r.force_scale) << ',' << (r.converged ? 1 : 0) << ','
       << r.picard_iterations << ',' << r.backtracks << ',' << r.pcg_iterations << ',' << r.pcg_block_iterations
       << ',' << format(r.min_thickness);
    put4(os, r.oil.f);
    put4(os, r.external.f);
    put4(os, r.inertial.f);
    put4(os, r.total.f);
    os << '\n';
  }
}

void write_forces(std::ostream& os, const SimulationTrace& trace, double period) {
  os << "t,phi,period,part,F_x,F_y,F_z,M_x,M_y,M_z,F_circ,F1,F2,F3,F4\n";
  for (const StepRecord& r : trace.steps) {
    // step k ends at t = k dt, so the step closing a period still belongs to it
    const auto index = static_cast<std::size_t>(std::ceil(r.t / period - 1.0e-9)) - 1;
    const std::pair<const char*, const WrenchPart*> parts[2] = {{"pressure", &r.wrench.pressure},
                                                                {"shear", &r.wrench.shear}};
    for (const auto& [name, w] : parts) {
      const GeneralForce g = general_oil_force(*w, r.coupling_length);
      os << format(r.t) << ',' << format(r.shaft_angle) << ',' << index << ',' << name;
      for (double v : w->force) os << ',' << format(v);
      for (double v : w->moment) os << ',' << format(v);
      os << ',' << format(w->circumferential);
      put4(os, g.f);
      os << '\n';
    }
  }
}

void write_snapshot(std::ostream& os, const PressureSnapshot& snap) {
  os << "# step=" << snap.step << " t=" << format(snap.t) << " phi=" << format(snap.shaft_angle)
     << " coupling_length=" << format(snap.coupling_length) << '\n';
  const FilmMesh mesh(snap.n_theta, snap.n_y, snap.coupling_length, 1.0);
  os << "i,j,theta,y,pressure\n";
  for (std::size_t j = 0; j < snap.n_y; ++j) {
    for (std::size_t i = 0; i < snap.n_theta; ++i) {
      os << i << ',' << j << ',' << format(mesh.theta(i)) << ',' << format(mesh.y(j)) << ','
         << format(snap.pressure[mesh.index(i, j)]) << '\n';
    }
  }
}

std::string snapshot_name(const PressureSnapshot& snap) {
  std::ostringstream os;
  os << "snapshot_" << snap.step << ".csv";
  return os.str();
}

std::size_t data_offset(const std::string& csv) {
  std::size_t lines = 0;
  std::size_t pos = 0;
  while (pos < csv.size() && csv[pos] == '#') {
    ++lines;
    pos = csv.find('\n', pos);
    if (pos == std::string::npos) return lines;
    ++pos;
  }
  return lines + 1;
}

namespace {

std::string skip_clause(std::size_t skip) { return " skip " + std::to_string(skip); }

}  // namespace

std::string plot_eccentricity(std::size_t skip) {
  return "set datafile separator ','\n"
         "set xlabel 'shaft angle [deg]'\n"
         "set ylabel 'eccentricity [um]'\n"
         "plot for [c=6:9] 'trace.csv'" + skip_clause(skip) +
         " using ($3*180/pi):(column(c)*1e6) with lines title sprintf('e%d', c-5)\n";
}

std::string plot_forces(std::size_t skip) {
  const std::string sk = skip_clause(skip);
  return "set datafile separator ','\n"
         "set xlabel 'shaft angle [deg]'\n"
         "set ylabel 'force [N]'\n"
         "set multiplot layout 2,1\n"
         "plot 'forces.csv'" + sk + " using ($2*180/pi):(strcol(4) eq 'pressure' ? $5 : 1/0) with lines title 'pressure F_x', \\\n"
         "     ''" + sk + " using ($2*180/pi):(strcol(4) eq 'pressure' ? $6 : 1/0) with lines title 'pressure F_y'\n"
         "plot 'forces.csv'" + sk + " using ($2*180/pi):(strcol(4) eq 'shear' ? $7 : 1/0) with lines title 'shear F_z', \\\n"
         "     ''" + sk + " using ($2*180/pi):(strcol(4) eq 'shear' ? $11 : 1/0) with lines title 'shear F_circ'\n"
         "unset multiplot\n";
}

std::string plot_pressure_map(const std::string& csv_name, std::size_t skip) {
  return "set datafile separator ','\n"
         "set view map\n"
         "set xlabel 'theta [rad]'\n"
         "set ylabel 'y [m]'\n"
         "set cblabel 'p [Pa]'\n"
         "splot '" + csv_name + "'" + skip_clause(skip) + " using 3:4:5 with points pointtype 5 pointsize 0.3 palette notitle\n";
}

std::string plot_residuals(std::size_t skip) {
  return "set datafile separator ','\n"
         "set logscale y\n"
         "set xlabel 'iteration'\n"
         "set ylabel '||r|| / ||S||'\n"
         "plot 'residuals.csv'" + skip_clause(skip) + " using 1:2 with lines notitle\n";
}

void OutputBundle::add(std::string name, std::string content) { files_.emplace_back(std::move(name), std::move(content)); }

void OutputBundle::commit(const std::string& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create output directory '" + dir + "': " + ec.message());
  for (const auto& [name, content] : files_) {
    const std::filesystem::path path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  }
}

}  // namespace pcfilm::io
