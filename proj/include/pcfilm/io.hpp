#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcfilm/geometry.hpp"
#include "pcfilm/krylov.hpp"
#include "pcfilm/simulation.hpp"

// CSV writers. Every file starts with one comment line
//   # pcfilm <mode> workers=<k> seed=<s>
// followed by a header row. Doubles use the shortest representation that
// round-trips, so files are stable across runs.

namespace pcfilm::io {

std::string format(double value);

std::string preamble(const std::string& mode, int workers, std::uint64_t seed);

/// i,j,theta,y,pressure
void write_pressure(std::ostream& os, const FilmMesh& mesh, std::span<const double> p);

/// iteration,relative_residual
void write_residuals(std::ostream& os, std::span<const double> history);

/// step,t,phi,coupling_length,inlet_pressure,e1..e4,edot1..edot4,residual,force_scale,converged,
/// picard_iterations,backtracks,pcg_iterations,pcg_block_iterations,min_thickness,
/// oil_F1..4,external_F1..4,inertial_F1..4,total_F1..4
void write_trace(std::ostream& os, const SimulationTrace& trace);

/// t,phi,period,part,F_x,F_y,F_z,M_x,M_y,M_z,F_circ,F1,F2,F3,F4 with part in {pressure, shear}
void write_forces(std::ostream& os, const SimulationTrace& trace, double period);

/// step,t,phi,coupling_length then i,j,theta,y,pressure rows
void write_snapshot(std::ostream& os, const PressureSnapshot& snap);

std::string snapshot_name(const PressureSnapshot& snap);

/// Lines to skip before the data rows: leading comment lines plus the header.
std::size_t data_offset(const std::string& csv);

/// gnuplot scripts reading the CSVs above; `skip` is data_offset() of the file.
std::string plot_eccentricity(std::size_t skip);
std::string plot_forces(std::size_t skip);
std::string plot_pressure_map(const std::string& csv_name, std::size_t skip);
std::string plot_residuals(std::size_t skip);

/// Files staged in memory and written together, so a failed run leaves no
/// partial output behind.
class OutputBundle {
 public:
  void add(std::string name, std::string content);
  /// Creates `dir` if needed and writes every staged file.
  void commit(const std::string& dir) const;
  const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

}  // namespace pcfilm::io
