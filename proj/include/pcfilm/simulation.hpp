#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "pcfilm/config.hpp"
#include "pcfilm/dynamics.hpp"
#include "pcfilm/joint.hpp"
#include "pcfilm/loads.hpp"

namespace pcfilm {

struct StepRecord {
  std::size_t step = 0;
  double t = 0.0;
  double shaft_angle = 0.0;
  double coupling_length = 0.0;
  double inlet_pressure = 0.0;
  Vec4 e{};
  Vec4 edot{};
  double residual = 0.0;        // ||F_total|| at the accepted state
  double force_scale = 0.0;     // max(||F_external||, 1 N)
  bool converged = false;
  bool monotone = true;         // ||F|| decreased on every Picard update
  std::size_t picard_iterations = 0;
  std::size_t backtracks = 0;
  std::size_t pcg_iterations = 0;        // joint (global) iterations summed over the step
  std::size_t pcg_block_iterations = 0;  // per-block iterations summed over the step
  double min_thickness = 0.0;
  WrenchBreakdown wrench;                // base condition
  GeneralForce oil;
  GeneralForce external;
  GeneralForce inertial;
  GeneralForce total;
};

struct PressureSnapshot {
  std::size_t step = 0;
  double t = 0.0;
  double shaft_angle = 0.0;
  double coupling_length = 0.0;
  std::size_t n_theta = 0;
  std::size_t n_y = 0;
  std::vector<double> pressure;
};

struct SimulationTrace {
  std::vector<StepRecord> steps;
  std::vector<PressureSnapshot> snapshots;
};

/// Film force model for one time instant: joint assembly and solve of the
/// nine conditions, wrench integration, and the external and inertial loads.
class FilmForceModel {
 public:
  explicit FilmForceModel(const RunConfig& config);

  /// Fixes the time instant (mesh length, inlet pressure, loads).
  void prepare(double t);

  ForceSample evaluate(const KinematicState& state);

  /// Smallest smooth-film thickness at `state` over the current mesh.
  double min_thickness(const KinematicState& state) const;

  const FilmMesh& mesh() const { return mesh_; }
  double inlet_pressure() const { return bc_.inlet; }
  const GeneralForce& external() const { return external_; }
  const GeneralForce& inertial() const { return inertial_; }
  const WrenchBreakdown& last_wrench() const { return wrench_; }
  const GeneralForce& last_oil() const { return oil_; }
  const std::vector<double>& last_pressure() const { return pressure_; }
  double last_min_thickness() const { return last_min_h_; }
  std::size_t pcg_iterations() const { return pcg_iterations_; }
  std::size_t pcg_block_iterations() const { return pcg_block_iterations_; }
  void reset_counters() { pcg_iterations_ = pcg_block_iterations_ = 0; }

 private:
  RunConfig config_;
  FilmMesh mesh_;
  TexturePattern texture_;
  BoundaryCondition bc_;
  double t_ = 0.0;
  double sliding_speed_ = 0.0;
  GeneralForce external_;
  GeneralForce inertial_;
  WrenchBreakdown wrench_;
  GeneralForce oil_;
  std::vector<double> pressure_;
  std::vector<double> warm_;
  double last_min_h_ = 0.0;
  std::size_t pcg_iterations_ = 0;
  std::size_t pcg_block_iterations_ = 0;
};

using StepCallback = std::function<void(const StepRecord&)>;

/// Marches periods*steps_per_period steps of dt = period / steps_per_period
/// from the configured initial state at t = 0. Each step starts from
/// edot = edot_prev, e = e_prev + dt edot and runs the Picard loop.
SimulationTrace time_march(const RunConfig& config, const StepCallback& on_step = {});

}  // namespace pcfilm
