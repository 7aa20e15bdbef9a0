#include "pcfilm/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pcfilm/error.hpp"

namespace pcfilm {

FilmForceModel::FilmForceModel(const RunConfig& config) : config_(config) {}

void FilmForceModel::prepare(double t) {
  t_ = t;
  const ShaftKinematics k = shaft_kinematics(config_.pump, t);
  mesh_ = FilmMesh(config_.mesh.n_theta, config_.mesh.n_y, k.coupling_length, config_.pump.piston_radius);
  texture_ = build_texture_pattern(config_.texture, mesh_);
  bc_.inlet = config_.waveform.at_angle(k.shaft_angle);
  bc_.outlet = config_.pump.outlet_pressure;
  sliding_speed_ = k.sliding_speed;
  external_ = external_force(config_.pump, t, bc_.inlet);
  inertial_ = inertial_force(config_.pump, t);
}

double FilmForceModel::min_thickness(const KinematicState& state) const {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < mesh_.n_y; ++j) {
    for (std::size_t i = 0; i < mesh_.n_theta; ++i) {
      lo = std::min(lo, film_thickness_at(config_.pump, mesh_.coupling_length, state.e, mesh_.theta(i), mesh_.y(j)));
    }
  }
  return lo;
}

ForceSample FilmForceModel::evaluate(const KinematicState& state) {
  KinematicState s = state;
  s.time = t_;
  s.shaft_angle = shaft_kinematics(config_.pump, t_).shaft_angle;
  const JointSystem js = build_joint(mesh_, s, texture_, config_.pump, bc_);

  JointSolveOptions opt;
  opt.preconditioner = config_.solver.preconditioner;
  opt.omega = config_.solver.resolved_omega(config_.texture.kind);
  opt.strategy = config_.solver.strategy;
  opt.tolerance = config_.solver.tolerance;
  opt.max_iter = config_.solver.max_iter;
  if (config_.solver.warm_start && warm_.size() == js.size()) opt.initial_guess = warm_;
  const JointSolution sol = config_.solver.path == SolvePath::Joint ? solve_joint(js, opt) : sequential_solve(js, opt);
  if (config_.solver.path == SolvePath::Joint) {
    pcg_iterations_ += sol.global.iterations;
  } else {
    pcg_iterations_ += sol.total_iterations;
  }
  pcg_block_iterations_ += sol.total_iterations;
  if (config_.solver.warm_start) {
    warm_.resize(js.size());
    for (std::size_t b = 0; b < sol.pressures.size(); ++b) {
      std::copy(sol.pressures[b].begin(), sol.pressures[b].end(),
                warm_.begin() + static_cast<std::ptrdiff_t>(b * js.block_size()));
    }
  }

  ForceSample out;
  const OilWrenchOptions wopt{config_.cavitation_floor};
  for (std::size_t b = 0; b < kJointBlocks; ++b) {
    const WrenchBreakdown w = oil_wrench(mesh_, sol.pressures[b], js.thickness[b].values, sliding_speed_,
                                         config_.pump.oil_viscosity, wopt);
    const GeneralForce oil = general_oil_force(w.total(), mesh_.coupling_length);
    out.total[b] = oil + external_ + inertial_;
    if (b == 0) {
      wrench_ = w;
      oil_ = oil;
    }
  }
  pressure_ = sol.pressures[0];
  last_min_h_ = min_entry(js.thickness[0]).second;
  return out;
}

SimulationTrace time_march(const RunConfig& config, const StepCallback& on_step) {
  config.validate();
  SimulationTrace trace;
  const std::size_t spp = config.dynamics.steps_per_period;
  const std::size_t total = config.dynamics.periods * spp;
  if (total == 0) return trace;
  const double dt = config.pump.period() / static_cast<double>(spp);

  FilmForceModel model(config);
  PicardOptions po;
  po.scheme = config.dynamics.scheme;
  po.eps_dyn = config.dynamics.eps_dyn;
  po.max_picard = config.dynamics.max_picard;
  if (config.dynamics.positivity_backtracking) {
    const double margin = kThicknessGuard + 2.0 * config.pump.fd_step_e;
    po.admissible = [&model, margin](const KinematicState& s) { return model.min_thickness(s) >= margin; };
  }
  const ForceEvaluator evaluate = [&model](const KinematicState& s) { return model.evaluate(s); };

  KinematicState prev = config.initial_state;
  prev.time = 0.0;
  prev.shaft_angle = 0.0;
  const std::size_t every = config.dynamics.snapshot_every_deg;

  for (std::size_t k = 1; k <= total; ++k) {
    const double t = static_cast<double>(k) * dt;
    model.prepare(t);
    model.reset_counters();
    KinematicState guess = prev;
    guess.time = t;
    guess.shaft_angle = shaft_kinematics(config.pump, t).shaft_angle;
    for (int i = 0; i < 4; ++i) guess.e[i] = prev.e[i] + dt * prev.edot[i];

    const double scale = std::max(model.external().norm(), 1.0);
    const PicardOutcome out = equilibrate(guess, dt, scale, config.pump, evaluate, po);
    if (!out.converged && config.dynamics.on_nonconvergence == NonConvergencePolicy::Halt) {
      std::ostringstream os;
      os << "step " << k << " (t = " << t << " s): ||F|| = " << out.residual_history.back() << " after "
         << out.iterations << " Picard iterations";
      throw Error(ErrorKind::NonConvergentStep, os.str());
    }

    StepRecord r;
    r.step = k;
    r.t = t;
    r.shaft_angle = guess.shaft_angle;
    r.coupling_length = model.mesh().coupling_length;
    r.inlet_pressure = model.inlet_pressure();
    r.e = out.state.e;
    r.edot = out.state.edot;
    r.residual = out.residual_history.back();
    r.force_scale = scale;
    r.converged = out.converged;
    for (std::size_t q = 1; q < out.residual_history.size(); ++q) {
      if (!(out.residual_history[q] < out.residual_history[q - 1])) r.monotone = false;
    }
    r.picard_iterations = out.iterations;
    r.backtracks = out.backtracks;
    r.pcg_iterations = model.pcg_iterations();
    r.pcg_block_iterations = model.pcg_block_iterations();
    r.min_thickness = model.last_min_thickness();
    r.wrench = model.last_wrench();
    r.oil = model.last_oil();
    r.external = model.external();
    r.inertial = model.inertial();
    r.total = out.last.total[0];
    trace.steps.push_back(r);
    if (on_step) on_step(r);

    if (every > 0 && (k * 360) / (every * spp) > ((k - 1) * 360) / (every * spp)) {
      PressureSnapshot snap;
      snap.step = k;
      snap.t = t;
      snap.shaft_angle = r.shaft_angle;
      snap.coupling_length = r.coupling_length;
      snap.n_theta = config.mesh.n_theta;
      snap.n_y = config.mesh.n_y;
      snap.pressure = model.last_pressure();
      trace.snapshots.push_back(std::move(snap));
    }
    prev = out.state;
  }
  return trace;
}

}  // namespace pcfilm
