#include "pcfilm/joint.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "block_pcg.hpp"
#include "pcfilm/error.hpp"

namespace pcfilm {

const char* to_string(ConvergenceStrategy strategy) noexcept {
  return strategy == ConvergenceStrategy::Synchronized ? "synchronized" : "asynchronous";
}

ConvergenceStrategy strategy_from_string(const std::string& name) {
  if (name == "synchronized" || name == "sync") return ConvergenceStrategy::Synchronized;
  if (name == "asynchronous" || name == "async") return ConvergenceStrategy::Asynchronous;
  throw Error(ErrorKind::InvalidArgument, "unknown convergence strategy '" + name + "'");
}

KinematicState perturbed_state(const KinematicState& base, std::size_t block, const PumpConfig& config) {
  if (block >= kJointBlocks) throw Error(ErrorKind::InvalidArgument, "joint block index out of range");
  KinematicState s = base;
  if (block >= 1 && block <= 4) s.e[block - 1] += config.fd_step_e;
  if (block >= 5) s.edot[block - 5] += config.fd_step_edot;
  return s;
}

std::vector<double> JointSystem::joint_source() const {
  std::vector<double> s(size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::copy(blocks[b].s.begin(), blocks[b].s.end(), s.begin() + static_cast<std::ptrdiff_t>(b * block_size()));
  }
  return s;
}

void JointSystem::spmv(std::span<const double> x, std::span<double> y) const {
  if (x.size() != size() || y.size() != size()) throw Error(ErrorKind::DimensionMismatch, "joint spmv: vector size");
  const std::size_t n = block_size();
  const auto total = static_cast<std::ptrdiff_t>(size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto g = static_cast<std::size_t>(k);
    const std::size_t b = g / n;
    y[g] = row_product(blocks[b], x.data() + b * n, g % n);
  }
}

JointSystem build_joint(const FilmMesh& mesh, const KinematicState& base, const TexturePattern& texture,
                        const PumpConfig& config, const BoundaryCondition& bc) {
  config.validate();
  mesh.validate();
  bc.validate();
  JointSystem js;
  js.mesh = mesh;
  js.sliding_speed = shaft_kinematics(config, std::max(0.0, base.time)).sliding_speed;
  for (std::size_t b = 0; b < kJointBlocks; ++b) js.states[b] = perturbed_state(base, b, config);

  const std::size_t n = mesh.size();
  js.thickness.assign(kJointBlocks, ScalarField{std::vector<double>(n), Unit::Meter});
  std::vector<ScalarField> rate(kJointBlocks, ScalarField{std::vector<double>(n), Unit::MeterPerSecond});
  const auto total = static_cast<std::ptrdiff_t>(kJointBlocks * n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto g = static_cast<std::size_t>(k);
    const std::size_t b = g / n;
    const std::size_t node = g % n;
    const double theta = mesh.theta(node % mesh.n_theta);
    const double y = mesh.y(node / mesh.n_theta);
    const KinematicState& s = js.states[b];
    js.thickness[b].values[node] =
        film_thickness_at(config, mesh.coupling_length, s.e, theta, y) + texture.depth_at(theta, y);
    rate[b].values[node] = film_thickness_rate_at(config, mesh.coupling_length, s.e, s.edot, theta, y);
  }
  for (std::size_t b = 0; b < kJointBlocks; ++b) {
    const auto [node, lo] = min_entry(js.thickness[b]);
    if (!(lo >= kThicknessGuard)) throw NonPositiveThicknessError(node, lo, static_cast<int>(b));
  }

  js.blocks.assign(kJointBlocks, DiaSystem(mesh.n_theta, mesh.n_y));
  std::vector<detail::AssemblyInputs> inputs;
  for (std::size_t b = 0; b < kJointBlocks; ++b) {
    inputs.push_back({&js.mesh, js.thickness[b].values.data(), rate[b].values.data(), js.sliding_speed,
                      config.oil_viscosity, bc});
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto g = static_cast<std::size_t>(k);
    const std::size_t b = g / n;
    detail::assemble_row(inputs[b], g % n, js.blocks[b]);
  }
  return js;
}

namespace {

std::vector<Preconditioner> build_preconditioners(const JointSystem& sys, const JointSolveOptions& options) {
  std::vector<Preconditioner> out;
  out.reserve(sys.blocks.size());
  for (const DiaSystem& b : sys.blocks) out.push_back(Preconditioner::build(b, options.preconditioner, options.omega));
  return out;
}

std::vector<double> initial_vector(const JointSystem& sys, const JointSolveOptions& options) {
  if (options.initial_guess.empty()) return std::vector<double>(sys.size(), 0.0);
  if (options.initial_guess.size() != sys.size()) {
    throw Error(ErrorKind::DimensionMismatch, "joint solve: initial guess size");
  }
  return options.initial_guess;
}

void split(const JointSystem& sys, const std::vector<double>& x, JointSolution& out) {
  const std::size_t n = sys.block_size();
  out.pressures.resize(sys.blocks.size());
  for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
    out.pressures[b].assign(x.begin() + static_cast<std::ptrdiff_t>(b * n),
                            x.begin() + static_cast<std::ptrdiff_t>((b + 1) * n));
  }
}

}  // namespace

JointSolution solve_joint(const JointSystem& sys, const JointSolveOptions& options) {
  if (sys.blocks.empty()) throw Error(ErrorKind::InvalidArgument, "joint solve: empty system");
  const std::vector<Preconditioner> precs = build_preconditioners(sys, options);
  std::vector<detail::BlockProblem> problems;
  for (std::size_t b = 0; b < sys.blocks.size(); ++b) problems.push_back({&sys.blocks[b], &precs[b]});

  std::vector<double> x = initial_vector(sys, options);
  detail::EngineOptions eo;
  eo.tolerance = options.tolerance;
  eo.max_iter = options.max_iter;
  eo.rule = options.strategy == ConvergenceStrategy::Synchronized ? detail::StopRule::Global
                                                                   : detail::StopRule::PerBlock;
  eo.observer = options.observer;
  detail::EngineResult er = detail::run_block_pcg(problems, x, eo);

  JointSolution out;
  split(sys, x, out);
  out.blocks = std::move(er.blocks);
  out.global = std::move(er.global);
  out.reconfigurations = er.reconfigurations;
  out.freeze_iteration = std::move(er.freeze_iteration);
  for (const PcgReport& r : out.blocks) out.total_iterations += r.iterations;
  return out;
}

JointSolution sequential_solve(const JointSystem& sys, const JointSolveOptions& options) {
  if (sys.blocks.empty()) throw Error(ErrorKind::InvalidArgument, "joint solve: empty system");
  const std::size_t n = sys.block_size();
  const std::vector<double> x0 = initial_vector(sys, options);
  PcgOptions po;
  po.tolerance = options.tolerance;
  po.max_iter = options.max_iter;

  JointSolution out;
  out.pressures.resize(sys.blocks.size());
  bool all = true;
  bool breakdown = false;
  double rr = 0.0;
  double ss = 0.0;
  for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
    const Preconditioner m = Preconditioner::build(sys.blocks[b], options.preconditioner, options.omega);
    PcgResult res = pcg_solve(sys.blocks[b], m, std::span<const double>(x0.data() + b * n, n), po);
    out.pressures[b] = std::move(res.solution);
    out.total_iterations += res.report.iterations;
    out.global.iterations = std::max(out.global.iterations, res.report.iterations);
    out.global.counters.spmv += res.report.counters.spmv;
    out.global.counters.dot += res.report.counters.dot;
    out.global.counters.precond += res.report.counters.precond;
    out.freeze_iteration.push_back(res.report.iterations);
    all = all && res.report.converged;
    breakdown = breakdown || res.report.status == SolveStatus::Breakdown;
    double sb = 0.0;
    for (double v : sys.blocks[b].s) sb += v * v;
    const double ref = sb > 0.0 ? std::sqrt(sb) : 1.0;
    rr += std::pow(res.report.final_relative_residual * ref, 2);
    ss += sb;
    out.blocks.push_back(std::move(res.report));
  }
  out.global.converged = all;
  out.global.status = all ? SolveStatus::Converged : (breakdown ? SolveStatus::Breakdown : SolveStatus::NoConvergence);
  out.global.final_relative_residual = std::sqrt(rr) / (ss > 0.0 ? std::sqrt(ss) : 1.0);
  return out;
}

}  // namespace pcfilm
