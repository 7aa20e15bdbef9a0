#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pcfilm/assembly.hpp"
#include "pcfilm/geometry.hpp"
#include "pcfilm/krylov.hpp"
#include "pcfilm/preconditioner.hpp"

namespace pcfilm {

/// Base condition plus one forward perturbation per component of e and edot.
inline constexpr std::size_t kJointBlocks = 9;

enum class ConvergenceStrategy { Synchronized, Asynchronous };

const char* to_string(ConvergenceStrategy strategy) noexcept;
ConvergenceStrategy strategy_from_string(const std::string& name);

/// Block j = 0 is the base state, j = 1..4 bump e_j by fd_step_e and
/// j = 5..8 bump edot_{j-4} by fd_step_edot.
KinematicState perturbed_state(const KinematicState& base, std::size_t block, const PumpConfig& config);

/// Block-diagonal aggregation of the nine systems. Node i of block j has the
/// global index i + j*n.
struct JointSystem {
  FilmMesh mesh;
  double sliding_speed = 0.0;
  std::array<KinematicState, kJointBlocks> states{};
  std::vector<ScalarField> thickness;  // one per block
  std::vector<DiaSystem> blocks;

  std::size_t block_size() const { return mesh.size(); }
  std::size_t size() const { return blocks.size() * block_size(); }
  std::size_t global_index(std::size_t block, std::size_t node) const { return node + block * block_size(); }

  /// Joint source vector S_G.
  std::vector<double> joint_source() const;

  /// y = A_G x over all 9n rows.
  void spmv(std::span<const double> x, std::span<double> y) const;
};

/// Thickness, thickness rate and band assembly for all nine conditions, each
/// as one data-parallel pass over 9n nodes. A thickness failure is reported
/// with the offending block.
JointSystem build_joint(const FilmMesh& mesh, const KinematicState& base, const TexturePattern& texture,
                        const PumpConfig& config, const BoundaryCondition& bc);

struct JointSolveOptions {
  PreconditionerKind preconditioner = PreconditionerKind::AssorII;
  double omega = 1.8;
  ConvergenceStrategy strategy = ConvergenceStrategy::Synchronized;
  double tolerance = 1.0e-6;
  std::size_t max_iter = 100000;
  std::vector<double> initial_guess;  // length 9n, or empty for zeros
  IterationObserver observer;
};

struct JointSolution {
  std::vector<std::vector<double>> pressures;  // one field per block
  std::vector<PcgReport> blocks;
  PcgReport global;
  std::size_t total_iterations = 0;    // sum of per-block counts
  std::size_t reconfigurations = 0;    // active-set compactions
  std::vector<std::size_t> freeze_iteration;

  bool converged() const { return global.converged; }
};

/// Synchronized: one Krylov process on the 9n system, stopped on the joint
/// residual. Asynchronous: nine Krylov processes sharing kernel launches,
/// each stopped on its own residual and frozen afterwards.
JointSolution solve_joint(const JointSystem& sys, const JointSolveOptions& options);

/// Nine independent pcg_solve runs, one after another. The strategy field is
/// ignored.
JointSolution sequential_solve(const JointSystem& sys, const JointSolveOptions& options);

}  // namespace pcfilm
