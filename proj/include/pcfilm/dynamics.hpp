#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pcfilm/geometry.hpp"
#include "pcfilm/joint.hpp"
#include "pcfilm/loads.hpp"

namespace pcfilm {

using Mat4 = std::array<std::array<double, 4>, 4>;

struct JacobianPair {
  Mat4 dF_de{};
  Mat4 dF_dedot{};
  double step_e = 0.0;
  double step_edot = 0.0;
};

/// Forward differences from the nine joint forces: column j of dF_de is
/// (F[1+j] - F[0]) / step_e and column j of dF_dedot is (F[5+j] - F[0]) / step_edot.
JacobianPair build_jacobians(std::span<const GeneralForce> forces, double step_e, double step_edot);

/// Solves a x = b by partial-pivot elimination. Throws Error(SingularJacobian)
/// when a pivot falls below 1e-30 ||a||_inf.
Vec4 solve4(const Mat4& a, const Vec4& b);

enum class PicardScheme { General, Simplified };

const char* to_string(PicardScheme scheme) noexcept;
PicardScheme picard_scheme_from_string(const std::string& name);

/// Newton-type update of (e, edot) towards F = 0.
///   Simplified: delta = -[dF_dedot]^-1 F
///   General:    delta = -[dt dF_de + dF_dedot]^-1 F
/// then edot += delta and e += dt delta, which keeps the backward-difference
/// link e - e_prev = dt edot.
KinematicState picard_step(const KinematicState& state, const GeneralForce& force, const JacobianPair& jac,
                           double dt, PicardScheme scheme);

/// Nine total forces at the base state and its perturbations.
struct ForceSample {
  std::array<GeneralForce, kJointBlocks> total{};
};

using ForceEvaluator = std::function<ForceSample(const KinematicState&)>;

/// Optional admissibility test for a candidate state (e.g. positive film).
using StateFilter = std::function<bool(const KinematicState&)>;

struct PicardOptions {
  PicardScheme scheme = PicardScheme::General;
  double eps_dyn = 1.0e-3;   // relative to force_scale
  std::size_t max_picard = 20;
  StateFilter admissible;    // when set, rejected updates are halved (at most 30 times)
};

struct PicardOutcome {
  KinematicState state;
  bool converged = false;
  std::size_t iterations = 0;             // force evaluations
  std::vector<double> residual_history;   // ||F(base)|| per evaluation
  std::size_t backtracks = 0;
  ForceSample last;
};

/// Picard loop of one time step: evaluate, test ||F|| <= eps_dyn*force_scale,
/// build Jacobians, update. The initial state must already satisfy the
/// backward-difference link with the previous step.
PicardOutcome equilibrate(const KinematicState& initial, double dt, double force_scale,
                          const PumpConfig& config, const ForceEvaluator& evaluate,
                          const PicardOptions& options);

/// Synthetic force F = K_e e + K_v edot + f0 for solver checks.
struct LinearForceModel {
  Mat4 k_e{};
  Mat4 k_v{};
  Vec4 f0{};

  GeneralForce force(const KinematicState& state) const;

  /// The nine forces a joint solve would produce with the given steps.
  ForceSample sample(const KinematicState& state, const PumpConfig& config) const;
};

}  // namespace pcfilm
