#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcfilm/dynamics.hpp"
#include "pcfilm/geometry.hpp"
#include "pcfilm/joint.hpp"
#include "pcfilm/preconditioner.hpp"
#include "pcfilm/waveform.hpp"

namespace pcfilm {

struct MeshSettings {
  std::size_t n_theta = 100;
  std::size_t n_y = 80;
};

enum class SolvePath { Joint, Sequential };

const char* to_string(SolvePath path) noexcept;
SolvePath solve_path_from_string(const std::string& name);

struct SolverSettings {
  PreconditionerKind preconditioner = PreconditionerKind::AssorII;
  std::optional<double> omega;  // unset: 1.8 for smooth films, 1.6 for textured ones
  double tolerance = 1.0e-6;
  std::size_t max_iter = 100000;
  ConvergenceStrategy strategy = ConvergenceStrategy::Synchronized;
  bool warm_start = false;
  SolvePath path = SolvePath::Joint;

  double resolved_omega(TextureKind texture) const {
    if (omega) return *omega;
    return texture == TextureKind::None ? 1.8 : 1.6;
  }
};

enum class NonConvergencePolicy { Halt, Accept };

const char* to_string(NonConvergencePolicy policy) noexcept;
NonConvergencePolicy policy_from_string(const std::string& name);

struct DynamicsSettings {
  PicardScheme scheme = PicardScheme::General;
  std::size_t periods = 10;
  std::size_t steps_per_period = 360;
  double eps_dyn = 1.0e-3;
  std::size_t max_picard = 20;
  std::size_t snapshot_every_deg = 30;  // 0 disables snapshots
  NonConvergencePolicy on_nonconvergence = NonConvergencePolicy::Accept;
  bool positivity_backtracking = true;
};

struct OutputSettings {
  bool pressure = true;
  bool residuals = true;
  bool trace = true;
  bool forces = true;
  bool snapshots = true;
  bool plots = true;
};

struct SweepSettings {
  std::vector<PreconditionerKind> preconditioners{PreconditionerKind::Jacobian, PreconditionerKind::Ssor,
                                                  PreconditionerKind::AssorI, PreconditionerKind::AssorII};
  std::vector<double> omegas = default_omega_grid();
  std::vector<std::pair<std::size_t, std::size_t>> meshes{{100, 80}};
  std::vector<TextureKind> textures{TextureKind::None};
};

struct RunConfig {
  PumpConfig pump;
  KinematicState initial_state = default_initial_state();
  MeshSettings mesh;
  TextureSpec texture;
  Waveform waveform;
  SolverSettings solver;
  DynamicsSettings dynamics;
  OutputSettings output;
  SweepSettings sweep;
  bool cavitation_floor = false;
  int workers = 0;  // 0: OpenMP default

  static KinematicState default_initial_state();

  /// Throws Error(InvalidConfig) naming the first violated invariant.
  void validate() const;
};

/// Strict parse: unknown keys, wrong types and invalid values raise
/// Error(InvalidConfig). Missing keys keep their defaults.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace pcfilm
