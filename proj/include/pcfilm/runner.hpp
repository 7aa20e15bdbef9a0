#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcfilm/assembly.hpp"
#include "pcfilm/config.hpp"
#include "pcfilm/io.hpp"
#include "pcfilm/joint.hpp"

namespace pcfilm {

struct RunContext {
  int workers = 1;
  std::uint64_t seed = 0;
};

struct RunOutcome {
  io::OutputBundle files;
  bool ok = true;                     // false when any case hit a hard error
  std::vector<std::string> messages;  // one line per failed case
};

/// Film, texture and assembled system at the configured state
/// (initial_state, including its time) on an n_theta x n_y mesh.
struct PreparedSystem {
  FilmMesh mesh;
  TexturePattern texture;
  BoundaryCondition bc;
  KinematicState state;
  ScalarField h;
  DiaSystem system;
};

PreparedSystem prepare_system(const RunConfig& config, std::size_t n_theta, std::size_t n_y, TextureKind texture);

/// Joint system at the configured state.
JointSystem prepare_joint(const RunConfig& config, std::size_t n_theta, std::size_t n_y, TextureKind texture);

RunOutcome run_solve(const RunConfig& config, const RunContext& ctx);
RunOutcome run_bench(const RunConfig& config, const RunContext& ctx);
RunOutcome run_joint_bench(const RunConfig& config, const RunContext& ctx);
RunOutcome run_simulate(const RunConfig& config, const RunContext& ctx);

}  // namespace pcfilm
