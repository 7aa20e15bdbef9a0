#pragma once

// Shared Krylov engine for single, joint-synchronized and joint-asynchronous
// solves. Blocks share a size n and are laid out contiguously (block b owns
// entries [b*n, (b+1)*n) of every vector).

#include <cstddef>
#include <span>
#include <vector>

#include "pcfilm/krylov.hpp"

namespace pcfilm::detail {

enum class StopRule {
  Global,    // one Krylov process, global inner products, joint residual test
  PerBlock,  // independent processes per block, converged blocks freeze
};

struct BlockProblem {
  const DiaSystem* sys;
  const Preconditioner* precond;
};

struct EngineOptions {
  double tolerance = 1.0e-6;
  std::size_t max_iter = 100000;
  StopRule rule = StopRule::Global;
  IterationObserver observer;
};

struct EngineResult {
  std::vector<PcgReport> blocks;
  PcgReport global;
  std::size_t reconfigurations = 0;      // active-set compactions (PerBlock)
  std::vector<std::size_t> freeze_iteration;
};

/// `x` holds the initial guess on entry and the solution on exit.
EngineResult run_block_pcg(std::span<const BlockProblem> problems, std::span<double> x,
                           const EngineOptions& options);

}  // namespace pcfilm::detail
