#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Worker-pool control and the deterministic reduction contract shared by all
// data-parallel kernels.
//
// Reductions never depend on the worker count: inputs are cut into fixed
// chunks of kReductionChunk elements, each chunk is summed left to right, and
// the chunk partials are combined by a fixed-shape pairwise tree. Results are
// therefore bit-identical for any number of OpenMP threads.

namespace pcfilm::parallel {

inline constexpr std::size_t kReductionChunk = 2048;

/// Environment variable that overrides the configured worker count.
inline constexpr const char* kWorkersEnv = "PCFILM_WORKERS";

/// Resolves the worker count: the env var wins, then `requested` (> 0),
/// then the OpenMP default.
int resolve_worker_count(int requested);

/// Applies resolve_worker_count() to the OpenMP runtime and returns the count.
int set_worker_count(int requested);

int worker_count();

inline std::size_t chunk_count(std::size_t n) {
  return (n + kReductionChunk - 1) / kReductionChunk;
}

/// Pairwise tree reduction over the partials; `partials` is used as scratch.
double tree_reduce(std::span<double> partials);

}  // namespace pcfilm::parallel
