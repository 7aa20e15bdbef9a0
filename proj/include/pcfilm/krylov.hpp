#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "pcfilm/dia_system.hpp"
#include "pcfilm/preconditioner.hpp"

namespace pcfilm {

enum class SolveStatus { Converged, NoConvergence, Breakdown };

const char* to_string(SolveStatus status) noexcept;

struct KernelCounters {
  std::size_t spmv = 0;          // matrix-vector products
  std::size_t dot = 0;           // inner products evaluated
  std::size_t precond = 0;       // preconditioner applications
};

struct PcgReport {
  std::size_t iterations = 0;
  bool converged = false;
  SolveStatus status = SolveStatus::NoConvergence;
  double final_relative_residual = 0.0;
  std::vector<double> residual_history;  // ||r||_2 / ||S||_2, iterations + 1 entries
  KernelCounters counters;
};

/// Called after every iteration with the iteration number and the current
/// iterate (all blocks for joint solves).
using IterationObserver = std::function<void(std::size_t, std::span<const double>)>;

struct PcgOptions {
  double tolerance = 1.0e-6;
  std::size_t max_iter = 100000;
  IterationObserver observer;
};

struct PcgResult {
  std::vector<double> solution;
  PcgReport report;
};

/// Preconditioned conjugate gradient with one SpMV per iteration:
///   r0 = S - A p0, z0 = M^-1 r0, u0 = z0, d0 = r0.z0
///   v = A u, alpha = d / (u.v), p += alpha u, r -= alpha v,
///   stop when ||r|| / ||S|| <= tol, z = M^-1 r, d' = r.z, u = z + (d'/d) u.
/// An empty x0 means a zero initial guess. Breakdown is declared when
/// u.v <= 1e-30 ||u|| ||v|| or d <= 0; the best iterate is returned.
PcgResult pcg_solve(const DiaSystem& sys, const Preconditioner& precond, std::span<const double> x0,
                    const PcgOptions& options);

/// Iteration counts of zero-guess solves, one per relaxation factor.
std::vector<std::pair<double, std::size_t>> omega_sweep(const DiaSystem& sys, PreconditionerKind kind,
                                                        std::span<const double> omegas, double tolerance,
                                                        std::size_t max_iter = 100000);

/// Relaxation factors 0.18 i + 0.1, i = 1..10.
std::vector<double> default_omega_grid();

/// Breakdown threshold on u.v relative to ||u|| ||v||.
inline constexpr double kBreakdownRatio = 1.0e-30;

}  // namespace pcfilm
