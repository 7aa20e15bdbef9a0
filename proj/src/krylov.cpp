#include "pcfilm/krylov.hpp"

#include <algorithm>

#include "block_pcg.hpp"
#include "pcfilm/error.hpp"

namespace pcfilm {

const char* to_string(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::NoConvergence: return "no_convergence";
    case SolveStatus::Breakdown: return "breakdown";
  }
  return "no_convergence";
}

PcgResult pcg_solve(const DiaSystem& sys, const Preconditioner& precond, std::span<const double> x0,
                    const PcgOptions& options) {
  PcgResult result;
  result.solution.assign(sys.n(), 0.0);
  if (!x0.empty()) {
    if (x0.size() != sys.n()) throw Error(ErrorKind::DimensionMismatch, "pcg: initial guess size");
    std::copy(x0.begin(), x0.end(), result.solution.begin());
  }
  const detail::BlockProblem problem{&sys, &precond};
  detail::EngineOptions eo;
  eo.tolerance = options.tolerance;
  eo.max_iter = options.max_iter;
  eo.rule = detail::StopRule::Global;
  eo.observer = options.observer;
  detail::EngineResult er = detail::run_block_pcg(std::span<const detail::BlockProblem>(&problem, 1),
                                                  result.solution, eo);
  result.report = std::move(er.blocks[0]);
  return result;
}

std::vector<std::pair<double, std::size_t>> omega_sweep(const DiaSystem& sys, PreconditionerKind kind,
                                                        std::span<const double> omegas, double tolerance,
                                                        std::size_t max_iter) {
  std::vector<std::pair<double, std::size_t>> out;
  out.reserve(omegas.size());
  PcgOptions options;
  options.tolerance = tolerance;
  options.max_iter = max_iter;
  for (double w : omegas) {
    const Preconditioner m = Preconditioner::build(sys, kind, w);
    const PcgResult res = pcg_solve(sys, m, {}, options);
    out.emplace_back(w, res.report.iterations);
  }
  return out;
}

std::vector<double> default_omega_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.18 * i + 0.1);
  return grid;
}

}  // namespace pcfilm
