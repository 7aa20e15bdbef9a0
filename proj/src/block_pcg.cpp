#include "block_pcg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "pcfilm/error.hpp"
#include "pcfilm/parallel.hpp"

namespace pcfilm::detail {

namespace {

using Active = std::vector<std::size_t>;

template <class F>
void for_active_rows(const Active& act, std::size_t n, F&& f) {
  const auto total = static_cast<std::ptrdiff_t>(act.size() * n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const std::size_t b = act[uk / n];
    const std::size_t local = uk % n;
    f(b, local, b * n + local);
  }
}

// Chunked partial sums of up to three inner products, laid out block by block
// so per-block sums and the global sum share the same tree shape as
// kernels::dot.
class SegmentedDots {
 public:
  SegmentedDots(std::size_t blocks, std::size_t n) : n_(n), per_block_(parallel::chunk_count(n)) {
    for (auto& p : partials_) p.assign(blocks * per_block_, 0.0);
  }

  void compute(const Active& act, int pairs, const double* const* a, const double* const* b) {
    const auto total = static_cast<std::ptrdiff_t>(act.size() * per_block_);
    const std::size_t n = n_;
    const std::size_t cpb = per_block_;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < total; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      const std::size_t blk = act[uk / cpb];
      const std::size_t c = uk % cpb;
      const std::size_t begin = blk * n + c * parallel::kReductionChunk;
      const std::size_t end = blk * n + std::min(n, (c + 1) * parallel::kReductionChunk);
      for (int q = 0; q < pairs; ++q) {
        double sum = 0.0;
        for (std::size_t g = begin; g < end; ++g) sum += a[q][g] * b[q][g];
        partials_[q][blk * cpb + c] = sum;
      }
    }
  }

  double block(int q, std::size_t blk) const {
    std::vector<double> tmp(partials_[q].begin() + static_cast<std::ptrdiff_t>(blk * per_block_),
                            partials_[q].begin() + static_cast<std::ptrdiff_t>((blk + 1) * per_block_));
    return parallel::tree_reduce(tmp);
  }

  double global(int q) const {
    std::vector<double> tmp = partials_[q];
    return parallel::tree_reduce(tmp);
  }

 private:
  std::size_t n_;
  std::size_t per_block_;
  std::vector<double> partials_[3];
};

struct BlockState {
  double ref = 1.0;     // ||S_b||, or 1 for a zero source
  double rr = 0.0;      // latest ||r_b||^2
  double d = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

}  // namespace

EngineResult run_block_pcg(std::span<const BlockProblem> problems, std::span<double> x,
                           const EngineOptions& options) {
  const std::size_t nb = problems.size();
  if (nb == 0) throw Error(ErrorKind::InvalidArgument, "pcg: no blocks");
  if (!(options.tolerance > 0.0)) throw Error(ErrorKind::InvalidArgument, "pcg: tolerance must be positive");
  const std::size_t n = problems[0].sys->n();
  for (const BlockProblem& p : problems) {
    if (p.sys->n() != n || p.sys->s.size() != n) throw Error(ErrorKind::DimensionMismatch, "pcg: block sizes differ");
    if (p.precond->system().n() != n) {
      throw Error(ErrorKind::DimensionMismatch, "pcg: preconditioner built for another system");
    }
  }
  if (x.size() != nb * n) throw Error(ErrorKind::DimensionMismatch, "pcg: initial guess size");

  const bool global_rule = options.rule == StopRule::Global;
  const double tol = options.tolerance;
  const std::size_t total = nb * n;
  std::vector<double> r(total), z(total), u(total), v(total), scratch(total);
  std::vector<BlockState> st(nb);

  EngineResult out;
  out.blocks.resize(nb);
  out.freeze_iteration.assign(nb, 0);
  PcgReport& g = out.global;

  Active act(nb);
  for (std::size_t b = 0; b < nb; ++b) act[b] = b;
  SegmentedDots dots(nb, n);

  auto count_all = [&](auto member, std::size_t k) {
    for (std::size_t b : act) (out.blocks[b].counters.*member) += k;
    (g.counters.*member) += k;
  };

  auto apply_precond = [&]() {
    bool any_two_pass = false;
    for_active_rows(act, n, [&](std::size_t b, std::size_t local, std::size_t gi) {
      const Preconditioner& m = *problems[b].precond;
      if (!m.row_parallel()) return;
      const double val = m.first_pass_row(r.data() + b * n, local);
      if (m.two_pass()) {
        scratch[gi] = val;
      } else {
        z[gi] = val;
      }
    });
    for (std::size_t b : act) any_two_pass = any_two_pass || problems[b].precond->two_pass();
    if (any_two_pass) {
      for_active_rows(act, n, [&](std::size_t b, std::size_t local, std::size_t gi) {
        const Preconditioner& m = *problems[b].precond;
        if (m.two_pass()) z[gi] = m.second_pass_row(scratch.data() + b * n, local);
      });
    }
    for (std::size_t b : act) {
      const Preconditioner& m = *problems[b].precond;
      if (m.row_parallel()) continue;
      m.apply_ssor(std::span<const double>(r.data() + b * n, n), std::span<double>(z.data() + b * n, n),
                   std::span<double>(scratch.data() + b * n, n));
    }
    count_all(&KernelCounters::precond, 1);
  };

  // Joint relative residual over all blocks, frozen ones included.
  double ref_global = 1.0;
  auto joint_relative = [&]() {
    double sum = 0.0;
    for (const BlockState& s : st) sum += s.rr;
    return std::sqrt(sum) / ref_global;
  };

  std::size_t freezes_pending = 0;
  auto freeze = [&](std::size_t b, SolveStatus status, std::size_t iteration) {
    PcgReport& rep = out.blocks[b];
    rep.status = status;
    rep.converged = status == SolveStatus::Converged;
    out.freeze_iteration[b] = iteration;
    ++freezes_pending;
  };
  auto compact = [&]() {
    if (freezes_pending == 0) return;
    Active next;
    for (std::size_t b : act) {
      const PcgReport& rep = out.blocks[b];
      if (!rep.converged && rep.status != SolveStatus::Breakdown) next.push_back(b);
    }
    if (!next.empty()) ++out.reconfigurations;
    act.swap(next);
    freezes_pending = 0;
  };
  for (PcgReport& rep : out.blocks) rep.status = SolveStatus::NoConvergence;

  // r0 = S - A p0
  for_active_rows(act, n, [&](std::size_t b, std::size_t local, std::size_t gi) {
    const DiaSystem& a = *problems[b].sys;
    r[gi] = a.s[local] - row_product(a, x.data() + b * n, local);
  });
  count_all(&KernelCounters::spmv, 1);
  {
    // S is stored per block, so gather it once for the segmented reduction.
    std::vector<double> s_all(total);
    for (std::size_t b = 0; b < nb; ++b) std::copy(problems[b].sys->s.begin(), problems[b].sys->s.end(), s_all.begin() + static_cast<std::ptrdiff_t>(b * n));
    const double* a2[2] = {s_all.data(), r.data()};
    const double* b2[2] = {s_all.data(), r.data()};
    dots.compute(act, 2, a2, b2);
    count_all(&KernelCounters::dot, 2);
    for (std::size_t b = 0; b < nb; ++b) {
      const double ss = dots.block(0, b);
      st[b].ref = ss > 0.0 ? std::sqrt(ss) : 1.0;
      st[b].rr = dots.block(1, b);
    }
    const double ss = dots.global(0);
    ref_global = ss > 0.0 ? std::sqrt(ss) : 1.0;
  }

  auto record = [&]() {
    for (std::size_t b = 0; b < nb; ++b) {
      if (!global_rule && std::find(act.begin(), act.end(), b) == act.end()) continue;
      const double rel = std::sqrt(st[b].rr) / st[b].ref;
      out.blocks[b].residual_history.push_back(rel);
      out.blocks[b].final_relative_residual = rel;
    }
    const double relg = joint_relative();
    g.residual_history.push_back(relg);
    g.final_relative_residual = relg;
  };
  record();

  bool global_done = false;
  auto check_convergence = [&](std::size_t iteration) {
    if (global_rule) {
      if (g.final_relative_residual <= tol) {
        for (std::size_t b : act) freeze(b, SolveStatus::Converged, iteration);
        global_done = true;
      }
      return;
    }
    for (std::size_t b : act) {
      if (out.blocks[b].final_relative_residual <= tol) freeze(b, SolveStatus::Converged, iteration);
    }
  };
  auto breakdown_all = [&](std::size_t iteration) {
    for (std::size_t b : act) freeze(b, SolveStatus::Breakdown, iteration);
    global_done = true;
  };

  check_convergence(0);
  compact();

  auto update_d = [&](std::size_t iteration, bool first) {
    const double* a1[1] = {r.data()};
    const double* b1[1] = {z.data()};
    dots.compute(act, 1, a1, b1);
    count_all(&KernelCounters::dot, 1);
    if (global_rule) {
      const double dn = dots.global(0);
      if (!(dn > 0.0)) {
        breakdown_all(iteration);
        return;
      }
      const double beta = first ? 0.0 : dn / st[0].d;
      for (BlockState& s : st) {
        s.beta = beta;
        s.d = dn;
      }
    } else {
      for (std::size_t b : act) {
        const double dn = dots.block(0, b);
        if (!(dn > 0.0)) {
          freeze(b, SolveStatus::Breakdown, iteration);
          continue;
        }
        st[b].beta = first ? 0.0 : dn / st[b].d;
        st[b].d = dn;
      }
      compact();
    }
  };

  if (!act.empty() && !global_done) {
    apply_precond();
    update_d(0, true);
    if (!global_done) {
      for_active_rows(act, n, [&](std::size_t, std::size_t, std::size_t gi) { u[gi] = z[gi]; });
    }
  }

  std::size_t iteration = 0;
  while (!act.empty() && !global_done && iteration < options.max_iter) {
    ++iteration;
    for_active_rows(act, n, [&](std::size_t b, std::size_t local, std::size_t gi) {
      v[gi] = row_product(*problems[b].sys, u.data() + b * n, local);
    });
    count_all(&KernelCounters::spmv, 1);

    const double* a3[3] = {u.data(), u.data(), v.data()};
    const double* b3[3] = {v.data(), u.data(), v.data()};
    dots.compute(act, 3, a3, b3);
    count_all(&KernelCounters::dot, 3);
    if (global_rule) {
      const double uv = dots.global(0);
      const double uu = dots.global(1);
      const double vv = dots.global(2);
      if (!(uv > kBreakdownRatio * std::sqrt(uu) * std::sqrt(vv))) {
        breakdown_all(iteration - 1);
        break;
      }
      const double alpha = st[0].d / uv;
      for (BlockState& s : st) s.alpha = alpha;
    } else {
      for (std::size_t b : act) {
        const double uv = dots.block(0, b);
        const double uu = dots.block(1, b);
        const double vv = dots.block(2, b);
        if (!(uv > kBreakdownRatio * std::sqrt(uu) * std::sqrt(vv))) {
          freeze(b, SolveStatus::Breakdown, iteration - 1);
          continue;
        }
        st[b].alpha = st[b].d / uv;
      }
      compact();
      if (act.empty()) break;
    }

    for_active_rows(act, n, [&](std::size_t b, std::size_t, std::size_t gi) {
      const double alpha = st[b].alpha;
      x[gi] += alpha * u[gi];
      r[gi] -= alpha * v[gi];
    });
    for (std::size_t b : act) ++out.blocks[b].iterations;
    g.iterations = iteration;

    const double* ar[1] = {r.data()};
    dots.compute(act, 1, ar, ar);
    count_all(&KernelCounters::dot, 1);
    for (std::size_t b : act) st[b].rr = dots.block(0, b);
    record();
    check_convergence(iteration);
    compact();
    if (options.observer) options.observer(iteration, std::span<const double>(x.data(), x.size()));
    if (act.empty() || global_done || iteration == options.max_iter) break;

    apply_precond();
    update_d(iteration, false);
    if (global_done || act.empty()) break;
    for_active_rows(act, n, [&](std::size_t b, std::size_t, std::size_t gi) {
      u[gi] = z[gi] + st[b].beta * u[gi];
    });
  }

  // Blocks still active ran out of iterations.
  bool all_converged = true;
  bool any_breakdown = false;
  for (std::size_t b = 0; b < nb; ++b) {
    PcgReport& rep = out.blocks[b];
    if (global_rule) rep.iterations = g.iterations;
    if (!rep.converged && rep.status != SolveStatus::Breakdown) {
      rep.status = SolveStatus::NoConvergence;
      out.freeze_iteration[b] = rep.iterations;
    }
    all_converged = all_converged && rep.converged;
    any_breakdown = any_breakdown || rep.status == SolveStatus::Breakdown;
  }
  g.converged = all_converged;
  g.status = all_converged ? SolveStatus::Converged
                           : (any_breakdown ? SolveStatus::Breakdown : SolveStatus::NoConvergence);
  return out;
}

}  // namespace pcfilm::detail
