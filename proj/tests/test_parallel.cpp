#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "pcfilm/joint.hpp"
#include "pcfilm/kernels.hpp"
#include "pcfilm/krylov.hpp"
#include "pcfilm/parallel.hpp"

using namespace pcfilm;

namespace {

class WorkerGuard {
 public:
  WorkerGuard() : saved_(parallel::worker_count()) {}
  ~WorkerGuard() { parallel::set_worker_count(saved_); }

 private:
  int saved_;
};

}  // namespace

TEST(Parallel, TreeReduceIsExactOnIntegers) {
  std::vector<double> v(37);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<double>(k + 1);
  EXPECT_EQ(parallel::tree_reduce(v), 37.0 * 38.0 / 2.0);
  std::vector<double> empty;
  EXPECT_EQ(parallel::tree_reduce(empty), 0.0);
}

TEST(Parallel, ReductionsIgnoreWorkerCount) {
  WorkerGuard guard;
  std::mt19937_64 rng(101);
  const auto a = oracle::random_vector(rng, 100003);
  const auto b = oracle::random_vector(rng, 100003);
  parallel::set_worker_count(1);
  const double d1 = kernels::dot(a, b);
  for (int w : {2, 3, 4, 7}) {
    parallel::set_worker_count(w);
    EXPECT_EQ(kernels::dot(a, b), d1) << w << " workers";
  }
}

TEST(Parallel, SolvesIgnoreWorkerCount) {
  WorkerGuard guard;
  std::mt19937_64 rng(102);
  oracle::RandomCase c = oracle::random_case(rng, true, 20, 16);
  c.mesh = FilmMesh(60, 40, c.mesh.coupling_length, c.pump.piston_radius);
  c.texture = oracle::coarse_texture(c.mesh, 20, 3, 10e-6);
  const JointSystem j = build_joint(c.mesh, c.state, c.texture, c.pump, c.bc);
  for (ConvergenceStrategy strategy : {ConvergenceStrategy::Synchronized, ConvergenceStrategy::Asynchronous}) {
    JointSolveOptions o;
    o.strategy = strategy;
    parallel::set_worker_count(1);
    const JointSolution a = solve_joint(j, o);
    parallel::set_worker_count(4);
    const JointSolution b = solve_joint(j, o);
    EXPECT_EQ(a.pressures, b.pressures);
    EXPECT_EQ(a.global.iterations, b.global.iterations);
  }
}

TEST(Kernels, DimensionChecks) {
  const DiaSystem a(8, 6);
  std::vector<double> x(48);
  std::vector<double> y(47);
  EXPECT_THROW(kernels::spmv(a, x, y), Error);
  EXPECT_THROW(kernels::dot(x, y), Error);
}
