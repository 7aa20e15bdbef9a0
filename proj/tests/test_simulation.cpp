#include <gtest/gtest.h>

#include <cmath>

#include "pcfilm/simulation.hpp"

using namespace pcfilm;

namespace {

RunConfig small_run(std::size_t steps = 8) {
  RunConfig c;
  c.mesh = {24, 16};
  c.dynamics.periods = 1;
  c.dynamics.steps_per_period = steps;
  c.dynamics.snapshot_every_deg = 90;
  return c;
}

}  // namespace

TEST(Simulation, ForceClosureAndPositivity) {
  const SimulationTrace trace = time_march(small_run());
  ASSERT_EQ(trace.steps.size(), 8u);
  for (const StepRecord& r : trace.steps) {
    const GeneralForce sum = r.oil + r.external + r.inertial;
    for (int k = 0; k < 4; ++k) EXPECT_EQ(r.total.f[k], sum.f[k]);
    EXPECT_GT(r.min_thickness, 0.0);
    EXPECT_TRUE(r.converged);
    EXPECT_GE(r.picard_iterations, 1u);
    EXPECT_EQ(r.force_scale, std::max(r.external.norm(), 1.0));
    EXPECT_LE(r.residual, 1e-3 * r.force_scale);
  }
  EXPECT_EQ(trace.snapshots.size(), 4u);
}

TEST(Simulation, StepsKeepTheBackwardDifferenceLink) {
  const RunConfig c = small_run();
  const SimulationTrace trace = time_march(c);
  const double dt = c.pump.period() / 8.0;
  Vec4 prev = c.initial_state.e;
  for (const StepRecord& r : trace.steps) {
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(r.e[k] - prev[k], dt * r.edot[k], 1e-18 + 1e-9 * std::abs(r.e[k]));
    prev = r.e;
  }
}

TEST(Simulation, TraceIsDeterministic) {
  const RunConfig c = small_run(6);
  const SimulationTrace a = time_march(c);
  const SimulationTrace b = time_march(c);
  ASSERT_EQ(a.steps.size(), b.steps.size());
  for (std::size_t s = 0; s < a.steps.size(); ++s) {
    EXPECT_EQ(a.steps[s].e, b.steps[s].e);
    EXPECT_EQ(a.steps[s].edot, b.steps[s].edot);
    EXPECT_EQ(a.steps[s].total.f, b.steps[s].total.f);
    EXPECT_EQ(a.steps[s].pcg_iterations, b.steps[s].pcg_iterations);
  }
  for (std::size_t s = 0; s < a.snapshots.size(); ++s) EXPECT_EQ(a.snapshots[s].pressure, b.snapshots[s].pressure);
}

TEST(Simulation, JointAndSequentialPathsAgree) {
  RunConfig joint = small_run(4);
  joint.solver.strategy = ConvergenceStrategy::Asynchronous;
  RunConfig seq = joint;
  seq.solver.path = SolvePath::Sequential;
  const SimulationTrace a = time_march(joint);
  const SimulationTrace b = time_march(seq);
  for (std::size_t s = 0; s < a.steps.size(); ++s) {
    EXPECT_EQ(a.steps[s].e, b.steps[s].e);
    EXPECT_EQ(a.steps[s].edot, b.steps[s].edot);
  }

  // synchronized stops on the joint residual, so the match is to tolerance
  RunConfig sync = small_run(4);
  sync.solver.tolerance = 1e-12;
  RunConfig sync_seq = sync;
  sync_seq.solver.path = SolvePath::Sequential;
  const SimulationTrace c = time_march(sync);
  const SimulationTrace d = time_march(sync_seq);
  for (std::size_t s = 0; s < c.steps.size(); ++s) {
    for (int k = 0; k < 4; ++k) {
      EXPECT_NEAR(c.steps[s].e[k], d.steps[s].e[k], 1e-8 * std::abs(d.steps[s].e[k]));
      EXPECT_NEAR(c.steps[s].edot[k], d.steps[s].edot[k], 1e-8 * std::abs(d.steps[s].edot[k]));
    }
  }
}

TEST(Simulation, CallbackSeesEveryStep) {
  std::size_t seen = 0;
  time_march(small_run(5), [&](const StepRecord& r) { EXPECT_EQ(r.step, ++seen); });
  EXPECT_EQ(seen, 5u);
}

TEST(Simulation, ModelLoadsFollowTheWaveform) {
  RunConfig c = small_run();
  FilmForceModel m(c);
  m.prepare(0.3 * c.pump.period());
  EXPECT_DOUBLE_EQ(m.inlet_pressure(), c.waveform.high);
  EXPECT_NEAR(m.external().norm(), piston_thrust(c.pump, c.waveform.high) * std::tan(c.pump.swashplate_angle), 1e-9);
  const ForceSample f = m.evaluate(c.initial_state);
  EXPECT_GT(m.last_min_thickness(), 0.0);
  EXPECT_EQ(m.last_pressure().size(), m.mesh().size());
  EXPECT_GT(m.pcg_iterations(), 0u);
  EXPECT_NE(f.total[0].f, f.total[1].f);
}
