#include "pcfilm/runner.hpp"

#include <sstream>

#include "pcfilm/error.hpp"
#include "pcfilm/krylov.hpp"
#include "pcfilm/simulation.hpp"

namespace pcfilm {

namespace {

std::string mesh_label(std::size_t nt, std::size_t ny) {
  return std::to_string(nt) + "x" + std::to_string(ny);
}

std::string case_label(TextureKind kind, std::size_t nt, std::size_t ny) {
  return std::string(kind == TextureKind::None ? "smooth" : to_string(kind)) + "_" + mesh_label(nt, ny);
}

}  // namespace

PreparedSystem prepare_system(const RunConfig& config, std::size_t n_theta, std::size_t n_y, TextureKind texture) {
  PreparedSystem p;
  p.state = config.initial_state;
  const ShaftKinematics k = shaft_kinematics(config.pump, p.state.time);
  p.state.shaft_angle = k.shaft_angle;
  p.mesh = FilmMesh(n_theta, n_y, k.coupling_length, config.pump.piston_radius);
  TextureSpec spec = config.texture;
  spec.kind = texture;
  p.texture = build_texture_pattern(spec, p.mesh);
  p.bc = {config.waveform.at_angle(k.shaft_angle), config.pump.outlet_pressure};
  p.h = film_thickness(p.mesh, config.pump, p.state, p.texture);
  const ScalarField rate = film_thickness_rate(p.mesh, config.pump, p.state);
  p.system = assemble(p.mesh, p.h, rate, k.sliding_speed, config.pump.oil_viscosity, p.bc);
  return p;
}

JointSystem prepare_joint(const RunConfig& config, std::size_t n_theta, std::size_t n_y, TextureKind texture) {
  KinematicState state = config.initial_state;
  const ShaftKinematics k = shaft_kinematics(config.pump, state.time);
  state.shaft_angle = k.shaft_angle;
  const FilmMesh mesh(n_theta, n_y, k.coupling_length, config.pump.piston_radius);
  TextureSpec spec = config.texture;
  spec.kind = texture;
  const TexturePattern tex = build_texture_pattern(spec, mesh);
  const BoundaryCondition bc{config.waveform.at_angle(k.shaft_angle), config.pump.outlet_pressure};
  return build_joint(mesh, state, tex, config.pump, bc);
}

RunOutcome run_solve(const RunConfig& config, const RunContext& ctx) {
  RunOutcome out;
  const PreparedSystem p = prepare_system(config, config.mesh.n_theta, config.mesh.n_y, config.texture.kind);
  const double omega = config.solver.resolved_omega(config.texture.kind);
  const Preconditioner m = Preconditioner::build(p.system, config.solver.preconditioner, omega);
  PcgOptions po;
  po.tolerance = config.solver.tolerance;
  po.max_iter = config.solver.max_iter;
  const PcgResult res = pcg_solve(p.system, m, {}, po);

  const std::string head = io::preamble("solve", ctx.workers, ctx.seed);
  if (config.output.pressure) {
    std::ostringstream os;
    os << head;
    io::write_pressure(os, p.mesh, res.solution);
    out.files.add("pressure.csv", os.str());
  }
  if (config.output.residuals) {
    std::ostringstream os;
    os << head;
    io::write_residuals(os, res.report.residual_history);
    out.files.add("residuals.csv", os.str());
    if (config.output.plots) out.files.add("residuals.gp", io::plot_residuals(io::data_offset(os.str())));
  }
  if (config.output.plots && config.output.pressure) {
    out.files.add("pressure.gp", io::plot_pressure_map("pressure.csv", io::data_offset(head)));
  }
  std::ostringstream os;
  os << head;
  os << "preconditioner,omega,mesh,texture,iterations,converged,status,final_relative_residual,spmv,dots,precond\n";
  os << to_string(m.kind()) << ',' << io::format(m.omega()) << ',' << mesh_label(p.mesh.n_theta, p.mesh.n_y) << ','
     << to_string(config.texture.kind) << ',' << res.report.iterations << ',' << (res.report.converged ? 1 : 0) << ','
     << to_string(res.report.status) << ',' << io::format(res.report.final_relative_residual) << ','
     << res.report.counters.spmv << ',' << res.report.counters.dot << ',' << res.report.counters.precond << '\n';
  out.files.add("summary.csv", os.str());
  if (res.report.status == SolveStatus::Breakdown) {
    out.ok = false;
    out.messages.push_back("solve: PCG breakdown");
  }
  return out;
}

RunOutcome run_bench(const RunConfig& config, const RunContext& ctx) {
  RunOutcome out;
  std::ostringstream os;
  os << io::preamble("bench", ctx.workers, ctx.seed);
  os << "case,preconditioner,omega,mesh,iterations,converged,spmv,dots,status\n";
  PcgOptions po;
  po.tolerance = config.solver.tolerance;
  po.max_iter = config.solver.max_iter;
  for (const auto& [nt, ny] : config.sweep.meshes) {
    for (TextureKind tex : config.sweep.textures) {
      const std::string label = case_label(tex, nt, ny);
      PreparedSystem p;
      try {
        p = prepare_system(config, nt, ny, tex);
      } catch (const Error& e) {
        os << label << ",,,"<< mesh_label(nt, ny) << ",,0,,," << to_string(e.kind()) << '\n';
        out.ok = false;
        out.messages.push_back(label + ": " + e.what());
        continue;
      }
      for (PreconditionerKind kind : config.sweep.preconditioners) {
        std::vector<double> omegas = config.sweep.omegas;
        if (kind == PreconditionerKind::Jacobian && !omegas.empty()) omegas = {1.0};
        for (double w : omegas) {
          try {
            const Preconditioner m = Preconditioner::build(p.system, kind, w);
            const PcgResult r = pcg_solve(p.system, m, {}, po);
            os << label << ',' << to_string(kind) << ',' << io::format(m.omega()) << ',' << mesh_label(nt, ny) << ','
               << r.report.iterations << ',' << (r.report.converged ? 1 : 0) << ',' << r.report.counters.spmv << ','
               << r.report.counters.dot << ',' << to_string(r.report.status) << '\n';
          } catch (const Error& e) {
            os << label << ',' << to_string(kind) << ',' << io::format(w) << ',' << mesh_label(nt, ny) << ",,0,,,"
               << to_string(e.kind()) << '\n';
            out.ok = false;
            out.messages.push_back(label + ": " + e.what());
          }
        }
      }
    }
  }
  out.files.add("bench.csv", os.str());
  return out;
}

RunOutcome run_joint_bench(const RunConfig& config, const RunContext& ctx) {
  RunOutcome out;
  std::ostringstream os;
  os << io::preamble("joint-bench", ctx.workers, ctx.seed);
  os << "case,strategy,preconditioner,omega";
  for (std::size_t b = 0; b < kJointBlocks; ++b) os << ",b" << b;
  os << ",global_iterations,total_iterations,reconfiguration_events,converged,status\n";
  for (const auto& [nt, ny] : config.sweep.meshes) {
    for (TextureKind tex : config.sweep.textures) {
      const std::string label = case_label(tex, nt, ny);
      JointSystem js;
      try {
        js = prepare_joint(config, nt, ny, tex);
      } catch (const Error& e) {
        os << label << ",,,";
        for (std::size_t b = 0; b < kJointBlocks; ++b) os << ',';
        os << ",,,0," << to_string(e.kind()) << '\n';
        out.ok = false;
        out.messages.push_back(label + ": " + e.what());
        continue;
      }
      for (PreconditionerKind kind : config.sweep.preconditioners) {
        JointSolveOptions opt;
        opt.preconditioner = kind;
        opt.omega = config.solver.resolved_omega(tex);
        opt.tolerance = config.solver.tolerance;
        opt.max_iter = config.solver.max_iter;
        const char* names[3] = {"synchronized", "asynchronous", "sequential"};
        for (int path = 0; path < 3; ++path) {
          JointSolution sol;
          if (path == 2) {
            sol = sequential_solve(js, opt);
          } else {
            opt.strategy = path == 0 ? ConvergenceStrategy::Synchronized : ConvergenceStrategy::Asynchronous;
            sol = solve_joint(js, opt);
          }
          os << label << ',' << names[path] << ',' << to_string(kind) << ','
             << io::format(kind == PreconditionerKind::Jacobian ? 1.0 : opt.omega);
          for (const PcgReport& r : sol.blocks) os << ',' << r.iterations;
          os << ',' << sol.global.iterations << ',' << sol.total_iterations << ',' << sol.reconfigurations << ','
             << (sol.converged() ? 1 : 0) << ',' << to_string(sol.global.status) << '\n';
        }
      }
    }
  }
  out.files.add("joint_bench.csv", os.str());
  return out;
}

RunOutcome run_simulate(const RunConfig& config, const RunContext& ctx) {
  RunOutcome out;
  const SimulationTrace trace = time_march(config);
  const std::string head = io::preamble("simulate", ctx.workers, ctx.seed);
  const std::string meta = config.waveform.shape == WaveformShape::Trapezoid
                               ? "# inlet waveform: trapezoid stand-in for the unpublished measured pressure\n"
                               : std::string();
  if (config.output.trace) {
    std::ostringstream os;
    os << head << meta;
    io::write_trace(os, trace);
    out.files.add("trace.csv", os.str());
    if (config.output.plots) out.files.add("eccentricity.gp", io::plot_eccentricity(io::data_offset(os.str())));
  }
  if (config.output.forces) {
    std::ostringstream os;
    os << head << meta;
    io::write_forces(os, trace, config.pump.period());
    out.files.add("forces.csv", os.str());
    if (config.output.plots) out.files.add("forces.gp", io::plot_forces(io::data_offset(os.str())));
  }
  if (config.output.snapshots) {
    for (const PressureSnapshot& snap : trace.snapshots) {
      std::ostringstream os;
      os << head;
      io::write_snapshot(os, snap);
      const std::string name = io::snapshot_name(snap);
      out.files.add(name, os.str());
      if (config.output.plots) {
        out.files.add(name.substr(0, name.size() - 4) + ".gp", io::plot_pressure_map(name, io::data_offset(os.str())));
      }
    }
  }
  for (const StepRecord& r : trace.steps) {
    if (!r.converged) {
      out.messages.push_back("step " + std::to_string(r.step) + " accepted without dynamic convergence");
    }
  }
  return out;
}

}  // namespace pcfilm
