#include "pcfilm/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "pcfilm/error.hpp"

namespace pcfilm {

const char* to_string(PicardScheme scheme) noexcept {
  return scheme == PicardScheme::General ? "general" : "simplified";
}

PicardScheme picard_scheme_from_string(const std::string& name) {
  if (name == "general") return PicardScheme::General;
  if (name == "simplified") return PicardScheme::Simplified;
  throw Error(ErrorKind::InvalidArgument, "unknown Picard scheme '" + name + "'");
}

JacobianPair build_jacobians(std::span<const GeneralForce> forces, double step_e, double step_edot) {
  if (forces.size() != kJointBlocks) throw Error(ErrorKind::DimensionMismatch, "build_jacobians needs 9 forces");
  if (!(step_e > 0.0) || !(step_edot > 0.0)) throw Error(ErrorKind::InvalidArgument, "finite-difference steps must be positive");
  JacobianPair jac;
  jac.step_e = step_e;
  jac.step_edot = step_edot;
  const Vec4& base = forces[0].f;
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) {
      jac.dF_de[i][j] = (forces[1 + j].f[i] - base[i]) / step_e;
      jac.dF_dedot[i][j] = (forces[5 + j].f[i] - base[i]) / step_edot;
    }
  }
  return jac;
}

Vec4 solve4(const Mat4& a_in, const Vec4& b_in) {
  Mat4 a = a_in;
  Vec4 b = b_in;
  double norm = 0.0;
  for (const auto& row : a) {
    double s = 0.0;
    for (double v : row) s += std::abs(v);
    norm = std::max(norm, s);
  }
  const double floor = 1.0e-30 * norm;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (!(std::abs(a[piv][c]) > floor) || norm == 0.0) {
      std::ostringstream os;
      os << "pivot " << a[piv][c] << " in column " << c << " (||M||inf = " << norm << ")";
      throw Error(ErrorKind::SingularJacobian, os.str());
    }
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (int r = c + 1; r < 4; ++r) {
      const double m = a[r][c] / a[c][c];
      for (int k = c; k < 4; ++k) a[r][k] -= m * a[c][k];
      b[r] -= m * b[c];
    }
  }
  Vec4 x{};
  for (int r = 3; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < 4; ++k) s -= a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  return x;
}

KinematicState picard_step(const KinematicState& state, const GeneralForce& force, const JacobianPair& jac,
                           double dt, PicardScheme scheme) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "time step must be positive");
  Mat4 m = jac.dF_dedot;
  if (scheme == PicardScheme::General) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) m[i][j] += dt * jac.dF_de[i][j];
    }
  }
  Vec4 rhs;
  for (int i = 0; i < 4; ++i) rhs[i] = -force.f[i];
  const Vec4 delta = solve4(m, rhs);
  KinematicState next = state;
  for (int i = 0; i < 4; ++i) {
    next.edot[i] += delta[i];
    next.e[i] += dt * delta[i];
  }
  return next;
}

PicardOutcome equilibrate(const KinematicState& initial, double dt, double force_scale,
                          const PumpConfig& config, const ForceEvaluator& evaluate,
                          const PicardOptions& options) {
  PicardOutcome out;
  out.state = initial;
  const double target = options.eps_dyn * force_scale;
  for (std::size_t k = 0;; ++k) {
    out.last = evaluate(out.state);
    ++out.iterations;
    const double residual = out.last.total[0].norm();
    out.residual_history.push_back(residual);
    if (residual <= target) {
      out.converged = true;
      return out;
    }
    if (k >= options.max_picard) return out;

    const JacobianPair jac = build_jacobians(out.last.total, config.fd_step_e, config.fd_step_edot);
    KinematicState next = picard_step(out.state, out.last.total[0], jac, dt, options.scheme);
    if (options.admissible) {
      for (int halvings = 0; !options.admissible(next); ++halvings) {
        if (halvings == 30) {
          throw Error(ErrorKind::NonConvergentStep, "no admissible Picard update after 30 halvings");
        }
        for (int i = 0; i < 4; ++i) {
          next.edot[i] = 0.5 * (next.edot[i] + out.state.edot[i]);
          next.e[i] = 0.5 * (next.e[i] + out.state.e[i]);
        }
        ++out.backtracks;
      }
    }
    out.state = next;
  }
}

GeneralForce LinearForceModel::force(const KinematicState& state) const {
  GeneralForce g;
  g.kind = ForceKind::Total;
  for (int i = 0; i < 4; ++i) {
    double s = f0[i];
    for (int j = 0; j < 4; ++j) s += k_e[i][j] * state.e[j] + k_v[i][j] * state.edot[j];
    g.f[i] = s;
  }
  return g;
}

ForceSample LinearForceModel::sample(const KinematicState& state, const PumpConfig& config) const {
  ForceSample s;
  for (std::size_t b = 0; b < kJointBlocks; ++b) s.total[b] = force(perturbed_state(state, b, config));
  return s;
}

}  // namespace pcfilm
