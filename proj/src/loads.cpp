#include "pcfilm/loads.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pcfilm/error.hpp"
#include "pcfilm/parallel.hpp"

namespace pcfilm {

namespace {

constexpr int kComponents = 13;

}  // namespace

const char* to_string(ForceKind kind) noexcept {
  switch (kind) {
    case ForceKind::External: return "external";
    case ForceKind::Inertial: return "inertial";
    case ForceKind::Oil: return "oil";
    case ForceKind::Total: return "total";
  }
  return "total";
}

WrenchPart WrenchBreakdown::total() const {
  WrenchPart t;
  for (int k = 0; k < 3; ++k) {
    t.force[k] = pressure.force[k] + shear.force[k];
    t.moment[k] = pressure.moment[k] + shear.moment[k];
  }
  t.circumferential = pressure.circumferential + shear.circumferential;
  return t;
}

double GeneralForce::norm() const {
  double s = 0.0;
  for (double v : f) s += v * v;
  return std::sqrt(s);
}

GeneralForce operator+(const GeneralForce& a, const GeneralForce& b) {
  GeneralForce out;
  for (int k = 0; k < 4; ++k) out.f[k] = a.f[k] + b.f[k];
  out.kind = ForceKind::Total;
  return out;
}

WrenchBreakdown oil_wrench(const FilmMesh& mesh, std::span<const double> p, std::span<const double> h,
                           double sliding_speed, double viscosity, const OilWrenchOptions& options) {
  mesh.validate();
  if (p.size() != mesh.size() || h.size() != mesh.size()) {
    throw Error(ErrorKind::DimensionMismatch, "oil_wrench: fields do not match the mesh");
  }
  const std::size_t nt = mesh.n_theta;
  const std::size_t cells = nt * (mesh.n_y - 1);
  const std::size_t chunks = parallel::chunk_count(cells);
  const double dth = mesh.dtheta();
  const double dy = mesh.dy();
  const double rk = mesh.piston_radius;
  const double area = rk * dth * dy;
  const bool floor = options.cavitation_floor;
  auto pr = [&](std::size_t k) { return floor ? std::max(p[k], 0.0) : p[k]; };

  std::vector<double> partials(chunks * kComponents, 0.0);
  const auto nchunks = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < nchunks; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * parallel::kReductionChunk;
    const std::size_t end = std::min(cells, begin + parallel::kReductionChunk);
    double acc[kComponents] = {};
    for (std::size_t cell = begin; cell < end; ++cell) {
      const std::size_t i = cell % nt;
      const std::size_t j = cell / nt;
      const std::size_t i1 = (i + 1 < nt) ? i + 1 : 0;
      const std::size_t k00 = i + j * nt;
      const std::size_t k10 = i1 + j * nt;
      const std::size_t k01 = i + (j + 1) * nt;
      const std::size_t k11 = i1 + (j + 1) * nt;
      const double theta = (static_cast<double>(i) + 0.5) * dth;
      const double yc = (static_cast<double>(j) + 0.5) * dy;
      const double c_t = std::cos(theta);
      const double s_t = std::sin(theta);
      const double pc = 0.25 * (pr(k00) + pr(k10) + pr(k01) + pr(k11));
      const double hc = 0.25 * (h[k00] + h[k10] + h[k01] + h[k11]);
      const double dpdth = 0.5 * ((pr(k10) + pr(k11)) - (pr(k00) + pr(k01))) / dth;
      const double dpdy = 0.5 * ((pr(k01) + pr(k11)) - (pr(k00) + pr(k10))) / dy;
      const double tau_t = viscosity * sliding_speed / hc + 0.5 * hc * dpdth / rk;
      const double tau_y = 0.5 * hc * dpdy;

      const double rx = rk * c_t;
      const double ry = rk * s_t;
      const double rz = yc;
      // pressure: F = -p (cos, sin, 0) dA
      const double fpx = -pc * c_t * area;
      const double fpy = -pc * s_t * area;
      // shear: F = (tau_t (-sin, cos, 0) + tau_y (0, 0, 1)) dA
      const double fsx = -tau_t * s_t * area;
      const double fsy = tau_t * c_t * area;
      const double fsz = tau_y * area;

      acc[0] += fpx;
      acc[1] += fpy;
      acc[3] -= rz * fpy;
      acc[4] += rz * fpx;
      acc[5] += rx * fpy - ry * fpx;
      acc[6] += fsx;
      acc[7] += fsy;
      acc[8] += fsz;
      acc[9] += ry * fsz - rz * fsy;
      acc[10] += rz * fsx - rx * fsz;
      acc[11] += rx * fsy - ry * fsx;
      acc[12] += tau_t * area;
    }
    for (int q = 0; q < kComponents; ++q) partials[static_cast<std::size_t>(q) * chunks + static_cast<std::size_t>(c)] = acc[q];
  }

  double sum[kComponents];
  for (int q = 0; q < kComponents; ++q) {
    sum[q] = parallel::tree_reduce(
        std::span<double>(partials.data() + static_cast<std::size_t>(q) * chunks, chunks));
  }
  WrenchBreakdown w;
  w.pressure.force = {sum[0], sum[1], sum[2]};
  w.pressure.moment = {sum[3], sum[4], sum[5]};
  w.pressure.circumferential = 0.0;
  w.shear.force = {sum[6], sum[7], sum[8]};
  w.shear.moment = {sum[9], sum[10], sum[11]};
  w.shear.circumferential = sum[12];
  return w;
}

GeneralForce general_oil_force(const WrenchPart& wrench, double coupling_length) {
  if (!(coupling_length > 0.0)) throw Error(ErrorKind::InvalidArgument, "coupling length must be positive");
  GeneralForce g;
  g.kind = ForceKind::Oil;
  g.f[2] = wrench.moment[1] / coupling_length;
  g.f[3] = -wrench.moment[0] / coupling_length;
  g.f[0] = wrench.force[0] - g.f[2];
  g.f[1] = wrench.force[1] - g.f[3];
  return g;
}

Vec4 lateral_wrench(const GeneralForce& force, double coupling_length) {
  const Vec4& f = force.f;
  return {f[0] + f[2], f[1] + f[3], -coupling_length * f[3], coupling_length * f[2]};
}

double piston_thrust(const PumpConfig& config, double inlet_pressure) {
  return inlet_pressure * std::numbers::pi * config.piston_radius * config.piston_radius;
}

GeneralForce external_force(const PumpConfig& config, double t, double inlet_pressure) {
  const ShaftKinematics k = shaft_kinematics(config, t);
  const double lateral = piston_thrust(config, inlet_pressure) * std::tan(config.swashplate_angle);
  GeneralForce g;
  g.kind = ForceKind::External;
  g.f[2] = -lateral * std::cos(k.shaft_angle);
  g.f[3] = lateral * std::sin(k.shaft_angle);
  return g;
}

GeneralForce inertial_force(const PumpConfig& config, double t) {
  shaft_kinematics(config, t);
  const double w = config.angular_speed();
  const double a = w * w * config.pitch_radius;
  GeneralForce g;
  g.kind = ForceKind::Inertial;
  g.f[0] = 0.5 * config.piston_mass * a;
  g.f[2] = 0.5 * config.piston_mass * a + config.slipper_mass * a;
  return g;
}

}  // namespace pcfilm
