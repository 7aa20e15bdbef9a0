#include "pcfilm/geometry.hpp"

#include <cmath>
#include <sstream>

namespace pcfilm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, what);
}

// Lateral position of the piston axis at axial station y.
inline void axis_offset(const Vec4& e, double y, double length, double& ax, double& ay) {
  const double s = y / length;
  ax = e[0] * (1.0 - s) + e[2] * s;
  ay = e[1] * (1.0 - s) + e[3] * s;
}

}  // namespace

void PumpConfig::validate() const {
  require(piston_radius > 0.0, "piston_radius must be positive");
  require(bore_radius > piston_radius, "bore_radius must exceed piston_radius");
  require(pitch_radius > 0.0, "pitch_radius must be positive");
  require(min_coupling_length > 0.0, "min_coupling_length must be positive");
  require(std::abs(swashplate_angle) < std::numbers::pi / 2.0, "swashplate_angle out of range");
  require(shaft_speed_rpm > 0.0, "shaft_speed_rpm must be positive");
  require(piston_mass >= 0.0 && slipper_mass >= 0.0, "masses must be non-negative");
  require(oil_viscosity > 0.0, "oil_viscosity must be positive");
  require(outlet_pressure >= 0.0 && std::isfinite(outlet_pressure), "outlet_pressure must be finite and >= 0");
  require(fd_step_e > 0.0, "fd_step_e must be positive");
  require(fd_step_edot > 0.0, "fd_step_edot must be positive");
}

FilmMesh::FilmMesh(std::size_t n_theta_, std::size_t n_y_, double coupling_length_, double piston_radius_)
    : n_theta(n_theta_), n_y(n_y_), coupling_length(coupling_length_), piston_radius(piston_radius_) {
  validate();
}

void FilmMesh::validate() const {
  if (n_theta < 4 || n_y < 4) {
    std::ostringstream os;
    os << "mesh " << n_theta << "x" << n_y << " needs at least 4 nodes per direction";
    throw Error(ErrorKind::InvalidMesh, os.str());
  }
  if (!(coupling_length > 0.0) || !(piston_radius > 0.0)) {
    throw Error(ErrorKind::InvalidMesh, "mesh extents must be positive");
  }
}

const char* to_string(TextureKind kind) noexcept {
  switch (kind) {
    case TextureKind::None: return "none";
    case TextureKind::Short: return "short";
    case TextureKind::Long: return "long";
  }
  return "none";
}

TextureKind texture_kind_from_string(const std::string& name) {
  if (name == "none") return TextureKind::None;
  if (name == "short") return TextureKind::Short;
  if (name == "long") return TextureKind::Long;
  throw Error(ErrorKind::InvalidArgument, "unknown texture kind '" + name + "'");
}

double TexturePattern::depth_at(double theta, double y) const {
  if (empty()) return 0.0;
  if (y < band_start || y >= band_end()) return 0.0;
  const double lo = 0.5 * (1.0 - coverage);
  const double hi = 0.5 * (1.0 + coverage);

  const double local_y = (y - band_start) / pitch_y;
  const double frac_y = local_y - std::floor(local_y);
  if (frac_y < lo || frac_y >= hi) return 0.0;

  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  const double local_t = t * static_cast<double>(cells_theta) / kTwoPi;
  const double frac_t = local_t - std::floor(local_t);
  if (frac_t < lo || frac_t >= hi) return 0.0;
  return depth;
}

void TexturePattern::validate() const {
  require(depth >= 0.0, "texture depth must be >= 0");
  require(coverage > 0.0 && coverage <= 1.0, "texture coverage must lie in (0, 1]");
  if (cells_theta > 0 && cells_y > 0) {
    require(pitch_y > 0.0, "texture pitch must be positive");
    require(band_start >= 0.0, "texture band must start inside the film");
  }
}

double coupling_length(const PumpConfig& config, double shaft_angle) {
  if (config.coupling_law == CouplingLengthLaw::Constant) return config.min_coupling_length;
  return config.min_coupling_length +
         config.pitch_radius * std::tan(config.swashplate_angle) * (1.0 + std::cos(shaft_angle));
}

ShaftKinematics shaft_kinematics(const PumpConfig& config, double t) {
  if (t < 0.0) throw Error(ErrorKind::InvalidArgument, "time must be non-negative");
  const double omega = config.angular_speed();
  const double stroke = config.pitch_radius * std::tan(config.swashplate_angle);
  ShaftKinematics k;
  k.shaft_angle = omega * t;
  k.sliding_speed = omega * config.piston_radius;
  k.stroke_speed = stroke * omega * std::sin(k.shaft_angle);
  k.coupling_length = coupling_length(config, k.shaft_angle);
  k.axial_acceleration = stroke * omega * omega * std::cos(k.shaft_angle);
  return k;
}

double film_thickness_at(const PumpConfig& config, double length, const Vec4& e, double theta,
                         double y) {
  double ax = 0.0;
  double ay = 0.0;
  axis_offset(e, y, length, ax, ay);
  const double rc = config.bore_radius;
  const double dx = rc * std::cos(theta) - ax;
  const double dy = rc * std::sin(theta) - ay;
  // |R_c n - a| - R_c without cancellation
  const double shift = (ax * ax + ay * ay - 2.0 * rc * (ax * std::cos(theta) + ay * std::sin(theta))) /
                       (std::sqrt(dx * dx + dy * dy) + rc);
  return config.clearance() + shift;
}

double film_thickness_rate_at(const PumpConfig& config, double length, const Vec4& e, const Vec4& edot,
                              double theta, double y) {
  double ax = 0.0;
  double ay = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  axis_offset(e, y, length, ax, ay);
  axis_offset(edot, y, length, vx, vy);
  const double dx = config.bore_radius * std::cos(theta) - ax;
  const double dy = config.bore_radius * std::sin(theta) - ay;
  const double r = std::sqrt(dx * dx + dy * dy);
  return -(dx * vx + dy * vy) / r;
}

std::pair<std::size_t, double> min_entry(const ScalarField& field) {
  std::size_t at = 0;
  double lo = field.values.empty() ? 0.0 : field.values[0];
  for (std::size_t k = 1; k < field.values.size(); ++k) {
    if (field.values[k] < lo) {
      lo = field.values[k];
      at = k;
    }
  }
  return {at, lo};
}

ScalarField film_thickness(const FilmMesh& mesh, const PumpConfig& config,
                           const KinematicState& state, const TexturePattern& texture) {
  mesh.validate();
  ScalarField h{std::vector<double>(mesh.size()), Unit::Meter};
  const auto n = static_cast<std::ptrdiff_t>(mesh.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k) % mesh.n_theta;
    const auto j = static_cast<std::size_t>(k) / mesh.n_theta;
    const double theta = mesh.theta(i);
    const double y = mesh.y(j);
    h.values[static_cast<std::size_t>(k)] =
        film_thickness_at(config, mesh.coupling_length, state.e, theta, y) + texture.depth_at(theta, y);
  }
  const auto [node, lo] = min_entry(h);
  if (!(lo >= kThicknessGuard)) throw NonPositiveThicknessError(node, lo);
  return h;
}

ScalarField film_thickness_rate(const FilmMesh& mesh, const PumpConfig& config,
                                const KinematicState& state) {
  mesh.validate();
  ScalarField rate{std::vector<double>(mesh.size()), Unit::MeterPerSecond};
  const auto n = static_cast<std::ptrdiff_t>(mesh.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k) % mesh.n_theta;
    const auto j = static_cast<std::size_t>(k) / mesh.n_theta;
    const double theta = mesh.theta(i);
    const double y = mesh.y(j);
    rate.values[static_cast<std::size_t>(k)] =
        film_thickness_rate_at(config, mesh.coupling_length, state.e, state.edot, theta, y);
  }
  return rate;
}

TexturePattern build_texture_pattern(const TextureSpec& spec, const FilmMesh& mesh) {
  mesh.validate();
  TexturePattern pattern;
  pattern.coverage = spec.coverage;
  if (spec.kind == TextureKind::None) {
    pattern.depth = 0.0;
    pattern.validate();
    return pattern;
  }
  pattern.cells_theta = 60;
  pattern.cells_y = spec.kind == TextureKind::Short ? 10 : 20;
  pattern.depth = spec.depth;
  // Square cells: the axial pitch equals the circumferential arc pitch.
  pattern.pitch_y = 2.0 * std::numbers::pi * mesh.piston_radius / static_cast<double>(pattern.cells_theta);
  pattern.band_start = 0.0;
  pattern.validate();

  const double nodes_theta = static_cast<double>(mesh.n_theta) / static_cast<double>(pattern.cells_theta);
  const double nodes_y = pattern.pitch_y / mesh.dy();
  if (nodes_theta < 2.0 || nodes_y < 2.0) {
    std::ostringstream os;
    os << "texture " << pattern.cells_theta << "x" << pattern.cells_y << " on mesh " << mesh.n_theta
       << "x" << mesh.n_y << " resolves " << nodes_theta << "x" << nodes_y << " nodes per cell (need 2)";
    throw Error(ErrorKind::MeshTooCoarse, os.str());
  }
  if (pattern.band_end() > mesh.coupling_length) {
    throw Error(ErrorKind::InvalidArgument, "texture band extends beyond the coupling length");
  }
  return pattern;
}

}  // namespace pcfilm
