#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "pcfilm/error.hpp"

namespace pcfilm {

using Vec4 = std::array<double, 4>;

enum class CouplingLengthLaw { Constant, Swashplate };

/// Geometric, kinematic, fluid and finite-difference parameters of the pump.
/// Defaults reproduce the reference pump; viscosity is a placeholder value
/// because the reference data set does not list fluid properties.
struct PumpConfig {
  double piston_radius = 1.0e-2;           // R_k [m]
  double bore_radius = 1.0e-2 + 6.0e-6;    // R_c [m]
  double pitch_radius = 4.05e-2;           // R_b [m]
  double min_coupling_length = 3.0e-2;     // L_Fmin [m]
  double swashplate_angle = 10.0 * std::numbers::pi / 180.0;  // beta [rad]
  double shaft_speed_rpm = 600.0;
  double piston_mass = 0.128;              // m_k [kg]
  double slipper_mass = 0.0259;            // m_G [kg]
  double oil_viscosity = 0.03;             // mu [Pa s]
  double outlet_pressure = 0.5e6;          // [Pa]
  double fd_step_e = 1.0e-9;               // [m]
  double fd_step_edot = 1.0e-8;            // [m/s]
  CouplingLengthLaw coupling_law = CouplingLengthLaw::Swashplate;

  double clearance() const { return bore_radius - piston_radius; }
  double angular_speed() const { return 2.0 * std::numbers::pi * shaft_speed_rpm / 60.0; }
  double period() const { return 60.0 / shaft_speed_rpm; }

  /// Throws Error(InvalidArgument) when an invariant is violated.
  void validate() const;
};

/// Eccentricities (e1, e2) at the piston-bottom end of the film (y = 0) and
/// (e3, e4) at the bore exit (y = L_F), with their time rates.
struct KinematicState {
  Vec4 e{};
  Vec4 edot{};
  double shaft_angle = 0.0;
  double time = 0.0;
};

/// Node-centred mesh, uniform in theta (periodic) and y (both ends included).
struct FilmMesh {
  std::size_t n_theta = 0;
  std::size_t n_y = 0;
  double coupling_length = 0.0;  // L_F [m]
  double piston_radius = 0.0;    // R_k, sets the circumferential arc length

  FilmMesh() = default;
  FilmMesh(std::size_t n_theta, std::size_t n_y, double coupling_length, double piston_radius);

  std::size_t size() const { return n_theta * n_y; }
  std::size_t index(std::size_t i, std::size_t j) const { return i + j * n_theta; }
  double dtheta() const { return 2.0 * std::numbers::pi / static_cast<double>(n_theta); }
  double dx() const { return piston_radius * dtheta(); }
  double dy() const { return coupling_length / static_cast<double>(n_y - 1); }
  double theta(std::size_t i) const { return static_cast<double>(i) * dtheta(); }
  double y(std::size_t j) const { return static_cast<double>(j) * dy(); }

  void validate() const;
};

enum class TextureKind { None, Short, Long };

const char* to_string(TextureKind kind) noexcept;
TextureKind texture_kind_from_string(const std::string& name);

/// Rectangular dimples on a regular grid of cells. Cell pitches are physical
/// lengths measured from the piston bottom (y = 0) so the texture stays
/// attached to the piston while the coupling length changes.
struct TexturePattern {
  std::size_t cells_theta = 0;
  std::size_t cells_y = 0;
  double depth = 0.0;          // h_Text [m]
  double pitch_y = 0.0;        // axial cell pitch [m]
  double band_start = 0.0;     // axial offset of the first cell [m]
  double coverage = 0.5;       // footprint fraction of the pitch, per direction

  bool empty() const { return cells_theta == 0 || cells_y == 0 || depth == 0.0; }
  double band_end() const { return band_start + pitch_y * static_cast<double>(cells_y); }

  /// Depth added at (theta, y); zero outside dimples.
  double depth_at(double theta, double y) const;

  void validate() const;
};

struct TextureSpec {
  TextureKind kind = TextureKind::None;
  double depth = 20.0e-6;
  double coverage = 0.5;
};

enum class Unit { Meter, MeterPerSecond, Pascal };

struct ScalarField {
  std::vector<double> values;
  Unit unit = Unit::Meter;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t k) const { return values[k]; }
  double& operator[](std::size_t k) { return values[k]; }
};

struct ShaftKinematics {
  double shaft_angle = 0.0;        // phi [rad]
  double sliding_speed = 0.0;      // U used in the wedge term [m/s]
  double stroke_speed = 0.0;       // axial piston velocity [m/s]
  double coupling_length = 0.0;    // L_F [m]
  double axial_acceleration = 0.0; // [m/s^2]
};

/// Minimum accepted film thickness; thinner films are reported as contact.
inline constexpr double kThicknessGuard = 0.05e-6;

ShaftKinematics shaft_kinematics(const PumpConfig& config, double t);

double coupling_length(const PumpConfig& config, double shaft_angle);

/// Film thickness at every node. Throws NonPositiveThicknessError when any
/// node falls below kThicknessGuard.
ScalarField film_thickness(const FilmMesh& mesh, const PumpConfig& config,
                           const KinematicState& state, const TexturePattern& texture);

/// Pointwise thickness without the guard; used by the field builders and tests.
double film_thickness_at(const PumpConfig& config, double coupling_length, const Vec4& e,
                         double theta, double y);

/// Pointwise thickness rate; the texture term does not move.
double film_thickness_rate_at(const PumpConfig& config, double coupling_length, const Vec4& e,
                              const Vec4& edot, double theta, double y);

ScalarField film_thickness_rate(const FilmMesh& mesh, const PumpConfig& config,
                                const KinematicState& state);

TexturePattern build_texture_pattern(const TextureSpec& spec, const FilmMesh& mesh);

inline TexturePattern build_texture_pattern(TextureKind kind, const FilmMesh& mesh) {
  return build_texture_pattern(TextureSpec{kind}, mesh);
}

/// Smallest value and its node index; used by the thickness guard.
std::pair<std::size_t, double> min_entry(const ScalarField& field);

}  // namespace pcfilm
