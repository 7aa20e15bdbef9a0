#pragma once

#include <array>
#include <span>

#include "pcfilm/geometry.hpp"

// Frame: X radial outward from the shaft axis, Y circumferential (X cross Y
// along the piston axis), Z along the piston axis from the piston bottom
// (film y = 0) towards the bore exit (y = L_F). Film angle theta is measured
// from +X towards +Y. Moments are taken about the piston bottom centre.

namespace pcfilm {

using Vec3 = std::array<double, 3>;

struct WrenchPart {
  Vec3 force{};
  Vec3 moment{};
  double circumferential = 0.0;  // integral of the theta-direction stress [N]
};

struct WrenchBreakdown {
  WrenchPart pressure;
  WrenchPart shear;

  WrenchPart total() const;
};

enum class ForceKind { External, Inertial, Oil, Total };

const char* to_string(ForceKind kind) noexcept;

/// Generalised force conjugate to (e1, e2, e3, e4): lateral loads carried at
/// the piston-bottom section (F1 along X, F2 along Y) and at y = L_F
/// (F3, F4).
struct GeneralForce {
  Vec4 f{};
  ForceKind kind = ForceKind::Total;

  double norm() const;
};

GeneralForce operator+(const GeneralForce& a, const GeneralForce& b);

struct OilWrenchOptions {
  bool cavitation_floor = false;  // clamp p at 0 Pa inside the integrals
};

/// Midpoint quadrature over the n_theta x (n_y - 1) cells. Pressure acts along
/// -(cos theta, sin theta, 0). Wall shear on the piston uses
///   tau_theta = mu U / h + (h / 2) (1 / R_k) dp/dtheta,  tau_y = (h / 2) dp/dy
/// along (-sin theta, cos theta, 0) and +Z.
WrenchBreakdown oil_wrench(const FilmMesh& mesh, std::span<const double> p, std::span<const double> h,
                           double sliding_speed, double viscosity, const OilWrenchOptions& options = {});

/// Two-point equivalent of the lateral wrench:
///   F3 = M_y / L_F, F4 = -M_x / L_F, F1 = F_x - F3, F2 = F_y - F4.
GeneralForce general_oil_force(const WrenchPart& wrench, double coupling_length);

/// Inverse of general_oil_force for the lateral components: returns
/// (F_x, F_y, M_x, M_y).
Vec4 lateral_wrench(const GeneralForce& force, double coupling_length);

/// Thrust p_in pi R_k^2 of the displacement chamber on the piston bottom.
double piston_thrust(const PumpConfig& config, double inlet_pressure);

/// Lateral swashplate reaction, magnitude thrust*tan(beta), rotating in the
/// block frame as (-cos phi, sin phi) and carried at y = L_F.
GeneralForce external_force(const PumpConfig& config, double t, double inlet_pressure);

/// Centrifugal load (m omega^2 R_b along +X): piston mass at L_F / 2, slipper
/// mass at L_F. The stroke acceleration is axial and has no lateral part.
GeneralForce inertial_force(const PumpConfig& config, double t);

}  // namespace pcfilm
