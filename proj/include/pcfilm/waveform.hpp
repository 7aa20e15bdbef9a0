#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pcfilm {

enum class WaveformShape { Constant, Trapezoid, Table };

const char* to_string(WaveformShape shape) noexcept;
WaveformShape waveform_shape_from_string(const std::string& name);

/// Inlet pressure over one shaft revolution, as a function of the phase
/// fraction f = frac(phi / 2pi - phase).
///
/// Trapezoid: rises from low to high over [0, ramp), holds high until duty,
/// falls over [duty, duty + ramp) and holds low for the rest. The defaults
/// stand in for the unpublished measured waveform.
/// Constant: `high` everywhere.
/// Table: periodic linear interpolation of (fraction, pressure) points.
struct Waveform {
  WaveformShape shape = WaveformShape::Trapezoid;
  double low = 0.5e6;    // [Pa]
  double high = 10.0e6;  // [Pa]
  double duty = 0.5;
  double ramp = 0.05;
  double phase = 0.0;
  std::vector<std::pair<double, double>> table;

  double at_angle(double shaft_angle) const;

  /// True while the trapezoid holds its high value.
  bool in_high_phase(double shaft_angle) const;
  bool in_low_phase(double shaft_angle) const;

  void validate() const;
};

}  // namespace pcfilm
