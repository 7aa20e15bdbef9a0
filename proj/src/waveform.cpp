#include "pcfilm/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pcfilm/error.hpp"

namespace pcfilm {

namespace {

double fraction(double shaft_angle, double phase) {
  const double f = shaft_angle / (2.0 * std::numbers::pi) - phase;
  return f - std::floor(f);
}

}  // namespace

const char* to_string(WaveformShape shape) noexcept {
  switch (shape) {
    case WaveformShape::Constant: return "constant";
    case WaveformShape::Trapezoid: return "trapezoid";
    case WaveformShape::Table: return "table";
  }
  return "trapezoid";
}

WaveformShape waveform_shape_from_string(const std::string& name) {
  if (name == "constant") return WaveformShape::Constant;
  if (name == "trapezoid") return WaveformShape::Trapezoid;
  if (name == "table") return WaveformShape::Table;
  throw Error(ErrorKind::InvalidArgument, "unknown waveform shape '" + name + "'");
}

double Waveform::at_angle(double shaft_angle) const {
  const double f = fraction(shaft_angle, phase);
  switch (shape) {
    case WaveformShape::Constant:
      return high;
    case WaveformShape::Trapezoid:
      if (f < ramp) return low + (high - low) * f / ramp;
      if (f < duty) return high;
      if (f < duty + ramp) return high - (high - low) * (f - duty) / ramp;
      return low;
    case WaveformShape::Table: {
      const auto& t = table;
      if (t.size() == 1) return t[0].second;
      auto it = std::upper_bound(t.begin(), t.end(), f,
                                 [](double v, const std::pair<double, double>& pt) { return v < pt.first; });
      // wrap between the last and first points
      const auto& a = (it == t.begin()) ? t.back() : *(it - 1);
      const auto& b = (it == t.end()) ? t.front() : *it;
      double x0 = a.first;
      double x1 = b.first;
      double x = f;
      if (x1 <= x0) {
        x1 += 1.0;
        if (x < x0) x += 1.0;
      }
      return a.second + (b.second - a.second) * (x - x0) / (x1 - x0);
    }
  }
  return high;
}

bool Waveform::in_high_phase(double shaft_angle) const {
  if (shape == WaveformShape::Constant) return true;
  if (shape == WaveformShape::Table) return at_angle(shaft_angle) >= 0.5 * (low + high);
  const double f = fraction(shaft_angle, phase);
  return f >= ramp && f < duty;
}

bool Waveform::in_low_phase(double shaft_angle) const {
  if (shape == WaveformShape::Constant) return false;
  if (shape == WaveformShape::Table) return !in_high_phase(shaft_angle);
  const double f = fraction(shaft_angle, phase);
  return f >= duty + ramp;
}

void Waveform::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::InvalidArgument, what);
  };
  require(std::isfinite(low) && std::isfinite(high) && low >= 0.0 && high >= 0.0,
          "waveform pressures must be finite and >= 0");
  require(std::isfinite(phase), "waveform phase must be finite");
  if (shape == WaveformShape::Trapezoid) {
    require(ramp > 0.0 && duty > ramp && duty + ramp <= 1.0, "trapezoid needs 0 < ramp < duty, duty + ramp <= 1");
  }
  if (shape == WaveformShape::Table) {
    require(!table.empty(), "table waveform needs at least one point");
    for (std::size_t k = 0; k < table.size(); ++k) {
      require(table[k].first >= 0.0 && table[k].first < 1.0, "table fractions must lie in [0, 1)");
      require(table[k].second >= 0.0 && std::isfinite(table[k].second), "table pressures must be finite and >= 0");
      if (k > 0) require(table[k].first > table[k - 1].first, "table fractions must increase");
    }
  }
}

}  // namespace pcfilm
