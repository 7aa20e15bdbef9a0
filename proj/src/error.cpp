#include "pcfilm/error.hpp"

#include <sstream>

namespace pcfilm {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidMesh: return "InvalidMesh";
    case ErrorKind::NonPositiveThickness: return "NonPositiveThickness";
    case ErrorKind::MeshTooCoarse: return "MeshTooCoarse";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ZeroDiagonal: return "ZeroDiagonal";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::NonConvergentStep: return "NonConvergentStep";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

namespace {

std::string thickness_message(std::size_t node, double value, int block) {
  std::ostringstream os;
  os.precision(17);
  if (block >= 0) os << "block " << block << ", ";
  os << "node " << node << " has film thickness " << value << " m";
  return os.str();
}

}  // namespace

NonPositiveThicknessError::NonPositiveThicknessError(std::size_t node, double value, int block)
    : Error(ErrorKind::NonPositiveThickness, thickness_message(node, value, block)),
      node_(node),
      value_(value),
      block_(block) {}

}  // namespace pcfilm
