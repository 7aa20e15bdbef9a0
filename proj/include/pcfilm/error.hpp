#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcfilm {

enum class ErrorKind {
  InvalidArgument,
  InvalidMesh,
  NonPositiveThickness,
  MeshTooCoarse,
  DimensionMismatch,
  TooLarge,
  ZeroDiagonal,
  SingularJacobian,
  NonConvergentStep,
  InvalidConfig,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Contract and model errors. Numerical outcomes of iterative solvers
/// (breakdown, non-convergence) are reported through status fields instead,
/// so callers keep the best iterate.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class NonPositiveThicknessError : public Error {
 public:
  NonPositiveThicknessError(std::size_t node, double value, int block = -1);

  std::size_t node() const noexcept { return node_; }
  double value() const noexcept { return value_; }
  /// Joint-system block that failed, or -1 outside joint assembly.
  int block() const noexcept { return block_; }

 private:
  std::size_t node_;
  double value_;
  int block_;
};

}  // namespace pcfilm
