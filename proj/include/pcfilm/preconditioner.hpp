#pragma once

#include <span>
#include <string>
#include <vector>

#include "pcfilm/dia_system.hpp"

namespace pcfilm {

enum class PreconditionerKind { Jacobian, Ssor, AssorI, AssorII };

const char* to_string(PreconditionerKind kind) noexcept;
PreconditionerKind preconditioner_from_string(const std::string& name);

/// Preconditioners built from the splitting A = L + D + L^T.
///
///   Jacobian  z = D^-1 r
///   Ssor      z = w(2-w) (D+wL)^-T D (D+wL)^-1 r        (exact triangular solves)
///   AssorI    z_i = w(2-w) r_i / [(D+wL) D^-1 (D+wL)^T]_ii
///   AssorII   z = (2-w) w (I - w D^-1 L^T)(I - w D^-1 L) D^-1 r
///
/// AssorII is the truncated Neumann approximation of the Ssor inverse, applied
/// in two row-parallel passes. Ssor is applied with sequential sweeps.
///
/// Holds a non-owning pointer to the system; the system must outlive it.
class Preconditioner {
 public:
  Preconditioner() = default;

  /// Throws Error(ZeroDiagonal) for non-positive or non-finite diagonal
  /// entries and Error(InvalidArgument) for omega outside (0, 2).
  static Preconditioner build(const DiaSystem& sys, PreconditionerKind kind, double omega = 1.0);

  PreconditionerKind kind() const { return kind_; }
  double omega() const { return omega_; }
  const DiaSystem& system() const { return *sys_; }
  bool row_parallel() const { return kind_ != PreconditionerKind::Ssor; }
  bool two_pass() const { return kind_ == PreconditionerKind::AssorII; }

  /// Per-row scale for the diagonal variants (Jacobian, AssorI), or 1/D_i
  /// for AssorII and Ssor.
  std::span<const double> diagonal_scale() const { return scale_; }

  /// First pass for one row: z_i for the diagonal variants, v_i for AssorII.
  double first_pass_row(const double* r, std::size_t row) const {
    if (kind_ != PreconditionerKind::AssorII) return scale_[row] * r[row];
    const RowNeighbors nb = row_neighbors(*sys_, row);
    double acc = 0.0;
    for (int k = 0; k < nb.lower_count; ++k) acc += nb.lower_val[k] * (r[nb.lower_col[k]] * scale_[nb.lower_col[k]]);
    return scale_[row] * (r[row] - omega_ * acc);
  }

  /// Second pass of AssorII for one row.
  double second_pass_row(const double* v, std::size_t row) const {
    const RowNeighbors nb = row_neighbors(*sys_, row);
    double acc = 0.0;
    for (int k = 0; k < nb.upper_count; ++k) acc += nb.upper_val[k] * v[nb.upper_col[k]];
    return factor_ * (v[row] - omega_ * scale_[row] * acc);
  }

  /// z = M^-1 r. `scratch` (size n) is needed by AssorII and Ssor.
  void apply(std::span<const double> r, std::span<double> z, std::span<double> scratch) const;

  /// Sequential Ssor application.
  void apply_ssor(std::span<const double> r, std::span<double> z, std::span<double> scratch) const;

 private:
  const DiaSystem* sys_ = nullptr;
  PreconditionerKind kind_ = PreconditionerKind::Jacobian;
  double omega_ = 1.0;
  double factor_ = 1.0;  // w(2-w)
  std::vector<double> scale_;
};

/// Convenience form of Preconditioner::apply.
std::vector<double> apply_preconditioner(const Preconditioner& precond, std::span<const double> r);

}  // namespace pcfilm
