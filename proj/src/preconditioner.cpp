#include "pcfilm/preconditioner.hpp"

#include <cmath>
#include <sstream>

#include "pcfilm/error.hpp"

namespace pcfilm {

const char* to_string(PreconditionerKind kind) noexcept {
  switch (kind) {
    case PreconditionerKind::Jacobian: return "jacobian";
    case PreconditionerKind::Ssor: return "ssor";
    case PreconditionerKind::AssorI: return "assor1";
    case PreconditionerKind::AssorII: return "assor2";
  }
  return "jacobian";
}

PreconditionerKind preconditioner_from_string(const std::string& name) {
  if (name == "jacobian") return PreconditionerKind::Jacobian;
  if (name == "ssor") return PreconditionerKind::Ssor;
  if (name == "assor1") return PreconditionerKind::AssorI;
  if (name == "assor2" || name == "assor") return PreconditionerKind::AssorII;
  throw Error(ErrorKind::InvalidArgument, "unknown preconditioner '" + name + "'");
}

Preconditioner Preconditioner::build(const DiaSystem& sys, PreconditionerKind kind, double omega) {
  if (kind != PreconditionerKind::Jacobian && !(omega > 0.0 && omega < 2.0)) {
    std::ostringstream os;
    os << "relaxation factor " << omega << " outside (0, 2)";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  const std::size_t n = sys.n();
  for (std::size_t k = 0; k < n; ++k) {
    if (!(sys.ap[k] > 0.0) || !std::isfinite(sys.ap[k])) {
      std::ostringstream os;
      os << "diagonal entry " << k << " is " << sys.ap[k];
      throw Error(ErrorKind::ZeroDiagonal, os.str());
    }
  }

  Preconditioner p;
  p.sys_ = &sys;
  p.kind_ = kind;
  p.omega_ = kind == PreconditionerKind::Jacobian ? 1.0 : omega;
  p.factor_ = p.omega_ * (2.0 - p.omega_);
  p.scale_.resize(n);

  if (kind == PreconditionerKind::AssorI) {
    const double w2 = p.omega_ * p.omega_;
    const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
      const auto row = static_cast<std::size_t>(r);
      const RowNeighbors nb = row_neighbors(sys, row);
      double acc = 0.0;
      for (int k = 0; k < nb.lower_count; ++k) acc += nb.lower_val[k] * nb.lower_val[k] / sys.ap[nb.lower_col[k]];
      p.scale_[row] = p.factor_ / (sys.ap[row] + w2 * acc);
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) p.scale_[k] = 1.0 / sys.ap[k];
  }
  return p;
}

void Preconditioner::apply(std::span<const double> r, std::span<double> z, std::span<double> scratch) const {
  const std::size_t n = sys_->n();
  if (r.size() != n || z.size() != n) throw Error(ErrorKind::DimensionMismatch, "preconditioner: vector size");
  if (kind_ == PreconditionerKind::Ssor) {
    apply_ssor(r, z, scratch);
    return;
  }
  const auto rows = static_cast<std::ptrdiff_t>(n);
  if (!two_pass()) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t row = 0; row < rows; ++row) {
      z[static_cast<std::size_t>(row)] = first_pass_row(r.data(), static_cast<std::size_t>(row));
    }
    return;
  }
  if (scratch.size() != n) throw Error(ErrorKind::DimensionMismatch, "preconditioner: scratch size");
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t row = 0; row < rows; ++row) {
    scratch[static_cast<std::size_t>(row)] = first_pass_row(r.data(), static_cast<std::size_t>(row));
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t row = 0; row < rows; ++row) {
    z[static_cast<std::size_t>(row)] = second_pass_row(scratch.data(), static_cast<std::size_t>(row));
  }
}

void Preconditioner::apply_ssor(std::span<const double> r, std::span<double> z, std::span<double> scratch) const {
  const std::size_t n = sys_->n();
  if (scratch.size() != n) throw Error(ErrorKind::DimensionMismatch, "preconditioner: scratch size");
  const DiaSystem& a = *sys_;
  // (D + wL) y = r
  for (std::size_t row = 0; row < n; ++row) {
    const RowNeighbors nb = row_neighbors(a, row);
    double acc = 0.0;
    for (int k = 0; k < nb.lower_count; ++k) acc += nb.lower_val[k] * scratch[nb.lower_col[k]];
    scratch[row] = (r[row] - omega_ * acc) / a.ap[row];
  }
  // (D + wL)^T z = D y
  for (std::size_t row = n; row-- > 0;) {
    const RowNeighbors nb = row_neighbors(a, row);
    double acc = 0.0;
    for (int k = 0; k < nb.upper_count; ++k) acc += nb.upper_val[k] * z[nb.upper_col[k]];
    z[row] = (a.ap[row] * scratch[row] - omega_ * acc) / a.ap[row];
  }
  for (std::size_t row = 0; row < n; ++row) z[row] *= factor_;
}

std::vector<double> apply_preconditioner(const Preconditioner& precond, std::span<const double> r) {
  const std::size_t n = precond.system().n();
  std::vector<double> z(n);
  std::vector<double> scratch(n);
  precond.apply(r, z, scratch);
  return z;
}

}  // namespace pcfilm
