#include "pcfilm/assembly.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "pcfilm/error.hpp"

namespace pcfilm {

DiaSystem::DiaSystem(std::size_t nt, std::size_t ny)
    : n_theta(nt),
      n_y(ny),
      ap(nt * ny, 0.0),
      as(nt * ny - nt, 0.0),
      an(nt * ny - nt, 0.0),
      ae(nt * ny - ny, 0.0),
      aw(nt * ny - ny, 0.0),
      aeb(ny, 0.0),
      awb(ny, 0.0),
      s(nt * ny, 0.0) {}

std::size_t DiaSystem::stored_entries() const {
  return ap.size() + as.size() + an.size() + ae.size() + aw.size() + aeb.size() + awb.size();
}

void BoundaryCondition::validate() const {
  if (!std::isfinite(inlet) || !std::isfinite(outlet) || inlet < 0.0 || outlet < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "boundary pressures must be finite and >= 0");
  }
}

namespace detail {

namespace {

inline double harmonic(double a, double b) { return 2.0 * a * b / (a + b); }

}  // namespace

void check_assembly_inputs(const FilmMesh& mesh, const ScalarField& h, const ScalarField& dhdt,
                           double viscosity, const BoundaryCondition& bc) {
  mesh.validate();
  bc.validate();
  if (h.size() != mesh.size() || dhdt.size() != mesh.size()) {
    throw Error(ErrorKind::DimensionMismatch, "thickness fields do not match the mesh");
  }
  if (!(viscosity > 0.0)) throw Error(ErrorKind::InvalidArgument, "viscosity must be positive");
  const auto [node, lo] = min_entry(h);
  if (!(lo > 0.0)) throw NonPositiveThicknessError(node, lo);
}

void assemble_row(const AssemblyInputs& in, std::size_t row, DiaSystem& out) {
  const FilmMesh& m = *in.mesh;
  const std::size_t nt = m.n_theta;
  const std::size_t ny = m.n_y;
  const std::size_t i = row % nt;
  const std::size_t j = row / nt;
  const double dx = m.dx();
  const double dy = m.dy();
  const double inv12mu = 1.0 / (12.0 * in.viscosity);

  auto cond = [&](std::size_t k) {
    const double hk = in.h[k];
    return hk * hk * hk * inv12mu;
  };

  const std::size_t east = (i + 1 < nt) ? row + 1 : row - (nt - 1);
  const std::size_t west = (i >= 1) ? row - 1 : row + (nt - 1);
  const double kp = cond(row);
  const double a_e = harmonic(kp, cond(east)) * dy / dx;
  const double a_w = harmonic(kp, cond(west)) * dy / dx;
  const double a_s = (j >= 1) ? harmonic(kp, cond(row - nt)) * dx / dy : 0.0;
  const double a_n = (j + 1 < ny) ? harmonic(kp, cond(row + nt)) * dx / dy : 0.0;

  const bool boundary = (j == 0 || j + 1 == ny);
  const double off_e = boundary ? 0.0 : -a_e;
  const double off_w = boundary ? 0.0 : -a_w;
  if (i + 1 < nt) {
    out.ae[out.ae_slot(i, j)] = off_e;
  } else {
    out.aeb[j] = off_e;
  }
  if (i >= 1) {
    out.aw[out.aw_slot(i, j)] = off_w;
  } else {
    out.awb[j] = off_w;
  }

  if (boundary) {
    const double diag = a_e + a_w + a_s + a_n;
    const double value = (j == 0) ? in.bc.inlet : in.bc.outlet;
    out.ap[row] = diag;
    out.s[row] = diag * value;
    if (j >= 1) out.as[out.as_slot(i, j)] = 0.0;
    if (j + 1 < ny) out.an[out.an_slot(i, j)] = 0.0;
    return;
  }

  double s = -(0.5 * in.sliding_speed * (in.h[east] - in.h[west]) / (2.0 * dx) + in.dhdt[row]) * dx * dy;
  if (j - 1 == 0) {
    out.as[out.as_slot(i, j)] = 0.0;
    s += a_s * in.bc.inlet;
  } else {
    out.as[out.as_slot(i, j)] = -a_s;
  }
  if (j + 1 == ny - 1) {
    out.an[out.an_slot(i, j)] = 0.0;
    s += a_n * in.bc.outlet;
  } else {
    out.an[out.an_slot(i, j)] = -a_n;
  }
  out.ap[row] = a_e + a_w + a_s + a_n;
  out.s[row] = s;
}

}  // namespace detail

DiaSystem assemble(const FilmMesh& mesh, const ScalarField& h, const ScalarField& dhdt,
                   double sliding_speed, double viscosity, const BoundaryCondition& bc) {
  detail::check_assembly_inputs(mesh, h, dhdt, viscosity, bc);
  DiaSystem sys(mesh.n_theta, mesh.n_y);
  const detail::AssemblyInputs in{&mesh, h.values.data(), dhdt.values.data(), sliding_speed, viscosity, bc};
  const auto n = static_cast<std::ptrdiff_t>(mesh.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t row = 0; row < n; ++row) detail::assemble_row(in, static_cast<std::size_t>(row), sys);
  return sys;
}

DenseSystem expand_dense(const DiaSystem& sys) {
  const std::size_t n = sys.n();
  if (n > kDenseExpandLimit) {
    throw Error(ErrorKind::TooLarge, "dense expansion limited to " + std::to_string(kDenseExpandLimit) + " nodes");
  }
  DenseSystem out{DenseMatrix(n, n), sys.s};
  for (std::size_t row = 0; row < n; ++row) {
    out.a(row, row) = sys.ap[row];
    const RowNeighbors nb = row_neighbors(sys, row);
    for (int k = 0; k < nb.lower_count; ++k) out.a(row, nb.lower_col[k]) += nb.lower_val[k];
    for (int k = 0; k < nb.upper_count; ++k) out.a(row, nb.upper_col[k]) += nb.upper_val[k];
  }
  return out;
}

void write_dia_csv(std::ostream& os, const DiaSystem& sys) {
  const auto old_precision = os.precision(17);
  os << "band,row,col,value\n";
  const std::size_t nt = sys.n_theta;
  for (std::size_t row = 0; row < sys.n(); ++row) os << "AP," << row << ',' << row << ',' << sys.ap[row] << '\n';
  for (std::size_t row = 0; row < sys.n(); ++row) {
    const std::size_t i = row % nt;
    const std::size_t j = row / nt;
    if (i + 1 < nt) os << "AE," << row << ',' << row + 1 << ',' << sys.ae[sys.ae_slot(i, j)] << '\n';
    if (i >= 1) os << "AW," << row << ',' << row - 1 << ',' << sys.aw[sys.aw_slot(i, j)] << '\n';
    if (i == nt - 1) os << "AEB," << row << ',' << row - (nt - 1) << ',' << sys.aeb[j] << '\n';
    if (i == 0) os << "AWB," << row << ',' << row + (nt - 1) << ',' << sys.awb[j] << '\n';
    if (j >= 1) os << "AS," << row << ',' << row - nt << ',' << sys.as[sys.as_slot(i, j)] << '\n';
    if (j + 1 < sys.n_y) os << "AN," << row << ',' << row + nt << ',' << sys.an[sys.an_slot(i, j)] << '\n';
  }
  for (std::size_t row = 0; row < sys.n(); ++row) os << "S," << row << ",-1," << sys.s[row] << '\n';
  os.precision(old_precision);
}

}  // namespace pcfilm
