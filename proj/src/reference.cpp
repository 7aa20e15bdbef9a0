#include "pcfilm/reference.hpp"

#include "pcfilm/error.hpp"

namespace pcfilm::reference {

void spmv(const DiaSystem& a, std::span<const double> x, std::span<double> y) {
  const std::size_t n = a.n();
  if (x.size() != n || y.size() != n) throw Error(ErrorKind::DimensionMismatch, "reference spmv: vector size");
  const std::size_t nt = a.n_theta;
  const std::size_t ny = a.n_y;
  for (std::size_t k = 0; k < n; ++k) y[k] = a.ap[k] * x[k];
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i + 1 < nt; ++i) y[i + j * nt] += a.ae[a.ae_slot(i, j)] * x[i + 1 + j * nt];
    for (std::size_t i = 1; i < nt; ++i) y[i + j * nt] += a.aw[a.aw_slot(i, j)] * x[i - 1 + j * nt];
    y[nt - 1 + j * nt] += a.aeb[j] * x[j * nt];
    y[j * nt] += a.awb[j] * x[nt - 1 + j * nt];
  }
  for (std::size_t j = 1; j < ny; ++j) {
    for (std::size_t i = 0; i < nt; ++i) y[i + j * nt] += a.as[a.as_slot(i, j)] * x[i + (j - 1) * nt];
  }
  for (std::size_t j = 0; j + 1 < ny; ++j) {
    for (std::size_t i = 0; i < nt; ++i) y[i + j * nt] += a.an[a.an_slot(i, j)] * x[i + (j + 1) * nt];
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "reference dot: length mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

DiaSystem assemble(const FilmMesh& mesh, const ScalarField& h, const ScalarField& dhdt, double sliding_speed,
                   double viscosity, const BoundaryCondition& bc) {
  detail::check_assembly_inputs(mesh, h, dhdt, viscosity, bc);
  const std::size_t nt = mesh.n_theta;
  const std::size_t ny = mesh.n_y;
  const double dx = mesh.dx();
  const double dy = mesh.dy();
  DiaSystem a(nt, ny);
  auto cond = [&](std::size_t k) { return h[k] * h[k] * h[k] / (12.0 * viscosity); };
  auto face = [&](std::size_t p, std::size_t q) {
    const double kp = cond(p);
    const double kq = cond(q);
    return 2.0 * kp * kq / (kp + kq);
  };

  // circumferential faces (i, j) | (i+1, j), including the periodic one
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nt; ++i) {
      const std::size_t i1 = (i + 1) % nt;
      const std::size_t p = i + j * nt;
      const std::size_t q = i1 + j * nt;
      const double c = face(p, q) * dy / dx;
      a.ap[p] += c;
      a.ap[q] += c;
      if (i + 1 < nt) {
        a.ae[a.ae_slot(i, j)] = -c;
        a.aw[a.aw_slot(i1, j)] = -c;
      } else {
        a.aeb[j] = -c;
        a.awb[j] = -c;
      }
    }
  }
  // axial faces (i, j) | (i, j+1)
  for (std::size_t j = 0; j + 1 < ny; ++j) {
    for (std::size_t i = 0; i < nt; ++i) {
      const std::size_t p = i + j * nt;
      const std::size_t q = i + (j + 1) * nt;
      const double c = face(p, q) * dx / dy;
      a.ap[p] += c;
      a.ap[q] += c;
      a.an[a.an_slot(i, j)] = -c;
      a.as[a.as_slot(i, j + 1)] = -c;
    }
  }
  // sources
  for (std::size_t j = 1; j + 1 < ny; ++j) {
    for (std::size_t i = 0; i < nt; ++i) {
      const std::size_t p = i + j * nt;
      const std::size_t e = (i + 1) % nt + j * nt;
      const std::size_t w = (i + nt - 1) % nt + j * nt;
      a.s[p] = -(0.5 * sliding_speed * (h[e] - h[w]) / (2.0 * dx) + dhdt[p]) * dx * dy;
    }
  }
  // Dirichlet rings: decouple them and move their values to the neighbours
  for (std::size_t i = 0; i < nt; ++i) {
    const std::size_t in_row = i;
    const std::size_t out_row = i + (ny - 1) * nt;
    a.s[in_row + nt] -= a.as[a.as_slot(i, 1)] * bc.inlet;
    a.as[a.as_slot(i, 1)] = 0.0;
    a.an[a.an_slot(i, 0)] = 0.0;
    a.s[out_row - nt] -= a.an[a.an_slot(i, ny - 2)] * bc.outlet;
    a.an[a.an_slot(i, ny - 2)] = 0.0;
    a.as[a.as_slot(i, ny - 1)] = 0.0;
    a.s[in_row] = a.ap[in_row] * bc.inlet;
    a.s[out_row] = a.ap[out_row] * bc.outlet;
  }
  for (std::size_t j : {std::size_t{0}, ny - 1}) {
    for (std::size_t i = 0; i + 1 < nt; ++i) {
      a.ae[a.ae_slot(i, j)] = 0.0;
      a.aw[a.aw_slot(i + 1, j)] = 0.0;
    }
    a.aeb[j] = 0.0;
    a.awb[j] = 0.0;
  }
  return a;
}

std::vector<double> apply_preconditioner(const Preconditioner& m, std::span<const double> r) {
  const DiaSystem& a = m.system();
  const std::size_t n = a.n();
  if (r.size() != n) throw Error(ErrorKind::DimensionMismatch, "reference preconditioner: vector size");
  std::vector<double> z(n);
  std::vector<double> t(n);
  const double w = m.omega();
  const double c = w * (2.0 - w);
  switch (m.kind()) {
    case PreconditionerKind::Jacobian:
      for (std::size_t k = 0; k < n; ++k) z[k] = r[k] / a.ap[k];
      break;
    case PreconditionerKind::AssorI:
      for (std::size_t k = 0; k < n; ++k) {
        const RowNeighbors nb = row_neighbors(a, k);
        double d = a.ap[k];
        for (int q = 0; q < nb.lower_count; ++q) d += w * w * nb.lower_val[q] * nb.lower_val[q] / a.ap[nb.lower_col[q]];
        z[k] = c * r[k] / d;
      }
      break;
    case PreconditionerKind::AssorII: {
      // t = (I - w D^-1 L) D^-1 r, z = c (I - w D^-1 L^T) t
      for (std::size_t k = 0; k < n; ++k) {
        const RowNeighbors nb = row_neighbors(a, k);
        double s = r[k] / a.ap[k];
        for (int q = 0; q < nb.lower_count; ++q) s -= w / a.ap[k] * nb.lower_val[q] * (r[nb.lower_col[q]] / a.ap[nb.lower_col[q]]);
        t[k] = s;
      }
      for (std::size_t k = 0; k < n; ++k) {
        const RowNeighbors nb = row_neighbors(a, k);
        double s = t[k];
        for (int q = 0; q < nb.upper_count; ++q) s -= w / a.ap[k] * nb.upper_val[q] * t[nb.upper_col[q]];
        z[k] = c * s;
      }
      break;
    }
    case PreconditionerKind::Ssor: {
      for (std::size_t k = 0; k < n; ++k) {
        const RowNeighbors nb = row_neighbors(a, k);
        double s = r[k];
        for (int q = 0; q < nb.lower_count; ++q) s -= w * nb.lower_val[q] * t[nb.lower_col[q]];
        t[k] = s / a.ap[k];
      }
      for (std::size_t k = n; k-- > 0;) {
        const RowNeighbors nb = row_neighbors(a, k);
        double s = a.ap[k] * t[k];
        for (int q = 0; q < nb.upper_count; ++q) s -= w * nb.upper_val[q] * z[nb.upper_col[q]];
        z[k] = s / a.ap[k];
      }
      for (double& v : z) v *= c;
      break;
    }
  }
  return z;
}

}  // namespace pcfilm::reference
