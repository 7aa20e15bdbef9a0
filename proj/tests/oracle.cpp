#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracle {

pcfilm::DenseSystem dense_reynolds(const pcfilm::FilmMesh& mesh, const std::vector<double>& h,
                                   const std::vector<double>& dhdt, double sliding_speed, double viscosity,
                                   double p_inlet, double p_outlet) {
  const std::size_t nt = mesh.n_theta;
  const std::size_t ny = mesh.n_y;
  const std::size_t n = nt * ny;
  const double dx = mesh.piston_radius * 2.0 * std::numbers::pi / static_cast<double>(nt);
  const double dy = mesh.coupling_length / static_cast<double>(ny - 1);
  auto id = [&](long i, long j) {
    const long m = static_cast<long>(nt);
    return static_cast<std::size_t>(((i % m) + m) % m) + static_cast<std::size_t>(j) * nt;
  };
  auto k = [&](std::size_t p) { return std::pow(h[p], 3) / (12.0 * viscosity); };
  auto g = [&](std::size_t p, std::size_t q) { return 1.0 / (0.5 / k(p) + 0.5 / k(q)); };

  DenseMatrix full(n, n);
  std::vector<double> rhs(n, 0.0);
  for (long j = 0; j < static_cast<long>(ny); ++j) {
    for (long i = 0; i < static_cast<long>(nt); ++i) {
      const std::size_t p = id(i, j);
      struct Nb {
        long di, dj;
        double geom;
      };
      const Nb nbs[4] = {{1, 0, dy / dx}, {-1, 0, dy / dx}, {0, 1, dx / dy}, {0, -1, dx / dy}};
      for (const Nb& nb : nbs) {
        const long jj = j + nb.dj;
        if (jj < 0 || jj >= static_cast<long>(ny)) continue;
        const std::size_t q = id(i + nb.di, jj);
        const double c = g(p, q) * nb.geom;
        full(p, p) += c;
        full(p, q) -= c;
      }
      const double dhdx = (h[id(i + 1, j)] - h[id(i - 1, j)]) / (2.0 * dx);
      rhs[p] = -(0.5 * sliding_speed * dhdx + dhdt[p]) * dx * dy;
    }
  }
  // known values on the rings
  std::vector<double> known(n, 0.0);
  std::vector<bool> fixed(n, false);
  for (std::size_t i = 0; i < nt; ++i) {
    fixed[i] = true;
    known[i] = p_inlet;
    fixed[i + (ny - 1) * nt] = true;
    known[i + (ny - 1) * nt] = p_outlet;
  }
  pcfilm::DenseSystem out{DenseMatrix(n, n), std::vector<double>(n, 0.0)};
  for (std::size_t p = 0; p < n; ++p) {
    if (fixed[p]) {
      out.a(p, p) = full(p, p);
      out.s[p] = full(p, p) * known[p];
      continue;
    }
    out.s[p] = rhs[p];
    for (std::size_t q = 0; q < n; ++q) {
      if (fixed[q]) {
        out.s[p] -= full(p, q) * known[q];
      } else {
        out.a(p, q) = full(p, q);
      }
    }
  }
  return out;
}

std::vector<double> lu_solve(DenseMatrix a, std::vector<double> b) {
  const std::size_t n = a.rows;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    }
    if (a(piv, c) == 0.0) throw std::runtime_error("singular dense matrix");
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(c, k), a(piv, k));
      std::swap(b[c], b[piv]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= a(r, k) * x[k];
    x[r] = s / a(r, r);
  }
  return x;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double v = a(i, k);
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += v * b(k, j);
    }
  }
  return c;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

DenseMatrix identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix inverse(const DenseMatrix& a) {
  const std::size_t n = a.rows;
  DenseMatrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<double> e(n, 0.0);
    e[c] = 1.0;
    const std::vector<double> col = lu_solve(a, e);
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
  }
  return inv;
}

std::vector<double> apply(const DenseMatrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.rows, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

DenseMatrix lower(const DenseMatrix& a) {
  DenseMatrix l(a.rows, a.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < i; ++j) l(i, j) = a(i, j);
  return l;
}

DenseMatrix diagonal(const DenseMatrix& a) {
  DenseMatrix d(a.rows, a.cols);
  for (std::size_t i = 0; i < a.rows; ++i) d(i, i) = a(i, i);
  return d;
}

namespace {

DenseMatrix add_scaled(const DenseMatrix& a, const DenseMatrix& b, double s) {
  DenseMatrix c = a;
  for (std::size_t k = 0; k < c.data.size(); ++k) c.data[k] += s * b.data[k];
  return c;
}

DenseMatrix diag_inverse(const DenseMatrix& d) {
  DenseMatrix m(d.rows, d.cols);
  for (std::size_t i = 0; i < d.rows; ++i) m(i, i) = 1.0 / d(i, i);
  return m;
}

}  // namespace

DenseMatrix assor1_inverse(const DenseMatrix& a, double omega) {
  const DenseMatrix d = diagonal(a);
  const DenseMatrix dl = add_scaled(d, lower(a), omega);  // D + wL
  const DenseMatrix m = multiply(multiply(dl, diag_inverse(d)), transpose(dl));
  DenseMatrix out(a.rows, a.cols);
  for (std::size_t i = 0; i < a.rows; ++i) out(i, i) = omega * (2.0 - omega) / m(i, i);
  return out;
}

DenseMatrix ssor_inverse(const DenseMatrix& a, double omega) {
  const DenseMatrix d = diagonal(a);
  const DenseMatrix dl_inv = inverse(add_scaled(d, lower(a), omega));
  DenseMatrix m = multiply(multiply(transpose(dl_inv), d), dl_inv);
  for (double& v : m.data) v *= omega * (2.0 - omega);
  return m;
}

DenseMatrix assor2_inverse(const DenseMatrix& a, double omega) {
  const std::size_t n = a.rows;
  const DenseMatrix dinv = diag_inverse(diagonal(a));
  const DenseMatrix dl = multiply(dinv, lower(a));
  const DenseMatrix left = add_scaled(identity(n), transpose(multiply(lower(a), dinv)), -omega);  // I - w D^-1 L^T
  const DenseMatrix right = add_scaled(identity(n), dl, -omega);                                  // I - w D^-1 L
  DenseMatrix m = multiply(multiply(left, right), dinv);
  for (double& v : m.data) v *= omega * (2.0 - omega);
  return m;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double rel_inf_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  const double scale = std::max(inf_norm(a), inf_norm(b));
  return scale > 0.0 ? m / scale : m;
}

pcfilm::TexturePattern coarse_texture(const pcfilm::FilmMesh& mesh, std::size_t cells_theta, std::size_t cells_y,
                                      double depth) {
  pcfilm::TexturePattern t;
  t.cells_theta = cells_theta;
  t.cells_y = cells_y;
  t.depth = depth;
  t.pitch_y = 0.5 * mesh.coupling_length / static_cast<double>(cells_y);
  t.band_start = 0.25 * mesh.coupling_length;
  t.coverage = 0.5;
  return t;
}

RandomCase random_case(std::mt19937_64& rng, bool textured, std::size_t max_theta, std::size_t max_y) {
  RandomCase c;
  std::uniform_int_distribution<std::size_t> nt(8, max_theta);
  std::uniform_int_distribution<std::size_t> ny(6, max_y);
  std::uniform_real_distribution<double> ecc(-2.5e-6, 2.5e-6);
  std::uniform_real_distribution<double> vel(-1.0e-4, 1.0e-4);
  std::uniform_real_distribution<double> len(0.02, 0.05);
  std::uniform_real_distribution<double> pin(0.0, 10.0e6);
  c.mesh = pcfilm::FilmMesh(nt(rng), ny(rng), len(rng), c.pump.piston_radius);
  for (int k = 0; k < 4; ++k) {
    c.state.e[k] = ecc(rng);
    c.state.edot[k] = vel(rng);
  }
  if (textured) c.texture = coarse_texture(c.mesh, c.mesh.n_theta / 2, 2, 10.0e-6);
  c.bc = {pin(rng), c.pump.outlet_pressure};
  c.sliding_speed = c.pump.angular_speed() * c.pump.piston_radius;
  return c;
}

pcfilm::DiaSystem assemble_case(const RandomCase& c) {
  const auto h = pcfilm::film_thickness(c.mesh, c.pump, c.state, c.texture);
  const auto dh = pcfilm::film_thickness_rate(c.mesh, c.pump, c.state);
  return pcfilm::assemble(c.mesh, h, dh, c.sliding_speed, c.pump.oil_viscosity, c.bc);
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

}  // namespace oracle
