#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace pcfilm {

/// Diagonal-compressed symmetric five-point system on an n_theta x n_y ring
/// mesh (node index i + j*n_theta). Each band only stores the entries that can
/// exist:
///
///   ap   length n                 main diagonal
///   as   length n - n_S           row (i,j) -> (i,j-1), rows j >= 1
///   an   length n - n_N           row (i,j) -> (i,j+1), rows j <= n_y-2
///   ae   length n - n_E           row (i,j) -> (i+1,j), i <= n_theta-2
///   aw   length n - n_W           row (i,j) -> (i-1,j), i >= 1
///   aeb  length n_E               row (n_theta-1,j) -> (0,j), periodic closure
///   awb  length n_W               row (0,j) -> (n_theta-1,j), periodic closure
///
/// with n_S = n_N = n_theta and n_E = n_W = n_y. The row equation is
/// ap*p_P + ae*p_E + aw*p_W + as*p_S + an*p_N = s.
struct DiaSystem {
  std::size_t n_theta = 0;
  std::size_t n_y = 0;
  std::vector<double> ap, as, an, ae, aw, aeb, awb;
  std::vector<double> s;

  DiaSystem() = default;
  DiaSystem(std::size_t n_theta, std::size_t n_y);

  std::size_t n() const { return n_theta * n_y; }
  std::size_t n_south() const { return n_theta; }
  std::size_t n_north() const { return n_theta; }
  std::size_t n_east() const { return n_y; }
  std::size_t n_west() const { return n_y; }
  std::size_t stored_entries() const;

  // Band slots owned by node (i, j).
  std::size_t ae_slot(std::size_t i, std::size_t j) const { return j * (n_theta - 1) + i; }
  std::size_t aw_slot(std::size_t i, std::size_t j) const { return j * (n_theta - 1) + (i - 1); }
  std::size_t as_slot(std::size_t i, std::size_t j) const { return (j - 1) * n_theta + i; }
  std::size_t an_slot(std::size_t i, std::size_t j) const { return j * n_theta + i; }
};

/// Off-diagonal neighbours of one row, split into the strictly lower and
/// strictly upper triangle of the matrix. At most three of each.
struct RowNeighbors {
  std::size_t lower_col[3];
  double lower_val[3];
  int lower_count = 0;
  std::size_t upper_col[3];
  double upper_val[3];
  int upper_count = 0;
};

inline RowNeighbors row_neighbors(const DiaSystem& a, std::size_t row) {
  RowNeighbors nb;
  const std::size_t nt = a.n_theta;
  const std::size_t i = row % nt;
  const std::size_t j = row / nt;
  // lower: west, south, east wrap
  if (i >= 1) {
    nb.lower_col[nb.lower_count] = row - 1;
    nb.lower_val[nb.lower_count++] = a.aw[a.aw_slot(i, j)];
  }
  if (j >= 1) {
    nb.lower_col[nb.lower_count] = row - nt;
    nb.lower_val[nb.lower_count++] = a.as[a.as_slot(i, j)];
  }
  if (i == nt - 1) {
    nb.lower_col[nb.lower_count] = row - (nt - 1);
    nb.lower_val[nb.lower_count++] = a.aeb[j];
  }
  // upper: east, north, west wrap
  if (i + 1 < nt) {
    nb.upper_col[nb.upper_count] = row + 1;
    nb.upper_val[nb.upper_count++] = a.ae[a.ae_slot(i, j)];
  }
  if (j + 1 < a.n_y) {
    nb.upper_col[nb.upper_count] = row + nt;
    nb.upper_val[nb.upper_count++] = a.an[a.an_slot(i, j)];
  }
  if (i == 0) {
    nb.upper_col[nb.upper_count] = row + (nt - 1);
    nb.upper_val[nb.upper_count++] = a.awb[j];
  }
  return nb;
}

/// (A x)_row, walking the bands of one row.
inline double row_product(const DiaSystem& a, const double* x, std::size_t row) {
  const std::size_t nt = a.n_theta;
  const std::size_t i = row % nt;
  const std::size_t j = row / nt;
  double y = a.ap[row] * x[row];
  if (i >= 1) y += a.aw[a.aw_slot(i, j)] * x[row - 1];
  if (i + 1 < nt) y += a.ae[a.ae_slot(i, j)] * x[row + 1];
  if (i == nt - 1) y += a.aeb[j] * x[row - (nt - 1)];
  if (i == 0) y += a.awb[j] * x[row + (nt - 1)];
  if (j >= 1) y += a.as[a.as_slot(i, j)] * x[row - nt];
  if (j + 1 < a.n_y) y += a.an[a.an_slot(i, j)] * x[row + nt];
  return y;
}

/// Row-major dense matrix, used by oracles and debugging only.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct DenseSystem {
  DenseMatrix a;
  std::vector<double> s;
};

inline constexpr std::size_t kDenseExpandLimit = 10000;

/// Throws Error(TooLarge) above kDenseExpandLimit nodes.
DenseSystem expand_dense(const DiaSystem& sys);

/// Band dump: one line per band entry, "band,row,col,value".
void write_dia_csv(std::ostream& os, const DiaSystem& sys);

}  // namespace pcfilm
