#include "pcfilm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pcfilm/error.hpp"
#include "pcfilm/parallel.hpp"

namespace pcfilm::kernels {

namespace {

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw Error(ErrorKind::DimensionMismatch, what);
}

}  // namespace

void spmv(const DiaSystem& a, std::span<const double> x, std::span<double> y) {
  require_same(x.size(), a.n(), "spmv: x does not match the system");
  require_same(y.size(), a.n(), "spmv: y does not match the system");
  const auto n = static_cast<std::ptrdiff_t>(a.n());
  const double* xp = x.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t row = 0; row < n; ++row) {
    y[static_cast<std::size_t>(row)] = row_product(a, xp, static_cast<std::size_t>(row));
  }
}

void dot_partials(std::span<const double> a, std::span<const double> b, std::span<double> partials) {
  const std::size_t n = a.size();
  const auto chunks = static_cast<std::ptrdiff_t>(parallel::chunk_count(n));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * parallel::kReductionChunk;
    const std::size_t end = std::min(n, begin + parallel::kReductionChunk);
    double sum = 0.0;
    for (std::size_t k = begin; k < end; ++k) sum += a[k] * b[k];
    partials[static_cast<std::size_t>(c)] = sum;
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same(a.size(), b.size(), "dot: length mismatch");
  std::vector<double> partials(parallel::chunk_count(a.size()));
  dot_partials(a, b, partials);
  return parallel::tree_reduce(partials);
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require_same(x.size(), y.size(), "axpy: length mismatch");
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) y[static_cast<std::size_t>(k)] += alpha * x[static_cast<std::size_t>(k)];
}

void xpby(std::span<const double> x, double beta, std::span<double> y) {
  require_same(x.size(), y.size(), "xpby: length mismatch");
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto u = static_cast<std::size_t>(k);
    y[u] = x[u] + beta * y[u];
  }
}

void residual(const DiaSystem& a, std::span<const double> z, std::span<const double> x, std::span<double> y) {
  require_same(z.size(), a.n(), "residual: z does not match the system");
  require_same(x.size(), a.n(), "residual: x does not match the system");
  require_same(y.size(), a.n(), "residual: y does not match the system");
  const auto n = static_cast<std::ptrdiff_t>(a.n());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t row = 0; row < n; ++row) {
    const auto r = static_cast<std::size_t>(row);
    y[r] = x[r] - row_product(a, z.data(), r);
  }
}

}  // namespace pcfilm::kernels
