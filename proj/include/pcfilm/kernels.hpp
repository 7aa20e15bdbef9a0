#pragma once

#include <span>

#include "pcfilm/dia_system.hpp"

// OpenMP data-parallel kernels. Every kernel is a map over rows with one
// writer per output entry; reductions follow the chunked tree contract in
// parallel.hpp, so results do not depend on the worker count.

namespace pcfilm::kernels {

/// y = A x. Throws Error(DimensionMismatch) on size mismatch.
void spmv(const DiaSystem& a, std::span<const double> x, std::span<double> y);

double dot(std::span<const double> a, std::span<const double> b);

double norm2(std::span<const double> a);

/// Chunk partials of a . b written to `partials` (size chunk_count(n)).
void dot_partials(std::span<const double> a, std::span<const double> b, std::span<double> partials);

/// y += alpha x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// y = x + beta y
void xpby(std::span<const double> x, double beta, std::span<double> y);

/// y = x - A z  (residual style helper)
void residual(const DiaSystem& a, std::span<const double> z, std::span<const double> x, std::span<double> y);

}  // namespace pcfilm::kernels
