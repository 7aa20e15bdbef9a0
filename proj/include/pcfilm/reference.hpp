#pragma once

#include <span>
#include <vector>

#include "pcfilm/assembly.hpp"
#include "pcfilm/preconditioner.hpp"

// Serial reference versions of the data-parallel kernels. They are written in
// a different traversal order from the OpenMP kernels (band-major products,
// face-major assembly) and serve as cross-checks and benchmark baselines.

namespace pcfilm::reference {

/// y = A x, one band at a time.
void spmv(const DiaSystem& a, std::span<const double> x, std::span<double> y);

/// Left-to-right sum.
double dot(std::span<const double> a, std::span<const double> b);

/// Face loop: every face conductance is computed once and scattered into
/// both rows, then the Dirichlet rings are folded.
DiaSystem assemble(const FilmMesh& mesh, const ScalarField& h, const ScalarField& dhdt, double sliding_speed,
                   double viscosity, const BoundaryCondition& bc);

/// Serial application of any preconditioner variant.
std::vector<double> apply_preconditioner(const Preconditioner& precond, std::span<const double> r);

}  // namespace pcfilm::reference
