#pragma once

#include "pcfilm/dia_system.hpp"
#include "pcfilm/geometry.hpp"

namespace pcfilm {

/// Dirichlet pressures on the two axial ends; the circumferential direction
/// is periodic.
struct BoundaryCondition {
  double inlet = 0.0;   // y = 0, piston bottom [Pa]
  double outlet = 0.0;  // y = L_F [Pa]

  void validate() const;
};

/// Finite-volume discretisation of
///   d/dx(h^3/(12 mu) dp/dx) + d/dy(h^3/(12 mu) dp/dy) = (U/2) dh/dx + dh/dt
/// on x = R_k*theta. Face conductances are harmonic means of h^3/(12 mu); the
/// system is stored negated so ap > 0. The two boundary rings are decoupled
/// Dirichlet rows and their couplings are folded into s of the adjacent ring.
DiaSystem assemble(const FilmMesh& mesh, const ScalarField& h, const ScalarField& dhdt,
                   double sliding_speed, double viscosity, const BoundaryCondition& bc);

namespace detail {

struct AssemblyInputs {
  const FilmMesh* mesh;
  const double* h;
  const double* dhdt;
  double sliding_speed;
  double viscosity;
  BoundaryCondition bc;
};

/// Writes ap, s and every band slot owned by `row`. Rows never write slots
/// owned by other rows.
void assemble_row(const AssemblyInputs& in, std::size_t row, DiaSystem& out);

void check_assembly_inputs(const FilmMesh& mesh, const ScalarField& h, const ScalarField& dhdt,
                           double viscosity, const BoundaryCondition& bc);

}  // namespace detail

}  // namespace pcfilm
