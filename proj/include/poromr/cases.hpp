#pragma once

#include <array>
#include <optional>
#include <string>

#include "poromr/assembly.hpp"
#include "poromr/fields.hpp"
#include "poromr/params.hpp"
#include "poromr/timegrid.hpp"

namespace poromr {

// A benchmark problem: parameters, sources, boundary plan and data, initial
// data, and (when known) the exact solution.
struct CaseDefinition {
  std::string name;
  PhysicalParams params;
  BoundaryPlan plan;

  VectorFn body_force;  // f
  ScalarFn source;      // phi
  VectorFn traction;    // f1, total stress data on Neumann-u segments
  ScalarFn flux;        // phi1, on Neumann-p segments

  VectorFn u_bc;  // Dirichlet displacement data
  ScalarFn p_bc;  // Dirichlet pressure data

  SpatialVectorFn u0;
  SpatialMatrixFn grad_u0;
  SpatialScalarFn p0;
  SpatialScalarFn q0;  // div u0

  struct Exact {
    VectorFn u;
    std::function<std::array<std::array<double, 2>, 2>(double, double, double)> grad_u;
    ScalarFn p;
    std::function<std::array<double, 2>(double, double, double)> grad_p;
  };
  std::optional<Exact> exact;

  TimeGrid recommended;  // published run configuration
};

// Manufactured solution on the unit square (full Dirichlet pressure, mixed
// displacement conditions). The parameterized overloads rebuild the sources
// and boundary data consistently for the supplied material parameters.
CaseDefinition test1_manufactured();
CaseDefinition test1_manufactured(const PhysicalParams& params);

// Drainage problem driven by a time-periodic pressure strip on the bottom
// edge; homogeneous elsewhere.
CaseDefinition test2_barry_mercer();
CaseDefinition test2_barry_mercer(const PhysicalParams& params);

// Footing load: downward unit traction on the top edge, clamped bottom,
// no-flux pressure boundary.
CaseDefinition test3_footing();
CaseDefinition test3_footing(const PhysicalParams& params);

// Pure-Neumann constant-injection problem used by the energy/conservation
// verification tests.
CaseDefinition verification_neumann();
CaseDefinition verification_neumann(const PhysicalParams& params);

CaseDefinition case_by_name(const std::string& name);
CaseDefinition case_by_name(const std::string& name, const PhysicalParams& params);

// Outward unit normal of the unit square at a boundary point.
std::array<double, 2> unit_square_normal(double x, double y);

// True when no displacement component is Dirichlet anywhere, i.e. the Stokes
// block needs the rigid-motion constraint rows.
bool needs_rm_constraints(const CaseDefinition& c);

}  // namespace poromr
