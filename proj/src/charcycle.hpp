#ifndef BDIV_CHARCYCLE_HPP
#define BDIV_CHARCYCLE_HPP

#include "connection.hpp"

namespace bdiv {

// Integer combination of the zero section, conormals of D-curves and
// conormals of marked points of X.
struct LagrangianCycle {
    Int zero_section = 0;
    Coeffs curves;  // D-curve id -> coefficient
    Coeffs points;  // point id -> coefficient
};
bool operator==(const LagrangianCycle& a, const LagrangianCycle& b);
LagrangianCycle operator+(const LagrangianCycle& a, const LagrangianCycle& b);
LagrangianCycle operator*(Int k, const LagrangianCycle& a);

// Constructible function constant on the stratification {U, D-curve strata,
// marked points of D}; point values override curve strata which override U.
struct ConstructibleFunction {
    Int on_u = 0;
    Coeffs on_curve;  // D-curve id -> value on its open stratum
    Coeffs on_point;  // point id (on D) -> value
};

// The Lagrangian cycle attached to an effective divisor supported on D:
// coefficient a_i on each D-curve conormal, a_i + a_j at each D-double point.
LagrangianCycle lc_cycle(const SurfacePair& pair, const Coeffs& r_div);

// Euler morphism: zero section m -> +m on all strata; curve conormal m -> -m
// on the curve's stratum and its points; point conormal m -> +m at the point.
ConstructibleFunction euler_of_cycle(const SurfacePair& pair, const LagrangianCycle& cyc);
// inverse unitriangular solve over the stratification
LagrangianCycle cycle_from_euler(const SurfacePair& pair, const ConstructibleFunction& f);

// CC of the structure sheaf localized along D: zero section 1, every D-curve
// conormal 1, every D-double point conormal 1.
LagrangianCycle cc_structure_sheaf(const SurfacePair& pair);

// rank * CC(O_X(*D)) + LC(Irr(X,M)) + sum over points of the delta integral
LagrangianCycle cc_connection(const SurfacePair& pair, const ExpConnection& m,
                              const ConnectionAnalysis& a);

// local Euler characteristic of the solutions at a point of D
Int local_solution_euler(const SurfacePair& pair, const ExpConnection& m,
                         const ConnectionAnalysis& a, const Symbol& point_id);

// intersection with the zero section via the Euler integral:
// zero_section * chi_top - sum curve coeff * (2-2g) + sum point coeffs
Int index_pairing(const SurfacePair& pair, const LagrangianCycle& cyc);

// rank * chi(U) + (LC(Irr(X,M)), zero section) + integral of delta Irr
Int global_chi(const SurfacePair& pair, const ExpConnection& m, const ConnectionAnalysis& a);

// chi of a curve connection: rank * (2 - 2g - punctures) - sum irregularities
Int curve_gos(Int genus, Int punctures, Int rank, const std::vector<Int>& irregularities);

// CC of the solutions restricted to a reduced divisor Z inside D
LagrangianCycle cc_sol_restricted(const SurfacePair& pair, const ExpConnection& m,
                                  const ConnectionAnalysis& a, const Coeffs& z_red);

}  // namespace bdiv

#endif
