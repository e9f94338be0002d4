#pragma once
// Triple-well potential in barycentric form, with u0 = 1 - u1 - u2:
//   W(u1,u2) = c01 u0²u1² + c02 u0²u2² + c12 u1²u2²
//            + cb [max(0,-u0)⁴ + max(0,-u1)⁴ + max(0,-u2)⁴].
// W >= 0, vanishing exactly at (1,0), (0,1), (0,0) in (u1,u2) coordinates,
// with zero gradient there; the quartic term keeps W coercive off the simplex.

#include <utility>

#include "tern/params.hpp"

namespace tern {

double triple_well(double u1, double u2, const WellParams& w);
std::pair<double, double> triple_well_grad(double u1, double u2, const WellParams& w);

// max over the simplex (sampled) of the spectral norm of Hess W; used to
// size the stabilizing splitting constant.
double well_hessian_bound(const WellParams& w);

}  // namespace tern
