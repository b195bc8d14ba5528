#ifndef DRFLOW_CALCULUS_HPP
#define DRFLOW_CALCULUS_HPP

#include <optional>
#include <vector>

#include "drflow/evolutionary.hpp"

namespace drflow {

/* Euler operator delta f / delta u^var = sum_n (-dx)^n (df/du^var_n). */
DiffPoly variational_derivative(const DiffPoly& f, int var);
std::vector<DiffPoly> variational_gradient(const DiffPoly& f);

/* f lies in the image of dx iff it vanishes at the origin and every
 * variational derivative is exactly zero. */
bool is_total_x_derivative(const DiffPoly& f);

/* The unique R with dx(R) = f and R|_{u=0} = 0.  Throws
 * NonzeroConstantTerm when f does not vanish at the origin and
 * NotATotalDerivative when f is not exact. */
DiffPoly antiderivative(const DiffPoly& f);

/* Witness R with H(f) = dx(R), R|_{u=0} = 0, when H(f) is exact. */
std::optional<DiffPoly> conservation_law_witness(const DiffPoly& f, const EvolutionaryOp& H);

/* Given P = u u_x + O(eps) (homogeneous of differential degree 1, one
 * dependent variable) and a power series f(u), construct the unique flow
 * Q = f(u) u_x + O(eps), homogeneous of degree 1, with [H_P, H_Q] = 0.
 * The eps levels are solved by exact linear algebra; an inconsistent level
 * throws NoSolution, an underdetermined one NonUniqueSolution. */
DiffPoly extend_commuting_flow(const DiffPoly& P, const DiffPoly& f);

} // namespace drflow

#endif
