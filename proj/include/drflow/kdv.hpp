#ifndef DRFLOW_KDV_HPP
#define DRFLOW_KDV_HPP

#include "drflow/pdo.hpp"

namespace drflow {

/* Square root of L = dx^2 + 2 eps^{-2} u: the unique M = dx + sum_{k<=0}
 * a_k dx^k with M^2 = L down to the given order floor.  Solves one
 * coefficient per order by defect correction. */
PseudoDiffOp sqrt_lax(const PseudoDiffOp& L, int floor);

/* The Lax operator itself, over one variable in an unbounded context. */
PseudoDiffOp lax_operator(int floor);

/* d-th KdV Hamiltonian density P_d, normalized by P_d|_{u=0} = 0:
 * dx(P_d) = eps^{2d+2} / (2 (2d+1)!!) * [(L^{d+1/2})_+, L], computed with
 * the fractional power truncated below order -(2d+3).  The commutator is
 * checked to be of order 0 and the density to contain only even
 * nonnegative eps powers; the result is truncated into ctx. */
DiffPoly kdv_flow(int d, const TruncationContext& ctx);

/* d-th density of the xi-deformed hierarchy: the KdV flow dt u = dx(P_d)
 * is pushed through the reciprocal transformation attached to f = xi u and
 * the transformed right-hand side is integrated in y. */
DiffPoly xi_kdv_flow(int d, const TruncationContext& ctx);

} // namespace drflow

#endif
