#ifndef DRFLOW_GENUS0_HPP
#define DRFLOW_GENUS0_HPP

#include <array>
#include <utility>

#include "drflow/diff_poly.hpp"

namespace drflow {

using Mat2 = std::array<std::array<DiffPoly, 2>, 2>;

/* Genus-0 potentials of the rank-2 family and their structure constants
 * c^a_{bc} = d^2 F^a / du^b du^c, as truncated series in u^1, u^2. */
struct Genus0Data {
    DiffPoly f1;      /* closed form of F^1 */
    DiffPoly f1_tree; /* four-term stable-tree sum; equals f1 */
    DiffPoly f2;      /* (u^2)^2/2 */
    Mat2 c1;          /* c1[a][b] = c^a_{b,1} */
    Mat2 c2;          /* c2[a][b] = c^a_{b,2} */
};

/* The auxiliary coordinates of the closed forms:
 * ubar^1 = (u^1 + xi (u^2)^2/2)/(1 + xi u^2), ubar^2 = u^2. */
DiffPoly ubar1(const TruncationContext& ctx);

/* Computes the potentials both ways and the structure constants; throws if
 * the tree sum disagrees with the closed form or the matrices disagree with
 * their displayed forms. */
Genus0Data genus0_potentials(const TruncationContext& ctx);

std::pair<Mat2, Mat2> structure_constants(const TruncationContext& ctx);

/* Solves dP_d/du^c = C_c P_{d-1} from P_{-1} = Id with P_d(0) = 0, checking
 * closedness before each integration; returns [a][b] = P^a_{b,d}, asserted
 * equal to the closed form. */
Mat2 dispersionless_flow(int d, const TruncationContext& ctx);

/* diag((ubar^a)^{d+1}/(d+1)!) plus the off-diagonal entry
 * M_d = -xi((ubar^1)^{d+2} - (d+2) ubar^1 (ubar^2)^{d+1}
 *           + (d+1)(ubar^2)^{d+2})/(d+2)!. */
Mat2 dispersionless_closed_form(int d, const TruncationContext& ctx);

} // namespace drflow

#endif
