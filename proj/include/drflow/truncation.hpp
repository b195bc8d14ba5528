#ifndef DRFLOW_TRUNCATION_HPP
#define DRFLOW_TRUNCATION_HPP

#include <algorithm>
#include <limits>

namespace drflow {

/* Working precision for the differential polynomial ring: monomials with
 * eps exponent above eps_max or total jet multiplicity above deg_max are
 * discarded by every operation.  Both bounds are explicit; there is no
 * implicit global precision. */
struct TruncationContext {
    int eps_max = 0;
    int deg_max = 0;

    static constexpr int unbounded_value = std::numeric_limits<int>::max() / 4;

    static TruncationContext unbounded() {
        return TruncationContext{unbounded_value, unbounded_value};
    }

    bool admits(int eps_exp, int u_degree) const {
        return eps_exp <= eps_max && u_degree <= deg_max;
    }

    /* Precision of the result of a binary operation. */
    TruncationContext combined(const TruncationContext& o) const {
        return TruncationContext{std::min(eps_max, o.eps_max),
                                 std::min(deg_max, o.deg_max)};
    }

    friend bool operator==(const TruncationContext&, const TruncationContext&) = default;
};

} // namespace drflow

#endif
