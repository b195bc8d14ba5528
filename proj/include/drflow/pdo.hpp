#ifndef DRFLOW_PDO_HPP
#define DRFLOW_PDO_HPP

#include <map>

#include "drflow/diff_poly.hpp"

namespace drflow {

/* Pseudodifferential operator sum_{k <= order} a_k dx^k with differential
 * polynomial coefficients, truncated below an explicit minimal order
 * ord_min.  Coefficients at orders below the floor are unknown and dropped;
 * the composition rule dx^k a = sum_j binom(k,j) (dx^j a) dx^{k-j} uses
 * generalized binomial coefficients for negative k. */
class PseudoDiffOp {
public:
    PseudoDiffOp(int ord_min, int n_vars, const TruncationContext& ctx)
        : ord_min_(ord_min), n_vars_(n_vars), ctx_(ctx) {}

    static PseudoDiffOp dx_power(int k, int ord_min, int n_vars, const TruncationContext& ctx);
    static PseudoDiffOp identity(int ord_min, int n_vars, const TruncationContext& ctx) {
        return dx_power(0, ord_min, n_vars, ctx);
    }

    int ord_min() const { return ord_min_; }
    int n_vars() const { return n_vars_; }
    const TruncationContext& context() const { return ctx_; }

    /* Highest order with a nonzero coefficient; ord_min - 1 when empty. */
    int order() const { return coeffs_.empty() ? ord_min_ - 1 : coeffs_.begin()->first; }

    void set_coeff(int order, const DiffPoly& c);
    DiffPoly coeff(int order) const;
    const std::map<int, DiffPoly, std::greater<int>>& coeffs() const { return coeffs_; }

    PseudoDiffOp operator+(const PseudoDiffOp& o) const;
    PseudoDiffOp operator-(const PseudoDiffOp& o) const;
    PseudoDiffOp operator-() const;

    /* Composition, truncated below the floor (defaults to the larger of the
     * two operand floors). */
    static PseudoDiffOp mul(const PseudoDiffOp& a, const PseudoDiffOp& b, int floor);
    PseudoDiffOp operator*(const PseudoDiffOp& o) const {
        return mul(*this, o, std::max(ord_min_, o.ord_min_));
    }

    static PseudoDiffOp commutator(const PseudoDiffOp& a, const PseudoDiffOp& b, int floor) {
        return mul(a, b, floor) - mul(b, a, floor);
    }

    /* Orders >= 0 (an honest differential operator, floor 0). */
    PseudoDiffOp positive_part() const;
    /* Orders < 0, keeping the floor. */
    PseudoDiffOp negative_part() const;

    bool is_zero() const { return coeffs_.empty(); }
    bool operator==(const PseudoDiffOp& o) const {
        return ord_min_ == o.ord_min_ && coeffs_ == o.coeffs_;
    }

private:
    int ord_min_;
    int n_vars_;
    TruncationContext ctx_;
    /* nonzero coefficients by order, highest first */
    std::map<int, DiffPoly, std::greater<int>> coeffs_;
};

} // namespace drflow

#endif
