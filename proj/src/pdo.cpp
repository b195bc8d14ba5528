#include "drflow/pdo.hpp"

#include "drflow/errors.hpp"

namespace drflow {

PseudoDiffOp PseudoDiffOp::dx_power(int k, int ord_min, int n_vars,
                                    const TruncationContext& ctx) {
    PseudoDiffOp p(ord_min, n_vars, ctx);
    p.set_coeff(k, DiffPoly::constant(Rational(1), n_vars, ctx));
    return p;
}

void PseudoDiffOp::set_coeff(int order, const DiffPoly& c) {
    if (order < ord_min_ || c.is_zero())
        coeffs_.erase(order);
    else
        coeffs_.insert_or_assign(order, c);
}

DiffPoly PseudoDiffOp::coeff(int order) const {
    auto it = coeffs_.find(order);
    if (it != coeffs_.end()) return it->second;
    return DiffPoly::zero(n_vars_, ctx_);
}

PseudoDiffOp PseudoDiffOp::operator+(const PseudoDiffOp& o) const {
    if (n_vars_ != o.n_vars_) throw ArityMismatch("pdo operands over different rings");
    PseudoDiffOp r(std::max(ord_min_, o.ord_min_), n_vars_, ctx_.combined(o.ctx_));
    for (const auto& [k, c] : coeffs_)
        if (k >= r.ord_min_) r.set_coeff(k, c);
    for (const auto& [k, c] : o.coeffs_)
        if (k >= r.ord_min_) r.set_coeff(k, r.coeff(k) + c);
    return r;
}

PseudoDiffOp PseudoDiffOp::operator-() const {
    PseudoDiffOp r(ord_min_, n_vars_, ctx_);
    for (const auto& [k, c] : coeffs_) r.set_coeff(k, -c);
    return r;
}

PseudoDiffOp PseudoDiffOp::operator-(const PseudoDiffOp& o) const { return *this + (-o); }

PseudoDiffOp PseudoDiffOp::mul(const PseudoDiffOp& a, const PseudoDiffOp& b, int floor) {
    if (a.n_vars_ != b.n_vars_) throw ArityMismatch("pdo operands over different rings");
    PseudoDiffOp r(floor, a.n_vars_, a.ctx_.combined(b.ctx_));
    for (const auto& [i, ca] : a.coeffs_) {
        for (const auto& [j, cb] : b.coeffs_) {
            /* a dx^i b dx^j = a sum_l binom(i,l) (dx^l b) dx^{i+j-l} */
            DiffPoly dlb = cb;
            for (int l = 0; i + j - l >= floor; ++l) {
                if (i >= 0 && l > i) break;
                if (l > 0) dlb = dlb.dx();
                Rational bin = gen_binomial(i, unsigned(l));
                if (bin == 0) continue;
                DiffPoly add = (ca * dlb).scaled(bin);
                int ord = i + j - l;
                r.set_coeff(ord, r.coeff(ord) + add);
            }
        }
    }
    return r;
}

PseudoDiffOp PseudoDiffOp::positive_part() const {
    PseudoDiffOp r(0, n_vars_, ctx_);
    for (const auto& [k, c] : coeffs_)
        if (k >= 0) r.set_coeff(k, c);
    return r;
}

PseudoDiffOp PseudoDiffOp::negative_part() const {
    PseudoDiffOp r(ord_min_, n_vars_, ctx_);
    for (const auto& [k, c] : coeffs_)
        if (k < 0) r.set_coeff(k, c);
    return r;
}

} // namespace drflow
