#include "drflow/kdv.hpp"

#include "drflow/calculus.hpp"
#include "drflow/errors.hpp"
#include "drflow/reciprocal.hpp"

namespace drflow {

PseudoDiffOp lax_operator(int floor) {
    const TruncationContext ctx = TruncationContext::unbounded();
    PseudoDiffOp L(floor, 1, ctx);
    L.set_coeff(2, DiffPoly::constant(Rational(1), 1, ctx));
    L.set_coeff(0, DiffPoly::term(Monomial{-2, {JetFactor{0, 0, 1}}}, ParamScalar(Rational(2)),
                                  1, ctx));
    return L;
}

PseudoDiffOp sqrt_lax(const PseudoDiffOp& L, int floor) {
    PseudoDiffOp M = PseudoDiffOp::dx_power(1, floor, L.n_vars(), L.context());
    /* a_k is fixed by the order k+1 coefficient of L - M^2, which the
     * already known part of M determines exactly. */
    for (int k = 0; k >= floor; --k) {
        DiffPoly defect = (L - PseudoDiffOp::mul(M, M, k + 1)).coeff(k + 1);
        if (!defect.is_zero()) M.set_coeff(k, defect.divided(Rational(2)));
    }
    return M;
}

DiffPoly kdv_flow(int d, const TruncationContext& ctx) {
    if (d < 0) throw Error("kdv_flow needs d >= 0");
    const int floor = -(2 * d + 3);
    const TruncationContext work = TruncationContext::unbounded();

    const PseudoDiffOp L = lax_operator(floor);
    const PseudoDiffOp M = sqrt_lax(L, floor);

    PseudoDiffOp A = PseudoDiffOp::identity(floor, 1, work);
    for (int i = 0; i < d; ++i) A = PseudoDiffOp::mul(A, L, floor);
    A = PseudoDiffOp::mul(A, M, floor);

    /* [A_+, L] = -[A_-, L] up to orders that cannot reach order zero */
    const PseudoDiffOp C = -PseudoDiffOp::commutator(A.negative_part(), L, floor);
    for (const auto& [k, c] : C.coeffs())
        if (k >= 1 && !c.is_zero())
            throw Error("Lax commutator has a coefficient at positive order");

    DiffPoly q = C.coeff(0)
                     .eps_shifted(2 * d + 2)
                     .divided(Rational(2) * double_factorial_odd(unsigned(d)));
    if (!q.is_homogeneous(1))
        throw Error("KdV right-hand side is not homogeneous of degree 1");
    if (q.min_eps() < 0) throw Error("KdV right-hand side has negative eps powers");
    for (const auto& t : q.terms())
        if (t.mono.eps_exp % 2 != 0) throw Error("KdV right-hand side has odd eps powers");

    DiffPoly P = antiderivative(q);

    /* dispersionless part must be u^{d+1}/(d+1)! */
    const DiffPoly lead =
        DiffPoly::jet(0, 0, 1, work).pow(unsigned(d + 1)).divided(factorial(unsigned(d + 1)));
    if (P.eps_component(0) != lead)
        throw Error("KdV density has an unexpected dispersionless part");

    return P.with_context(ctx);
}

DiffPoly xi_kdv_flow(int d, const TruncationContext& ctx) {
    if (d < 0) throw Error("xi_kdv_flow needs d >= 0");
    /* internal bounds that keep every intermediate exact */
    const TruncationContext work{std::max(ctx.eps_max, 2 * d + 2),
                                 std::max(ctx.deg_max, 3 * d + 8)};
    const DiffPoly P = kdv_flow(d, work);

    const DiffPoly f =
        DiffPoly::jet(0, 0, 1, work).scaled(ParamScalar::param(Param::xi));
    const ReciprocalTransform rt(f);

    EvolutionarySystem S;
    S.n_vars = 1;
    S.flows.emplace(FlowLabel{1, d}, EvolutionaryOp(std::vector<DiffPoly>{P.dx()}));
    const EvolutionarySystem pushed = reciprocal_push_system(rt, S);

    const DiffPoly Pxi = antiderivative(pushed.flows.begin()->second.component(0));
    return Pxi.with_context(ctx);
}

} // namespace drflow
