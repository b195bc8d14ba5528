#include "drflow/genus0.hpp"

#include "drflow/errors.hpp"

namespace drflow {

namespace {

const ParamScalar kXi = ParamScalar::param(Param::xi);

DiffPoly u1(const TruncationContext& ctx) { return DiffPoly::jet(0, 0, 2, ctx); }
DiffPoly u2(const TruncationContext& ctx) { return DiffPoly::jet(1, 0, 2, ctx); }

/* (1 + xi u^2)^{-1} */
DiffPoly inv_unit(const TruncationContext& ctx) {
    return (DiffPoly::constant(1, 2, ctx) + u2(ctx).scaled(kXi)).invert_unit();
}

/* Drop the terms of top u-degree: a truncated antiderivative loses that
 * degree, so quantities derived from one are only meaningful below it. */
DiffPoly below_degree(const DiffPoly& p, int deg) {
    PolyBuilder b(p.n_vars(), p.context());
    for (const Term& t : p.terms())
        if (t.mono.u_degree() < deg) b.add(t.mono, t.coeff);
    return b.take();
}

} // namespace

DiffPoly ubar1(const TruncationContext& ctx) {
    DiffPoly num = u1(ctx) + u2(ctx).pow(2).scaled(kXi).divided(2);
    return num * inv_unit(ctx);
}

Genus0Data genus0_potentials(const TruncationContext& ctx) {
    /* Differentiating twice eats two degrees of a truncated series, so the
     * potentials are built with headroom and the results cut back to ctx. */
    const TruncationContext work{ctx.eps_max, ctx.deg_max + 2};
    const DiffPoly U1 = u1(work), U2 = u2(work);
    const DiffPoly inv = inv_unit(work);

    /* F^1 = [ (u^1)^2/2 + u^1 xi (u^2)^2/2 - xi (u^2)^3 (4 + xi u^2)/24 ] / (1 + xi u^2) */
    DiffPoly num = U1.pow(2).divided(2) + (U1 * U2.pow(2)).scaled(kXi).divided(2) -
                   (U2.pow(3) * (DiffPoly::constant(4, 2, work) + U2.scaled(kXi)))
                       .scaled(kXi)
                       .divided(24);
    DiffPoly f1 = num * inv;

    /* stable-tree sum: (u^1)^2/2/(1+xi u^2) + u^1 xi (u^2)^2/2/(1+xi u^2)
     *                + xi^2 (u^2)^4/8/(1+xi u^2) - xi (u^2)^3/6 */
    DiffPoly tree = U1.pow(2).divided(2) * inv + (U1 * U2.pow(2)).scaled(kXi).divided(2) * inv +
                    U2.pow(4).scaled(kXi * kXi).divided(8) * inv - U2.pow(3).scaled(kXi).divided(6);

    if (!(tree == f1))
        throw Error("stable-tree sum disagrees with the closed form of F^1: " +
                    (tree - f1).str());

    DiffPoly f2 = U2.pow(2).divided(2);

    Genus0Data g;
    g.f1 = f1.with_context(ctx);
    g.f1_tree = tree.with_context(ctx);
    g.f2 = f2.with_context(ctx);

    const std::array<DiffPoly, 2> F = {f1, f2};
    Mat2 c1w, c2w;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            c1w[a][b] = F[a].partial(b, 0).partial(0, 0);
            c2w[a][b] = F[a].partial(b, 0).partial(1, 0);
        }

    /* c^a_{bc} symmetric in b, c */
    if (!(c1w[0][1] == c2w[0][0]) || !(c1w[1][1] == c2w[1][0]))
        throw Error("structure constants are not symmetric");

    /* displayed forms in the ubar coordinates; the derivatives of F are
     * complete only through ctx.deg_max, so compare there */
    const DiffPoly ub1 = ubar1(work), ub2 = U2;
    const DiffPoly zero = DiffPoly::zero(2, work);
    const DiffPoly one = DiffPoly::constant(1, 2, work);
    Mat2 d1, d2;
    d1[0][0] = inv;
    d1[0][1] = (ub2 - ub1).scaled(kXi) * inv;
    d1[1][0] = zero;
    d1[1][1] = zero;
    d2[0][0] = d1[0][1];
    d2[0][1] = (ub1 - ub2).scaled(kXi) * (one + ub1.scaled(kXi)) * inv;
    d2[1][0] = zero;
    d2[1][1] = one;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            g.c1[a][b] = c1w[a][b].with_context(ctx);
            g.c2[a][b] = c2w[a][b].with_context(ctx);
            if (!(g.c1[a][b] == d1[a][b].with_context(ctx)))
                throw Error("C_1 disagrees with its displayed form: " +
                            (g.c1[a][b] - d1[a][b].with_context(ctx)).str());
            if (!(g.c2[a][b] == d2[a][b].with_context(ctx)))
                throw Error("C_2 disagrees with its displayed form: " +
                            (g.c2[a][b] - d2[a][b].with_context(ctx)).str());
        }

    return g;
}

std::pair<Mat2, Mat2> structure_constants(const TruncationContext& ctx) {
    Genus0Data g = genus0_potentials(ctx);
    return {g.c1, g.c2};
}

Mat2 dispersionless_closed_form(int d, const TruncationContext& ctx) {
    const DiffPoly ub1 = ubar1(ctx), ub2 = u2(ctx);
    const unsigned n = static_cast<unsigned>(d);
    Mat2 p;
    p[0][0] = ub1.pow(n + 1).divided(factorial(n + 1));
    p[1][0] = DiffPoly::zero(2, ctx);
    p[1][1] = ub2.pow(n + 1).divided(factorial(n + 1));
    p[0][1] = -(ub1.pow(n + 2) - ub1 * ub2.pow(n + 1).scaled(Rational(d + 2)) +
                ub2.pow(n + 2).scaled(Rational(d + 1)))
                   .scaled(kXi)
                   .divided(factorial(n + 2));
    return p;
}

Mat2 dispersionless_flow(int d, const TruncationContext& ctx) {
    Genus0Data g = genus0_potentials(ctx);
    const std::array<Mat2, 2> C = {g.c1, g.c2};

    Mat2 p;
    p[0][0] = DiffPoly::constant(1, 2, ctx);
    p[0][1] = DiffPoly::zero(2, ctx);
    p[1][0] = DiffPoly::zero(2, ctx);
    p[1][1] = DiffPoly::constant(1, 2, ctx);

    for (int level = 0; level <= d; ++level) {
        Mat2 next;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                /* gradient g_c = (C_c P_{level-1})^a_b */
                std::array<DiffPoly, 2> grad;
                for (int c = 0; c < 2; ++c) {
                    DiffPoly s = DiffPoly::zero(2, ctx);
                    for (int m = 0; m < 2; ++m) s += C[c][a][m] * p[m][b];
                    grad[c] = s;
                }
                if (!(grad[0].partial(1, 0) == grad[1].partial(0, 0)))
                    throw ClosednessViolation(
                        "dispersionless recursion is not closed at level " +
                        std::to_string(level) + ": " +
                        (grad[0].partial(1, 0) - grad[1].partial(0, 0)).str());
                DiffPoly A = grad[0].integrate_jet(0, 0);
                /* A lost the degree above deg_max, so the remainder is only
                 * trustworthy below the bound */
                DiffPoly rem = below_degree(grad[1] - A.partial(1, 0), ctx.deg_max);
                if (rem.contains_var(0))
                    throw ClosednessViolation(
                        "du^2-remainder depends on u^1 at level " + std::to_string(level));
                next[a][b] = A + rem.integrate_jet(1, 0);
            }
        p = next;
    }

    Mat2 closed = dispersionless_closed_form(d, ctx);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            if (!(p[a][b] == closed[a][b]))
                throw Error("dispersionless flow disagrees with the closed form at d = " +
                            std::to_string(d) + ": " + (p[a][b] - closed[a][b]).str());
    return p;
}

} // namespace drflow
