#include <doctest.h>

#include "drflow/kdv.hpp"
#include "drflow/pdo.hpp"

using namespace drflow;

TEST_SUITE("pdo") {

TEST_CASE("composition rule") {
    const TruncationContext ctx{0, 6};
    const DiffPoly u = DiffPoly::jet(0, 0, 1, ctx);
    const DiffPoly ux = DiffPoly::jet(0, 1, 1, ctx);

    /* dx . u = u dx + u_x */
    PseudoDiffOp U(0, 1, ctx);
    U.set_coeff(0, u);
    const PseudoDiffOp dxU = PseudoDiffOp::dx_power(1, 0, 1, ctx) * U;
    CHECK(dxU.coeff(1) == u);
    CHECK(dxU.coeff(0) == ux);
    CHECK(dxU.order() == 1);

    /* dx^{-1} . u = u dx^{-1} - u_x dx^{-2} + u_xx dx^{-3} - ... */
    const PseudoDiffOp inv_u =
        PseudoDiffOp::mul(PseudoDiffOp::dx_power(-1, -3, 1, ctx), U, -3);
    CHECK(inv_u.coeff(-1) == u);
    CHECK(inv_u.coeff(-2) == -ux);
    CHECK(inv_u.coeff(-3) == DiffPoly::jet(0, 2, 1, ctx));
}

TEST_CASE("square of dx + u dx^{-1}") {
    const TruncationContext ctx{0, 6};
    const DiffPoly u = DiffPoly::jet(0, 0, 1, ctx);
    const DiffPoly ux = DiffPoly::jet(0, 1, 1, ctx);

    PseudoDiffOp M = PseudoDiffOp::dx_power(1, -3, 1, ctx);
    M.set_coeff(-1, u);
    const PseudoDiffOp M2 = PseudoDiffOp::mul(M, M, -3);
    CHECK(M2.coeff(2) == DiffPoly::constant(1, 1, ctx));
    CHECK(M2.coeff(1).is_zero());
    CHECK(M2.coeff(0) == u.scaled(Rational(2)));
    CHECK(M2.coeff(-1) == ux);
    CHECK(M2.coeff(-2) == u * u);
    CHECK(M2.coeff(-3) == -(u * ux));
}

TEST_CASE("arithmetic and parts") {
    const TruncationContext ctx{0, 4};
    const DiffPoly u = DiffPoly::jet(0, 0, 1, ctx);
    PseudoDiffOp A = PseudoDiffOp::dx_power(2, -2, 1, ctx);
    A.set_coeff(0, u);
    A.set_coeff(-1, u * u);

    CHECK(A.positive_part().order() == 2);
    CHECK(A.positive_part().coeff(-1).is_zero());
    CHECK(A.negative_part().coeff(-1) == u * u);
    CHECK(A.negative_part().coeff(0).is_zero());
    CHECK(A.positive_part().ord_min() == 0);
    CHECK((A - A).is_zero());
    CHECK((-A).coeff(0) == -u);

    const PseudoDiffOp I = PseudoDiffOp::identity(-2, 1, ctx);
    CHECK(PseudoDiffOp::mul(A, I, -2) == A);
    CHECK(PseudoDiffOp::mul(I, A, -2) == A);
}

TEST_CASE("square root of the Lax operator") {
    const PseudoDiffOp L = lax_operator(-5);
    const PseudoDiffOp M = sqrt_lax(L, -5);
    CHECK(M.order() == 1);
    CHECK(M.coeff(1) == DiffPoly::constant(1, 1, M.context()));
    CHECK(M.coeff(0).is_zero());
    /* M^2 reproduces L down to the floor */
    const PseudoDiffOp M2 = PseudoDiffOp::mul(M, M, -5);
    /* the defect at the floor itself would need a_{-6}, so stop at -4 */
    for (int k = 2; k >= -4; --k) CHECK(M2.coeff(k) == L.coeff(k));
    /* leading root coefficient: a_{-1} = eps^{-2} u */
    CHECK(M.coeff(-1) == DiffPoly::jet(0, 0, 1, M.context()).eps_shifted(-2));
}

TEST_CASE("lax commutator generates the flows") {
    const TruncationContext ctx{2, 2};
    /* dx(P_1) appears as eps^4/(2*3!!) [(L^{3/2})_+, L] */
    const PseudoDiffOp L = lax_operator(-5);
    const PseudoDiffOp M = sqrt_lax(L, -5);
    const PseudoDiffOp M3 = PseudoDiffOp::mul(PseudoDiffOp::mul(M, M, -5), M, -5);
    const PseudoDiffOp C = PseudoDiffOp::commutator(M3.positive_part(), L, 0);
    CHECK(C.order() == 0);
    const DiffPoly flow = C.coeff(0).eps_shifted(4).divided(Rational(6)).with_context(ctx);
    CHECK(flow == kdv_flow(1, ctx).dx());
}

} // TEST_SUITE
