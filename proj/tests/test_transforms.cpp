#include <doctest.h>

#include <map>
#include <vector>

#include "drflow/errors.hpp"
#include "drflow/kdv.hpp"
#include "drflow/miura.hpp"
#include "drflow/reciprocal.hpp"

using namespace drflow;

namespace {
const ParamScalar xi = ParamScalar::param(Param::xi);
const ParamScalar g1 = ParamScalar::param(Param::g1);
}

TEST_SUITE("transforms") {

TEST_CASE("miura inversion round-trip") {
    const TruncationContext ctx{4, 6};
    const DiffPoly u = DiffPoly::jet(0, 0, 1, ctx);
    const MiuraTransform m(
        std::vector<DiffPoly>{u + u.dx_pow(2).eps_shifted(2) + u.pow(2)});
    const MiuraTransform inv = miura_invert(m);
    /* w(u(w)) = w and u(w(u)) = u */
    CHECK(m.images()[0].substitute(inv.images()) == DiffPoly::jet(0, 0, 1, ctx));
    CHECK(inv.images()[0].substitute(m.images()) == DiffPoly::jet(0, 0, 1, ctx));
    CHECK(miura_invert(MiuraTransform::identity(2, ctx)) ==
          MiuraTransform::identity(2, ctx));
}

TEST_CASE("miura transform validation") {
    const TruncationContext ctx{2, 4};
    const DiffPoly u = DiffPoly::jet(0, 0, 1, ctx);
    /* not vanishing at the origin */
    CHECK_THROWS_AS(MiuraTransform(std::vector<DiffPoly>{
                        u + DiffPoly::constant(1, 1, ctx)}),
                    const Error&);
    /* inhomogeneous differential degree */
    CHECK_THROWS_AS(MiuraTransform(std::vector<DiffPoly>{u + u.dx()}), const Error&);
    /* degenerate linearization: u^1 and u^1 + u^2 in a 2-var ring */
    const DiffPoly v1 = DiffPoly::jet(0, 0, 2, ctx);
    const DiffPoly v2 = DiffPoly::jet(1, 0, 2, ctx);
    CHECK_THROWS_AS(miura_invert(MiuraTransform(std::vector<DiffPoly>{v1, v1})),
                    const DegenerateJacobian&);
    CHECK(miura_invert(MiuraTransform(std::vector<DiffPoly>{v1, v1 + v2}))
              .images()[1] == v2 - v1);
}

TEST_CASE("miura push of the KdV flow") {
    const TruncationContext ctx{2, 3};
    const DiffPoly u = DiffPoly::jet(0, 0, 1, ctx);
    const MiuraTransform m(std::vector<DiffPoly>{u + u.dx_pow(2).eps_shifted(2)});

    EvolutionarySystem S;
    S.n_vars = 1;
    S.flows[{1, 1}] = EvolutionaryOp(std::vector<DiffPoly>{kdv_flow(1, ctx).dx()});
    const EvolutionarySystem pushed = miura_push_system(m, S);

    /* hand-computed image: w w_x + eps^2 (2 w_x w[2] + w[3]/12) */
    const DiffPoly w = DiffPoly::jet(0, 0, 1, ctx);
    const DiffPoly want =
        w * w.dx() +
        (w.dx() * w.dx_pow(2).scaled(Rational(2)) + w.dx_pow(3).divided(12))
            .eps_shifted(2);
    CHECK(pushed.flows.at({1, 1}).component(0) == want);

    /* push by the inverse lands back on the original system */
    const MiuraTransform inv = miura_invert(m);
    const EvolutionarySystem back = miura_push_system(inv, pushed);
    CHECK(back.flows.at({1, 1}) == S.flows.at({1, 1}));
}

TEST_CASE("ring isomorphism of a reciprocal transformation") {
    const TruncationContext ctx{2, 6};
    const DiffPoly u = DiffPoly::jet(0, 0, 1, ctx);
    const DiffPoly f = u.scaled(xi);
    const ReciprocalTransform rt(f);
    const DiffPoly inv = (DiffPoly::constant(1, 1, ctx) + f).invert_unit();

    /* Phi(v) = u, Phi(v_y) = (1+f)^{-1} u_x */
    CHECK(rt.phi_forward(u) == u);
    CHECK(rt.phi_forward(u.dx()) == inv * u.dx());
    CHECK(rt.phi_forward(u.dx_pow(2)) == inv * (inv * u.dx()).dx());

    /* the isomorphism respects the ring operations */
    const DiffPoly p = u * u.dx() + u.dx_pow(2).eps_shifted(2);
    const DiffPoly q = u.pow(2) + u.dx();
    CHECK(rt.phi_forward(p * q) == rt.phi_forward(p) * rt.phi_forward(q));

    /* inverse images undo the forward map */
    CHECK(rt.phi_inverse(rt.phi_forward(p)) == p);
    CHECK(rt.phi_forward(rt.phi_inverse(q)) == q);

    /* invalid densities are rejected */
    CHECK_THROWS_AS(ReciprocalTransform(u + DiffPoly::constant(1, 1, ctx)),
                    const Error&);
    CHECK_THROWS_AS(ReciprocalTransform(u + u.dx()), const Error&);
}

TEST_CASE("pushed system requires a conservation law") {
    const TruncationContext ctx{2, 5};
    const DiffPoly u = DiffPoly::jet(0, 0, 1, ctx);
    const ReciprocalTransform rt(u.scaled(xi));

    EvolutionarySystem S;
    S.n_vars = 1;
    /* dt u = u does not conserve xi u: u is not a total x-derivative */
    S.flows[{1, 0}] = EvolutionaryOp(std::vector<DiffPoly>{u});
    CHECK_THROWS_AS(reciprocal_push_system(rt, S), const NotAConservationLaw&);
}

TEST_CASE("pushed KdV flow is the xi-deformed flow") {
    const TruncationContext ctx{2, 5};
    const DiffPoly u = DiffPoly::jet(0, 0, 1, ctx);
    const ReciprocalTransform rt(u.scaled(xi));

    EvolutionarySystem S;
    S.n_vars = 1;
    S.flows[{1, 1}] = EvolutionaryOp(std::vector<DiffPoly>{kdv_flow(1, ctx).dx()});
    std::map<FlowLabel, DiffPoly> witnesses;
    const EvolutionarySystem pushed = reciprocal_push_system(rt, S, &witnesses);
    CHECK(pushed.flows.at({1, 1}).component(0) == xi_kdv_flow(1, ctx).dx());
    /* the witness of f = xi u along dt u = dx(P_1) is xi P_1 */
    CHECK(witnesses.at({1, 1}) == kdv_flow(1, ctx).scaled(xi));
}

TEST_CASE("transported conservation law") {
    const TruncationContext ctx{2, 6};
    const DiffPoly u = DiffPoly::jet(0, 0, 1, ctx);
    const ReciprocalTransform rt(u.scaled(xi));
    const EvolutionaryOp H(std::vector<DiffPoly>{kdv_flow(1, ctx).dx()});

    const auto Rg = conservation_law_witness(u, H);
    const auto Rf = conservation_law_witness(u.scaled(xi), H);
    REQUIRE(bool(Rg));
    REQUIRE(bool(Rf));
    const auto [gt, rt_wit] = transport_conservation_law(rt, u, *Rg, *Rf);

    EvolutionarySystem S;
    S.n_vars = 1;
    S.flows[{1, 1}] = H;
    const EvolutionaryOp Hv = reciprocal_push_system(rt, S).flows.at({1, 1});
    CHECK(Hv.apply(gt) == rt_wit.dx());
}

TEST_CASE("intertwining relation") {
    const TruncationContext ctx{2, 6};
    const DiffPoly u = DiffPoly::jet(0, 0, 1, ctx);
    const ReciprocalTransform rt(u.scaled(xi));
    const DiffPoly inv =
        (DiffPoly::constant(1, 1, ctx) + u.scaled(xi)).invert_unit();
    /* Phi(dy p) = (1+f)^{-1} dx Phi(p) */
    const DiffPoly p = u.pow(2) + u * u.dx() + u.dx_pow(2).eps_shifted(2);
    CHECK(rt.phi_forward(p.dx()) == inv * rt.phi_forward(p).dx());
}

TEST_CASE("trivial transports") {
    const TruncationContext ctx{2, 6};
    const DiffPoly u = DiffPoly::jet(0, 0, 1, ctx);
    const EvolutionaryOp H(std::vector<DiffPoly>{kdv_flow(1, ctx).dx()});
    const DiffPoly f = u.scaled(xi);
    const ReciprocalTransform rt(f);
    const auto Rf = conservation_law_witness(f, H);
    REQUIRE(bool(Rf));

    /* g = f transports to f/(1+f) */
    const DiffPoly inv = (DiffPoly::constant(1, 1, ctx) + f).invert_unit();
    CHECK(transport_conservation_law(rt, f, *Rf, *Rf).first ==
          rt.phi_inverse(f * inv));

    /* f = 0 leaves the pair unchanged */
    const ReciprocalTransform id(DiffPoly::zero(1, ctx));
    const auto Rg = conservation_law_witness(u, H);
    REQUIRE(bool(Rg));
    const auto [g0, r0] =
        transport_conservation_law(id, u, *Rg, DiffPoly::zero(1, ctx));
    CHECK(g0 == u);
    CHECK(r0 == *Rg);
}

TEST_CASE("transport round-trips through the inverse transformation") {
    const TruncationContext ctx{2, 6};
    const DiffPoly u = DiffPoly::jet(0, 0, 1, ctx);
    const EvolutionaryOp H(std::vector<DiffPoly>{kdv_flow(1, ctx).dx()});
    const DiffPoly f = u.scaled(xi);
    const ReciprocalTransform rt(f);
    const DiffPoly inv = (DiffPoly::constant(1, 1, ctx) + f).invert_unit();

    const auto Rg = conservation_law_witness(u, H);
    const auto Rf = conservation_law_witness(f, H);
    REQUIRE(bool(Rg));
    REQUIRE(bool(Rf));
    const auto [gt, rtw] = transport_conservation_law(rt, u, *Rg, *Rf);

    /* the inverse transformation carries the density -f/(1+f) in v */
    const ReciprocalTransform back(rt.phi_inverse(-f * inv));
    EvolutionarySystem S;
    S.n_vars = 1;
    S.flows[{1, 1}] = H;
    const EvolutionaryOp Hv = reciprocal_push_system(rt, S).flows.at({1, 1});
    const auto Rfb = conservation_law_witness(back.f(), Hv);
    REQUIRE(bool(Rfb));
    const auto [g2, r2] = transport_conservation_law(back, gt, rtw, *Rfb);
    CHECK(g2 == u);
    CHECK(r2 == *Rg);

    /* inverse element of the group action */
    const ReciprocalTransform composed = compose_reciprocal(rt, -f);
    CHECK(composed.f().is_zero());
    const DiffPoly sample = u * u.dx() + u.pow(2).eps_shifted(2);
    CHECK(composed.phi_forward(sample) == sample);
}

TEST_CASE("composition of reciprocal transformations") {
    const TruncationContext ctx{2, 6};
    const DiffPoly u = DiffPoly::jet(0, 0, 1, ctx);
    const DiffPoly f = u.scaled(xi);
    const DiffPoly g = u.scaled(g1);
    const ReciprocalTransform rt1(f);
    const ReciprocalTransform rt12 = compose_reciprocal(rt1, g);
    CHECK(rt12.f() == f + g);

    /* the two-step isomorphism agrees with the one-step one */
    const DiffPoly inv = (DiffPoly::constant(1, 1, ctx) + f).invert_unit();
    const ReciprocalTransform rt2(rt1.phi_inverse(g * inv));
    const DiffPoly sample = u * u.dx() + u.pow(3) + u.dx_pow(2).eps_shifted(2);
    CHECK(rt1.phi_forward(rt2.phi_forward(sample)) == rt12.phi_forward(sample));
}

} // TEST_SUITE
