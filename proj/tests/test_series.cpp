#include <doctest.h>

#include "drflow/kdv.hpp"
#include "drflow/series.hpp"

using namespace drflow;

namespace {
const ParamScalar xi = ParamScalar::param(Param::xi);
}

TEST_SUITE("series") {

TEST_CASE("series arithmetic and calculus") {
    const SeriesContext ctx{1, 6, 0};
    const PowerSeries x = PowerSeries::var_x(ctx);
    const PowerSeries t = PowerSeries::var_t(0, ctx);

    CHECK((x + t) * (x - t) == x * x - t * t);
    CHECK(x.pow(3).ddx() == x.pow(2).scaled(ParamScalar(3)));
    CHECK(x.pow(3).int_x() == x.pow(4).scaled(ParamScalar(Rational(1, 4))));
    CHECK(x.ddt(0).is_zero());
    CHECK((x * t).ddt(0) == x);
    CHECK(x.pow(2).ddx().int_x() == x.pow(2));
    CHECK((x + t).at_x_zero() == t);
    CHECK((x + t).at_t_zero(0) == x);
    CHECK(x.pow(7).is_zero());
    CHECK(x.pow(3).truncated(2).is_zero());
    CHECK(x.compose_x(x + t) == x + t);
    CHECK(x.pow(2).compose_x(t) == t.pow(2));
}

TEST_CASE("jet evaluation on a solution") {
    const SeriesContext sctx{1, 5, 2};
    const TruncationContext rctx{2, 5};
    const PowerSeries x = PowerSeries::var_x(sctx);
    const DiffPoly u = DiffPoly::jet(0, 0, 1, rctx);
    /* u -> x^2, so u u_x -> 2 x^3 and eps^2 u[2] -> 2 eps^2 */
    const PowerSeries sol = x.pow(2);
    CHECK(evaluate_on_solution(u * u.dx(), {sol}) == x.pow(3).scaled(ParamScalar(2)));
    CHECK(evaluate_on_solution(u.dx_pow(2).eps_shifted(2), {sol}) ==
          PowerSeries::constant(ParamScalar(2), sctx).eps_shifted(2));
}

TEST_CASE("translation flow") {
    const SeriesContext sctx{1, 6, 0};
    const TruncationContext rctx{0, 6};
    /* dt u = u_x with u(0) = x^2 gives u = (x + t)^2 */
    const EvolutionaryOp P(std::vector<DiffPoly>{DiffPoly::jet(0, 1, 1, rctx)});
    const FormalSolution sol =
        evolve_formal_solution({P}, {PowerSeries::var_x(sctx).pow(2)}, sctx);
    const PowerSeries xt = PowerSeries::var_x(sctx) + PowerSeries::var_t(0, sctx);
    CHECK(sol.comps[0] == xt.pow(2));
    for (const auto& rs : flow_residuals({P}, sol))
        for (const PowerSeries& r : rs) CHECK(r.is_zero());
}

TEST_CASE("hopf flow") {
    const SeriesContext sctx{1, 7, 0};
    const TruncationContext rctx{0, 8};
    /* dt u = u u_x with u(0) = x gives u = x/(1-t) */
    const DiffPoly u = DiffPoly::jet(0, 0, 1, rctx);
    const EvolutionaryOp P(std::vector<DiffPoly>{u * u.dx()});
    const FormalSolution sol =
        evolve_formal_solution({P}, {PowerSeries::var_x(sctx)}, sctx);
    PowerSeries want(sctx);
    const PowerSeries x = PowerSeries::var_x(sctx);
    const PowerSeries t = PowerSeries::var_t(0, sctx);
    for (int k = 0; k + 1 <= 7; ++k) want += x * t.pow(unsigned(k));
    CHECK(sol.comps[0] == want);
}

TEST_CASE("two commuting times") {
    const SeriesContext sctx{2, 6, 2};
    const TruncationContext rctx{2, 6};
    const EvolutionaryOp P0(std::vector<DiffPoly>{kdv_flow(0, rctx).dx()});
    const EvolutionaryOp P1(std::vector<DiffPoly>{kdv_flow(1, rctx).dx()});
    const FormalSolution sol =
        evolve_formal_solution({P0, P1}, {PowerSeries::var_x(sctx)}, sctx);
    for (const auto& rs : flow_residuals({P0, P1}, sol))
        for (const PowerSeries& r : rs) CHECK(r.truncated(3).is_zero());
}

TEST_CASE("transport by the trivial density") {
    const SeriesContext sctx{1, 6, 2};
    const TruncationContext rctx{2, 6};
    const EvolutionaryOp P(std::vector<DiffPoly>{kdv_flow(1, rctx).dx()});
    const ReciprocalTransform rt(DiffPoly::zero(1, rctx));
    const FormalSolution sol =
        evolve_formal_solution({P}, {PowerSeries::var_x(sctx)}, sctx);
    const TransportResult tr = solution_transport(rt, {P}, sol);
    CHECK(tr.y_of_x == PowerSeries::var_x(sctx));
    CHECK(tr.x_of_y == PowerSeries::var_x(sctx));
    CHECK(tr.v.comps[0] == sol.comps[0]);
    CHECK(tr.reliable_degree == 6);
}

TEST_CASE("transport by xi u straightens the spatial variable") {
    const SeriesContext sctx{1, 6, 2};
    const TruncationContext rctx{2, 6};
    const EvolutionaryOp P(std::vector<DiffPoly>{kdv_flow(1, rctx).dx()});
    const DiffPoly u = DiffPoly::jet(0, 0, 1, rctx);
    const ReciprocalTransform rt(u.scaled(xi));
    const FormalSolution sol =
        evolve_formal_solution({P}, {PowerSeries::var_x(sctx)}, sctx);
    const TransportResult tr = solution_transport(rt, {P}, sol);

    /* at t = 0 the solution is u = x, so y = x + xi x^2 / 2 */
    const PowerSeries x = PowerSeries::var_x(sctx);
    CHECK(tr.y_of_x.at_t_zero(0) == x + x.pow(2).scaled(xi.scaled(Rational(1, 2))));
    /* x(y, t) really reverts y(x, t) */
    CHECK(tr.y_of_x.compose_x(tr.x_of_y).truncated(tr.reliable_degree) ==
          x.truncated(tr.reliable_degree));
}

} // TEST_SUITE
