#include <doctest.h>

#include <json.hpp>

#include "drflow/family.hpp"
#include "drflow/kdv.hpp"

using namespace drflow;

namespace {
const ParamScalar xi = ParamScalar::param(Param::xi);
const ParamScalar g2 = ParamScalar::param(Param::g2);
}

TEST_SUITE("family") {

TEST_CASE("primary flows") {
    const TruncationContext ctx{2, 5};
    const EvolutionarySystem sys = primary_flows(1, ctx);
    CHECK(sys.n_vars == 2);
    CHECK(sys.flows.size() == 4);
    REQUIRE(sys.flows.count({1, 0}));
    REQUIRE(sys.flows.count({2, 0}));
    REQUIRE(sys.flows.count({1, 1}));
    REQUIRE(sys.flows.count({2, 1}));

    /* d = 0: dt1 u^2 = 0 and dt2 u^2 = u^2_x */
    const DiffPoly u2 = DiffPoly::jet(1, 0, 2, ctx);
    CHECK(sys.flows.at({1, 0}).component(1).is_zero());
    CHECK(sys.flows.at({2, 0}).component(1) == u2.dx());

    /* d >= 1: unpublished components are zero placeholders; the
     * u^2-component is the rescaled KdV flow in u^2 */
    CHECK(sys.flows.at({1, 1}).component(0).is_zero());
    CHECK(sys.flows.at({1, 1}).component(1).is_zero());
    CHECK(sys.flows.at({2, 1}).component(0).is_zero());
    CHECK(sys.flows.at({2, 1}).component(1) ==
          kdv_flow(1, ctx).dx().rescale_eps_sq(g2).remap_vars({1}, 2));

    /* every published flow vanishes at the origin */
    for (const auto& [label, op] : sys.flows) CHECK(op.vanishes_at_origin());
}

TEST_CASE("composite change of variables") {
    const TruncationContext ctx{2, 5};
    /* the constructor validates hat(tilde(u)) against the displayed maps */
    const MiuraTransform m = composite_miura(ctx);
    CHECK(m.n_vars() == 2);
    /* second image is the identity in the second variable */
    CHECK(m.images()[1] == DiffPoly::jet(1, 0, 2, ctx));
    /* at xi = 0 the first image is the identity too */
    CHECK(m.images()[0].specialize_param(Param::xi, 0) == DiffPoly::jet(0, 0, 2, ctx));
}

TEST_CASE("verification passes at a reduced context") {
    FamilyOptions opt;
    opt.d_max = 1;
    opt.ctx = TruncationContext{2, 5};
    const VerificationReport rep = verify_theorem(opt);
    CHECK(rep.checks.size() == 8);
    CHECK(rep.all_pass());
    for (const CheckResult& c : rep.checks) {
        CHECK(c.pass);
        CHECK(c.number >= 1);
        CHECK(c.number <= 8);
        CHECK_FALSE(c.id.empty());
        CHECK_FALSE(c.name.empty());
    }

    opt.xi_zero = true;
    const VerificationReport rep0 = verify_theorem(opt);
    CHECK(rep0.all_pass());
    CHECK(rep0.options.xi_zero);
}

TEST_CASE("report serialization") {
    FamilyOptions opt;
    opt.d_max = 1;
    opt.ctx = TruncationContext{2, 5};
    const nlohmann::json j = verify_theorem(opt).to_json();
    CHECK(j.at("d_max") == 1);
    CHECK(j.at("eps_max") == 2);
    CHECK(j.at("deg_max") == 5);
    CHECK(j.at("xi_zero") == false);
    CHECK(j.at("all_pass") == true);
    REQUIRE(j.at("checks").is_array());
    CHECK(j.at("checks").size() == 8);
    for (const auto& c : j.at("checks")) {
        CHECK(c.contains("number"));
        CHECK(c.contains("id"));
        CHECK(c.contains("name"));
        CHECK(c.at("pass") == true);
    }
}

TEST_CASE("a planted error is reported with its difference") {
    FamilyOptions opt;
    opt.d_max = 1;
    opt.ctx = TruncationContext{2, 5};
    const SystemMutator plant = [](EvolutionarySystem& s) {
        /* corrupt the KdV dispersion coefficient of the d = 0 flow */
        std::vector<DiffPoly> comps = s.flows.at({2, 0}).components();
        const DiffPoly u2 = DiffPoly::jet(1, 0, 2, comps[0].context());
        comps[1] += u2.dx_pow(3).eps_shifted(2).scaled(xi).divided(100);
        s.flows[{2, 0}] = EvolutionaryOp(std::move(comps));
    };
    const VerificationReport rep = verify_theorem(opt, plant);
    CHECK_FALSE(rep.all_pass());
    bool reported = false;
    for (const CheckResult& c : rep.checks)
        if (!c.pass && !c.detail.empty()) reported = true;
    CHECK(reported);
}

} // TEST_SUITE
