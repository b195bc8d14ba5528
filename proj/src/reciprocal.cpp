#include "drflow/reciprocal.hpp"

#include "drflow/errors.hpp"

namespace drflow {

ReciprocalTransform::ReciprocalTransform(DiffPoly f) : f_(std::move(f)) {
    if (!f_.is_homogeneous(0))
        throw Error("reciprocal density is not homogeneous of differential degree 0");
    if (!f_.vanishes_at_origin())
        throw Error("reciprocal density does not vanish at the origin");
}

std::vector<std::vector<DiffPoly>> ReciprocalTransform::forward_images(int max_order) const {
    const int n = n_vars();
    const TruncationContext ctx = f_.context();
    const DiffPoly inv = (DiffPoly::constant(Rational(1), n, ctx) + f_).invert_unit();
    std::vector<std::vector<DiffPoly>> images(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        images[std::size_t(a)].push_back(DiffPoly::jet(a, 0, n, ctx));
        for (int k = 1; k <= max_order; ++k)
            images[std::size_t(a)].push_back(inv * images[std::size_t(a)].back().dx());
    }
    return images;
}

DiffPoly ReciprocalTransform::phi_forward(const DiffPoly& p) const {
    if (p.n_vars() != n_vars())
        throw ArityMismatch("operand lives over a different number of variables");
    return p.subst_jets(forward_images(std::max(0, p.max_jet_order())));
}

ReciprocalTransform::InverseData ReciprocalTransform::inverse_images(int max_order) const {
    const int n = n_vars();
    const TruncationContext ctx = f_.context();
    const int f_order = std::max(0, f_.max_jet_order());
    const int build_order = std::max(max_order, f_order);

    /* F = Phi^{-1}(f) solves F = f(J[F]) where J[F]^a_{k+1} = (1+F) dy J[F]^a_k;
     * the defect gains one unit of jet multiplicity per round. */
    auto build = [&](const DiffPoly& F, int up_to) {
        const DiffPoly one_plus = DiffPoly::constant(Rational(1), n, ctx) + F;
        std::vector<std::vector<DiffPoly>> J(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) {
            J[std::size_t(a)].push_back(DiffPoly::jet(a, 0, n, ctx));
            for (int k = 1; k <= up_to; ++k)
                J[std::size_t(a)].push_back(one_plus * J[std::size_t(a)].back().dx());
        }
        return J;
    };

    /* initial guess: the dispersionless part of f read in the v variables */
    DiffPoly F = f_.eps_component(0);
    const long cap = long(ctx.deg_max) + long(ctx.eps_max) + 3;
    bool converged = false;
    for (long it = 0; it < cap; ++it) {
        DiffPoly next = f_.subst_jets(build(F, f_order));
        if (next == F) {
            converged = true;
            break;
        }
        F = next;
    }
    if (!converged)
        throw Error("reciprocal inverse did not reach a fixed point in this context");

    return InverseData{F, build(F, build_order)};
}

DiffPoly ReciprocalTransform::phi_inverse(const DiffPoly& p) const {
    if (p.n_vars() != n_vars())
        throw ArityMismatch("operand lives over a different number of variables");
    return p.subst_jets(inverse_images(std::max(0, p.max_jet_order())).images);
}

ReciprocalTransform ReciprocalTransform::specialize_param(Param p, const Rational& value) const {
    return ReciprocalTransform(f_.specialize_param(p, value));
}

EvolutionarySystem reciprocal_push_system(const ReciprocalTransform& rt,
                                          const EvolutionarySystem& S,
                                          std::map<FlowLabel, DiffPoly>* witnesses) {
    if (S.n_vars != rt.n_vars())
        throw ArityMismatch("system and reciprocal transform have different arities");
    const int n = S.n_vars;

    /* one shared inverse-image table at the largest order that occurs */
    int max_order = 0;
    for (const auto& [label, op] : S.flows)
        for (const auto& c : op.components())
            max_order = std::max(max_order, c.max_jet_order());
    /* witnesses can carry derivatives up to the component order */
    const auto inv = rt.inverse_images(max_order + std::max(0, rt.f().max_jet_order()) + 2);

    EvolutionarySystem out;
    out.n_vars = n;
    for (const auto& [label, op] : S.flows) {
        auto R = conservation_law_witness(rt.f(), op);
        if (!R)
            throw NotAConservationLaw("flow " + label.str() +
                                      " does not conserve the reciprocal density");
        if (witnesses) witnesses->emplace(label, *R);
        const DiffPoly Rv = R->subst_jets(inv.images);
        std::vector<DiffPoly> comps;
        comps.reserve(std::size_t(n));
        for (int a = 0; a < n; ++a) {
            const DiffPoly Pv = op.component(a).subst_jets(inv.images);
            comps.push_back(Pv - Rv * DiffPoly::jet(a, 1, n, rt.f().context()));
        }
        out.flows.emplace(label, EvolutionaryOp(std::move(comps)));
    }
    return out;
}

std::pair<DiffPoly, DiffPoly> transport_conservation_law(const ReciprocalTransform& rt,
                                                         const DiffPoly& g,
                                                         const DiffPoly& R_g,
                                                         const DiffPoly& R_f) {
    const int n = rt.n_vars();
    const TruncationContext ctx = rt.context();
    const DiffPoly inv_unit =
        (DiffPoly::constant(Rational(1), n, ctx) + rt.f()).invert_unit();
    const DiffPoly g_new = rt.phi_inverse(g * inv_unit);
    const DiffPoly R_new = rt.phi_inverse(R_g - g * R_f * inv_unit);
    return {g_new, R_new};
}

ReciprocalTransform compose_reciprocal(const ReciprocalTransform& rt, const DiffPoly& g) {
    return ReciprocalTransform(rt.f() + g);
}

} // namespace drflow
