#include "drflow/calculus.hpp"

#include <algorithm>
#include <map>

#include "drflow/errors.hpp"

namespace drflow {

DiffPoly variational_derivative(const DiffPoly& f, int var) {
    DiffPoly acc(f.n_vars(), f.context());
    int kmax = f.max_jet_order(var);
    for (int n = 0; n <= kmax; ++n) {
        DiffPoly t = f.partial(var, n).dx_pow(unsigned(n));
        if (n % 2 == 0)
            acc += t;
        else
            acc -= t;
    }
    return acc;
}

std::vector<DiffPoly> variational_gradient(const DiffPoly& f) {
    std::vector<DiffPoly> g;
    g.reserve(std::size_t(f.n_vars()));
    for (int a = 0; a < f.n_vars(); ++a) g.push_back(variational_derivative(f, a));
    return g;
}

bool is_total_x_derivative(const DiffPoly& f) {
    if (!f.vanishes_at_origin()) return false;
    for (int a = 0; a < f.n_vars(); ++a)
        if (!variational_derivative(f, a).is_zero()) return false;
    return true;
}

DiffPoly antiderivative(const DiffPoly& f) {
    if (!f.vanishes_at_origin())
        throw NonzeroConstantTerm("antiderivative of an element with a constant term");
    DiffPoly rest = f;
    DiffPoly result(f.n_vars(), f.context());
    /* Peel off the maximal jet (order, var): rest = dx(g) + lower, with
     * g = the integral of d rest / d u^var_order in u^var_{order-1}.
     * The maximal jet strictly decreases, so the loop terminates. */
    long guard = 0;
    while (!rest.is_zero()) {
        if (++guard > 100000) throw Error("antiderivative failed to terminate");
        int korder = -1, kvar = -1;
        for (const auto& t : rest.terms())
            for (const auto& j : t.mono.jets)
                if (j.order > korder || (j.order == korder && j.var > kvar)) {
                    korder = j.order;
                    kvar = j.var;
                }
        if (korder <= 0)
            throw NotATotalDerivative("remainder depends on undifferentiated variables only");
        DiffPoly A = rest.partial(kvar, korder);
        for (const auto& t : A.terms())
            for (const auto& j : t.mono.jets)
                if (j.order > korder - 1 || (j.order == korder - 1 && j.var > kvar))
                    throw NotATotalDerivative("coefficient of the top jet is not integrable");
        DiffPoly g = A.integrate_jet(kvar, korder - 1);
        result += g;
        rest -= g.dx();
    }
    return result;
}

std::optional<DiffPoly> conservation_law_witness(const DiffPoly& f, const EvolutionaryOp& H) {
    DiffPoly g = H.apply(f);
    try {
        return antiderivative(g);
    } catch (const NotATotalDerivative&) {
        return std::nullopt;
    } catch (const NonzeroConstantTerm&) {
        return std::nullopt;
    }
}

namespace {

/* Jet monomials over one variable with the given jet weight and bounded
 * total multiplicity, i.e. the candidate terms of one eps level of a flow
 * homogeneous of differential degree 1. */
void weight_partitions(int remaining, int min_order, std::vector<JetFactor>& current,
                       int deg_max, std::vector<Monomial>& out) {
    if (remaining == 0) {
        int used = 0;
        for (const auto& j : current) used += j.mult;
        /* pad with undifferentiated factors up to the degree bound */
        for (int m = 0; used + m <= deg_max; ++m) {
            Monomial mono;
            if (m > 0) mono.jets.push_back(JetFactor{0, 0, m});
            for (const auto& j : current) mono.jets.push_back(j);
            out.push_back(std::move(mono));
        }
        return;
    }
    for (int order = min_order; order <= remaining; ++order) {
        for (int mult = 1; order * mult <= remaining; ++mult) {
            current.push_back(JetFactor{0, order, mult});
            weight_partitions(remaining - order * mult, order + 1, current, deg_max, out);
            current.pop_back();
        }
    }
}

std::vector<Monomial> degree_one_basis(int weight, int deg_max) {
    std::vector<Monomial> out;
    std::vector<JetFactor> current;
    weight_partitions(weight, 1, current, deg_max, out);
    return out;
}

} // namespace

DiffPoly extend_commuting_flow(const DiffPoly& P, const DiffPoly& f) {
    if (P.n_vars() != 1 || f.n_vars() != 1)
        throw ArityMismatch("extend_commuting_flow works over one dependent variable");
    const TruncationContext ctx = P.context();
    /* one degree of headroom so the commutator equations are exact */
    const TruncationContext work{ctx.eps_max, ctx.deg_max + 1};

    const DiffPoly u = DiffPoly::jet(0, 0, 1, work);
    const DiffPoly ux = DiffPoly::jet(0, 1, 1, work);
    const DiffPoly uux = u * ux;

    if (!P.is_homogeneous(1))
        throw Error("P is not homogeneous of differential degree 1");
    if (P.eps_component(0) != uux.with_context(ctx))
        throw Error("the dispersionless part of P is not u u_x");
    if (f.max_jet_order() > 0 || f.min_eps() != 0 || f.max_eps() != 0)
        throw Error("the seed must be a power series in the undifferentiated variable");

    const DiffPoly Pw = P.with_context(work);
    const EvolutionaryOp HP(std::vector<DiffPoly>{Pw});

    DiffPoly Q = f.with_context(work) * ux;

    /* linearization at one eps level: b -> H_{uu_x}(b) - H_b(uu_x) */
    const EvolutionaryOp H0(std::vector<DiffPoly>{uux});
    auto linearized = [&](const DiffPoly& b) {
        return H0.apply(b) - (b * ux + b.dx() * u);
    };

    for (int k = 1; k <= ctx.eps_max; ++k) {
        const DiffPoly residual =
            EvolutionaryOp::commutator(HP, EvolutionaryOp(std::vector<DiffPoly>{Q}))
                .component(0)
                .eps_coefficient(k);

        const std::vector<Monomial> basis = degree_one_basis(k + 1, ctx.deg_max);

        /* assemble rows over the monomials of the linearized images and of
         * the residual; entries are exact rationals, the right-hand side
         * lives in the parameter ring */
        auto cmp = [](const Monomial& a, const Monomial& b) { return monomial_less(a, b); };
        std::map<Monomial, int, decltype(cmp)> row_index(cmp);
        std::vector<DiffPoly> images;
        images.reserve(basis.size());
        for (const auto& b : basis) {
            images.push_back(linearized(DiffPoly::term(b, ParamScalar::one(), 1, work)));
            for (const auto& t : images.back().terms())
                row_index.emplace(t.mono, 0);
        }
        for (const auto& t : residual.terms()) row_index.emplace(t.mono, 0);
        int n_rows = 0;
        for (auto& [m, idx] : row_index) idx = n_rows++;
        const int n_cols = int(basis.size());

        std::vector<std::vector<Rational>> M(std::size_t(n_rows),
                                             std::vector<Rational>(std::size_t(n_cols), Rational(0)));
        std::vector<ParamScalar> rhs(static_cast<std::size_t>(n_rows));
        for (int c = 0; c < n_cols; ++c)
            for (const auto& t : images[std::size_t(c)].terms())
                M[std::size_t(row_index[t.mono])][std::size_t(c)] = t.coeff.rational_value();
        for (const auto& t : residual.terms())
            rhs[std::size_t(row_index[t.mono])] = -t.coeff;

        /* exact Gauss-Jordan elimination */
        std::vector<int> pivot_row(std::size_t(n_cols), -1);
        std::vector<bool> used(std::size_t(n_rows), false);
        for (int c = 0; c < n_cols; ++c) {
            int pr = -1;
            for (int r = 0; r < n_rows; ++r)
                if (!used[std::size_t(r)] && M[std::size_t(r)][std::size_t(c)] != 0) {
                    pr = r;
                    break;
                }
            if (pr < 0)
                throw NonUniqueSolution("eps level " + std::to_string(k) +
                                        " leaves a basis direction unconstrained");
            used[std::size_t(pr)] = true;
            pivot_row[std::size_t(c)] = pr;
            for (int r = 0; r < n_rows; ++r) {
                if (r == pr || M[std::size_t(r)][std::size_t(c)] == 0) continue;
                Rational factor = M[std::size_t(r)][std::size_t(c)] / M[std::size_t(pr)][std::size_t(c)];
                for (int c2 = 0; c2 < n_cols; ++c2)
                    M[std::size_t(r)][std::size_t(c2)] -=
                        factor * M[std::size_t(pr)][std::size_t(c2)];
                rhs[std::size_t(r)] -= rhs[std::size_t(pr)].scaled(factor);
            }
        }
        for (int r = 0; r < n_rows; ++r)
            if (!used[std::size_t(r)] && !rhs[std::size_t(r)].is_zero())
                throw NoSolution("eps level " + std::to_string(k) + " is inconsistent");

        DiffPoly Qk(1, work);
        for (int c = 0; c < n_cols; ++c) {
            const int pr = pivot_row[std::size_t(c)];
            const ParamScalar x = rhs[std::size_t(pr)].divided(M[std::size_t(pr)][std::size_t(c)]);
            if (!x.is_zero())
                Qk += DiffPoly::term(basis[std::size_t(c)], x, 1, work);
        }
        Q += Qk.eps_shifted(k);
    }

    /* the construction guarantees this; fail loudly if it does not hold */
    if (!EvolutionaryOp::commutator(HP, EvolutionaryOp(std::vector<DiffPoly>{Q}))
             .component(0)
             .is_zero())
        throw Error("extended flow does not commute after solving all eps levels");

    return Q.with_context(ctx);
}

} // namespace drflow
