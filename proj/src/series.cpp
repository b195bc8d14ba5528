#include "drflow/series.hpp"

#include <sstream>

#include "drflow/calculus.hpp"
#include "drflow/errors.hpp"

namespace drflow {

bool SeriesExp::operator<(const SeriesExp& o) const {
    if (x != o.x) return x < o.x;
    if (t != o.t) return t < o.t;
    return eps < o.eps;
}

void PowerSeries::check_same(const PowerSeries& o) const {
    if (!(ctx_ == o.ctx_)) throw Error("power series context mismatch");
}

void PowerSeries::add_term(const SeriesExp& e, const ParamScalar& c) {
    if (c.is_zero()) return;
    if (e.total() > ctx_.deg_max || e.eps > ctx_.eps_max) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PowerSeries PowerSeries::constant(const ParamScalar& c, const SeriesContext& ctx) {
    PowerSeries r(ctx);
    SeriesExp e;
    e.t.assign(ctx.n_times, 0);
    r.add_term(e, c);
    return r;
}

PowerSeries PowerSeries::var_x(const SeriesContext& ctx) {
    PowerSeries r(ctx);
    SeriesExp e;
    e.x = 1;
    e.t.assign(ctx.n_times, 0);
    r.add_term(e, ParamScalar::one());
    return r;
}

PowerSeries PowerSeries::var_t(int i, const SeriesContext& ctx) {
    PowerSeries r(ctx);
    SeriesExp e;
    e.t.assign(ctx.n_times, 0);
    e.t.at(i) = 1;
    r.add_term(e, ParamScalar::one());
    return r;
}

PowerSeries PowerSeries::monomial(const SeriesExp& e, const ParamScalar& c,
                                  const SeriesContext& ctx) {
    PowerSeries r(ctx);
    r.add_term(e, c);
    return r;
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
    check_same(o);
    PowerSeries r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
    check_same(o);
    PowerSeries r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

PowerSeries PowerSeries::operator-() const {
    PowerSeries r(ctx_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
    check_same(o);
    PowerSeries r(ctx_);
    for (const auto& [ea, ca] : terms_) {
        const int da = ea.total();
        for (const auto& [eb, cb] : o.terms_) {
            if (da + eb.total() > ctx_.deg_max) continue;
            if (ea.eps + eb.eps > ctx_.eps_max) continue;
            SeriesExp e = ea;
            e.x += eb.x;
            for (size_t i = 0; i < e.t.size(); ++i) e.t[i] += eb.t[i];
            e.eps += eb.eps;
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

PowerSeries PowerSeries::scaled(const ParamScalar& c) const {
    PowerSeries r(ctx_);
    for (const auto& [e, t] : terms_) r.add_term(e, t * c);
    return r;
}

PowerSeries PowerSeries::pow(unsigned e) const {
    PowerSeries r = constant(ParamScalar::one(), ctx_);
    PowerSeries base = *this;
    while (e > 0) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

PowerSeries PowerSeries::eps_shifted(int k) const {
    PowerSeries r(ctx_);
    for (const auto& [e, c] : terms_) {
        SeriesExp ne = e;
        ne.eps += k;
        r.add_term(ne, c);
    }
    return r;
}

PowerSeries PowerSeries::ddx() const {
    PowerSeries r(ctx_);
    for (const auto& [e, c] : terms_) {
        if (e.x == 0) continue;
        SeriesExp ne = e;
        ne.x -= 1;
        r.add_term(ne, c.scaled(Rational(e.x)));
    }
    return r;
}

PowerSeries PowerSeries::ddt(int i) const {
    PowerSeries r(ctx_);
    for (const auto& [e, c] : terms_) {
        if (e.t.at(i) == 0) continue;
        SeriesExp ne = e;
        ne.t[i] -= 1;
        r.add_term(ne, c.scaled(Rational(e.t[i])));
    }
    return r;
}

PowerSeries PowerSeries::int_x() const {
    PowerSeries r(ctx_);
    for (const auto& [e, c] : terms_) {
        SeriesExp ne = e;
        ne.x += 1;
        r.add_term(ne, c.divided(Rational(ne.x)));
    }
    return r;
}

PowerSeries PowerSeries::int_t(int i) const {
    PowerSeries r(ctx_);
    for (const auto& [e, c] : terms_) {
        SeriesExp ne = e;
        ne.t.at(i) += 1;
        r.add_term(ne, c.divided(Rational(ne.t[i])));
    }
    return r;
}

PowerSeries PowerSeries::at_x_zero() const {
    PowerSeries r(ctx_);
    for (const auto& [e, c] : terms_)
        if (e.x == 0) r.terms_.emplace(e, c);
    return r;
}

PowerSeries PowerSeries::at_t_zero(int i) const {
    PowerSeries r(ctx_);
    for (const auto& [e, c] : terms_)
        if (e.t.at(i) == 0) r.terms_.emplace(e, c);
    return r;
}

PowerSeries PowerSeries::compose_x(const PowerSeries& X) const {
    check_same(X);
    int max_x = 0;
    for (const auto& [e, c] : terms_) max_x = std::max(max_x, e.x);
    std::vector<PowerSeries> xpow;
    xpow.push_back(constant(ParamScalar::one(), ctx_));
    for (int k = 1; k <= max_x; ++k) xpow.push_back(xpow.back() * X);
    PowerSeries r(ctx_);
    for (const auto& [e, c] : terms_) {
        SeriesExp rest = e;
        rest.x = 0;
        r += xpow[static_cast<size_t>(e.x)] * monomial(rest, c, ctx_);
    }
    return r;
}

PowerSeries PowerSeries::truncated(int total_deg) const {
    PowerSeries r(ctx_);
    for (const auto& [e, c] : terms_)
        if (e.total() <= total_deg) r.terms_.emplace(e, c);
    return r;
}

ParamScalar PowerSeries::coeff(const SeriesExp& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ParamScalar::zero() : it->second;
}

std::string PowerSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (e.x > 0) {
            os << "*x";
            if (e.x > 1) os << "^" << e.x;
        }
        for (size_t i = 0; i < e.t.size(); ++i) {
            if (e.t[i] == 0) continue;
            os << "*t" << (i + 1);
            if (e.t[i] > 1) os << "^" << e.t[i];
        }
        if (e.eps > 0) {
            os << "*eps";
            if (e.eps > 1) os << "^" << e.eps;
        }
    }
    return os.str();
}

/* Computes the series value of a differential polynomial on a solution,
 * substituting d^k(sol[a])/dx^k for the jet variables. */
PowerSeries evaluate_on_solution(const DiffPoly& p, const std::vector<PowerSeries>& sol) {
    if (sol.empty()) throw Error("evaluate_on_solution: empty solution");
    const SeriesContext& ctx = sol[0].context();
    if (p.n_vars() > static_cast<int>(sol.size()))
        throw ArityMismatch("differential polynomial arity exceeds solution arity");

    std::vector<std::vector<PowerSeries>> jets(sol.size());
    for (size_t a = 0; a < sol.size(); ++a) jets[a].push_back(sol[a]);
    auto jet = [&](int var, int order) -> const PowerSeries& {
        auto& row = jets[static_cast<size_t>(var)];
        while (static_cast<int>(row.size()) <= order) row.push_back(row.back().ddx());
        return row[static_cast<size_t>(order)];
    };

    PowerSeries acc(ctx);
    for (const Term& t : p.terms()) {
        PowerSeries piece = PowerSeries::constant(t.coeff, ctx);
        for (const JetFactor& f : t.mono.jets)
            piece = piece * jet(f.var, f.order).pow(static_cast<unsigned>(f.mult));
        acc += piece.eps_shifted(t.mono.eps_exp);
    }
    return acc;
}

FormalSolution evolve_formal_solution(const std::vector<EvolutionaryOp>& flows,
                                      const std::vector<PowerSeries>& initial,
                                      const SeriesContext& ctx) {
    if (static_cast<int>(flows.size()) != ctx.n_times)
        throw ArityMismatch("one flow per time variable required");
    std::vector<PowerSeries> sol = initial;
    for (int i = 0; i < ctx.n_times; ++i) {
        const std::vector<PowerSeries> base = sol;
        for (int iter = 0;; ++iter) {
            if (iter > ctx.deg_max + 2)
                throw Error("formal solution iteration failed to stabilize");
            std::vector<PowerSeries> next;
            next.reserve(sol.size());
            bool stable = true;
            for (size_t a = 0; a < sol.size(); ++a) {
                PowerSeries n =
                    base[a] + evaluate_on_solution(flows[static_cast<size_t>(i)].component(int(a)), sol).int_t(i);
                if (!(n == sol[a])) stable = false;
                next.push_back(std::move(n));
            }
            sol = std::move(next);
            if (stable) break;
        }
    }
    return FormalSolution{ctx, sol};
}

static int max_flow_order(const EvolutionaryOp& op) {
    int m = 0;
    for (const DiffPoly& c : op.components()) m = std::max(m, c.max_jet_order());
    return m;
}

std::vector<std::vector<PowerSeries>> flow_residuals(const std::vector<EvolutionaryOp>& flows,
                                                     const FormalSolution& sol) {
    std::vector<std::vector<PowerSeries>> res;
    for (size_t i = 0; i < flows.size(); ++i) {
        const int reliable = std::min(sol.ctx.deg_max - 1,
                                      sol.ctx.deg_max - max_flow_order(flows[i]));
        std::vector<PowerSeries> row;
        for (size_t a = 0; a < sol.comps.size(); ++a) {
            PowerSeries r = sol.comps[a].ddt(static_cast<int>(i)) -
                            evaluate_on_solution(flows[i].component(int(a)), sol.comps);
            row.push_back(r.truncated(reliable));
        }
        res.push_back(std::move(row));
    }
    return res;
}

TransportResult solution_transport(const ReciprocalTransform& rt,
                                   const std::vector<EvolutionaryOp>& flows,
                                   const FormalSolution& sol) {
    const SeriesContext& ctx = sol.ctx;
    const int B = ctx.deg_max;
    if (static_cast<int>(flows.size()) != ctx.n_times)
        throw ArityMismatch("one flow per time variable required");

    /* Witnesses R_i with dy = (1+f) dx + sum_i R_i dt_i. */
    std::vector<DiffPoly> witnesses;
    for (size_t i = 0; i < flows.size(); ++i) {
        auto w = conservation_law_witness(rt.f(), flows[i]);
        if (!w)
            throw NotAConservationLaw("flow " + std::to_string(i + 1) +
                                      " does not conserve the transformation density");
        witnesses.push_back(*w);
    }

    const PowerSeries a =
        PowerSeries::constant(ParamScalar::one(), ctx) + evaluate_on_solution(rt.f(), sol.comps);
    std::vector<PowerSeries> b;
    int ord_r = 0;
    for (const DiffPoly& w : witnesses) {
        b.push_back(evaluate_on_solution(w, sol.comps));
        ord_r = std::max(ord_r, w.max_jet_order());
    }

    /* Closedness of the 1-form, exact to the reliability bound. */
    for (size_t i = 0; i < b.size(); ++i) {
        const int lim = B - witnesses[i].max_jet_order() - 1;
        PowerSeries d = a.ddt(static_cast<int>(i)) - b[i].ddx();
        if (!d.truncated(lim).is_zero())
            throw ClosednessViolation("d/dt_" + std::to_string(i + 1) +
                                      "(1+f) != d/dx(R): " + d.truncated(lim).str());
        for (size_t j = i + 1; j < b.size(); ++j) {
            const int lim2 =
                B - std::max(witnesses[i].max_jet_order(), witnesses[j].max_jet_order()) - 1;
            PowerSeries m = b[i].ddt(static_cast<int>(j)) - b[j].ddt(static_cast<int>(i));
            if (!m.truncated(lim2).is_zero())
                throw ClosednessViolation("mixed t-derivatives of the 1-form disagree: " +
                                          m.truncated(lim2).str());
        }
    }

    /* y(x,t): integrate a in x, then the R_i legs along the t-axes at x = 0. */
    PowerSeries y = a.int_x();
    for (size_t i = 0; i < b.size(); ++i) {
        PowerSeries leg = b[i].at_x_zero();
        for (size_t j = i + 1; j < b.size(); ++j) leg = leg.at_t_zero(static_cast<int>(j));
        y += leg.int_t(static_cast<int>(i));
    }

    const int B_y = ord_r > 0 ? B - ord_r + 1 : B;

    /* Check dy/dt_i = R_i on the solution. */
    for (size_t i = 0; i < b.size(); ++i) {
        const int lim = std::min(B_y - 1, B - witnesses[i].max_jet_order());
        PowerSeries d = y.ddt(static_cast<int>(i)) - b[i];
        if (!d.truncated(lim).is_zero())
            throw ClosednessViolation("dy/dt_" + std::to_string(i + 1) +
                                      " != R: " + d.truncated(lim).str());
    }

    /* Revert x(y,t) from the fixed point X = y - W(X), W(x,t) = y(x,t) - x. */
    PowerSeries W = y - PowerSeries::var_x(ctx);
    {
        SeriesExp lin;
        lin.x = 1;
        lin.t.assign(ctx.n_times, 0);
        SeriesExp cst;
        cst.t.assign(ctx.n_times, 0);
        if (!W.coeff(lin).is_zero() || !W.coeff(cst).is_zero())
            throw Error("solution transport requires initial data vanishing at the origin");
    }
    PowerSeries X = PowerSeries::var_x(ctx);
    for (int iter = 0;; ++iter) {
        if (iter > B + 2) throw Error("coordinate reversion failed to stabilize");
        PowerSeries next = PowerSeries::var_x(ctx) - W.compose_x(X);
        if (next == X) break;
        X = next;
    }
    X = X.truncated(B_y);

    std::vector<PowerSeries> v;
    for (const PowerSeries& u : sol.comps) v.push_back(u.compose_x(X).truncated(B_y));

    TransportResult out{FormalSolution{ctx, std::move(v)}, y, X, B_y};
    return out;
}

} // namespace drflow
