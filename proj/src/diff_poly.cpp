#include "drflow/diff_poly.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "drflow/errors.hpp"

namespace drflow {

namespace {
std::atomic<bool> g_parallel{true};
/* Minimum number of term pairs before the OpenMP kernel is used. */
constexpr std::size_t parallel_pair_threshold = 4096;
} // namespace

void set_parallel_enabled(bool on) { g_parallel.store(on); }
bool parallel_enabled() { return g_parallel.load(); }

DiffPoly DiffPoly::constant(const Rational& c, int n_vars, const TruncationContext& ctx) {
    return term(Monomial::unit(), ParamScalar(c), n_vars, ctx);
}

DiffPoly DiffPoly::scalar(const ParamScalar& c, int n_vars, const TruncationContext& ctx) {
    return term(Monomial::unit(), c, n_vars, ctx);
}

DiffPoly DiffPoly::jet(int var, int order, int n_vars, const TruncationContext& ctx) {
    if (var < 0 || var >= n_vars) throw ArityMismatch("jet variable index out of range");
    return term(Monomial::jet(var, order), ParamScalar::one(), n_vars, ctx);
}

DiffPoly DiffPoly::term(const Monomial& m, const ParamScalar& c, int n_vars,
                        const TruncationContext& ctx) {
    DiffPoly p(n_vars, ctx);
    if (!c.is_zero() && ctx.admits(m.eps_exp, m.u_degree()))
        p.terms_.push_back(Term{m, c});
    return p;
}

bool DiffPoly::vanishes_at_origin() const {
    for (const auto& t : terms_)
        if (t.mono.u_degree() == 0) return false;
    return true;
}

ParamScalar DiffPoly::constant_term() const {
    return coeff(Monomial::unit());
}

ParamScalar DiffPoly::coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& mm) {
                                   return monomial_less(t.mono, mm);
                               });
    if (it != terms_.end() && it->mono == m) return it->coeff;
    return ParamScalar::zero();
}

bool DiffPoly::is_homogeneous(int degree) const {
    for (const auto& t : terms_)
        if (t.mono.diff_degree() != degree) return false;
    return true;
}

bool DiffPoly::contains_var(int var) const {
    for (const auto& t : terms_)
        for (const auto& j : t.mono.jets)
            if (j.var == var) return true;
    return false;
}

int DiffPoly::max_jet_order(int var) const {
    int m = -1;
    for (const auto& t : terms_)
        for (const auto& j : t.mono.jets)
            if (var < 0 || j.var == var) m = std::max(m, j.order);
    return m;
}

int DiffPoly::min_eps() const {
    int m = 0;
    bool first = true;
    for (const auto& t : terms_) {
        if (first || t.mono.eps_exp < m) m = t.mono.eps_exp;
        first = false;
    }
    return m;
}

int DiffPoly::max_eps() const {
    int m = 0;
    for (const auto& t : terms_) m = std::max(m, t.mono.eps_exp);
    return m;
}

int DiffPoly::max_u_degree() const {
    int m = 0;
    for (const auto& t : terms_) m = std::max(m, t.mono.u_degree());
    return m;
}

void DiffPoly::check_same_ring(const DiffPoly& o) const {
    if (n_vars_ != o.n_vars_)
        throw ArityMismatch("operands live over different numbers of variables");
}

std::vector<Term> DiffPoly::normalized(std::vector<Term> v, const TruncationContext& ctx) {
    std::sort(v.begin(), v.end(),
              [](const Term& a, const Term& b) { return monomial_less(a.mono, b.mono); });
    std::vector<Term> out;
    out.reserve(v.size());
    for (auto& t : v) {
        if (!out.empty() && out.back().mono == t.mono) {
            out.back().coeff += t.coeff;
            if (out.back().coeff.is_zero()) out.pop_back();
        } else if (!t.coeff.is_zero() && ctx.admits(t.mono.eps_exp, t.mono.u_degree())) {
            out.push_back(std::move(t));
        }
    }
    return out;
}

DiffPoly PolyBuilder::take() {
    DiffPoly p = std::move(poly_);
    p.terms_ = DiffPoly::normalized(std::move(p.terms_), p.ctx_);
    return p;
}

DiffPoly DiffPoly::operator+(const DiffPoly& o) const {
    check_same_ring(o);
    DiffPoly r(n_vars_, ctx_.combined(o.ctx_));
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, k = 0;
    auto push = [&r](const Term& t) {
        if (r.ctx_.admits(t.mono.eps_exp, t.mono.u_degree())) r.terms_.push_back(t);
    };
    while (i < terms_.size() && k < o.terms_.size()) {
        int c = Monomial::compare(terms_[i].mono, o.terms_[k].mono);
        if (c < 0) {
            push(terms_[i++]);
        } else if (c > 0) {
            push(o.terms_[k++]);
        } else {
            ParamScalar s = terms_[i].coeff + o.terms_[k].coeff;
            if (!s.is_zero()) push(Term{terms_[i].mono, s});
            ++i;
            ++k;
        }
    }
    while (i < terms_.size()) push(terms_[i++]);
    while (k < o.terms_.size()) push(o.terms_[k++]);
    return r;
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

DiffPoly DiffPoly::operator-(const DiffPoly& o) const { return *this + (-o); }

DiffPoly DiffPoly::mul_impl(const DiffPoly& o, bool parallel) const {
    check_same_ring(o);
    const TruncationContext ctx = ctx_.combined(o.ctx_);
    DiffPoly r(n_vars_, ctx);
    if (terms_.empty() || o.terms_.empty()) return r;

    /* Terms are sorted by (eps, u_degree, ...): record the runs of equal eps
     * in the right factor so both bounds can prune pairs early. */
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    for (std::size_t b = 0; b < o.terms_.size();) {
        std::size_t e = b + 1;
        while (e < o.terms_.size() && o.terms_[e].mono.eps_exp == o.terms_[b].mono.eps_exp)
            ++e;
        runs.emplace_back(b, e);
        b = e;
    }

    auto expand_range = [&](std::size_t lo, std::size_t hi, std::vector<Term>& out) {
        for (std::size_t i = lo; i < hi; ++i) {
            const Term& a = terms_[i];
            const int ae = a.mono.eps_exp;
            const int ad = a.mono.u_degree();
            for (const auto& [rb, re] : runs) {
                if (ae + o.terms_[rb].mono.eps_exp > ctx.eps_max) break;
                for (std::size_t k = rb; k < re; ++k) {
                    const Term& b = o.terms_[k];
                    if (ad + b.mono.u_degree() > ctx.deg_max) break;
                    out.push_back(Term{a.mono * b.mono, a.coeff * b.coeff});
                }
            }
        }
    };

    std::vector<Term> buf;
#ifdef _OPENMP
    if (parallel && terms_.size() * o.terms_.size() >= parallel_pair_threshold &&
        omp_get_max_threads() > 1) {
        const int nt = omp_get_max_threads();
        std::vector<std::vector<Term>> parts(nt);
        const std::size_t n = terms_.size();
#pragma omp parallel num_threads(nt)
        {
            const int tid = omp_get_thread_num();
            const std::size_t lo = n * tid / nt, hi = n * (tid + 1) / nt;
            expand_range(lo, hi, parts[tid]);
        }
        std::size_t total = 0;
        for (const auto& p : parts) total += p.size();
        buf.reserve(total);
        for (auto& p : parts)
            for (auto& t : p) buf.push_back(std::move(t));
    } else {
        expand_range(0, terms_.size(), buf);
    }
#else
    (void)parallel;
    expand_range(0, terms_.size(), buf);
#endif
    r.terms_ = normalized(std::move(buf), ctx);
    return r;
}

DiffPoly DiffPoly::operator*(const DiffPoly& o) const { return mul_impl(o, parallel_enabled()); }
DiffPoly DiffPoly::mul_serial(const DiffPoly& o) const { return mul_impl(o, false); }
DiffPoly DiffPoly::mul_parallel(const DiffPoly& o) const { return mul_impl(o, true); }

DiffPoly DiffPoly::scaled(const ParamScalar& c) const {
    if (c.is_zero()) return DiffPoly(n_vars_, ctx_);
    std::vector<Term> v;
    v.reserve(terms_.size());
    for (const auto& t : terms_) v.push_back(Term{t.mono, t.coeff * c});
    DiffPoly r(n_vars_, ctx_);
    r.terms_ = normalized(std::move(v), ctx_);
    return r;
}

DiffPoly DiffPoly::scaled(const Rational& c) const { return scaled(ParamScalar(c)); }

DiffPoly DiffPoly::divided(const Rational& c) const {
    if (c == 0) throw Error("division of DiffPoly by zero");
    DiffPoly r = *this;
    for (auto& t : r.terms_) t.coeff = t.coeff.divided(c);
    return r;
}

DiffPoly DiffPoly::pow(unsigned e) const {
    DiffPoly r = constant(Rational(1), n_vars_, ctx_);
    for (unsigned k = 0; k < e; ++k) r = r * *this;
    return r;
}

DiffPoly DiffPoly::eps_shifted(int e) const {
    std::vector<Term> v;
    v.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term u = t;
        u.mono.eps_exp += e;
        v.push_back(std::move(u));
    }
    DiffPoly r(n_vars_, ctx_);
    r.terms_ = normalized(std::move(v), ctx_);
    return r;
}

DiffPoly DiffPoly::dx() const {
    PolyBuilder b(n_vars_, ctx_);
    for (const auto& t : terms_) {
        for (std::size_t f = 0; f < t.mono.jets.size(); ++f) {
            const JetFactor& j = t.mono.jets[f];
            /* replace one copy of u^var_order by u^var_{order+1} */
            Monomial m;
            m.eps_exp = t.mono.eps_exp;
            for (std::size_t g = 0; g < t.mono.jets.size(); ++g) {
                if (g == f) {
                    JetFactor jj = t.mono.jets[g];
                    jj.mult -= 1;
                    if (jj.mult > 0) m.jets.push_back(jj);
                } else {
                    m.jets.push_back(t.mono.jets[g]);
                }
            }
            m = m * Monomial::jet(j.var, j.order + 1);
            b.add(m, t.coeff.scaled(Rational(j.mult)));
        }
    }
    return b.take();
}

DiffPoly DiffPoly::dx_pow(unsigned k) const {
    DiffPoly r = *this;
    for (unsigned i = 0; i < k; ++i) r = r.dx();
    return r;
}

DiffPoly DiffPoly::partial(int var, int order) const {
    PolyBuilder b(n_vars_, ctx_);
    for (const auto& t : terms_) {
        for (std::size_t f = 0; f < t.mono.jets.size(); ++f) {
            const JetFactor& j = t.mono.jets[f];
            if (j.var != var || j.order != order) continue;
            Monomial m;
            m.eps_exp = t.mono.eps_exp;
            for (std::size_t g = 0; g < t.mono.jets.size(); ++g) {
                JetFactor jj = t.mono.jets[g];
                if (g == f) jj.mult -= 1;
                if (jj.mult > 0) m.jets.push_back(jj);
            }
            b.add(m, t.coeff.scaled(Rational(j.mult)));
        }
    }
    return b.take();
}

DiffPoly DiffPoly::integrate_jet(int var, int order) const {
    PolyBuilder b(n_vars_, ctx_);
    for (const auto& t : terms_) {
        int j = t.mono.multiplicity(var, order);
        b.add(t.mono * Monomial::jet(var, order),
              t.coeff.divided(Rational(j + 1)));
    }
    return b.take();
}

DiffPoly DiffPoly::set_var_zero(int var) const {
    DiffPoly r(n_vars_, ctx_);
    for (const auto& t : terms_) {
        bool has = false;
        for (const auto& j : t.mono.jets)
            if (j.var == var) { has = true; break; }
        if (!has) r.terms_.push_back(t);
    }
    return r;
}

DiffPoly DiffPoly::degree_component(int degree) const {
    DiffPoly r(n_vars_, ctx_);
    for (const auto& t : terms_)
        if (t.mono.diff_degree() == degree) r.terms_.push_back(t);
    return r;
}

DiffPoly DiffPoly::eps_component(int eps_exp) const {
    DiffPoly r(n_vars_, ctx_);
    for (const auto& t : terms_)
        if (t.mono.eps_exp == eps_exp) r.terms_.push_back(t);
    return r;
}

DiffPoly DiffPoly::eps_coefficient(int eps_exp) const {
    return eps_component(eps_exp).eps_shifted(-eps_exp);
}

DiffPoly DiffPoly::with_context(const TruncationContext& ctx) const {
    DiffPoly r(n_vars_, ctx);
    for (const auto& t : terms_)
        if (ctx.admits(t.mono.eps_exp, t.mono.u_degree())) r.terms_.push_back(t);
    return r;
}

DiffPoly DiffPoly::remap_vars(const std::vector<int>& mapping, int new_n_vars) const {
    if (int(mapping.size()) != n_vars_)
        throw ArityMismatch("variable mapping has the wrong length");
    std::vector<Term> v;
    v.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m = Monomial::eps(t.mono.eps_exp);
        for (const auto& j : t.mono.jets) {
            if (mapping[j.var] < 0 || mapping[j.var] >= new_n_vars)
                throw ArityMismatch("variable mapping target out of range");
            m = m * Monomial::jet(mapping[j.var], j.order, j.mult);
        }
        v.push_back(Term{m, t.coeff});
    }
    DiffPoly r(new_n_vars, ctx_);
    r.terms_ = normalized(std::move(v), ctx_);
    return r;
}

DiffPoly DiffPoly::invert_unit() const {
    ParamScalar c0 = constant_term();
    if (!c0.is_rational() || c0.is_zero())
        throw NonInvertibleConstant("constant term is not a nonzero rational");
    Rational c = c0.rational_value();
    /* p = c(1 + r) with r in the augmentation ideal; invert geometrically. */
    DiffPoly r = divided(c) - constant(Rational(1), n_vars_, ctx_);
    DiffPoly inv = constant(Rational(1), n_vars_, ctx_);
    DiffPoly power = constant(Rational(1), n_vars_, ctx_);
    long cap = 2;
    if (ctx_.deg_max < TruncationContext::unbounded_value) cap += ctx_.deg_max;
    if (ctx_.eps_max < TruncationContext::unbounded_value) cap += ctx_.eps_max;
    for (long k = 0; k < cap && !power.is_zero(); ++k) {
        power = -(power * r);
        inv += power;
    }
    if (!power.is_zero())
        throw NonInvertibleConstant(
            "geometric inverse does not terminate in this truncation context");
    return inv.divided(c);
}

DiffPoly DiffPoly::subst_jets(const std::vector<std::vector<DiffPoly>>& images) const {
    /* locate a sample image for ring data */
    const DiffPoly* sample = nullptr;
    for (const auto& col : images)
        if (!col.empty()) { sample = &col[0]; break; }
    if (!sample) throw ArityMismatch("no substitution images supplied");
    const int n_out = sample->n_vars();
    const TruncationContext out_ctx = sample->context();

    std::map<std::tuple<int, int, int>, DiffPoly> powers;
    auto image_power = [&](int var, int order, int mult) -> const DiffPoly& {
        auto key = std::make_tuple(var, order, mult);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        if (var >= int(images.size()) || order >= int(images[var].size()))
            throw ArityMismatch("missing substitution image for a jet variable");
        DiffPoly p = images[var][order].pow(unsigned(mult));
        return powers.emplace(key, std::move(p)).first->second;
    };

    DiffPoly acc(n_out, out_ctx);
    for (const auto& t : terms_) {
        DiffPoly prod = DiffPoly::term(Monomial::eps(t.mono.eps_exp), t.coeff, n_out, out_ctx);
        for (const auto& j : t.mono.jets) {
            if (prod.is_zero()) break;
            prod = prod * image_power(j.var, j.order, j.mult);
        }
        acc += prod;
    }
    return acc;
}

DiffPoly DiffPoly::substitute(const std::vector<DiffPoly>& images) const {
    if (int(images.size()) != n_vars_)
        throw ArityMismatch("substitute needs one image per dependent variable");
    std::vector<std::vector<DiffPoly>> prolonged(images.size());
    for (int a = 0; a < n_vars_; ++a) {
        int kmax = max_jet_order(a);
        prolonged[a].push_back(images[a]);
        for (int k = 1; k <= kmax; ++k)
            prolonged[a].push_back(prolonged[a].back().dx());
    }
    return subst_jets(prolonged);
}

DiffPoly DiffPoly::rescale_eps_sq(const ParamScalar& g) const {
    std::vector<Term> v;
    v.reserve(terms_.size());
    for (const auto& t : terms_) {
        int e = t.mono.eps_exp;
        if (e % 2 != 0) throw OddEpsPower("eps rescaling applied to an odd eps power");
        if (e < 0) throw OddEpsPower("eps rescaling applied to a negative eps power");
        v.push_back(Term{t.mono, t.coeff * g.pow(unsigned(e / 2))});
    }
    DiffPoly r(n_vars_, ctx_);
    r.terms_ = normalized(std::move(v), ctx_);
    return r;
}

DiffPoly DiffPoly::specialize_param(Param p, const Rational& value) const {
    std::vector<Term> v;
    v.reserve(terms_.size());
    for (const auto& t : terms_) v.push_back(Term{t.mono, t.coeff.specialized(p, value)});
    DiffPoly r(n_vars_, ctx_);
    r.terms_ = normalized(std::move(v), ctx_);
    return r;
}

DiffPoly DiffPoly::divided_by_param(Param p) const {
    DiffPoly r = *this;
    for (auto& t : r.terms_) t.coeff = t.coeff.divided_by_param(p);
    return r;
}

} // namespace drflow
