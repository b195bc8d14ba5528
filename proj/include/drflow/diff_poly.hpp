#ifndef DRFLOW_DIFF_POLY_HPP
#define DRFLOW_DIFF_POLY_HPP

#include <string>
#include <vector>

#include "drflow/monomial.hpp"
#include "drflow/param.hpp"
#include "drflow/truncation.hpp"

namespace drflow {

/* One stored term: coefficient in Q[xi,G1,G2] times a monomial. */
struct Term {
    Monomial mono;
    ParamScalar coeff;

    friend bool operator==(const Term&, const Term&) = default;
};

/* Controls the dispatch between the serial and the OpenMP product kernel.
 * Both kernels produce identical results; the serial one is the reference. */
void set_parallel_enabled(bool on);
bool parallel_enabled();

/* Element of the differential polynomial ring over n_vars dependent
 * variables, truncated to an explicit TruncationContext.  Terms are kept
 * sorted in the canonical monomial order with nonzero coefficients and no
 * duplicates; every operation re-truncates its result. */
class DiffPoly {
public:
    DiffPoly() : n_vars_(1) {}
    DiffPoly(int n_vars, const TruncationContext& ctx) : n_vars_(n_vars), ctx_(ctx) {}

    static DiffPoly zero(int n_vars, const TruncationContext& ctx) {
        return DiffPoly(n_vars, ctx);
    }
    static DiffPoly constant(const Rational& c, int n_vars, const TruncationContext& ctx);
    static DiffPoly scalar(const ParamScalar& c, int n_vars, const TruncationContext& ctx);
    static DiffPoly jet(int var, int order, int n_vars, const TruncationContext& ctx);
    static DiffPoly term(const Monomial& m, const ParamScalar& c, int n_vars,
                         const TruncationContext& ctx);

    int n_vars() const { return n_vars_; }
    const TruncationContext& context() const { return ctx_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    /* No term of jet multiplicity zero, i.e. the value at u^*_* = 0 is 0. */
    bool vanishes_at_origin() const;
    /* Coefficient of the unit monomial (value at u = 0 restricted to eps^0). */
    ParamScalar constant_term() const;
    ParamScalar coeff(const Monomial& m) const;
    bool is_homogeneous(int degree) const;
    bool contains_var(int var) const;
    int max_jet_order(int var = -1) const;
    int min_eps() const;
    int max_eps() const;
    int max_u_degree() const;

    DiffPoly operator+(const DiffPoly& o) const;
    DiffPoly operator-(const DiffPoly& o) const;
    DiffPoly operator-() const;
    DiffPoly operator*(const DiffPoly& o) const;
    DiffPoly& operator+=(const DiffPoly& o) { return *this = *this + o; }
    DiffPoly& operator-=(const DiffPoly& o) { return *this = *this - o; }
    DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }

    DiffPoly scaled(const ParamScalar& c) const;
    DiffPoly scaled(const Rational& c) const;
    DiffPoly divided(const Rational& c) const;
    DiffPoly pow(unsigned e) const;
    /* Multiply by eps^e (e may be negative). */
    DiffPoly eps_shifted(int e) const;

    /* Serial reference product kernel; the OpenMP kernel must agree. */
    DiffPoly mul_serial(const DiffPoly& o) const;
    DiffPoly mul_parallel(const DiffPoly& o) const;

    /* Total x-derivative: sum over jets of u^a_{i+1} d/du^a_i. */
    DiffPoly dx() const;
    DiffPoly dx_pow(unsigned k) const;
    /* Partial derivative with respect to the jet variable u^var_order. */
    DiffPoly partial(int var, int order) const;
    /* Formal antiderivative in the single jet variable u^var_order. */
    DiffPoly integrate_jet(int var, int order) const;
    /* Set every jet of one dependent variable to zero. */
    DiffPoly set_var_zero(int var) const;

    /* Part of the given differential degree / eps exponent (eps retained). */
    DiffPoly degree_component(int degree) const;
    DiffPoly eps_component(int eps_exp) const;
    /* eps_component with the eps power removed. */
    DiffPoly eps_coefficient(int eps_exp) const;

    /* Retruncate into another context (must be a sub-context or equal use is
     * the caller's responsibility: terms outside are discarded). */
    DiffPoly with_context(const TruncationContext& ctx) const;

    /* Reindex dependent variables: new_var = mapping[old_var]. */
    DiffPoly remap_vars(const std::vector<int>& mapping, int new_n_vars) const;

    /* Geometric series inverse of a unit (nonzero rational constant term). */
    DiffPoly invert_unit() const;

    /* Substitute prebuilt images for every jet variable: images[var][order].
     * The images must share n_vars and context. */
    DiffPoly subst_jets(const std::vector<std::vector<DiffPoly>>& images) const;

    /* Change of dependent variables u^a = images[a](v, eps): substitutes the
     * prolonged images dx^k(images[a]) for u^a_k. */
    DiffPoly substitute(const std::vector<DiffPoly>& images) const;

    /* eps^2 -> g * eps^2 for a parameter monomial g; throws on odd eps. */
    DiffPoly rescale_eps_sq(const ParamScalar& g) const;

    DiffPoly specialize_param(Param p, const Rational& value) const;
    /* Divide every coefficient exactly by one parameter. */
    DiffPoly divided_by_param(Param p) const;

    bool operator==(const DiffPoly& o) const {
        return n_vars_ == o.n_vars_ && terms_ == o.terms_;
    }
    bool operator!=(const DiffPoly& o) const { return !(*this == o); }

    /* Canonical text form (see render.hpp); letter names the variables. */
    std::string str(char letter = 'u') const;

private:
    int n_vars_;
    TruncationContext ctx_ = TruncationContext::unbounded();
    std::vector<Term> terms_;

    void check_same_ring(const DiffPoly& o) const;
    /* Sort, combine, drop zeros and out-of-context terms. */
    static std::vector<Term> normalized(std::vector<Term> v, const TruncationContext& ctx);
    DiffPoly mul_impl(const DiffPoly& o, bool parallel) const;

    friend class PolyBuilder;
};

/* Accumulates terms without intermediate normalization. */
class PolyBuilder {
public:
    PolyBuilder(int n_vars, const TruncationContext& ctx) : poly_(n_vars, ctx) {}
    void add(const Monomial& m, const ParamScalar& c) {
        if (!c.is_zero() && poly_.ctx_.admits(m.eps_exp, m.u_degree()))
            poly_.terms_.push_back(Term{m, c});
    }
    DiffPoly take();

private:
    DiffPoly poly_;
};

} // namespace drflow

#endif
