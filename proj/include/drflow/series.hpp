#ifndef DRFLOW_SERIES_HPP
#define DRFLOW_SERIES_HPP

#include <map>
#include <string>
#include <vector>

#include "drflow/evolutionary.hpp"
#include "drflow/reciprocal.hpp"

namespace drflow {

/* Bounds for formal solutions: total degree in (x, t_1..t_m) and eps. */
struct SeriesContext {
    int n_times = 0;
    int deg_max = 0;
    int eps_max = 0;

    friend bool operator==(const SeriesContext&, const SeriesContext&) = default;
};

struct SeriesExp {
    int x = 0;
    std::vector<int> t;
    int eps = 0;

    int total() const {
        int s = x;
        for (int e : t) s += e;
        return s;
    }

    friend bool operator==(const SeriesExp&, const SeriesExp&) = default;
    bool operator<(const SeriesExp& o) const;
};

/* Truncated power series in x, t_1..t_m, eps with ParamScalar coefficients. */
class PowerSeries {
public:
    explicit PowerSeries(const SeriesContext& ctx) : ctx_(ctx) {}

    static PowerSeries constant(const ParamScalar& c, const SeriesContext& ctx);
    static PowerSeries var_x(const SeriesContext& ctx);
    static PowerSeries var_t(int i, const SeriesContext& ctx);
    static PowerSeries monomial(const SeriesExp& e, const ParamScalar& c,
                                const SeriesContext& ctx);

    const SeriesContext& context() const { return ctx_; }
    const std::map<SeriesExp, ParamScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    PowerSeries operator+(const PowerSeries& o) const;
    PowerSeries operator-(const PowerSeries& o) const;
    PowerSeries operator-() const;
    PowerSeries operator*(const PowerSeries& o) const;
    PowerSeries& operator+=(const PowerSeries& o) { return *this = *this + o; }
    PowerSeries& operator-=(const PowerSeries& o) { return *this = *this - o; }

    PowerSeries scaled(const ParamScalar& c) const;
    PowerSeries pow(unsigned e) const;
    PowerSeries eps_shifted(int e) const;

    PowerSeries ddx() const;
    PowerSeries ddt(int i) const;
    /* Antiderivatives normalized to vanish at x = 0 / t_i = 0. */
    PowerSeries int_x() const;
    PowerSeries int_t(int i) const;

    PowerSeries at_x_zero() const;
    PowerSeries at_t_zero(int i) const;

    /* Substitute the series X for the variable x. */
    PowerSeries compose_x(const PowerSeries& X) const;

    /* Drop terms of total degree above the bound. */
    PowerSeries truncated(int total_deg) const;

    ParamScalar coeff(const SeriesExp& e) const;

    bool operator==(const PowerSeries& o) const { return terms_ == o.terms_; }
    bool operator!=(const PowerSeries& o) const { return !(*this == o); }

    std::string str() const;

private:
    SeriesContext ctx_;
    std::map<SeriesExp, ParamScalar> terms_;

    void add_term(const SeriesExp& e, const ParamScalar& c);
    void check_same(const PowerSeries& o) const;
};

/* Jet-space evaluation: substitute sol[a] for u^a and x-derivatives of
 * sol[a] for the higher jets, and the eps power of each monomial. */
PowerSeries evaluate_on_solution(const DiffPoly& p, const std::vector<PowerSeries>& sol);

struct FormalSolution {
    SeriesContext ctx;
    std::vector<PowerSeries> comps;
};

/* Solve du/dt_i = P_i(u) for the commuting flows listed in time order by
 * Picard iteration, one time variable after another, starting from initial
 * data in x (and eps).  The flows must share the solution's arity. */
FormalSolution evolve_formal_solution(const std::vector<EvolutionaryOp>& flows,
                                      const std::vector<PowerSeries>& initial,
                                      const SeriesContext& ctx);

/* Residuals ddt_i(u^a) - P_i^a(u); exact up to the reliability bound
 * deg_max - (max jet order of P_i). */
std::vector<std::vector<PowerSeries>> flow_residuals(const std::vector<EvolutionaryOp>& flows,
                                                     const FormalSolution& sol);

struct TransportResult {
    FormalSolution v;       /* the solution in the (y, t) picture */
    PowerSeries y_of_x;     /* y(x, t): the new spatial variable */
    PowerSeries x_of_y;     /* the reverted change of variable */
    int reliable_degree;    /* total degree to which v is exact */
};

/* Transport a formal solution of the flows through the reciprocal
 * transformation attached to f: builds y = int (1+f(u)) dx + int R_i(u) dt_i
 * from the closed 1-form dy, reverts x(y, t), and composes.  Closedness of
 * the 1-form is checked exactly up to the reliability bound and a violation
 * throws ClosednessViolation. */
TransportResult solution_transport(const ReciprocalTransform& rt,
                                   const std::vector<EvolutionaryOp>& flows,
                                   const FormalSolution& sol);

} // namespace drflow

#endif
