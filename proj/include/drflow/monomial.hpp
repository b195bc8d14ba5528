#ifndef DRFLOW_MONOMIAL_HPP
#define DRFLOW_MONOMIAL_HPP

#include <vector>

namespace drflow {

/* One repeated jet variable (u^var_order)^mult inside a monomial.
 * var is 0-based; order 0 is the undifferentiated variable. */
struct JetFactor {
    int var = 0;
    int order = 0;
    int mult = 1;

    friend bool operator==(const JetFactor&, const JetFactor&) = default;
};

/* Monomial eps^eps_exp * prod (u^var_order)^mult with the jet factors kept
 * sorted by (var, order).  eps_exp may be negative inside Lax computations. */
struct Monomial {
    int eps_exp = 0;
    std::vector<JetFactor> jets;

    static Monomial unit() { return Monomial{}; }
    static Monomial eps(int e) { return Monomial{e, {}}; }
    static Monomial jet(int var, int order, int mult = 1) {
        return Monomial{0, {JetFactor{var, order, mult}}};
    }

    bool is_unit() const { return eps_exp == 0 && jets.empty(); }

    /* Total multiplicity of jet variables. */
    int u_degree() const {
        int d = 0;
        for (const auto& j : jets) d += j.mult;
        return d;
    }

    /* Sum of order * mult over the jet factors. */
    int jet_weight() const {
        int w = 0;
        for (const auto& j : jets) w += j.order * j.mult;
        return w;
    }

    /* Differential degree: deg u^a_i = i, deg eps = -1. */
    int diff_degree() const { return jet_weight() - eps_exp; }

    int max_jet_order() const {
        int m = -1;
        for (const auto& j : jets) m = m > j.order ? m : j.order;
        return m;
    }

    int multiplicity(int var, int order) const;

    Monomial operator*(const Monomial& o) const;

    bool operator==(const Monomial& o) const {
        return eps_exp == o.eps_exp && jets == o.jets;
    }

    /* Canonical term order used for storage and rendering: eps exponent
     * ascending, then total jet multiplicity ascending, then the expanded
     * jet sequence lexicographically by (var, order). */
    static int compare(const Monomial& a, const Monomial& b);
};

inline bool monomial_less(const Monomial& a, const Monomial& b) {
    return Monomial::compare(a, b) < 0;
}

} // namespace drflow

#endif
