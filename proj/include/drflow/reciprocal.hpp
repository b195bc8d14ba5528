#ifndef DRFLOW_RECIPROCAL_HPP
#define DRFLOW_RECIPROCAL_HPP

#include <map>
#include <utility>
#include <vector>

#include "drflow/calculus.hpp"
#include "drflow/evolutionary.hpp"

namespace drflow {

/* Reciprocal transformation attached to a density f(u, eps): the new
 * independent variable y satisfies dy = (1 + f) dx along solutions.  f must
 * be homogeneous of differential degree 0 and vanish at the origin, so that
 * 1 + f is a unit.  The ring isomorphism Phi maps functions of the v
 * variables (the y side) to functions of the u variables (the x side) by
 * v^a_k -> ((1+f)^{-1} dx)^k u^a, and intertwines (1+f)^{-1} dx with dy. */
class ReciprocalTransform {
public:
    explicit ReciprocalTransform(DiffPoly f);

    const DiffPoly& f() const { return f_; }
    int n_vars() const { return f_.n_vars(); }
    const TruncationContext& context() const { return f_.context(); }

    /* Images Phi(v^a_k) for k <= max_order, indexed [var][order]. */
    std::vector<std::vector<DiffPoly>> forward_images(int max_order) const;
    /* p over the v variables -> the same function over the u variables. */
    DiffPoly phi_forward(const DiffPoly& p) const;

    /* Images Phi^{-1}(u^a_k), indexed [var][order], together with
     * Phi^{-1}(f); computed by an exact fixed-point iteration. */
    struct InverseData {
        DiffPoly f_v;
        std::vector<std::vector<DiffPoly>> images;
    };
    InverseData inverse_images(int max_order) const;
    /* p over the u variables -> the same function over the v variables. */
    DiffPoly phi_inverse(const DiffPoly& p) const;

    ReciprocalTransform specialize_param(Param p, const Rational& value) const;

private:
    DiffPoly f_;
};

/* Rewrite every flow of S in the y picture.  Each flow must conserve the
 * density f: H_P(f) = dx(R) for a witness R with R|_{u=0} = 0; otherwise
 * NotAConservationLaw is thrown.  The transformed components are
 * Phi^{-1}(P^a) - Phi^{-1}(R) v^a_y.  When witnesses is non-null the
 * witness of each flow is stored under its label. */
EvolutionarySystem reciprocal_push_system(const ReciprocalTransform& rt,
                                          const EvolutionarySystem& S,
                                          std::map<FlowLabel, DiffPoly>* witnesses = nullptr);

/* Transport a conserved density g (with witness R_g) of a flow H through
 * the transformation attached to f (with witness R_f for the same flow):
 * the pair (Phi^{-1}(g (1+f)^{-1}), Phi^{-1}(R_g - g R_f (1+f)^{-1}))
 * is a conservation law of the transformed flow. */
std::pair<DiffPoly, DiffPoly> transport_conservation_law(const ReciprocalTransform& rt,
                                                         const DiffPoly& g,
                                                         const DiffPoly& R_g,
                                                         const DiffPoly& R_f);

/* The composite of the transformation attached to f with the subsequent
 * y-side transformation attached to Phi^{-1}(g (1+f)^{-1}) is the single
 * transformation attached to f + g. */
ReciprocalTransform compose_reciprocal(const ReciprocalTransform& rt, const DiffPoly& g);

} // namespace drflow

#endif
