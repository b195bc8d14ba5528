#ifndef DRFLOW_EVOLUTIONARY_HPP
#define DRFLOW_EVOLUTIONARY_HPP

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "drflow/diff_poly.hpp"

namespace drflow {

/* Time label t^beta_d of a flow; beta is 1-based to match the text form. */
struct FlowLabel {
    int beta = 1;
    int d = 0;

    friend auto operator<=>(const FlowLabel&, const FlowLabel&) = default;

    std::string str() const {
        return "t" + std::to_string(beta) + "_" + std::to_string(d);
    }
};

/* Evolutionary vector field sum_{a,n} dx^n(P^a) d/du^a_n, stored by its
 * generating components P^a. */
class EvolutionaryOp {
public:
    EvolutionaryOp() = default;
    explicit EvolutionaryOp(std::vector<DiffPoly> components);

    int n_vars() const { return int(comps_.size()); }
    const DiffPoly& component(int a) const { return comps_.at(std::size_t(a)); }
    const std::vector<DiffPoly>& components() const { return comps_; }

    /* Action on a differential polynomial. */
    DiffPoly apply(const DiffPoly& f) const;

    /* Components of the commutator [A, B]: A(B^a) - B(A^a). */
    static EvolutionaryOp commutator(const EvolutionaryOp& A, const EvolutionaryOp& B);

    bool vanishes_at_origin() const;
    bool is_zero() const;

    EvolutionaryOp specialize_param(Param p, const Rational& value) const;
    EvolutionaryOp with_context(const TruncationContext& ctx) const;

    bool operator==(const EvolutionaryOp& o) const { return comps_ == o.comps_; }
    bool operator!=(const EvolutionaryOp& o) const { return !(*this == o); }

private:
    std::vector<DiffPoly> comps_;
};

/* A finite family of labeled evolutionary flows over a common ring. */
struct EvolutionarySystem {
    int n_vars = 1;
    std::map<FlowLabel, EvolutionaryOp> flows;
};

} // namespace drflow

#endif
