#ifndef DRFLOW_MIURA_HPP
#define DRFLOW_MIURA_HPP

#include <vector>

#include "drflow/evolutionary.hpp"

namespace drflow {

/* Change of dependent variables w^a = images[a](u, eps) with every image
 * homogeneous of differential degree 0, vanishing at the origin, and with an
 * invertible rational Jacobian at the origin. */
class MiuraTransform {
public:
    explicit MiuraTransform(std::vector<DiffPoly> images);

    static MiuraTransform identity(int n_vars, const TruncationContext& ctx);

    int n_vars() const { return int(images_.size()); }
    const std::vector<DiffPoly>& images() const { return images_; }
    const TruncationContext& context() const { return images_[0].context(); }

    /* Pullback: an element of the target ring written in the w variables
     * becomes an element of the source ring via w^a -> images[a]. */
    DiffPoly pullback(const DiffPoly& g) const;

    MiuraTransform specialize_param(Param p, const Rational& value) const;

    bool operator==(const MiuraTransform& o) const { return images_ == o.images_; }

private:
    std::vector<DiffPoly> images_;
};

/* The inverse change of variables, found by an exact fixed-point iteration;
 * the result expresses u^a through the w variables.  Throws
 * DegenerateJacobian when the linearization at the origin is not an
 * invertible rational matrix. */
MiuraTransform miura_invert(const MiuraTransform& m);

/* Rewrite the flows of S (over the u variables) in the w variables:
 * the new components are H_P(images[a]) expressed through w. */
EvolutionarySystem miura_push_system(const MiuraTransform& m, const EvolutionarySystem& S);
EvolutionaryOp miura_push_op(const MiuraTransform& m, const MiuraTransform& m_inv,
                             const EvolutionaryOp& op);

} // namespace drflow

#endif
