#include "drflow/evolutionary.hpp"

#include "drflow/errors.hpp"

namespace drflow {

EvolutionaryOp::EvolutionaryOp(std::vector<DiffPoly> components)
    : comps_(std::move(components)) {
    if (comps_.empty()) throw ArityMismatch("evolutionary operator needs components");
    for (const auto& c : comps_)
        if (c.n_vars() != int(comps_.size()))
            throw ArityMismatch("component count does not match the ring arity");
}

DiffPoly EvolutionaryOp::apply(const DiffPoly& f) const {
    if (f.n_vars() != n_vars())
        throw ArityMismatch("operand lives over a different number of variables");
    DiffPoly acc(f.n_vars(), f.context().combined(comps_[0].context()));
    for (int a = 0; a < n_vars(); ++a) {
        int kmax = f.max_jet_order(a);
        if (kmax < 0) continue;
        DiffPoly dnp = comps_[std::size_t(a)];
        for (int n = 0; n <= kmax; ++n) {
            if (n > 0) dnp = dnp.dx();
            acc += dnp * f.partial(a, n);
        }
    }
    return acc;
}

EvolutionaryOp EvolutionaryOp::commutator(const EvolutionaryOp& A, const EvolutionaryOp& B) {
    if (A.n_vars() != B.n_vars())
        throw ArityMismatch("commutator of operators over different rings");
    std::vector<DiffPoly> comps;
    comps.reserve(std::size_t(A.n_vars()));
    for (int a = 0; a < A.n_vars(); ++a)
        comps.push_back(A.apply(B.component(a)) - B.apply(A.component(a)));
    return EvolutionaryOp(std::move(comps));
}

bool EvolutionaryOp::vanishes_at_origin() const {
    for (const auto& c : comps_)
        if (!c.vanishes_at_origin()) return false;
    return true;
}

bool EvolutionaryOp::is_zero() const {
    for (const auto& c : comps_)
        if (!c.is_zero()) return false;
    return true;
}

EvolutionaryOp EvolutionaryOp::specialize_param(Param p, const Rational& value) const {
    std::vector<DiffPoly> comps;
    comps.reserve(comps_.size());
    for (const auto& c : comps_) comps.push_back(c.specialize_param(p, value));
    return EvolutionaryOp(std::move(comps));
}

EvolutionaryOp EvolutionaryOp::with_context(const TruncationContext& ctx) const {
    std::vector<DiffPoly> comps;
    comps.reserve(comps_.size());
    for (const auto& c : comps_) comps.push_back(c.with_context(ctx));
    return EvolutionaryOp(std::move(comps));
}

} // namespace drflow
