#include "drflow/monomial.hpp"

namespace drflow {

int Monomial::multiplicity(int var, int order) const {
    for (const auto& j : jets)
        if (j.var == var && j.order == order) return j.mult;
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.eps_exp = eps_exp + o.eps_exp;
    r.jets.reserve(jets.size() + o.jets.size());
    std::size_t i = 0, k = 0;
    auto key = [](const JetFactor& j) { return std::pair(j.var, j.order); };
    while (i < jets.size() && k < o.jets.size()) {
        if (key(jets[i]) < key(o.jets[k])) {
            r.jets.push_back(jets[i++]);
        } else if (key(o.jets[k]) < key(jets[i])) {
            r.jets.push_back(o.jets[k++]);
        } else {
            JetFactor f = jets[i];
            f.mult += o.jets[k].mult;
            r.jets.push_back(f);
            ++i;
            ++k;
        }
    }
    while (i < jets.size()) r.jets.push_back(jets[i++]);
    while (k < o.jets.size()) r.jets.push_back(o.jets[k++]);
    return r;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
    if (a.eps_exp != b.eps_exp) return a.eps_exp < b.eps_exp ? -1 : 1;
    int da = a.u_degree(), db = b.u_degree();
    if (da != db) return da < db ? -1 : 1;
    /* lexicographic comparison of the multiplicity-expanded jet sequences */
    std::size_t i = 0, k = 0;
    int ri = 0, rk = 0; /* copies of the current factor already consumed */
    while (i < a.jets.size() && k < b.jets.size()) {
        const JetFactor& fa = a.jets[i];
        const JetFactor& fb = b.jets[k];
        if (fa.var != fb.var) return fa.var < fb.var ? -1 : 1;
        if (fa.order != fb.order) return fa.order < fb.order ? -1 : 1;
        int avail_a = fa.mult - ri, avail_b = fb.mult - rk;
        int step = avail_a < avail_b ? avail_a : avail_b;
        ri += step;
        rk += step;
        if (ri == fa.mult) { ++i; ri = 0; }
        if (rk == fb.mult) { ++k; rk = 0; }
    }
    /* equal u_degree means both sequences end together */
    return 0;
}

} // namespace drflow
