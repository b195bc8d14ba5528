#include "drflow/miura.hpp"

#include "drflow/errors.hpp"

namespace drflow {

namespace {

/* Exact inverse of a small rational matrix by Gauss-Jordan elimination. */
std::vector<std::vector<Rational>> invert_matrix(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw DegenerateJacobian("Jacobian at the origin is singular");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        Rational d = m[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            m[c][k] /= d;
            inv[c][k] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                m[r][k] -= f * m[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

/* Rational Jacobian of the images at the origin. */
std::vector<std::vector<Rational>> origin_jacobian(const std::vector<DiffPoly>& images) {
    const std::size_t n = images.size();
    std::vector<std::vector<Rational>> J(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            ParamScalar c = images[a].partial(int(b), 0).constant_term();
            if (!c.is_rational())
                throw DegenerateJacobian(
                    "Jacobian entry at the origin is not a rational constant");
            J[a][b] = c.rational_value();
        }
    }
    return J;
}

} // namespace

MiuraTransform::MiuraTransform(std::vector<DiffPoly> images) : images_(std::move(images)) {
    if (images_.empty()) throw ArityMismatch("a Miura transform needs images");
    for (const auto& im : images_) {
        if (im.n_vars() != int(images_.size()))
            throw ArityMismatch("image count does not match the ring arity");
        if (!im.is_homogeneous(0))
            throw Error("Miura image is not homogeneous of differential degree 0");
        if (!im.vanishes_at_origin())
            throw Error("Miura image does not vanish at the origin");
    }
    /* must be invertible at the origin */
    invert_matrix(origin_jacobian(images_));
}

MiuraTransform MiuraTransform::identity(int n_vars, const TruncationContext& ctx) {
    std::vector<DiffPoly> images;
    images.reserve(std::size_t(n_vars));
    for (int a = 0; a < n_vars; ++a) images.push_back(DiffPoly::jet(a, 0, n_vars, ctx));
    return MiuraTransform(std::move(images));
}

DiffPoly MiuraTransform::pullback(const DiffPoly& g) const { return g.substitute(images_); }

MiuraTransform MiuraTransform::specialize_param(Param p, const Rational& value) const {
    std::vector<DiffPoly> images;
    images.reserve(images_.size());
    for (const auto& im : images_) images.push_back(im.specialize_param(p, value));
    return MiuraTransform(std::move(images));
}

MiuraTransform miura_invert(const MiuraTransform& m) {
    const int n = m.n_vars();
    const TruncationContext ctx = m.context();
    const auto Jinv = invert_matrix(origin_jacobian(m.images()));

    /* Newton iteration with the constant Jacobian: the defect
     * images(I) - id gains one filtration degree per step. */
    std::vector<DiffPoly> I;
    I.reserve(std::size_t(n));
    for (int a = 0; a < n; ++a) {
        DiffPoly lin(n, ctx);
        for (int b = 0; b < n; ++b)
            lin += DiffPoly::jet(b, 0, n, ctx).scaled(Jinv[std::size_t(a)][std::size_t(b)]);
        I.push_back(lin);
    }

    const long cap = long(ctx.deg_max) + long(ctx.eps_max) + 3;
    for (long it = 0; it < cap; ++it) {
        std::vector<DiffPoly> defect;
        defect.reserve(std::size_t(n));
        bool done = true;
        for (int a = 0; a < n; ++a) {
            DiffPoly d = m.images()[std::size_t(a)].substitute(I) - DiffPoly::jet(a, 0, n, ctx);
            done = done && d.is_zero();
            defect.push_back(std::move(d));
        }
        if (done) return MiuraTransform(std::move(I));
        for (int a = 0; a < n; ++a) {
            DiffPoly corr(n, ctx);
            for (int b = 0; b < n; ++b)
                corr += defect[std::size_t(b)].scaled(Jinv[std::size_t(a)][std::size_t(b)]);
            I[std::size_t(a)] -= corr;
        }
    }
    throw DegenerateJacobian("Miura inversion did not reach a fixed point");
}

EvolutionaryOp miura_push_op(const MiuraTransform& m, const MiuraTransform& m_inv,
                             const EvolutionaryOp& op) {
    const int n = m.n_vars();
    EvolutionaryOp H = op;
    std::vector<DiffPoly> comps;
    comps.reserve(std::size_t(n));
    for (int a = 0; a < n; ++a)
        comps.push_back(H.apply(m.images()[std::size_t(a)]).substitute(m_inv.images()));
    return EvolutionaryOp(std::move(comps));
}

EvolutionarySystem miura_push_system(const MiuraTransform& m, const EvolutionarySystem& S) {
    if (S.n_vars != m.n_vars())
        throw ArityMismatch("system and Miura transform have different arities");
    const MiuraTransform m_inv = miura_invert(m);
    EvolutionarySystem out;
    out.n_vars = S.n_vars;
    for (const auto& [label, op] : S.flows)
        out.flows.emplace(label, miura_push_op(m, m_inv, op));
    return out;
}

} // namespace drflow
