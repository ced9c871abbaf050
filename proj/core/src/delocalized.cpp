#include "equihom/delocalized.hpp"

#include <algorithm>

#include "equihom/errors.hpp"

namespace equihom {

int CovariantComplex::top_degree() const {
    int top = -1;
    for (const auto& p : piece) top = std::max(top, p.top_degree());
    return top;
}

void CovariantComplex::validate() const {
    for (int c = 0; c < class_count(); ++c) {
        piece[c].validate();
        const auto& z = centralizer[c];
        for (size_t zi = 0; zi < z.members.size(); ++zi)
            for (int k = 0; k <= piece[c].top_degree(); ++k) {
                // Differentials are equivariant for the centralizer action.
                if (k < piece[c].top_degree()) {
                    if (!(action[c][zi][k + 1] * piece[c].d[k] ==
                          piece[c].d[k] * action[c][zi][k]))
                        throw verification_error(
                            "delocalized: centralizer action does not commute with d");
                }
            }
        for (int k = 0; k <= piece[c].top_degree(); ++k) {
            if (k < piece[c].top_degree() &&
                !(t_op[c][k + 1] * piece[c].d[k] == piece[c].d[k] * t_op[c][k]))
                throw verification_error("delocalized: T does not commute with d");
        }
    }
}

CovariantComplex covariant_cochains(const GComplex& x) {
    auto bry = brylinski_space(x);
    CovariantComplex out;
    out.group = x.group;
    out.classes = bry.classes;
    const auto& g = *x.group;
    for (int c = 0; c < out.classes.class_count(); ++c) {
        const SComplex& fixed = bry.component[c];
        out.piece.push_back(cochains(fixed));
        out.centralizer.push_back(bry.centralizer[c]);
        const int top = out.piece.back().top_degree();
        std::vector<std::vector<QMatrix>> act(out.centralizer[c].members.size());
        for (size_t zi = 0; zi < out.centralizer[c].members.size(); ++zi) {
            const int z = out.centralizer[c].members[zi];
            act[zi].resize(top + 1);
            for (int k = 0; k <= top; ++k)
                act[zi][k] = action_chain_map(x, fixed, fixed, g.inv[z], k).transpose();
        }
        out.action.push_back(std::move(act));
        // t fixes X^t pointwise, so T = id on the piece.
        std::vector<QMatrix> t(top + 1);
        for (int k = 0; k <= top; ++k) t[k] = QMatrix::identity(out.piece[c].dim(k));
        out.t_op.push_back(std::move(t));
    }
    out.validate();
    return out;
}

int CovariantHomComplex::dim_at(int n) const {
    const int i = n - min_degree;
    if (i < 0 || i >= static_cast<int>(dims.size())) return 0;
    return dims[i];
}

std::vector<int> CovariantHomComplex::homology() const {
    std::vector<int> h(dims.size(), 0);
    std::vector<int> ranks(dims.size() + 1, 0);
    for (size_t i = 0; i < dims.size(); ++i) ranks[i] = rank(delta[i]);
    for (size_t i = 0; i < dims.size(); ++i) {
        // delta[i]: degree i -> i-1, so the incoming map is delta[i+1].
        const int incoming = (i + 1 < dims.size()) ? ranks[i + 1] : 0;
        h[i] = dims[i] - ranks[i] - incoming;
    }
    return h;
}

namespace {

// Flat layout of the degree-n Hom piece: blocks Hom(M^p, N^{p-n}) for all p
// with both sides nonzero, in ascending p, row-major within a block.
struct GradedHomLayout {
    struct Block {
        int p;
        int rows, cols;  // rows = dim N^{p-n}, cols = dim M^p
        int offset;
    };
    std::vector<Block> blocks;
    int total = 0;

    GradedHomLayout(const CochainComplex& m, const CochainComplex& n_cx, int n) {
        for (int p = 0; p <= m.top_degree(); ++p) {
            const int rows = n_cx.dim(p - n);
            const int cols = m.dim(p);
            if (rows == 0 || cols == 0) continue;
            blocks.push_back({p, rows, cols, total});
            total += rows * cols;
        }
    }
    const Block* block_at(int p) const {
        for (const auto& b : blocks)
            if (b.p == p) return &b;
        return nullptr;
    }
};

}  // namespace

std::vector<CovariantHomComplex> covariant_hom(const CovariantComplex& m,
                                               const CovariantComplex& n) {
    if (m.group != n.group)
        throw input_error("delocalized: covariant_hom requires modules over the same group");
    m.validate();
    n.validate();
    std::vector<CovariantHomComplex> out;
    const auto& g = *m.group;
    for (int c = 0; c < m.class_count(); ++c) {
        const CochainComplex& mp = m.piece[c];
        const CochainComplex& np = n.piece[c];
        // Degree window: n in [-dim Y-piece, dim X-piece].
        const int lo = -std::max(np.top_degree(), 0);
        const int hi = std::max(mp.top_degree(), 0);
        CovariantHomComplex hom;
        hom.min_degree = lo;
        hom.dims.assign(hi - lo + 1, 0);
        hom.delta.assign(hi - lo + 1, QMatrix());

        const auto& z = m.centralizer[c];
        if (!(z == n.centralizer[c]))
            throw verification_error("delocalized: centralizer mismatch between modules");

        // Equivariant bases per degree.
        std::vector<std::vector<QVec>> eq_basis(hi - lo + 1);
        std::vector<GradedHomLayout> layouts;
        layouts.reserve(hi - lo + 1);
        for (int deg = lo; deg <= hi; ++deg) layouts.emplace_back(mp, np, deg);
        for (int deg = lo; deg <= hi; ++deg) {
            const auto& L = layouts[deg - lo];
            if (L.total == 0) continue;
            auto act = [&](int elem) {
                const int zi = z.index_of(elem);
                const int zinv = z.index_of(g.inv[elem]);
                QMatrix rho(L.total, L.total);
                for (const auto& b : L.blocks) {
                    // (z . phi)_p = rhoN(z)_{p-deg} phi_p rhoM(z^-1)_p
                    const QMatrix op =
                        left_compose(n.action[c][zi][b.p - deg], b.cols) *
                        right_compose(m.action[c][zinv][b.p], b.rows);
                    rho.insert_block(b.offset, b.offset, op);
                }
                return rho;
            };
            QMatrix proj = average_projector(z, act);
            eq_basis[deg - lo] = image_basis(proj);
            hom.dims[deg - lo] = static_cast<int>(eq_basis[deg - lo].size());
        }

        // Differential on the full flat space, then restricted.
        for (int deg = lo; deg <= hi; ++deg) {
            const int i = deg - lo;
            const auto& src = layouts[i];
            if (deg - 1 < lo) {
                hom.delta[i] = QMatrix(0, hom.dims[i]);
                continue;
            }
            const auto& dst = layouts[i - 1];
            QMatrix delta(dst.total, src.total);
            const Rat sign = (deg % 2 == 0) ? Rat(1) : Rat(-1);
            for (const auto& sb : src.blocks) {
                // phi_p contributes phi_{p} . d_M^{p-1} at target block p-1
                // and -(-1)^deg d_N^{p-deg} . phi_p at target block p.
                if (const auto* tb = dst.block_at(sb.p - 1)) {
                    // rows match: N^{p-deg} = target block rows for p-1 at degree deg-1
                    QMatrix op = right_compose(mp.d[sb.p - 1], sb.rows);
                    QMatrix placed(dst.total, src.total);
                    placed.insert_block(tb->offset, sb.offset, op);
                    delta = delta + placed;
                }
                if (const auto* tb = dst.block_at(sb.p)) {
                    QMatrix op = left_compose(np.d[sb.p - deg], sb.cols);
                    QMatrix placed(dst.total, src.total);
                    placed.insert_block(tb->offset, sb.offset, op);
                    delta = delta + placed.scaled(-sign);
                }
            }
            // Restrict to the equivariant subspaces.
            const auto& bsrc = eq_basis[i];
            const auto& bdst = eq_basis[i - 1];
            QMatrix restricted(static_cast<int>(bdst.size()), static_cast<int>(bsrc.size()));
            for (size_t j = 0; j < bsrc.size(); ++j) {
                auto coords = solve_in_span(bdst, delta.apply(bsrc[j]));
                if (!coords)
                    throw verification_error(
                        "delocalized: Hom differential leaves the equivariant subspace");
                for (size_t r = 0; r < bdst.size(); ++r)
                    restricted.set(static_cast<int>(r), static_cast<int>(j), (*coords)[r]);
            }
            hom.delta[i] = std::move(restricted);
        }
        // Degenerate dims for deltas never assigned.
        for (int i = 0; i < static_cast<int>(hom.dims.size()); ++i)
            if (hom.delta[i].rows() == 0 && hom.delta[i].cols() == 0)
                hom.delta[i] = QMatrix(i > 0 ? hom.dims[i - 1] : 0, hom.dims[i]);
        // delta . delta = 0
        for (int i = 1; i < static_cast<int>(hom.dims.size()); ++i)
            if (!(hom.delta[i - 1] * hom.delta[i]).is_zero())
                throw verification_error("delocalized: Hom differential does not square to zero");
        out.push_back(std::move(hom));
    }
    return out;
}

int BivariantResult::at(int n) const {
    const int i = n - min_degree;
    if (i < 0 || i >= static_cast<int>(dims.size())) return 0;
    return dims[i];
}

BivariantResult bs_bivariant(const GComplex& x, const GComplex& y) {
    auto mx = covariant_cochains(x);
    auto ny = covariant_cochains(y);
    auto homs = covariant_hom(mx, ny);
    int lo = 0, hi = 0;
    for (const auto& h : homs) {
        lo = std::min(lo, h.min_degree);
        hi = std::max(hi, h.min_degree + static_cast<int>(h.dims.size()) - 1);
    }
    BivariantResult out;
    out.min_degree = lo;
    out.dims.assign(hi - lo + 1, 0);
    for (const auto& h : homs) {
        auto local = h.homology();
        for (size_t i = 0; i < local.size(); ++i)
            out.dims[h.min_degree + static_cast<int>(i) - lo] += local[i];
    }
    return out;
}

std::vector<int> delocalized_point(const GComplex& x) {
    auto bry = brylinski_space(x);
    const auto& g = *x.group;
    const int top = std::max(bry.dim(), 0);
    std::vector<int> out(top + 1, 0);
    for (int c = 0; c < bry.classes.class_count(); ++c) {
        const SComplex& fixed = bry.component[c];
        if (fixed.dim() < 0) continue;
        CochainComplex cx = cochains(fixed);
        // Invariant subcomplex under the centralizer, then its cohomology.
        const auto& z = bry.centralizer[c];
        std::vector<std::vector<QVec>> inv_basis(cx.top_degree() + 1);
        for (int k = 0; k <= cx.top_degree(); ++k) {
            auto act = [&](int elem) {
                return action_chain_map(x, fixed, fixed, g.inv[elem], k).transpose();
            };
            QMatrix p = average_projector(z, act);
            inv_basis[k] = image_basis(p);
        }
        CochainComplex restricted;
        restricted.dims.resize(cx.top_degree() + 1);
        restricted.d.resize(cx.top_degree() + 1);
        for (int k = 0; k <= cx.top_degree(); ++k) {
            restricted.dims[k] = static_cast<int>(inv_basis[k].size());
            const auto& src = inv_basis[k];
            const auto& dst = (k + 1 <= cx.top_degree()) ? inv_basis[k + 1] : std::vector<QVec>{};
            QMatrix dk(static_cast<int>(dst.size()), static_cast<int>(src.size()));
            for (size_t j = 0; j < src.size(); ++j) {
                auto coords = solve_in_span(dst, cx.d[k].apply(src[j]));
                if (!coords)
                    throw verification_error(
                        "delocalized: differential leaves the invariant subcomplex");
                for (size_t r = 0; r < dst.size(); ++r)
                    dk.set(static_cast<int>(r), static_cast<int>(j), (*coords)[r]);
            }
            restricted.d[k] = std::move(dk);
        }
        auto h = cochain_cohomology(restricted);
        for (size_t k = 0; k < h.size(); ++k) out[k] += h[k];
    }
    return out;
}

}  // namespace equihom
