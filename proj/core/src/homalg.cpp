#include "equihom/homalg.hpp"

#include <algorithm>

#include "equihom/errors.hpp"
#include "equihom/fingroup.hpp"
#include "equihom/gcomplex.hpp"

namespace equihom {

void ChainComplex::validate() const {
    if (dims.size() != d.size())
        throw verification_error("homalg: chain complex with mismatched dims/boundaries");
    for (int k = 0; k <= top_degree(); ++k) {
        if (d[k].cols() != dims[k] || d[k].rows() != dim(k - 1))
            throw verification_error("homalg: boundary matrix shape mismatch in degree " +
                                     std::to_string(k));
        if (k >= 1 && !(d[k - 1] * d[k]).is_zero())
            throw verification_error("homalg: dd != 0 in degree " + std::to_string(k));
    }
}

void CochainComplex::validate() const {
    if (dims.size() != d.size())
        throw verification_error("homalg: cochain complex with mismatched dims/differentials");
    for (int k = 0; k <= top_degree(); ++k) {
        if (d[k].cols() != dims[k] || d[k].rows() != dim(k + 1))
            throw verification_error("homalg: differential shape mismatch in degree " +
                                     std::to_string(k));
        if (k >= 1 && !(d[k] * d[k - 1]).is_zero())
            throw verification_error("homalg: dd != 0 in degree " + std::to_string(k));
    }
}

std::vector<int> chain_homology(const ChainComplex& c) {
    c.validate();
    std::vector<int> ranks(c.top_degree() + 2, 0);
    for (int k = 0; k <= c.top_degree(); ++k) ranks[k] = rank(c.d[k]);
    std::vector<int> h(c.top_degree() + 1, 0);
    for (int k = 0; k <= c.top_degree(); ++k)
        h[k] = c.dims[k] - ranks[k] - ranks[k + 1];
    return h;
}

std::vector<int> cochain_cohomology(const CochainComplex& c) {
    c.validate();
    std::vector<int> h(c.top_degree() + 1, 0);
    int prev_rank = 0;  // rank of d[k-1]
    for (int k = 0; k <= c.top_degree(); ++k) {
        const int rk = rank(c.d[k]);
        h[k] = c.dims[k] - rk - prev_rank;
        prev_rank = rk;
    }
    return h;
}

ChainComplex chains(const SComplex& x) {
    ChainComplex c;
    const int top = std::max(x.dim(), 0);
    if (x.dim() < 0) return c;  // empty complex: no degrees at all
    c.dims.resize(top + 1);
    c.d.resize(top + 1);
    for (int k = 0; k <= top; ++k) {
        c.dims[k] = x.count(k);
        c.d[k] = boundary_matrix(x, k);
    }
    return c;
}

CochainComplex cochains(const SComplex& x) {
    CochainComplex c;
    if (x.dim() < 0) return c;
    const int top = x.dim();
    c.dims.resize(top + 1);
    c.d.resize(top + 1);
    for (int k = 0; k <= top; ++k) {
        c.dims[k] = x.count(k);
        c.d[k] = boundary_matrix(x, k + 1).transpose();
    }
    return c;
}

void Supercomplex::validate() const {
    if (d_even.rows() != odd_dim || d_even.cols() != even_dim || d_odd.rows() != even_dim ||
        d_odd.cols() != odd_dim)
        throw verification_error("homalg: supercomplex differential shape mismatch");
    const QMatrix ee = d_odd * d_even;
    const QMatrix oo = d_even * d_odd;
    if (!para_defect) {
        if (!ee.is_zero() || !oo.is_zero())
            throw verification_error("homalg: supercomplex differential does not square to zero");
    } else {
        if (ee != para_defect->first || oo != para_defect->second)
            throw verification_error("homalg: paracomplex defect is not id - T");
    }
}

std::pair<int, int> supercomplex_homology(const Supercomplex& s) {
    if (!s.is_honest())
        throw verification_error("homalg: homology of a paracomplex is not defined");
    s.validate();
    const int re = rank(s.d_even);
    const int ro = rank(s.d_odd);
    return {s.even_dim - re - ro, s.odd_dim - ro - re};
}

Supercomplex to_supercomplex(const ChainComplex& c) {
    c.validate();
    std::vector<int> even_offset(c.top_degree() + 1, 0), odd_offset(c.top_degree() + 1, 0);
    int even_dim = 0, odd_dim = 0;
    for (int k = 0; k <= c.top_degree(); ++k) {
        if (k % 2 == 0) {
            even_offset[k] = even_dim;
            even_dim += c.dims[k];
        } else {
            odd_offset[k] = odd_dim;
            odd_dim += c.dims[k];
        }
    }
    Supercomplex s;
    s.even_dim = even_dim;
    s.odd_dim = odd_dim;
    s.d_even = QMatrix(odd_dim, even_dim);
    s.d_odd = QMatrix(even_dim, odd_dim);
    for (int k = 1; k <= c.top_degree(); ++k) {
        if (k % 2 == 0)
            s.d_even.insert_block(odd_offset[k - 1], even_offset[k], c.d[k]);
        else
            s.d_odd.insert_block(even_offset[k - 1], odd_offset[k], c.d[k]);
    }
    s.validate();
    return s;
}

QuotientComplex quotient_complex(const ChainComplex& c,
                                 const std::vector<QuotientPresentation>& rels) {
    c.validate();
    const int top = c.top_degree();
    std::vector<EchelonBasis> bases;
    bases.reserve(top + 1);
    for (int k = 0; k <= top; ++k) {
        bases.emplace_back(c.dims[k]);
        if (k < static_cast<int>(rels.size())) {
            if (rels[k].ambient_dim != c.dims[k] && !rels[k].relations.empty())
                throw input_error("homalg: relation dimension mismatch in degree " +
                                  std::to_string(k));
            for (const auto& r : rels[k].relations) bases[k].insert(r);
        }
    }
    // Boundary stability: the boundary of every relation must lie in the
    // lower relation span.
    for (int k = 1; k <= top; ++k) {
        if (k >= static_cast<int>(rels.size())) continue;
        for (const auto& r : rels[k].relations) {
            SparseVec img = c.d[k].apply(r);
            if (!bases[k - 1].contains(img))
                throw input_error("homalg: relations are not boundary-stable in degree " +
                                  std::to_string(k));
        }
    }

    QuotientComplex out;
    out.quotient.dims.resize(top + 1);
    out.quotient.d.resize(top + 1);
    out.projection.resize(top + 1);
    out.section.resize(top + 1);
    out.kept_columns.resize(top + 1);
    for (int k = 0; k <= top; ++k) {
        const auto free = bases[k].free_columns();
        out.kept_columns[k] = free;
        const int q = static_cast<int>(free.size());
        out.quotient.dims[k] = q;
        QMatrix proj(q, c.dims[k]);
        for (int j = 0; j < c.dims[k]; ++j) {
            SparseVec e{{j, Rat(1)}};
            SparseVec res = bases[k].reduce(std::move(e));
            for (int i = 0; i < q; ++i) {
                auto it = res.find(free[i]);
                if (it != res.end()) proj.set(i, j, it->second);
            }
        }
        QMatrix sec(c.dims[k], q);
        for (int i = 0; i < q; ++i) sec.set(free[i], i, 1);
        out.projection[k] = std::move(proj);
        out.section[k] = std::move(sec);
    }
    for (int k = 0; k <= top; ++k) {
        if (k == 0)
            out.quotient.d[k] = QMatrix(0, out.quotient.dims[0]);
        else
            out.quotient.d[k] = out.projection[k - 1] * (c.d[k] * out.section[k]);
    }
    out.quotient.validate();
    return out;
}

QMatrix left_compose(const QMatrix& a, int dim_v) {
    QMatrix out(a.rows() * dim_v, a.cols() * dim_v);
    for (int r = 0; r < a.rows(); ++r)
        for (const auto& [k, v] : a.row(r))
            for (int c = 0; c < dim_v; ++c) out.set(r * dim_v + c, k * dim_v + c, v);
    return out;
}

QMatrix right_compose(const QMatrix& b, int dim_w) {
    // b: V -> K; output maps flat Hom(K, W) -> flat Hom(V, W).
    const int dim_k = b.rows();
    const int dim_v = b.cols();
    QMatrix out(dim_w * dim_v, dim_w * dim_k);
    for (int k = 0; k < dim_k; ++k)
        for (const auto& [c, v] : b.row(k))
            for (int r = 0; r < dim_w; ++r) out.set(r * dim_v + c, r * dim_k + k, v);
    return out;
}

namespace {

struct HomLayout {
    // Flat even space: [Hom(Ce,De) | Hom(Co,Do)], odd: [Hom(Ce,Do) | Hom(Co,De)].
    int ce, co, de, dn;
    int even_dim() const { return de * ce + dn * co; }
    int odd_dim() const { return dn * ce + de * co; }
};

void add_block(QMatrix& target, const QMatrix& block, int r0, int c0, const Rat& scale) {
    for (int r = 0; r < block.rows(); ++r)
        for (const auto& [c, v] : block.row(r)) target.add_to(r0 + r, c0 + c, v * scale);
}

}  // namespace

HomDifferentials hom_differentials(const Supercomplex& c, const Supercomplex& d) {
    HomLayout L{c.even_dim, c.odd_dim, d.even_dim, d.odd_dim};
    HomDifferentials out;
    out.even_dim = L.even_dim();
    out.odd_dim = L.odd_dim();
    out.oo_offset = L.de * L.ce;
    out.oe_offset = L.dn * L.ce;

    // delta_even: flat even -> flat odd
    //   eo block of output = phi_oo . dC_even - dD_even . phi_ee
    //   oe block of output = phi_ee . dC_odd  - dD_odd  . phi_oo
    QMatrix delta_even(L.odd_dim(), L.even_dim());
    add_block(delta_even, right_compose(c.d_even, L.dn), 0, L.de * L.ce, 1);
    add_block(delta_even, left_compose(d.d_even, L.ce), 0, 0, -1);
    add_block(delta_even, right_compose(c.d_odd, L.de), L.dn * L.ce, 0, 1);
    add_block(delta_even, left_compose(d.d_odd, L.co), L.dn * L.ce, L.de * L.ce, -1);

    // delta_odd: flat odd -> flat even
    //   ee block = phi_oe . dC_even + dD_odd . phi_eo
    //   oo block = phi_eo . dC_odd  + dD_even . phi_oe
    QMatrix delta_odd(L.even_dim(), L.odd_dim());
    add_block(delta_odd, right_compose(c.d_even, L.de), 0, L.dn * L.ce, 1);
    add_block(delta_odd, left_compose(d.d_odd, L.ce), 0, 0, 1);
    add_block(delta_odd, right_compose(c.d_odd, L.dn), L.de * L.ce, 0, 1);
    add_block(delta_odd, left_compose(d.d_even, L.co), L.de * L.ce, L.dn * L.ce, 1);

    out.delta_even = std::move(delta_even);
    out.delta_odd = std::move(delta_odd);
    return out;
}

HomSupercomplex hom_supercomplex(const Supercomplex& c, const Supercomplex& d,
                                 const std::optional<ParaOperators>& tc,
                                 const std::optional<ParaOperators>& td, long long budget) {
    c.validate();
    d.validate();
    HomLayout L{c.even_dim, c.odd_dim, d.even_dim, d.odd_dim};
    const long long total = static_cast<long long>(L.even_dim()) + L.odd_dim();
    if (total > budget)
        throw budget_error("homalg: Hom space dimension " + std::to_string(total) +
                           " exceeds the budget " + std::to_string(budget));
    HomDifferentials diffs = hom_differentials(c, d);
    QMatrix delta_even = std::move(diffs.delta_even);
    QMatrix delta_odd = std::move(diffs.delta_odd);

    const bool restricted = tc.has_value() || td.has_value();
    HomSupercomplex out;
    if (!restricted) {
        out.complex.even_dim = L.even_dim();
        out.complex.odd_dim = L.odd_dim();
        out.complex.d_even = std::move(delta_even);
        out.complex.d_odd = std::move(delta_odd);
        out.complex.validate();
        out.even_basis.reserve(L.even_dim());
        for (int i = 0; i < L.even_dim(); ++i) {
            QVec e(L.even_dim(), Rat(0));
            e[i] = 1;
            out.even_basis.push_back(std::move(e));
        }
        out.odd_basis.reserve(L.odd_dim());
        for (int i = 0; i < L.odd_dim(); ++i) {
            QVec e(L.odd_dim(), Rat(0));
            e[i] = 1;
            out.odd_basis.push_back(std::move(e));
        }
        return out;
    }

    // Restrict to maps intertwining the T operators (missing T = identity);
    // on that subspace the differential is an honest one.
    const QMatrix tce = tc ? tc->t_even : QMatrix::identity(c.even_dim);
    const QMatrix tco = tc ? tc->t_odd : QMatrix::identity(c.odd_dim);
    const QMatrix tde = td ? td->t_even : QMatrix::identity(d.even_dim);
    const QMatrix tdo = td ? td->t_odd : QMatrix::identity(d.odd_dim);

    QMatrix comm_even(L.even_dim(), L.even_dim());
    add_block(comm_even, left_compose(tde, L.ce) - right_compose(tce, L.de), 0, 0, 1);
    add_block(comm_even, left_compose(tdo, L.co) - right_compose(tco, L.dn), L.de * L.ce,
              L.de * L.ce, 1);
    QMatrix comm_odd(L.odd_dim(), L.odd_dim());
    add_block(comm_odd, left_compose(tdo, L.ce) - right_compose(tce, L.dn), 0, 0, 1);
    add_block(comm_odd, left_compose(tde, L.co) - right_compose(tco, L.de), L.dn * L.ce,
              L.dn * L.ce, 1);

    out.even_basis = kernel_basis(comm_even);
    out.odd_basis = kernel_basis(comm_odd);

    const int ne = static_cast<int>(out.even_basis.size());
    const int no = static_cast<int>(out.odd_basis.size());
    QMatrix de_r(no, ne), do_r(ne, no);
    for (int j = 0; j < ne; ++j) {
        auto coords = solve_in_span(out.odd_basis, delta_even.apply(out.even_basis[j]));
        if (!coords)
            throw verification_error("homalg: Hom differential leaves the T-commutant");
        for (int i = 0; i < no; ++i) de_r.set(i, j, (*coords)[i]);
    }
    for (int j = 0; j < no; ++j) {
        auto coords = solve_in_span(out.even_basis, delta_odd.apply(out.odd_basis[j]));
        if (!coords)
            throw verification_error("homalg: Hom differential leaves the T-commutant");
        for (int i = 0; i < ne; ++i) do_r.set(i, j, (*coords)[i]);
    }
    out.complex.even_dim = ne;
    out.complex.odd_dim = no;
    out.complex.d_even = std::move(de_r);
    out.complex.d_odd = std::move(do_r);
    out.complex.validate();
    return out;
}

QMatrix average_projector(const Subgroup& h, const std::function<QMatrix(int)>& action) {
    const auto& g = *h.group;
    std::vector<QMatrix> rho;
    rho.reserve(h.members.size());
    for (int m : h.members) rho.push_back(action(m));
    const int n = rho.front().rows();
    for (const auto& m : rho)
        if (m.rows() != n || m.cols() != n)
            throw input_error("homalg: action matrices must be square and of equal size");
    for (int gen : generating_set(h)) {
        const QMatrix& a = action(gen);
        for (size_t i = 0; i < h.members.size(); ++i) {
            const int prod = g.times(gen, h.members[i]);
            if (!(a * rho[i] == action(prod)))
                throw input_error("homalg: action is not multiplicative");
        }
    }
    QMatrix p(n, n);
    for (const auto& m : rho) p = p + m;
    return p.scaled(Rat(1, h.order()));
}

}  // namespace equihom
