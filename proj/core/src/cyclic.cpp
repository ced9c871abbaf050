#include "equihom/cyclic.hpp"

#include <algorithm>
#include <functional>

#include "equihom/errors.hpp"

namespace equihom {

namespace {

void sparse_add(SparseVec& v, int idx, const Rat& val) {
    if (val == 0) return;
    auto [it, fresh] = v.try_emplace(idx, val);
    if (!fresh) {
        it->second += val;
        if (it->second == 0) v.erase(it);
    }
}

}  // namespace

SparseVec GAlgebra::multiply(const SparseVec& a, const SparseVec& b) const {
    SparseVec out;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b)
            for (const auto& [k, c] : product[i][j]) sparse_add(out, k, x * y * c);
    return out;
}

void GAlgebra::validate() const {
    if (static_cast<int>(product.size()) != dim)
        throw input_error("cyclic: structure constants have wrong shape");
    for (const auto& row : product)
        if (static_cast<int>(row.size()) != dim)
            throw input_error("cyclic: structure constants have wrong shape");
    auto basis = [&](int i) { return SparseVec{{i, Rat(1)}}; };
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                auto left = multiply(multiply(basis(i), basis(j)), basis(k));
                auto right = multiply(basis(i), multiply(basis(j), basis(k)));
                if (left != right) throw input_error("cyclic: multiplication is not associative");
            }
    if (unital) {
        SparseVec u = to_sparse(unit);
        for (int i = 0; i < dim; ++i) {
            if (multiply(u, basis(i)) != basis(i) || multiply(basis(i), u) != basis(i))
                throw input_error("cyclic: unit vector fails the unit laws");
        }
    }
    const auto& g = *group;
    if (static_cast<int>(action.size()) != g.order())
        throw input_error("cyclic: group action must cover every element");
    for (int e = 0; e < g.order(); ++e)
        if (action[e].rows() != dim || action[e].cols() != dim)
            throw input_error("cyclic: action matrix has wrong shape");
    if (!(action[g.identity] == QMatrix::identity(dim)))
        throw input_error("cyclic: identity must act trivially");
    for (int e = 0; e < g.order(); ++e)
        for (int f = 0; f < g.order(); ++f)
            if (!(action[e] * action[f] == action[g.times(e, f)]))
                throw input_error("cyclic: action is not multiplicative");
    for (int e = 0; e < g.order(); ++e)
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                auto lhs = action[e].apply(to_dense(multiply(basis(i), basis(j)), dim));
                auto rhs = multiply(action[e].apply(SparseVec{{i, Rat(1)}}),
                                    action[e].apply(SparseVec{{j, Rat(1)}}));
                if (to_sparse(lhs) != rhs)
                    throw input_error("cyclic: action is not by algebra automorphisms");
            }
}

GAlgebra base_field_algebra(GroupPtr g) {
    GAlgebra a;
    a.group = std::move(g);
    a.dim = 1;
    a.product = {{SparseVec{{0, Rat(1)}}}};
    a.unital = true;
    a.unit = {Rat(1)};
    a.action.assign(a.group->order(), QMatrix::identity(1));
    a.kind = "field";
    a.validate();
    return a;
}

GAlgebra function_algebra(const GComplex& x) {
    if (x.space.dim() != 0)
        throw input_error("cyclic: function algebras are only built for 0-dimensional complexes");
    const int n = x.space.count(0);
    GAlgebra a;
    a.group = x.group;
    a.dim = n;
    a.product.assign(n, std::vector<SparseVec>(n));
    for (int i = 0; i < n; ++i) a.product[i][i] = SparseVec{{i, Rat(1)}};
    a.unital = true;
    a.unit.assign(n, Rat(1));
    a.action.reserve(x.group->order());
    for (int e = 0; e < x.group->order(); ++e) {
        QMatrix m(n, n);
        for (int i = 0; i < n; ++i) {
            auto moved = x.act(e, x.space.by_dim[0][i]);
            const int j = x.space.index_of(0, moved.simplex);
            if (j < 0) throw input_error("cyclic: action does not permute the vertex set");
            m.set(j, i, 1);
        }
        a.action.push_back(std::move(m));
    }
    a.kind = "functions";
    a.validate();
    return a;
}

GAlgebra compact_operators_algebra(GroupPtr g) {
    const int n = g->order();
    GAlgebra a;
    a.group = g;
    a.dim = n * n;
    auto idx = [n](int u, int v) { return u * n + v; };
    a.product.assign(a.dim, std::vector<SparseVec>(a.dim));
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v)
                    if (t == u) a.product[idx(s, t)][idx(u, v)] = SparseVec{{idx(s, v), Rat(1)}};
    a.unital = true;
    a.unit.assign(a.dim, Rat(0));
    for (int u = 0; u < n; ++u) a.unit[idx(u, u)] = 1;
    a.action.reserve(n);
    for (int r = 0; r < n; ++r) {
        QMatrix m(a.dim, a.dim);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) m.set(idx(g->times(r, u), g->times(r, v)), idx(u, v), 1);
        a.action.push_back(std::move(m));
    }
    a.kind = "kg";
    a.validate();
    return a;
}

GAlgebra tensor_algebra(const GAlgebra& a, const GAlgebra& b) {
    if (a.group != b.group) throw input_error("cyclic: tensor factors must share the group");
    GAlgebra t;
    t.group = a.group;
    t.dim = a.dim * b.dim;
    auto idx = [&](int i, int j) { return i * b.dim + j; };
    t.product.assign(t.dim, std::vector<SparseVec>(t.dim));
    for (int i1 = 0; i1 < a.dim; ++i1)
        for (int j1 = 0; j1 < b.dim; ++j1)
            for (int i2 = 0; i2 < a.dim; ++i2)
                for (int j2 = 0; j2 < b.dim; ++j2) {
                    SparseVec out;
                    for (const auto& [k1, c1] : a.product[i1][i2])
                        for (const auto& [k2, c2] : b.product[j1][j2])
                            sparse_add(out, idx(k1, k2), c1 * c2);
                    t.product[idx(i1, j1)][idx(i2, j2)] = std::move(out);
                }
    t.unital = a.unital && b.unital;
    if (t.unital) {
        t.unit.assign(t.dim, Rat(0));
        for (int i = 0; i < a.dim; ++i)
            for (int j = 0; j < b.dim; ++j) t.unit[idx(i, j)] = a.unit[i] * b.unit[j];
    }
    t.action.reserve(a.group->order());
    for (int e = 0; e < a.group->order(); ++e) {
        const QMatrix at = a.action[e].transpose();
        const QMatrix bt = b.action[e].transpose();
        QMatrix m(t.dim, t.dim);
        for (int i = 0; i < a.dim; ++i)
            for (const auto& [i2, c1] : at.row(i))
                for (int j = 0; j < b.dim; ++j)
                    for (const auto& [j2, c2] : bt.row(j))
                        m.add_to(idx(i2, j2), idx(i, j), c1 * c2);
        t.action.push_back(std::move(m));
    }
    t.kind = "tensor";
    t.tensor_factors = {a.dim, b.dim};
    t.validate();
    return t;
}

int OmegaForms::block_dim(int n) const {
    const int d = algebra.dim;
    if (n == 0) return d;
    long long size = d + 1;
    for (int i = 0; i < n; ++i) size *= d;
    return static_cast<int>(size);
}

namespace {

// Degree-n inner basis: (x0, w) with x0 in 0..dim (0 = adjoined unit) for
// n >= 1, and plain A indices for n = 0.
struct InnerIndexer {
    int adim;

    int encode(int n, int x0, const std::vector<int>& w) const {
        if (n == 0) return x0 - 1;
        long long idx = x0;
        for (int j = 0; j < n; ++j) idx = idx * adim + w[j];
        return static_cast<int>(idx);
    }
    std::pair<int, std::vector<int>> decode(int n, int idx) const {
        if (n == 0) return {idx + 1, {}};
        std::vector<int> w(n);
        for (int j = n - 1; j >= 0; --j) {
            w[j] = idx % adim;
            idx /= adim;
        }
        return {idx, w};
    }
};

using Term = std::pair<Rat, std::pair<int, std::vector<int>>>;  // coeff, (x0, word)

// Applies the algebra action of a group element s diagonally to (x0, w).
std::vector<Term> expand_diagonal_action(const GAlgebra& alg, int s, int x0,
                                         const std::vector<int>& w) {
    std::vector<Term> terms{{Rat(1), {0, {}}}};
    // x0 slot.
    {
        std::vector<Term> next;
        if (x0 == 0) {
            for (auto& t : terms) next.push_back({t.first, {0, {}}});
        } else {
            for (const auto& [k, c] : to_sparse(alg.action[s].column(x0 - 1)))
                for (auto& t : terms) next.push_back({t.first * c, {k + 1, {}}});
        }
        terms = std::move(next);
    }
    for (int j = 0; j < static_cast<int>(w.size()); ++j) {
        std::vector<Term> next;
        for (const auto& [k, c] : to_sparse(alg.action[s].column(w[j])))
            for (auto& t : terms) {
                Term ext = t;
                ext.first *= c;
                ext.second.second.push_back(k);
                next.push_back(std::move(ext));
            }
        terms = std::move(next);
    }
    return terms;
}

}  // namespace

QMatrix omega_inner_action(const OmegaForms& omega, int s, int n) {
    const auto& alg = omega.algebra;
    InnerIndexer ix{alg.dim};
    const int size = omega.block_dim(n);
    QMatrix m(size, size);
    for (int col = 0; col < size; ++col) {
        auto [x0, w] = ix.decode(n, col);
        for (const auto& [coeff, body] : expand_diagonal_action(alg, s, x0, w))
            m.add_to(ix.encode(n, body.first, body.second), col, coeff);
    }
    return m;
}

OmegaForms omega_forms(const GAlgebra& a, int max_degree, long long budget) {
    a.validate();
    OmegaForms omega;
    omega.algebra = a;
    omega.max_degree = max_degree;
    const int gs = a.group->order();
    const int adim = a.dim;
    long long total = 0;
    std::vector<long long> dims_ll;
    for (int n = 0; n <= max_degree; ++n) {
        long long block = (n == 0) ? adim : (adim + 1);
        for (int i = 0; i < n; ++i) block *= adim;
        const long long dim_n = block * gs;
        total += dim_n;
        if (total > budget)
            throw budget_error("cyclic: Omega^" + std::to_string(n) + " pushes the total form " +
                               "dimension past the budget (" + std::to_string(total) + " > " +
                               std::to_string(budget) + ")");
        dims_ll.push_back(dim_n);
    }
    omega.dims.assign(dims_ll.begin(), dims_ll.end());

    InnerIndexer ix{adim};
    const auto& g = *a.group;
    auto mult_basis = [&](int i, int j) -> const SparseVec& { return a.product[i][j]; };
    // Product of an A+ slot value with a basis element of A, landing in A.
    auto mult_aplus_left = [&](int x0, int j) -> SparseVec {
        if (x0 == 0) return SparseVec{{j, Rat(1)}};
        return mult_basis(x0 - 1, j);
    };
    auto mult_right_aplus = [&](int i, int x0) -> SparseVec {
        if (x0 == 0) return SparseVec{{i, Rat(1)}};
        return mult_basis(i, x0 - 1);
    };

    // Hochschild boundary.
    omega.b.resize(max_degree + 1);
    omega.b[0] = QMatrix(0, omega.dims[0]);
    for (int n = 1; n <= max_degree; ++n) {
        QMatrix bn(omega.dims[n - 1], omega.dims[n]);
        const int block = omega.block_dim(n);
        for (int t = 0; t < gs; ++t) {
            const int col_off = omega.block_offset(n, t);
            const int row_off = omega.block_offset(n - 1, t);
            for (int inner = 0; inner < block; ++inner) {
                const int col = col_off + inner;
                auto [x0, w] = ix.decode(n, inner);
                // (x0 x1) dx2 ... dxn
                {
                    std::vector<int> rest(w.begin() + 1, w.end());
                    for (const auto& [k, c] : mult_aplus_left(x0, w[0]))
                        bn.add_to(row_off + ix.encode(n - 1, k + 1, rest), col, c);
                }
                // interior contractions
                for (int j = 1; j <= n - 1; ++j) {
                    const Rat sign = (j % 2 == 0) ? Rat(1) : Rat(-1);
                    std::vector<int> rest;
                    rest.reserve(n - 1);
                    for (int p = 0; p < j - 1; ++p) rest.push_back(w[p]);
                    rest.push_back(0);  // placeholder
                    for (int p = j + 1; p < n; ++p) rest.push_back(w[p]);
                    for (const auto& [k, c] : mult_basis(w[j - 1], w[j])) {
                        rest[j - 1] = k;
                        bn.add_to(row_off + ix.encode(n - 1, x0, rest), col, sign * c);
                    }
                }
                // (-1)^n (t^-1 . xn) x0 dx1 ... dx_{n-1}
                {
                    const Rat sign = (n % 2 == 0) ? Rat(1) : Rat(-1);
                    std::vector<int> rest(w.begin(), w.end() - 1);
                    for (const auto& [m, cm] : to_sparse(a.action[g.inv[t]].column(w[n - 1])))
                        for (const auto& [k, c] : mult_right_aplus(m, x0))
                            bn.add_to(row_off + ix.encode(n - 1, k + 1, rest), col,
                                      sign * cm * c);
                }
            }
        }
        omega.b[n] = std::move(bn);
    }

    // Connes operator.
    omega.conn.resize(max_degree);
    for (int n = 0; n < max_degree; ++n) {
        QMatrix Bn(omega.dims[n + 1], omega.dims[n]);
        const int block = omega.block_dim(n);
        for (int t = 0; t < gs; ++t) {
            const int col_off = omega.block_offset(n, t);
            const int row_off = omega.block_offset(n + 1, t);
            for (int inner = 0; inner < block; ++inner) {
                const int col = col_off + inner;
                auto [x0, w] = ix.decode(n, inner);
                if (n >= 1 && x0 == 0) continue;  // d of the adjoined unit vanishes
                // Sum over cyclic rotations; the first i letters are twisted.
                for (int i = 0; i <= n; ++i) {
                    const Rat sign = ((n * i) % 2 == 0) ? Rat(1) : Rat(-1);
                    std::vector<int> twisted(w.begin() + (n - i), w.end());
                    std::vector<Term> parts{{Rat(1), {0, {}}}};
                    for (int j = 0; j < i; ++j) {
                        std::vector<Term> next;
                        for (const auto& [m, cm] :
                             to_sparse(a.action[g.inv[t]].column(twisted[j])))
                            for (auto& p : parts) {
                                Term ext = p;
                                ext.first *= cm;
                                ext.second.second.push_back(m);
                                next.push_back(std::move(ext));
                            }
                        parts = std::move(next);
                    }
                    for (const auto& [coeff, body] : parts) {
                        std::vector<int> word = body.second;  // twisted prefix
                        word.push_back(x0 - 1);
                        for (int p = 0; p < n - i; ++p) word.push_back(w[p]);
                        Bn.add_to(row_off + ix.encode(n + 1, 0, word), col, sign * coeff);
                    }
                }
            }
        }
        omega.conn[n] = std::move(Bn);
    }

    // Symmetry operator, blockwise the diagonal action of t^-1.
    omega.t.resize(max_degree + 1);
    for (int n = 0; n <= max_degree; ++n) {
        QMatrix tn(omega.dims[n], omega.dims[n]);
        for (int t = 0; t < gs; ++t)
            tn.insert_block(omega.block_offset(n, t), omega.block_offset(n, t),
                            omega_inner_action(omega, g.inv[t], n));
        omega.t[n] = std::move(tn);
    }

    // Paramixed identities on every materialized degree.
    for (int n = 2; n <= max_degree; ++n)
        if (!(omega.b[n - 1] * omega.b[n]).is_zero())
            throw verification_error("cyclic: b^2 != 0 in degree " + std::to_string(n));
    for (int n = 0; n + 2 <= max_degree; ++n)
        if (!(omega.conn[n + 1] * omega.conn[n]).is_zero())
            throw verification_error("cyclic: B^2 != 0 in degree " + std::to_string(n));
    for (int n = 1; n <= max_degree; ++n)
        if (!(omega.t[n - 1] * omega.b[n] == omega.b[n] * omega.t[n]))
            throw verification_error("cyclic: T does not commute with b in degree " +
                                     std::to_string(n));
    for (int n = 0; n < max_degree; ++n)
        if (!(omega.t[n + 1] * omega.conn[n] == omega.conn[n] * omega.t[n]))
            throw verification_error("cyclic: T does not commute with B in degree " +
                                     std::to_string(n));
    for (int n = 0; n < max_degree; ++n) {
        QMatrix lhs = omega.b[n + 1] * omega.conn[n];
        if (n >= 1) lhs = lhs + omega.conn[n - 1] * omega.b[n];
        const QMatrix rhs = QMatrix::identity(omega.dims[n]) - omega.t[n];
        if (!(lhs == rhs))
            throw verification_error("cyclic: bB + Bb != id - T in degree " + std::to_string(n));
    }
    return omega;
}

std::vector<QMatrix> projector_e(const OmegaForms& omega) {
    const auto& g = *omega.algebra.group;
    std::vector<QMatrix> out;
    out.reserve(omega.max_degree + 1);
    for (int n = 0; n <= omega.max_degree; ++n) {
        QMatrix e(omega.dims[n], omega.dims[n]);
        for (int t = 0; t < g.order(); ++t) {
            const int off = omega.block_offset(n, t);
            const int size = omega.block_dim(n);
            const int k = g.element_order[t];
            QMatrix tblock = omega.t[n].submatrix(off, size, off, size);
            QMatrix power = QMatrix::identity(size);
            QMatrix acc(size, size);
            for (int j = 0; j < k; ++j) {
                acc = acc + power;
                power = tblock * power;
            }
            e.insert_block(off, off, acc.scaled(Rat(1, k)));
        }
        out.push_back(std::move(e));
    }
    return out;
}

namespace {

struct ParityLayout {
    std::vector<int> degrees;  // full degrees < level, plus level for the quotient
    std::vector<int> offsets;
    int total = 0;
};

ParityLayout parity_layout(const OmegaForms& omega, int level, int parity, int quotient_dim) {
    ParityLayout out;
    for (int j = parity; j < level; j += 2) {
        out.degrees.push_back(j);
        out.offsets.push_back(out.total);
        out.total += omega.block_dim(j);
    }
    if (level % 2 == parity) {
        out.degrees.push_back(level);
        out.offsets.push_back(out.total);
        out.total += quotient_dim;
    }
    return out;
}

}  // namespace

HodgeLevel hodge_level(const OmegaForms& omega, int level) {
    if (level < 0 || level >= omega.max_degree)
        throw input_error("cyclic: hodge level must satisfy 0 <= level < max_degree");
    const auto& g = *omega.algebra.group;
    HodgeLevel out;
    out.level = level;

    for (int t = 0; t < g.order(); ++t) {
        HodgeLevel::Block blk;
        const int s_level = omega.block_dim(level);
        // Quotient by the image of b from degree level+1, within the t-block.
        EchelonBasis image(s_level);
        {
            const int src_off = omega.block_offset(level + 1, t);
            const int dst_off = omega.block_offset(level, t);
            const int src_dim = omega.block_dim(level + 1);
            const QMatrix cols =
                omega.b[level + 1].submatrix(dst_off, s_level, src_off, src_dim).transpose();
            for (int c = 0; c < src_dim; ++c) image.insert(cols.row(c));
        }
        const auto kept = image.free_columns();
        const int q = static_cast<int>(kept.size());
        QMatrix proj(q, s_level), sect(s_level, q);
        for (int j = 0; j < s_level; ++j) {
            SparseVec res = image.reduce(SparseVec{{j, Rat(1)}});
            for (int i = 0; i < q; ++i) {
                auto it = res.find(kept[i]);
                if (it != res.end()) proj.set(i, j, it->second);
            }
        }
        for (int i = 0; i < q; ++i) sect.set(kept[i], i, 1);
        blk.top_proj = proj;
        blk.top_sect = sect;

        ParityLayout even = parity_layout(omega, level, 0, q);
        ParityLayout odd = parity_layout(omega, level, 1, q);
        blk.even_degrees = even.degrees;
        blk.odd_degrees = odd.degrees;
        blk.even_offsets = even.offsets;
        blk.odd_offsets = odd.offsets;

        auto block_of = [&](const QMatrix& m, int row_deg, int col_deg) {
            return m.submatrix(omega.block_offset(row_deg, t), omega.block_dim(row_deg),
                               omega.block_offset(col_deg, t), omega.block_dim(col_deg));
        };

        auto assemble_d = [&](const ParityLayout& src, const ParityLayout& dst) {
            QMatrix d(dst.total, src.total);
            auto dst_slot = [&](int deg) -> int {
                for (size_t i = 0; i < dst.degrees.size(); ++i)
                    if (dst.degrees[i] == deg) return dst.offsets[i];
                return -1;
            };
            for (size_t i = 0; i < src.degrees.size(); ++i) {
                const int j = src.degrees[i];
                const int off = src.offsets[i];
                const bool src_is_quotient = (j == level);
                // b component into degree j-1.
                if (j >= 1) {
                    const int slot = dst_slot(j - 1);
                    if (slot >= 0) {
                        QMatrix bj = block_of(omega.b[j], j - 1, j);
                        if (src_is_quotient) bj = bj * blk.top_sect;
                        d.insert_block(slot, off, bj);
                    }
                }
                // B component into degree j+1 (cut off from the quotient piece).
                if (!src_is_quotient) {
                    QMatrix Bj = block_of(omega.conn[j], j + 1, j);
                    if (j + 1 == level) {
                        const int slot = dst_slot(level);
                        d.insert_block(slot, off, blk.top_proj * Bj);
                    } else if (j + 1 < level) {
                        const int slot = dst_slot(j + 1);
                        d.insert_block(slot, off, Bj);
                    }
                }
            }
            return d;
        };

        auto assemble_diag = [&](const ParityLayout& layout,
                                 const std::function<QMatrix(int)>& per_degree) {
            QMatrix m(layout.total, layout.total);
            for (size_t i = 0; i < layout.degrees.size(); ++i) {
                const int j = layout.degrees[i];
                QMatrix piece = per_degree(j);
                if (j == level) piece = blk.top_proj * (piece * blk.top_sect);
                m.insert_block(layout.offsets[i], layout.offsets[i], piece);
            }
            return m;
        };

        auto t_of_degree = [&](int j) {
            return omega.t[j].submatrix(omega.block_offset(j, t), omega.block_dim(j),
                                        omega.block_offset(j, t), omega.block_dim(j));
        };

        blk.para.even_dim = even.total;
        blk.para.odd_dim = odd.total;
        blk.para.d_even = assemble_d(even, odd);
        blk.para.d_odd = assemble_d(odd, even);
        blk.t_ops.t_even = assemble_diag(even, t_of_degree);
        blk.t_ops.t_odd = assemble_diag(odd, t_of_degree);
        blk.para.para_defect = {
            QMatrix::identity(even.total) - blk.t_ops.t_even,
            QMatrix::identity(odd.total) - blk.t_ops.t_odd,
        };
        blk.para.validate();  // dd = id - T, exactly
        out.blocks.push_back(std::move(blk));
    }

    // Direct sum, element-major.
    out.even_block_offsets.resize(g.order() + 1, 0);
    out.odd_block_offsets.resize(g.order() + 1, 0);
    for (int t = 0; t < g.order(); ++t) {
        out.even_block_offsets[t + 1] = out.even_block_offsets[t] + out.blocks[t].para.even_dim;
        out.odd_block_offsets[t + 1] = out.odd_block_offsets[t] + out.blocks[t].para.odd_dim;
    }
    out.para.even_dim = out.even_block_offsets.back();
    out.para.odd_dim = out.odd_block_offsets.back();
    out.para.d_even = QMatrix(out.para.odd_dim, out.para.even_dim);
    out.para.d_odd = QMatrix(out.para.even_dim, out.para.odd_dim);
    out.t_ops.t_even = QMatrix(out.para.even_dim, out.para.even_dim);
    out.t_ops.t_odd = QMatrix(out.para.odd_dim, out.para.odd_dim);
    QMatrix def_even(out.para.even_dim, out.para.even_dim);
    QMatrix def_odd(out.para.odd_dim, out.para.odd_dim);
    for (int t = 0; t < g.order(); ++t) {
        const auto& blk = out.blocks[t];
        out.para.d_even.insert_block(out.odd_block_offsets[t], out.even_block_offsets[t],
                                     blk.para.d_even);
        out.para.d_odd.insert_block(out.even_block_offsets[t], out.odd_block_offsets[t],
                                    blk.para.d_odd);
        out.t_ops.t_even.insert_block(out.even_block_offsets[t], out.even_block_offsets[t],
                                      blk.t_ops.t_even);
        out.t_ops.t_odd.insert_block(out.odd_block_offsets[t], out.odd_block_offsets[t],
                                     blk.t_ops.t_odd);
        def_even.insert_block(out.even_block_offsets[t], out.even_block_offsets[t],
                              blk.para.para_defect->first);
        def_odd.insert_block(out.odd_block_offsets[t], out.odd_block_offsets[t],
                             blk.para.para_defect->second);
    }
    out.para.para_defect = {std::move(def_even), std::move(def_odd)};
    out.para.validate();
    return out;
}

std::pair<QMatrix, QMatrix> hodge_block_action(const OmegaForms& omega, const HodgeLevel& lvl,
                                               int t, int z) {
    const auto& blk = lvl.blocks[t];
    auto assemble = [&](const std::vector<int>& degrees, const std::vector<int>& offsets,
                        int total) {
        QMatrix m(total, total);
        for (size_t i = 0; i < degrees.size(); ++i) {
            QMatrix piece = omega_inner_action(omega, z, degrees[i]);
            if (degrees[i] == lvl.level) piece = blk.top_proj * (piece * blk.top_sect);
            m.insert_block(offsets[i], offsets[i], piece);
        }
        return m;
    };
    return {assemble(blk.even_degrees, blk.even_offsets, blk.para.even_dim),
            assemble(blk.odd_degrees, blk.odd_offsets, blk.para.odd_dim)};
}

HpResult hp_at_level(const GAlgebra& a, const GAlgebra& b, int level_m, int level_n,
                     bool stabilize, long long budget) {
    if (a.group != b.group) throw input_error("cyclic: hp requires algebras over one group");
    if (!stabilize && (!a.unital || !b.unital))
        throw input_error("cyclic: the unstabilized path requires unital algebras");
    GroupPtr group = a.group;
    const GAlgebra a2 = stabilize ? tensor_algebra(a, compact_operators_algebra(group)) : a;
    const GAlgebra b2 = stabilize ? tensor_algebra(b, compact_operators_algebra(group)) : b;
    OmegaForms oa = omega_forms(a2, level_m + 1, budget);
    OmegaForms ob = omega_forms(b2, level_n + 1, budget);
    HodgeLevel ta = hodge_level(oa, level_m);
    HodgeLevel tb = hodge_level(ob, level_n);

    auto classes = conjugacy_data(group);
    const auto& g = *group;
    HpResult out;
    for (int c = 0; c < classes.class_count(); ++c) {
        const int t = classes.representatives[c];
        const auto& mt = ta.blocks[t];
        const auto& nt = tb.blocks[t];
        HomDifferentials diffs = hom_differentials(mt.para, nt.para);

        const auto& z = classes.centralizers[c];
        auto act_even = [&](int elem) {
            auto [me, mo] = hodge_block_action(oa, ta, t, g.inv[elem]);
            auto [ne, no] = hodge_block_action(ob, tb, t, elem);
            QMatrix rho(diffs.even_dim, diffs.even_dim);
            rho.insert_block(0, 0, left_compose(ne, mt.para.even_dim) *
                                       right_compose(me, nt.para.even_dim));
            rho.insert_block(diffs.oo_offset, diffs.oo_offset,
                             left_compose(no, mt.para.odd_dim) *
                                 right_compose(mo, nt.para.odd_dim));
            return rho;
        };
        auto act_odd = [&](int elem) {
            auto [me, mo] = hodge_block_action(oa, ta, t, g.inv[elem]);
            auto [ne, no] = hodge_block_action(ob, tb, t, elem);
            QMatrix rho(diffs.odd_dim, diffs.odd_dim);
            rho.insert_block(0, 0, left_compose(no, mt.para.even_dim) *
                                       right_compose(me, nt.para.odd_dim));
            rho.insert_block(diffs.oe_offset, diffs.oe_offset,
                             left_compose(ne, mt.para.odd_dim) *
                                 right_compose(mo, nt.para.even_dim));
            return rho;
        };
        QMatrix p_even = average_projector(z, act_even);
        QMatrix p_odd = average_projector(z, act_odd);
        auto even_basis = image_basis(p_even);
        auto odd_basis = image_basis(p_odd);

        Supercomplex hom;
        hom.even_dim = static_cast<int>(even_basis.size());
        hom.odd_dim = static_cast<int>(odd_basis.size());
        QMatrix de(hom.odd_dim, hom.even_dim), dn(hom.even_dim, hom.odd_dim);
        for (int j = 0; j < hom.even_dim; ++j) {
            auto coords = solve_in_span(odd_basis, diffs.delta_even.apply(even_basis[j]));
            if (!coords)
                throw verification_error("cyclic: Hom differential leaves the equivariant part");
            for (int i = 0; i < hom.odd_dim; ++i) de.set(i, j, (*coords)[i]);
        }
        for (int j = 0; j < hom.odd_dim; ++j) {
            auto coords = solve_in_span(even_basis, diffs.delta_odd.apply(odd_basis[j]));
            if (!coords)
                throw verification_error("cyclic: Hom differential leaves the equivariant part");
            for (int i = 0; i < hom.even_dim; ++i) dn.set(i, j, (*coords)[i]);
        }
        hom.d_even = std::move(de);
        hom.d_odd = std::move(dn);
        hom.validate();  // squares to zero on the covariant part
        auto [he, ho] = supercomplex_homology(hom);
        out.per_class.push_back({he, ho});
        out.even += he;
        out.odd += ho;
    }
    return out;
}

HkrResult hkr_map(const OmegaForms& omega, const GComplex& x) {
    if (x.space.dim() != 0)
        throw input_error("cyclic: the HKR check requires a 0-dimensional complex");
    if (omega.algebra.kind != "functions" || omega.algebra.dim != x.space.count(0))
        throw input_error("cyclic: forms were not built from the functions on this complex");
    const auto& g = *x.group;
    HkrResult out;

    // Basis of functions on the extended Brylinski space: pairs (t, fixed vertex).
    std::vector<std::pair<int, int>> pairs;
    for (int t = 0; t < g.order(); ++t)
        for (int i = 0; i < x.space.count(0); ++i) {
            const int v = x.space.by_dim[0][i][0];
            if (x.vertex_action[t][v] == v) pairs.emplace_back(t, i);
        }
    out.functions_dim = static_cast<int>(pairs.size());

    QMatrix alpha(out.functions_dim, omega.dims[0]);
    for (int r = 0; r < out.functions_dim; ++r) {
        auto [t, i] = pairs[r];
        alpha.set(r, omega.block_offset(0, t) + i, 1);
    }
    out.alpha0 = alpha;
    out.alpha_chain_map = (alpha * omega.b[1]).is_zero();

    std::vector<int> ranks(omega.max_degree + 1, 0);
    for (int n = 1; n <= omega.max_degree; ++n) ranks[n] = rank(omega.b[n]);
    for (int n = 0; n < omega.max_degree; ++n) {
        const int incoming = ranks[n + 1];
        const int outgoing = (n >= 1) ? ranks[n] : 0;
        out.hochschild.push_back(omega.dims[n] - outgoing - incoming);
    }

    const int alpha_rank = rank(alpha);
    const bool surjective = alpha_rank == out.functions_dim;
    const bool kernel_matches = (omega.dims[0] - alpha_rank) == ranks[1];
    out.degree0_iso = out.alpha_chain_map && surjective && kernel_matches;
    return out;
}

TraceResult trace_map(const OmegaForms& stabilized, const OmegaForms& plain, int cap) {
    const GAlgebra& sa = stabilized.algebra;
    const GAlgebra& pa = plain.algebra;
    if (sa.group != pa.group) throw input_error("cyclic: trace requires one group");
    const auto& g = *sa.group;
    const int gs = g.order();
    if (sa.kind != "tensor" || sa.tensor_factors.size() != 2 ||
        sa.tensor_factors[0] != pa.dim || sa.tensor_factors[1] != gs * gs)
        throw input_error("cyclic: the stabilized forms must come from A tensor K_G");
    if (cap > stabilized.max_degree || cap > plain.max_degree)
        throw budget_error("cyclic: trace degree cap exceeds the materialized degrees");

    const int adim = pa.dim;
    const int kdim = gs * gs;
    const int sdim = adim * kdim;
    // Stabilized basis index: (a, u, v) -> a * kdim + u * gs + v.
    auto split = [&](int idx) {
        const int a = idx / kdim;
        const int uv = idx % kdim;
        return std::tuple<int, int, int>{a, uv / gs, uv % gs};
    };
    InnerIndexer six{sdim};
    InnerIndexer pix{adim};

    TraceResult out;
    out.tr.resize(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        QMatrix tr(plain.dims[n], stabilized.dims[n]);
        const int block = stabilized.block_dim(n);
        for (int t = 0; t < gs; ++t) {
            const int col_off = stabilized.block_offset(n, t);
            const int row_off = plain.block_offset(n, t);
            for (int inner = 0; inner < block; ++inner) {
                auto [x0, w] = six.decode(n, inner);
                // Decode the word and the leading slot, then follow the
                // matrix-index chain with the final t-twist.
                std::vector<int> aw(n), uw(n), vw(n);
                for (int j = 0; j < n; ++j) std::tie(aw[j], uw[j], vw[j]) = split(w[j]);
                bool ok = true;
                for (int j = 0; j + 1 < n; ++j) ok = ok && (vw[j] == uw[j + 1]);
                int pa0;
                if (x0 == 0) {
                    // Leading adjoined unit; occurs in degrees >= 1 only.
                    pa0 = 0;
                    ok = ok && (vw[n - 1] == g.times(t, uw[0]));
                } else {
                    auto [a0, u0, v0] = split(x0 - 1);
                    pa0 = a0 + 1;
                    if (n == 0)
                        ok = (v0 == g.times(t, u0));
                    else
                        ok = ok && (v0 == uw[0]) && (vw[n - 1] == g.times(t, u0));
                }
                if (!ok) continue;
                tr.add_to(row_off + pix.encode(n, pa0, aw), col_off + inner, 1);
            }
        }
        out.tr[n] = std::move(tr);
    }

    bool cb = true, cB = true, ct = true;
    for (int n = 1; n <= cap; ++n)
        cb = cb && (out.tr[n - 1] * stabilized.b[n] == plain.b[n] * out.tr[n]);
    for (int n = 0; n < cap; ++n)
        cB = cB && (out.tr[n + 1] * stabilized.conn[n] == plain.conn[n] * out.tr[n]);
    for (int n = 0; n <= cap; ++n)
        ct = ct && (out.tr[n] * stabilized.t[n] == plain.t[n] * out.tr[n]);
    out.commutes_b = cb;
    out.commutes_conn = cB;
    out.commutes_t = ct;
    out.degree0_surjective = rank(out.tr[0]) == plain.dims[0];
    return out;
}

}  // namespace equihom
