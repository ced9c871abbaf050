#include "equihom/cosheaf.hpp"

#include <algorithm>
#include <map>

#include "equihom/errors.hpp"

namespace equihom {

InductionCosheaf induction_cosheaf(const GComplex& x) {
    InductionCosheaf out;
    out.orbits = orbit_data(x);
    out.space_index.resize(x.space.by_dim.size());
    std::map<std::vector<int>, int> seen;
    for (int d = 0; d <= x.space.dim(); ++d) {
        out.space_index[d].resize(x.space.count(d));
        for (int i = 0; i < x.space.count(d); ++i) {
            const auto& stab = out.orbits.info[d][i].stabilizer;
            auto it = seen.find(stab.members);
            if (it == seen.end()) {
                it = seen.emplace(stab.members, static_cast<int>(out.spaces.size())).first;
                out.spaces.push_back(class_function_space(stab));
            }
            out.space_index[d][i] = it->second;
        }
    }
    return out;
}

QMatrix corestriction(const InductionCosheaf& r, const GComplex& x, int d, int simplex,
                      int face_drop) {
    const Simplex& s = x.space.by_dim[d][simplex];
    Simplex face;
    for (int i = 0; i < static_cast<int>(s.size()); ++i)
        if (i != face_drop) face.push_back(s[i]);
    const int fi = x.space.index_of(d - 1, face);
    if (fi < 0) throw verification_error("cosheaf: face missing from complex");
    return induction_matrix(r.at(d, simplex), r.at(d - 1, fi));
}

CosheafComplex cosheaf_complex(const GComplex& x) {
    auto report = validate_g_complex(x);
    if (!report.type_preserving)
        throw input_error("cosheaf: the action must be type-preserving; subdivide first");

    CosheafComplex out;
    out.cosheaf = induction_cosheaf(x);
    const auto& g = *x.group;
    const int top = std::max(x.space.dim(), 0);

    // Ambient order: non-representatives first (lexicographic), then
    // representatives, so the coinvariant quotient keeps the representative
    // coordinates.
    out.pos_of_simplex.resize(top + 1);
    out.simplex_at_pos.resize(top + 1);
    out.offsets.resize(top + 1);
    out.ambient_dims.assign(top + 1, 0);
    for (int d = 0; d <= top; ++d) {
        const int n = x.space.count(d);
        std::vector<bool> is_rep(n, false);
        for (int i : out.cosheaf.orbits.representatives.empty() ? std::vector<int>{}
                                                                : out.cosheaf.orbits.representatives[d])
            is_rep[i] = true;
        out.pos_of_simplex[d].assign(n, -1);
        for (int i = 0; i < n; ++i)
            if (!is_rep[i]) {
                out.pos_of_simplex[d][i] = static_cast<int>(out.simplex_at_pos[d].size());
                out.simplex_at_pos[d].push_back(i);
            }
        for (int i = 0; i < n; ++i)
            if (is_rep[i]) {
                out.pos_of_simplex[d][i] = static_cast<int>(out.simplex_at_pos[d].size());
                out.simplex_at_pos[d].push_back(i);
            }
        out.offsets[d].assign(n + 1, 0);
        int off = 0;
        for (int pos = 0; pos < n; ++pos) {
            out.offsets[d][pos] = off;
            off += out.cosheaf.at(d, out.simplex_at_pos[d][pos]).dim();
        }
        out.offsets[d][n] = off;
        out.ambient_dims[d] = off;
    }

    auto slot = [&](int d, int simplex, int cls) {
        return out.offsets[d][out.pos_of_simplex[d][simplex]] + cls;
    };

    // Boundary with induction corestrictions and alternating incidence signs.
    out.ambient.dims = out.ambient_dims;
    out.ambient.d.resize(top + 1);
    for (int d = 0; d <= top; ++d) {
        QMatrix bd(d > 0 ? out.ambient_dims[d - 1] : 0, out.ambient_dims[d]);
        if (d > 0) {
            for (int i = 0; i < x.space.count(d); ++i) {
                const Simplex& s = x.space.by_dim[d][i];
                for (int drop = 0; drop < static_cast<int>(s.size()); ++drop) {
                    Simplex face;
                    for (int v = 0; v < static_cast<int>(s.size()); ++v)
                        if (v != drop) face.push_back(s[v]);
                    const int fi = x.space.index_of(d - 1, face);
                    const QMatrix ind = corestriction(out.cosheaf, x, d, i, drop);
                    const Rat sign = (drop % 2 == 0) ? Rat(1) : Rat(-1);
                    for (int r = 0; r < ind.rows(); ++r)
                        for (const auto& [c, v] : ind.row(r))
                            bd.add_to(slot(d - 1, fi, r), slot(d, i, c), v * sign);
                }
            }
        }
        out.ambient.d[d] = std::move(bd);
    }
    out.ambient.validate();

    // Coinvariant relations x - s.x with conjugated class functions and
    // orientation signs.
    std::vector<QuotientPresentation> rels(top + 1);
    for (int d = 0; d <= top; ++d) {
        rels[d].ambient_dim = out.ambient_dims[d];
        for (int i = 0; i < x.space.count(d); ++i) {
            const auto& space_i = out.cosheaf.at(d, i);
            for (int e = 0; e < g.order(); ++e) {
                auto moved = x.act(e, x.space.by_dim[d][i]);
                const int j = x.space.index_of(d, moved.simplex);
                const auto& space_j = out.cosheaf.at(d, j);
                const QMatrix conj = conjugation_matrix(space_i, e, space_j);
                for (int c = 0; c < space_i.dim(); ++c) {
                    SparseVec rel;
                    auto add = [&rel](int idx, const Rat& v) {
                        if (v == 0) return;
                        auto [it, fresh] = rel.try_emplace(idx, v);
                        if (!fresh) {
                            it->second += v;
                            if (it->second == 0) rel.erase(it);
                        }
                    };
                    add(slot(d, i, c), Rat(1));
                    for (int c2 = 0; c2 < space_j.dim(); ++c2)
                        add(slot(d, j, c2), -Rat(moved.sign) * conj.at(c2, c));
                    if (!rel.empty()) rels[d].relations.push_back(std::move(rel));
                }
            }
        }
    }
    out.coinv = quotient_complex(out.ambient, rels);

    // The kept coordinates must be exactly the orbit-representative block.
    out.basis_labels.resize(top + 1);
    for (int d = 0; d <= top; ++d) {
        const int n = x.space.count(d);
        std::vector<std::pair<int, int>> expected;
        for (int pos = 0; pos < n; ++pos) {
            const int i = out.simplex_at_pos[d][pos];
            const auto& info = out.cosheaf.orbits.info[d][i];
            if (info.representative != x.space.by_dim[d][i]) continue;
            for (int c = 0; c < out.cosheaf.at(d, i).dim(); ++c) expected.emplace_back(i, c);
        }
        std::vector<int> expected_cols;
        for (const auto& [i, c] : expected) expected_cols.push_back(slot(d, i, c));
        std::sort(expected_cols.begin(), expected_cols.end());
        if (out.coinv.kept_columns[d] != expected_cols)
            throw verification_error(
                "cosheaf: coinvariants do not restrict to the orbit-representative basis");
        // kept columns are sorted, i.e. ordered by (representative, class).
        std::sort(expected.begin(), expected.end(), [&](const auto& a, const auto& b) {
            return slot(d, a.first, a.second) < slot(d, b.first, b.second);
        });
        out.basis_labels[d] = std::move(expected);
    }
    return out;
}

std::vector<int> cosheaf_homology(const GComplex& x) {
    return chain_homology(cosheaf_complex(x).complex());
}

CompareResult compare_bredon_cosheaf(const GComplex& x, int subgroup_bound) {
    CosheafComplex cs = cosheaf_complex(x);
    BredonChainComplex br = bredon_complex(x, subgroup_bound);
    const auto& g = *x.group;
    const int top = std::max(x.space.dim(), 0);

    CompareResult out;
    out.cosheaf_dims = chain_homology(cs.complex());
    out.bredon_dims = br.homology_dims;

    // Object lookup by stabilizer members.
    auto object_of = [&](const Subgroup& h) {
        const int idx = br.category.object_index(h);
        if (idx < 0) throw verification_error("cosheaf: stabilizer missing from orbit category");
        return idx;
    };

    out.phi.resize(top + 1);
    out.psi.resize(top + 1);
    bool chain_map = true, psi_phi = true, phi_psi = true, psi_wd = true;
    for (int d = 0; d <= top; ++d) {
        const int nq = cs.complex().dims[d];
        const int nb = br.tensor.quotient.dims[d];

        // phi on the representative basis.
        QMatrix phi_mat(nb, nq);
        for (int col = 0; col < nq; ++col) {
            auto [simplex, cls] = cs.basis_labels[d][col];
            const auto& info = cs.cosheaf.orbits.info[d][simplex];
            const int obj = object_of(info.stabilizer);
            const int rh = cs.cosheaf.at(d, simplex).dim();
            const int s_in_fixed = br.fixed[obj].index_of(d, x.space.by_dim[d][simplex]);
            if (s_in_fixed < 0)
                throw verification_error("cosheaf: representative not fixed by its stabilizer");
            const int ambient_index = br.offset[d][obj] + s_in_fixed * rh + cls;
            // Project the ambient basis vector into the tensor quotient.
            for (int r = 0; r < nb; ++r) {
                const Rat v = br.tensor.projection[d].at(r, ambient_index);
                if (v != 0) phi_mat.set(r, col, v);
            }
        }
        out.phi[d] = std::move(phi_mat);

        // psi on the full Bredon ambient space, then both the quotient
        // version (via the section) and the well-definedness identity.
        const int namb = br.ambient_dims[d];
        QMatrix psi_ambient(nq, namb);
        for (int obj = 0; obj < br.category.object_count(); ++obj) {
            const auto& h = br.category.objects[obj];
            auto h_space = class_function_space(h);
            const int rh = h_space.dim();
            for (int s = 0; s < br.fixed[obj].count(d); ++s) {
                const Simplex& simplex = br.fixed[obj].by_dim[d][s];
                const int i = x.space.index_of(d, simplex);
                const auto& info = cs.cosheaf.orbits.info[d][i];
                const auto& sigma_space = cs.cosheaf.at(d, i);
                // ind_H^{G_sigma}: R(H) -> R(G_sigma)
                const QMatrix ind = induction_matrix(h_space, sigma_space);
                // Rewrite to the orbit representative: sigma = t . rep with
                // orientation sign; conjugate back by t^{-1}.
                const int rep_i = x.space.index_of(d, info.representative);
                const auto& rep_space = cs.cosheaf.at(d, rep_i);
                const QMatrix conj =
                    conjugation_matrix(sigma_space, g.inv[info.translator], rep_space);
                const QMatrix total = (conj * ind).scaled(Rat(info.sign));
                // Column of psi_ambient for (obj, s, q): the image lands in the
                // representative block of the coinvariant basis.
                for (int q = 0; q < rh; ++q) {
                    const int amb = br.offset[d][obj] + s * rh + q;
                    for (int r = 0; r < total.rows(); ++r) {
                        const Rat v = total.at(r, q);
                        if (v == 0) continue;
                        // Find which coinvariant coordinate (rep_i, r) is.
                        const int pos = cs.pos_of_simplex[d][rep_i];
                        const int col_in_ambient = cs.offsets[d][pos] + r;
                        // Representative coordinates are kept columns in order.
                        const auto& kept = cs.coinv.kept_columns[d];
                        auto it = std::lower_bound(kept.begin(), kept.end(), col_in_ambient);
                        if (it == kept.end() || *it != col_in_ambient)
                            throw verification_error("cosheaf: representative coordinate missing");
                        psi_ambient.add_to(static_cast<int>(it - kept.begin()), amb, v);
                    }
                }
            }
        }
        out.psi[d] = psi_ambient * br.tensor.section[d];

        // psi well-defined on the quotient: psi_q . projection == psi_ambient.
        if (!(out.psi[d] * br.tensor.projection[d] == psi_ambient)) psi_wd = false;
        if (!((out.psi[d] * out.phi[d]) == QMatrix::identity(nq))) psi_phi = false;
        if (!((out.phi[d] * out.psi[d]) == QMatrix::identity(nb))) phi_psi = false;
        if (d > 0) {
            if (!(out.phi[d - 1] * cs.complex().d[d] == br.tensor.quotient.d[d] * out.phi[d]))
                chain_map = false;
        }
    }
    out.psi_well_defined = psi_wd;
    out.chain_map = chain_map;
    out.psi_phi_id = psi_phi;
    out.phi_psi_id = phi_psi;
    out.is_iso = chain_map && psi_phi && phi_psi && psi_wd;
    out.homology_match = out.cosheaf_dims == out.bredon_dims;
    return out;
}

}  // namespace equihom
