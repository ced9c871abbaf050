#include "equihom/bredon.hpp"

#include <algorithm>
#include <set>

#include "equihom/errors.hpp"

namespace equihom {

namespace {

int canonical_coset_rep(const FiniteGroup& g, const Subgroup& k, int elem) {
    int best = -1;
    for (int m : k.members) {
        const int candidate = g.times(elem, m);
        if (best < 0 || candidate < best) best = candidate;
    }
    return best;
}

}  // namespace

std::vector<int> orbit_morphisms(const Subgroup& h, const Subgroup& k) {
    if (h.group != k.group)
        throw input_error("bredon: morphisms require subgroups of the same group");
    const auto& g = *h.group;
    std::set<int> reps;
    for (int elem = 0; elem < g.order(); ++elem) {
        bool ok = true;
        for (int x : h.members) {
            const int conj = g.times(g.times(g.inv[elem], x), elem);  // g^-1 x g
            if (!k.contains(conj)) {
                ok = false;
                break;
            }
        }
        if (ok) reps.insert(canonical_coset_rep(g, k, elem));
    }
    return {reps.begin(), reps.end()};
}

int OrbitCategory::object_index(const Subgroup& h) const {
    for (int i = 0; i < object_count(); ++i)
        if (objects[i] == h) return i;
    return -1;
}

OrbitCategory orbit_category(GroupPtr g, int subgroup_bound) {
    OrbitCategory cat;
    cat.objects = enumerate_subgroups(g, subgroup_bound);
    cat.group = std::move(g);
    cat.morphisms.resize(cat.object_count());
    for (int i = 0; i < cat.object_count(); ++i) {
        cat.morphisms[i].resize(cat.object_count());
        for (int j = 0; j < cat.object_count(); ++j)
            cat.morphisms[i][j] = orbit_morphisms(cat.objects[i], cat.objects[j]);
    }
    return cat;
}

int compose_morphisms(const OrbitCategory& cat, int j_obj, int l_obj, int g1, int g2) {
    (void)j_obj;
    return canonical_coset_rep(*cat.group, cat.objects[l_obj], cat.group->times(g1, g2));
}

CoefficientSystem::CoefficientSystem(const OrbitCategory& cat) : cat_(&cat) {
    spaces_.reserve(cat.object_count());
    for (const auto& h : cat.objects) spaces_.push_back(class_function_space(h));
}

QMatrix coefficient_map(const ClassFunctionSpace& from, int g, const ClassFunctionSpace& to) {
    // Conjugate R(H) -> R(g^-1 H g), then induce up to K.
    const auto& grp = *from.subgroup().group;
    Subgroup conj = conjugate_subgroup(from.subgroup(), grp.inv[g]);
    if (!is_subgroup_of(conj, to.subgroup()))
        throw input_error("bredon: invalid orbit-category morphism");
    auto mid = class_function_space(conj);
    return induction_matrix(mid, to) * conjugation_matrix(from, grp.inv[g], mid);
}

const QMatrix& CoefficientSystem::along(int from_obj, int to_obj, int g) const {
    auto key = std::make_tuple(from_obj, to_obj, g);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    QMatrix m = coefficient_map(spaces_[from_obj], g, spaces_[to_obj]);
    return cache_.emplace(key, std::move(m)).first->second;
}

BredonChainComplex bredon_complex(const GComplex& x, int subgroup_bound) {
    auto report = validate_g_complex(x);
    if (!report.type_preserving)
        throw input_error("bredon: the action must be type-preserving; subdivide first");

    BredonChainComplex out;
    out.category = orbit_category(x.group, subgroup_bound);
    CoefficientSystem coeff(out.category);
    const int nobj = out.category.object_count();
    for (int i = 0; i < nobj; ++i)
        out.fixed.push_back(fixed_subcomplex(x, out.category.objects[i]));

    const int top = std::max(x.space.dim(), 0);
    out.offset.assign(top + 1, std::vector<int>(nobj + 1, 0));
    out.ambient_dims.assign(top + 1, 0);
    for (int p = 0; p <= top; ++p) {
        int off = 0;
        for (int i = 0; i < nobj; ++i) {
            out.offset[p][i] = off;
            off += out.fixed[i].count(p) * coeff.dim_at(i);
        }
        out.offset[p][nobj] = off;
        out.ambient_dims[p] = off;
    }

    // Block-diagonal ambient boundary: boundary of X^H tensor id on R(H).
    out.ambient.dims = out.ambient_dims;
    out.ambient.d.resize(top + 1);
    for (int p = 0; p <= top; ++p) {
        QMatrix d(p > 0 ? out.ambient_dims[p - 1] : 0, out.ambient_dims[p]);
        if (p > 0) {
            for (int i = 0; i < nobj; ++i) {
                const int r = coeff.dim_at(i);
                if (r == 0) continue;
                QMatrix bd = boundary_matrix(out.fixed[i], p);
                for (int row = 0; row < bd.rows(); ++row)
                    for (const auto& [col, v] : bd.row(row))
                        for (int q = 0; q < r; ++q)
                            d.set(out.offset[p - 1][i] + row * r + q,
                                  out.offset[p][i] + col * r + q, v);
            }
        }
        out.ambient.d[p] = std::move(d);
    }
    out.ambient.validate();

    // Tensor relations: one generator per (morphism, basis chain, basis class
    // function), deduplicated by the echelon inside quotient_complex.
    std::vector<QuotientPresentation> rels(top + 1);
    for (int p = 0; p <= top; ++p) rels[p].ambient_dim = out.ambient_dims[p];
    for (int hi = 0; hi < nobj; ++hi) {
        const int rh = coeff.dim_at(hi);
        if (rh == 0) continue;
        for (int ki = 0; ki < nobj; ++ki) {
            const int rk = coeff.dim_at(ki);
            for (int g : out.category.morphisms[hi][ki]) {
                const QMatrix& ind = coeff.along(hi, ki, g);
                for (int p = 0; p <= top; ++p) {
                    const auto& from = out.fixed[ki];  // chains are contravariant
                    for (int s = 0; s < from.count(p); ++s) {
                        auto moved = x.act(g, from.by_dim[p][s]);
                        const int target = out.fixed[hi].index_of(p, moved.simplex);
                        if (target < 0)
                            throw verification_error(
                                "bredon: contravariant chain image misses the fixed complex");
                        for (int q = 0; q < rh; ++q) {
                            SparseVec rel;
                            auto add = [&rel](int idx, const Rat& v) {
                                if (v == 0) return;
                                auto [it, fresh] = rel.try_emplace(idx, v);
                                if (!fresh) {
                                    it->second += v;
                                    if (it->second == 0) rel.erase(it);
                                }
                            };
                            add(out.offset[p][hi] + target * rh + q, Rat(moved.sign));
                            for (int q2 = 0; q2 < rk; ++q2)
                                add(out.offset[p][ki] + s * rk + q2, -ind.at(q2, q));
                            if (!rel.empty()) rels[p].relations.push_back(std::move(rel));
                        }
                    }
                }
            }
        }
    }

    out.tensor = quotient_complex(out.ambient, rels);
    out.homology_dims = chain_homology(out.tensor.quotient);
    return out;
}

std::vector<int> bredon_homology(const GComplex& x, int subgroup_bound) {
    return bredon_complex(x, subgroup_bound).homology_dims;
}

}  // namespace equihom
