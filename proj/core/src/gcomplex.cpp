#include "equihom/gcomplex.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "equihom/errors.hpp"

namespace equihom {

namespace {

std::string simplex_str(const Simplex& s) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
    os << "]";
    return os.str();
}

int sort_sign(std::vector<int>& v) {
    // Parity of the permutation sorting v, by counting inversions.
    int inversions = 0;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j]) ++inversions;
    std::sort(v.begin(), v.end());
    return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

OrientedSimplex act_on_simplex(const std::vector<int>& vertex_perm, const Simplex& s) {
    OrientedSimplex out;
    out.simplex.reserve(s.size());
    for (int v : s) out.simplex.push_back(vertex_perm[v]);
    out.sign = sort_sign(out.simplex);
    return out;
}

long long SComplex::size() const {
    long long n = 0;
    for (const auto& level : by_dim) n += static_cast<long long>(level.size());
    return n;
}

int SComplex::count(int d) const {
    if (d < 0 || d > dim()) return 0;
    return static_cast<int>(by_dim[d].size());
}

bool SComplex::contains(const Simplex& s) const {
    return index_of(static_cast<int>(s.size()) - 1, s) >= 0;
}

int SComplex::index_of(int d, const Simplex& s) const {
    if (d < 0 || d > dim()) return -1;
    const auto& level = by_dim[d];
    auto it = std::lower_bound(level.begin(), level.end(), s);
    return (it != level.end() && *it == s) ? static_cast<int>(it - level.begin()) : -1;
}

long long SComplex::euler_characteristic() const {
    long long chi = 0;
    for (int d = 0; d <= dim(); ++d) chi += (d % 2 == 0 ? 1 : -1) * count(d);
    return chi;
}

SComplex SComplex::from_maximal(int ambient_vertices, std::vector<Simplex> maximal) {
    std::set<Simplex> all;
    for (auto& m : maximal) {
        std::sort(m.begin(), m.end());
        for (size_t i = 1; i < m.size(); ++i)
            if (m[i] == m[i - 1])
                throw input_error("gcomplex: simplex with repeated vertex " + simplex_str(m));
        for (int v : m)
            if (v < 0 || v >= ambient_vertices)
                throw input_error("gcomplex: vertex index out of range in " + simplex_str(m));
        // All nonempty subsets.
        const int k = static_cast<int>(m.size());
        for (int mask = 1; mask < (1 << k); ++mask) {
            Simplex face;
            for (int i = 0; i < k; ++i)
                if (mask & (1 << i)) face.push_back(m[i]);
            all.insert(face);
        }
    }
    SComplex out;
    out.ambient_vertices = ambient_vertices;
    for (const auto& s : all) {
        const int d = static_cast<int>(s.size()) - 1;
        if (d >= static_cast<int>(out.by_dim.size())) out.by_dim.resize(d + 1);
        out.by_dim[d].push_back(s);
    }
    for (auto& level : out.by_dim) std::sort(level.begin(), level.end());
    return out;
}

std::vector<Simplex> SComplex::maximal_simplices() const {
    std::vector<Simplex> out;
    for (int d = 0; d <= dim(); ++d) {
        for (const auto& s : by_dim[d]) {
            bool maximal = true;
            for (int dd = d + 1; dd <= dim() && maximal; ++dd)
                for (const auto& bigger : by_dim[dd])
                    if (std::includes(bigger.begin(), bigger.end(), s.begin(), s.end())) {
                        maximal = false;
                        break;
                    }
            if (maximal) out.push_back(s);
        }
    }
    return out;
}

void SComplex::validate() const {
    for (int d = 0; d <= dim(); ++d) {
        for (const auto& s : by_dim[d]) {
            if (static_cast<int>(s.size()) != d + 1)
                throw input_error("gcomplex: simplex dimension mismatch " + simplex_str(s));
            if (!std::is_sorted(s.begin(), s.end()) ||
                std::adjacent_find(s.begin(), s.end()) != s.end())
                throw input_error("gcomplex: simplex not strictly sorted " + simplex_str(s));
            for (int v : s)
                if (v < 0 || v >= ambient_vertices)
                    throw input_error("gcomplex: vertex out of range in " + simplex_str(s));
            if (d > 0) {
                for (size_t drop = 0; drop < s.size(); ++drop) {
                    Simplex face;
                    for (size_t i = 0; i < s.size(); ++i)
                        if (i != drop) face.push_back(s[i]);
                    if (index_of(d - 1, face) < 0)
                        throw input_error("gcomplex: missing face " + simplex_str(face) +
                                          " of " + simplex_str(s));
                }
            }
        }
    }
}

QMatrix boundary_matrix(const SComplex& x, int d) {
    QMatrix m(x.count(d - 1), x.count(d));
    if (d <= 0) return m;
    for (int j = 0; j < x.count(d); ++j) {
        const Simplex& s = x.by_dim[d][j];
        for (size_t drop = 0; drop < s.size(); ++drop) {
            Simplex face;
            for (size_t i = 0; i < s.size(); ++i)
                if (i != drop) face.push_back(s[i]);
            const int row = x.index_of(d - 1, face);
            if (row < 0) throw verification_error("gcomplex: boundary face missing");
            m.add_to(row, j, (drop % 2 == 0) ? Rat(1) : Rat(-1));
        }
    }
    return m;
}

GComplex trivial_action(SComplex x, GroupPtr g) {
    std::vector<int> id(x.ambient_vertices);
    for (int i = 0; i < x.ambient_vertices; ++i) id[i] = i;
    GComplex out;
    out.space = std::move(x);
    out.vertex_action.assign(g->order(), id);
    out.group = std::move(g);
    return out;
}

GComplex g_complex_from_generators(const std::vector<std::vector<int>>& group_generators,
                                   SComplex space,
                                   const std::vector<std::vector<int>>& vertex_generators,
                                   int closure_bound) {
    if (group_generators.size() != vertex_generators.size())
        throw input_error("gcomplex: one vertex permutation is required per group generator");
    auto closure = build_group_from_permutations(group_generators, closure_bound);
    const int npoints = static_cast<int>(group_generators[0].size());
    const int nverts = space.ambient_vertices;
    for (const auto& p : vertex_generators)
        if (static_cast<int>(p.size()) != nverts)
            throw input_error("gcomplex: vertex permutation has wrong length");

    std::vector<int> id_points(npoints), id_verts(nverts);
    for (int i = 0; i < npoints; ++i) id_points[i] = i;
    for (int i = 0; i < nverts; ++i) id_verts[i] = i;

    std::map<std::vector<int>, std::vector<int>> assignment{{id_points, id_verts}};
    std::queue<std::vector<int>> todo;
    todo.push(id_points);
    while (!todo.empty()) {
        auto cur = todo.front();
        todo.pop();
        const auto& vcur = assignment.at(cur);
        for (size_t k = 0; k < group_generators.size(); ++k) {
            std::vector<int> prod(npoints), vprod(nverts);
            for (int i = 0; i < npoints; ++i) prod[i] = group_generators[k][cur[i]];
            for (int i = 0; i < nverts; ++i) vprod[i] = vertex_generators[k][vcur[i]];
            auto [it, fresh] = assignment.emplace(prod, vprod);
            if (fresh)
                todo.push(prod);
            else if (it->second != vprod)
                throw input_error(
                    "gcomplex: the generator action does not extend to a homomorphism");
        }
    }

    GComplex out;
    out.space = std::move(space);
    out.group = closure.group;
    out.vertex_action.reserve(closure.group->order());
    for (const auto& perm : closure.element_perms) out.vertex_action.push_back(assignment.at(perm));
    return out;
}

GComplexReport validate_g_complex(const GComplex& x) {
    const auto& g = *x.group;
    const int nv = x.space.ambient_vertices;
    x.space.validate();
    if (static_cast<int>(x.vertex_action.size()) != g.order())
        throw input_error("gcomplex: vertex action must cover every group element");
    for (int e = 0; e < g.order(); ++e) {
        const auto& p = x.vertex_action[e];
        if (static_cast<int>(p.size()) != nv)
            throw input_error("gcomplex: vertex action has wrong length");
        std::vector<bool> hit(nv, false);
        for (int v : p) {
            if (v < 0 || v >= nv || hit[v])
                throw input_error("gcomplex: vertex action of element " + g.labels[e] +
                                  " is not a permutation");
            hit[v] = true;
        }
    }
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) {
            const int ab = g.times(a, b);
            for (int v = 0; v < nv; ++v)
                if (x.vertex_action[ab][v] != x.vertex_action[a][x.vertex_action[b][v]])
                    throw input_error("gcomplex: vertex action is not a group homomorphism");
        }

    GComplexReport report;
    report.simplicial = true;
    report.type_preserving = true;
    for (int d = 0; d <= x.space.dim() && report.simplicial; ++d)
        for (const auto& s : x.space.by_dim[d]) {
            for (int e = 0; e < g.order(); ++e) {
                auto image = x.act(e, s);
                if (!x.space.contains(image.simplex)) {
                    report.simplicial = false;
                    break;
                }
                if (image.simplex == s) {
                    for (size_t i = 0; i < s.size(); ++i)
                        if (x.vertex_action[e][s[i]] != s[i]) {
                            report.type_preserving = false;
                            break;
                        }
                }
            }
            if (!report.simplicial) break;
        }
    if (!report.simplicial) report.type_preserving = false;
    return report;
}

GComplex barycentric_subdivision(const GComplex& x) {
    if (!validate_g_complex(x).simplicial)
        throw input_error("gcomplex: barycentric_subdivision requires a simplicial action");
    // One new vertex per old simplex, indexed by (dim, position).
    std::vector<std::pair<int, int>> vertex_of;  // new vertex -> (d, i)
    std::vector<std::vector<int>> index_of(x.space.by_dim.size());
    for (int d = 0; d <= x.space.dim(); ++d) {
        index_of[d].resize(x.space.count(d));
        for (int i = 0; i < x.space.count(d); ++i) {
            index_of[d][i] = static_cast<int>(vertex_of.size());
            vertex_of.emplace_back(d, i);
        }
    }
    const int nv = static_cast<int>(vertex_of.size());

    // Flags in the face poset, as new-vertex tuples. flags_ending_at[d][i]
    // lists the flags whose top simplex is by_dim[d][i].
    std::vector<std::vector<std::vector<Simplex>>> flags(x.space.by_dim.size());
    std::vector<Simplex> all_flags;
    for (int d = 0; d <= x.space.dim(); ++d) {
        flags[d].resize(x.space.count(d));
        for (int i = 0; i < x.space.count(d); ++i) {
            const int top = index_of[d][i];
            flags[d][i].push_back({top});
            const Simplex& s = x.space.by_dim[d][i];
            // Proper faces: all nonempty subsets except s itself.
            const int k = d + 1;
            for (int mask = 1; mask < (1 << k) - 1; ++mask) {
                Simplex face;
                for (int b = 0; b < k; ++b)
                    if (mask & (1 << b)) face.push_back(s[b]);
                const int fd = static_cast<int>(face.size()) - 1;
                const int fi = x.space.index_of(fd, face);
                for (const auto& chain : flags[fd][fi]) {
                    Simplex extended = chain;
                    extended.push_back(top);
                    flags[d][i].push_back(std::move(extended));
                }
            }
            for (const auto& f : flags[d][i]) all_flags.push_back(f);
        }
    }

    SComplex sub;
    sub.ambient_vertices = nv;
    for (auto& f : all_flags) {
        std::sort(f.begin(), f.end());
        const int fd = static_cast<int>(f.size()) - 1;
        if (fd >= static_cast<int>(sub.by_dim.size())) sub.by_dim.resize(fd + 1);
        sub.by_dim[fd].push_back(f);
    }
    for (auto& level : sub.by_dim) {
        std::sort(level.begin(), level.end());
        level.erase(std::unique(level.begin(), level.end()), level.end());
    }

    GComplex out;
    out.space = std::move(sub);
    out.group = x.group;
    out.vertex_action.assign(x.group->order(), std::vector<int>(nv));
    for (int e = 0; e < x.group->order(); ++e)
        for (int v = 0; v < nv; ++v) {
            auto [d, i] = vertex_of[v];
            auto image = x.act(e, x.space.by_dim[d][i]);
            out.vertex_action[e][v] = index_of[d][x.space.index_of(d, image.simplex)];
        }
    return out;
}

namespace {

SComplex fixed_points(const GComplex& x, const std::vector<int>& elements) {
    std::vector<bool> fixed(x.space.ambient_vertices, true);
    for (int e : elements)
        for (int v = 0; v < x.space.ambient_vertices; ++v)
            if (x.vertex_action[e][v] != v) fixed[v] = false;
    SComplex out;
    out.ambient_vertices = x.space.ambient_vertices;
    for (int d = 0; d <= x.space.dim(); ++d) {
        std::vector<Simplex> level;
        for (const auto& s : x.space.by_dim[d]) {
            bool all_fixed = true;
            for (int v : s) all_fixed = all_fixed && fixed[v];
            if (all_fixed) level.push_back(s);
        }
        if (!level.empty()) {
            out.by_dim.resize(d + 1);
            out.by_dim[d] = std::move(level);
        }
    }
    return out;
}

void require_type_preserving(const GComplex& x, const char* op) {
    auto report = validate_g_complex(x);
    if (!report.simplicial)
        throw input_error(std::string("gcomplex: ") + op + " requires a simplicial action");
    if (!report.type_preserving)
        throw input_error(std::string("gcomplex: ") + op +
                          " requires a type-preserving action; apply barycentric_subdivision "
                          "(or pass --subdivide) first");
}

}  // namespace

SComplex fixed_subcomplex(const GComplex& x, const Subgroup& h) {
    require_type_preserving(x, "fixed_subcomplex");
    return fixed_points(x, h.members);
}

SComplex fixed_subcomplex(const GComplex& x, int t) {
    require_type_preserving(x, "fixed_subcomplex");
    return fixed_points(x, {t});
}

OrbitData orbit_data(const GComplex& x) {
    require_type_preserving(x, "orbit_data");
    const auto& g = *x.group;
    OrbitData out;
    out.info.resize(x.space.by_dim.size());
    out.representatives.resize(x.space.by_dim.size());
    for (int d = 0; d <= x.space.dim(); ++d) {
        const auto& level = x.space.by_dim[d];
        out.info[d].resize(level.size());
        std::vector<bool> done(level.size(), false);
        for (int i = 0; i < static_cast<int>(level.size()); ++i) {
            if (done[i]) continue;
            // level is sorted, so the first unseen simplex is the
            // lexicographically minimal representative of its orbit.
            const Simplex& rep = level[i];
            out.representatives[d].push_back(i);
            for (int e = 0; e < g.order(); ++e) {
                auto image = x.act(e, rep);
                const int j = x.space.index_of(d, image.simplex);
                if (j < 0) throw verification_error("gcomplex: orbit leaves the complex");
                if (!done[j]) {
                    done[j] = true;
                    out.info[d][j].representative = rep;
                    out.info[d][j].translator = e;
                    out.info[d][j].sign = image.sign;
                }
            }
            std::vector<int> stab;
            for (int e = 0; e < g.order(); ++e)
                if (x.act(e, rep).simplex == rep) stab.push_back(e);
            Subgroup stabilizer{x.group, stab};
            for (int e = 0; e < g.order(); ++e) {
                auto image = x.act(e, rep);
                const int j = x.space.index_of(d, image.simplex);
                out.info[d][j].stabilizer =
                    Subgroup{x.group, conjugate_subgroup(stabilizer, e).members};
            }
            // The representative translates to itself by the identity.
            const int self = x.space.index_of(d, rep);
            out.info[d][self].translator = g.identity;
            out.info[d][self].sign = 1;
        }
    }
    return out;
}

int BrylinskiSpace::dim() const {
    int d = -1;
    for (const auto& c : component) d = std::max(d, c.dim());
    return d;
}

BrylinskiSpace brylinski_space(const GComplex& x) {
    require_type_preserving(x, "brylinski_space");
    const auto& g = *x.group;
    BrylinskiSpace out;
    out.classes = conjugacy_data(x.group);
    for (int c = 0; c < out.classes.class_count(); ++c) {
        const int rep = out.classes.representatives[c];
        out.component.push_back(fixed_points(x, {rep}));
        out.centralizer.push_back(out.classes.centralizers[c]);
        std::vector<int> conj(g.order(), -1);
        for (int s = 0; s < g.order(); ++s) {
            const int target = g.conjugate(s, rep);
            if (conj[target] < 0) conj[target] = s;
        }
        out.conjugator.push_back(std::move(conj));
    }
    return out;
}

QMatrix action_chain_map(const GComplex& x, const SComplex& from, const SComplex& to, int s,
                         int d) {
    QMatrix m(to.count(d), from.count(d));
    for (int j = 0; j < from.count(d); ++j) {
        auto image = x.act(s, from.by_dim[d][j]);
        const int i = to.index_of(d, image.simplex);
        if (i < 0)
            throw verification_error("gcomplex: action does not map between the given subcomplexes");
        m.set(i, j, Rat(image.sign));
    }
    return m;
}

}  // namespace equihom
