#include "equihom/fingroup.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "equihom/errors.hpp"

namespace equihom {

namespace {

void validate_table(const std::vector<std::vector<int>>& table) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw input_error("fingroup: empty multiplication table");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n)
            throw input_error("fingroup: multiplication table is not square");
        for (int v : row)
            if (v < 0 || v >= n)
                throw input_error("fingroup: table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw input_error("fingroup: multiplication table is not associative");
}

int find_identity(const std::vector<std::vector<int>>& table) {
    const int n = static_cast<int>(table.size());
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
        if (ok) return e;
    }
    throw input_error("fingroup: multiplication table has no identity element");
}

std::string cycle_label(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::vector<bool> seen(n, false);
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < n; ++i) {
        if (seen[i] || perm[i] == i) continue;
        any = true;
        os << "(";
        int j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            os << (first ? "" : " ") << j;
            first = false;
            j = perm[j];
        }
        os << ")";
    }
    return any ? os.str() : "e";
}

}  // namespace

int FiniteGroup::power(int a, int k) const {
    int out = identity;
    for (int i = 0; i < k; ++i) out = mul[out][a];
    return out;
}

GroupPtr build_group_from_table(const std::vector<std::vector<int>>& table) {
    validate_table(table);
    auto g = std::make_shared<FiniteGroup>();
    g->mul = table;
    g->identity = find_identity(table);
    const int n = g->order();
    g->inv.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (table[a][b] == g->identity && table[b][a] == g->identity) {
                g->inv[a] = b;
                break;
            }
        if (g->inv[a] < 0) throw input_error("fingroup: element without inverse");
    }
    g->element_order.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        int x = a, k = 1;
        while (x != g->identity) {
            x = table[x][a];
            ++k;
        }
        g->element_order[a] = k;
    }
    g->labels.resize(n);
    for (int a = 0; a < n; ++a) g->labels[a] = "g" + std::to_string(a);
    g->labels[g->identity] = "e";
    return g;
}

PermClosure build_group_from_permutations(const std::vector<std::vector<int>>& generators,
                                          int closure_bound) {
    if (generators.empty()) throw input_error("fingroup: no permutation generators given");
    const int npoints = static_cast<int>(generators[0].size());
    auto check_perm = [&](const std::vector<int>& p) {
        if (static_cast<int>(p.size()) != npoints)
            throw input_error("fingroup: generators act on different point sets");
        std::vector<bool> hit(npoints, false);
        for (int v : p) {
            if (v < 0 || v >= npoints || hit[v])
                throw input_error("fingroup: generator is not a permutation");
            hit[v] = true;
        }
    };
    for (const auto& p : generators) check_perm(p);

    std::vector<int> id(npoints);
    for (int i = 0; i < npoints; ++i) id[i] = i;

    std::set<std::vector<int>> seen{id};
    std::queue<std::vector<int>> todo;
    todo.push(id);
    while (!todo.empty()) {
        auto cur = todo.front();
        todo.pop();
        for (const auto& gen : generators) {
            std::vector<int> prod(npoints);
            for (int i = 0; i < npoints; ++i) prod[i] = gen[cur[i]];
            if (seen.insert(prod).second) {
                if (static_cast<int>(seen.size()) > closure_bound)
                    throw budget_error("fingroup: generator closure exceeds bound " +
                                       std::to_string(closure_bound));
                todo.push(prod);
            }
        }
    }

    std::vector<std::vector<int>> elems(seen.begin(), seen.end());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < static_cast<int>(elems.size()); ++i) index[elems[i]] = i;

    const int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<int> prod(npoints);
            for (int i = 0; i < npoints; ++i) prod[i] = elems[a][elems[b][i]];
            table[a][b] = index.at(prod);
        }

    PermClosure out;
    auto g = build_group_from_table(table);
    auto mutable_g = std::const_pointer_cast<FiniteGroup>(g);
    for (int i = 0; i < n; ++i) mutable_g->labels[i] = cycle_label(elems[i]);
    out.group = g;
    out.element_perms = std::move(elems);
    return out;
}

bool Subgroup::contains(int g) const {
    return std::binary_search(members.begin(), members.end(), g);
}

int Subgroup::index_of(int g) const {
    auto it = std::lower_bound(members.begin(), members.end(), g);
    return (it != members.end() && *it == g) ? static_cast<int>(it - members.begin()) : -1;
}

bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.group == b.group && a.members == b.members;
}

bool is_subgroup_of(const Subgroup& h, const Subgroup& k) {
    if (h.group != k.group) return false;
    return std::includes(k.members.begin(), k.members.end(), h.members.begin(), h.members.end());
}

Subgroup trivial_subgroup(GroupPtr g) { return Subgroup{g, {g->identity}}; }

Subgroup full_subgroup(GroupPtr g) {
    std::vector<int> all(g->order());
    for (int i = 0; i < g->order(); ++i) all[i] = i;
    return Subgroup{std::move(g), std::move(all)};
}

Subgroup subgroup_closure(GroupPtr g, std::vector<int> seed) {
    std::set<int> members{g->identity};
    for (int s : seed) members.insert(s);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(members.begin(), members.end());
        for (int a : cur)
            for (int b : cur)
                if (members.insert(g->times(a, b)).second) grew = true;
        for (int a : cur)
            if (members.insert(g->inv[a]).second) grew = true;
    }
    return Subgroup{std::move(g), std::vector<int>(members.begin(), members.end())};
}

Subgroup conjugate_subgroup(const Subgroup& h, int g) {
    std::vector<int> members;
    members.reserve(h.members.size());
    for (int x : h.members) members.push_back(h.group->conjugate(g, x));
    std::sort(members.begin(), members.end());
    return Subgroup{h.group, std::move(members)};
}

std::vector<int> generating_set(const Subgroup& h) {
    std::vector<int> gens;
    Subgroup cur = trivial_subgroup(h.group);
    for (int x : h.members) {
        if (cur.contains(x)) continue;
        gens.push_back(x);
        std::vector<int> seed = cur.members;
        seed.push_back(x);
        cur = subgroup_closure(h.group, seed);
        if (cur.order() == h.order()) break;
    }
    return gens;
}

std::vector<Subgroup> enumerate_subgroups(GroupPtr g, int bound) {
    if (g->order() > bound)
        throw budget_error("fingroup: group order " + std::to_string(g->order()) +
                           " exceeds subgroup enumeration bound " + std::to_string(bound));
    std::set<std::vector<int>> found;
    std::queue<std::vector<int>> todo;
    auto trivial = trivial_subgroup(g).members;
    found.insert(trivial);
    todo.push(trivial);
    while (!todo.empty()) {
        auto base = todo.front();
        todo.pop();
        for (int x = 0; x < g->order(); ++x) {
            if (std::binary_search(base.begin(), base.end(), x)) continue;
            std::vector<int> seed = base;
            seed.push_back(x);
            auto closed = subgroup_closure(g, seed).members;
            if (found.insert(closed).second) todo.push(closed);
        }
    }
    std::vector<Subgroup> out;
    out.reserve(found.size());
    for (auto& members : found) out.push_back(Subgroup{g, members});
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.members < b.members;
    });
    return out;
}

ConjugacyData conjugacy_data(const Subgroup& h) {
    const auto& g = *h.group;
    ConjugacyData out;
    out.domain = h;
    out.class_of.assign(g.order(), -1);
    for (int x : h.members) {
        if (out.class_of[x] >= 0) continue;
        std::set<int> cls;
        for (int s : h.members) cls.insert(g.conjugate(s, x));
        const int idx = out.class_count();
        for (int y : cls) out.class_of[y] = idx;
        out.classes.emplace_back(cls.begin(), cls.end());
        out.representatives.push_back(*cls.begin());
    }
    for (int i = 0; i < out.class_count(); ++i) {
        const int rep = out.representatives[i];
        std::vector<int> cent;
        for (int s : h.members)
            if (g.times(s, rep) == g.times(rep, s)) cent.push_back(s);
        out.centralizers.push_back(Subgroup{h.group, std::move(cent)});
        // Orbit-stabilizer: |class| * |centralizer| = |H|.
        if (static_cast<int>(out.classes[i].size()) * out.centralizers[i].order() != h.order())
            throw verification_error("fingroup: orbit-stabilizer count failed");
    }
    return out;
}

ConjugacyData conjugacy_data(GroupPtr g) { return conjugacy_data(full_subgroup(std::move(g))); }

ClassFunctionSpace class_function_space(const Subgroup& h) {
    return ClassFunctionSpace{conjugacy_data(h)};
}

Rat ClassFunctionSpace::evaluate(const QVec& f, int element) const {
    const int cls = conj.class_of[element];
    if (cls < 0) throw input_error("fingroup: element outside the domain of a class function");
    return f[cls];
}

QVec induce(const ClassFunctionSpace& from, const QVec& f, const ClassFunctionSpace& to) {
    const Subgroup& h = from.subgroup();
    const Subgroup& k = to.subgroup();
    if (!is_subgroup_of(h, k))
        throw input_error("fingroup: induction requires the source to be a subgroup of the target");
    const auto& g = *h.group;
    QVec out(to.dim(), Rat(0));
    const Rat scale(1, h.order());
    for (int c = 0; c < to.dim(); ++c) {
        const int rep = to.conj.representatives[c];
        Rat acc(0);
        for (int x : k.members) {
            const int conj = g.times(g.times(g.inv[x], rep), x);  // x^-1 rep x
            if (h.contains(conj)) acc += from.evaluate(f, conj);
        }
        out[c] = acc * scale;
    }
    return out;
}

ClassFunction induce(const ClassFunction& f, const Subgroup& k) {
    auto from = class_function_space(f.group);
    auto to = class_function_space(k);
    return ClassFunction{k, induce(from, f.values, to)};
}

QMatrix induction_matrix(const ClassFunctionSpace& from, const ClassFunctionSpace& to) {
    QMatrix m(to.dim(), from.dim());
    for (int j = 0; j < from.dim(); ++j) {
        QVec f(from.dim(), Rat(0));
        f[j] = 1;
        QVec col = induce(from, f, to);
        for (int i = 0; i < to.dim(); ++i) m.set(i, j, col[i]);
    }
    return m;
}

QVec restrict_cf(const ClassFunctionSpace& from, const QVec& f, const ClassFunctionSpace& to) {
    if (!is_subgroup_of(to.subgroup(), from.subgroup()))
        throw input_error("fingroup: restriction requires the target to be a subgroup of the source");
    QVec out(to.dim(), Rat(0));
    for (int c = 0; c < to.dim(); ++c) out[c] = from.evaluate(f, to.conj.representatives[c]);
    return out;
}

ClassFunction restrict_cf(const ClassFunction& f, const Subgroup& h) {
    auto from = class_function_space(f.group);
    auto to = class_function_space(h);
    return ClassFunction{h, restrict_cf(from, f.values, to)};
}

QMatrix restriction_matrix(const ClassFunctionSpace& from, const ClassFunctionSpace& to) {
    QMatrix m(to.dim(), from.dim());
    for (int c = 0; c < to.dim(); ++c)
        m.set(c, from.conj.class_of[to.conj.representatives[c]], 1);
    return m;
}

QMatrix conjugation_matrix(const ClassFunctionSpace& from, int g, const ClassFunctionSpace& to) {
    const auto& grp = *from.subgroup().group;
    if (!(conjugate_subgroup(from.subgroup(), g) == to.subgroup()))
        throw input_error("fingroup: conjugation target subgroup mismatch");
    QMatrix m(to.dim(), from.dim());
    for (int c = 0; c < to.dim(); ++c) {
        const int rep = to.conj.representatives[c];
        const int back = grp.times(grp.times(grp.inv[g], rep), g);  // g^-1 rep g
        m.set(c, from.conj.class_of[back], 1);
    }
    return m;
}

Rat inner_product(const ClassFunctionSpace& space, const QVec& a, const QVec& b) {
    Rat acc(0);
    for (int c = 0; c < space.dim(); ++c)
        acc += a[c] * b[c] * Rat(static_cast<int>(space.conj.classes[c].size()));
    return acc / Rat(space.subgroup().order());
}

}  // namespace equihom
