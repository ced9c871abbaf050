#pragma once

#include <memory>
#include <string>
#include <vector>

#include "equihom/qmatrix.hpp"

namespace equihom {

/// A finite group given by its multiplication table on element indices
/// 0..n-1. Validated on construction: associativity, identity and inverses
/// are checked on all elements.
struct FiniteGroup {
    std::vector<std::vector<int>> mul;
    int identity = 0;
    std::vector<int> inv;
    std::vector<int> element_order;
    std::vector<std::string> labels;  // display names, e.g. permutation cycles

    int order() const { return static_cast<int>(mul.size()); }
    int times(int a, int b) const { return mul[a][b]; }
    int conjugate(int g, int x) const { return mul[mul[g][x]][inv[g]]; }  // g x g^-1
    int power(int a, int k) const;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr build_group_from_table(const std::vector<std::vector<int>>& table);

/// Closure of permutation generators on a common finite point set. Elements
/// are indexed in lexicographic order of their permutations; the returned
/// element_perms are aligned with that indexing.
struct PermClosure {
    GroupPtr group;
    std::vector<std::vector<int>> element_perms;
};
PermClosure build_group_from_permutations(const std::vector<std::vector<int>>& generators,
                                          int closure_bound = 512);

struct Subgroup {
    GroupPtr group;
    std::vector<int> members;  // sorted, closed, contains the identity

    int order() const { return static_cast<int>(members.size()); }
    bool contains(int g) const;
    int index_of(int g) const;  // -1 when absent
};

bool operator==(const Subgroup& a, const Subgroup& b);
bool is_subgroup_of(const Subgroup& h, const Subgroup& k);

Subgroup trivial_subgroup(GroupPtr g);
Subgroup full_subgroup(GroupPtr g);
Subgroup subgroup_closure(GroupPtr g, std::vector<int> seed);
Subgroup conjugate_subgroup(const Subgroup& h, int g);  // g H g^-1
/// Minimal-ish generating set, found greedily; used where checks on
/// generators suffice.
std::vector<int> generating_set(const Subgroup& h);

/// All subgroups, sorted by (order, members). Throws when |G| exceeds the
/// bound.
std::vector<Subgroup> enumerate_subgroups(GroupPtr g, int bound = 24);

/// Conjugacy classes of a subgroup H under H-conjugation, with centralizers
/// (taken inside H) of the minimal-element representatives.
struct ConjugacyData {
    Subgroup domain;
    std::vector<std::vector<int>> classes;  // each sorted; classes ordered by min element
    std::vector<int> representatives;
    std::vector<Subgroup> centralizers;
    std::vector<int> class_of;  // indexed by parent element, -1 outside H

    int class_count() const { return static_cast<int>(classes.size()); }
};

ConjugacyData conjugacy_data(const Subgroup& h);
ConjugacyData conjugacy_data(GroupPtr g);

/// The space R(H) of rational class functions on H in the
/// indicator-of-conjugacy-class basis.
struct ClassFunctionSpace {
    ConjugacyData conj;

    int dim() const { return conj.class_count(); }
    const Subgroup& subgroup() const { return conj.domain; }
    Rat evaluate(const QVec& f, int element) const;
};

ClassFunctionSpace class_function_space(const Subgroup& h);

/// A rational class function together with its domain.
struct ClassFunction {
    Subgroup group;
    QVec values;  // one per conjugacy class of the domain
};

/// ind_H^K(f)(k) = (1/|H|) sum over x in K with x^-1 k x in H of f(x^-1 k x).
QVec induce(const ClassFunctionSpace& from, const QVec& f, const ClassFunctionSpace& to);
ClassFunction induce(const ClassFunction& f, const Subgroup& k);
QMatrix induction_matrix(const ClassFunctionSpace& from, const ClassFunctionSpace& to);

QVec restrict_cf(const ClassFunctionSpace& from, const QVec& f, const ClassFunctionSpace& to);
ClassFunction restrict_cf(const ClassFunction& f, const Subgroup& h);
QMatrix restriction_matrix(const ClassFunctionSpace& from, const ClassFunctionSpace& to);

/// Pushforward along conjugation: maps R(H) to R(gHg^-1) by
/// (g.f)(y) = f(g^-1 y g).
QMatrix conjugation_matrix(const ClassFunctionSpace& from, int g, const ClassFunctionSpace& to);

/// <a, b> = (1/|H|) sum over h of a(h) b(h), rational pairing.
Rat inner_product(const ClassFunctionSpace& space, const QVec& a, const QVec& b);

}  // namespace equihom
