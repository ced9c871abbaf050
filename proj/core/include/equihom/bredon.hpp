#pragma once

#include <map>
#include <vector>

#include "equihom/gcomplex.hpp"
#include "equihom/homalg.hpp"

namespace equihom {

/// Orbit category of a finite group on all of its subgroups: morphisms
/// G/H -> G/K are cosets gK with g^-1 H g contained in K, listed by one
/// canonical representative (the minimal coset element) in ascending order.
struct OrbitCategory {
    GroupPtr group;
    std::vector<Subgroup> objects;
    // morphisms[i][j]: canonical representatives g of the morphisms
    // G/objects[i] -> G/objects[j].
    std::vector<std::vector<std::vector<int>>> morphisms;

    int object_count() const { return static_cast<int>(objects.size()); }
    int object_index(const Subgroup& h) const;
};

OrbitCategory orbit_category(GroupPtr g, int subgroup_bound = 24);

std::vector<int> orbit_morphisms(const Subgroup& h, const Subgroup& k);

/// Composition of G/H -g1-> G/K -g2-> G/L is the coset (g1 g2)L, returned as
/// its canonical representative.
int compose_morphisms(const OrbitCategory& cat, int j_obj, int l_obj, int g1, int g2);

/// The representation-ring coefficient system: R_0(G/H) = class functions on
/// H, R_q = 0 for q != 0, with covariant maps given by conjugation followed
/// by induction.
class CoefficientSystem {
public:
    explicit CoefficientSystem(const OrbitCategory& cat);

    const OrbitCategory& category() const { return *cat_; }
    const ClassFunctionSpace& at(int obj) const { return spaces_[obj]; }
    int dim_at(int obj, int q = 0) const { return q == 0 ? spaces_[obj].dim() : 0; }
    /// Matrix R(H) -> R(K) of the morphism with representative g.
    const QMatrix& along(int from_obj, int to_obj, int g) const;

private:
    const OrbitCategory* cat_;
    std::vector<ClassFunctionSpace> spaces_;
    mutable std::map<std::tuple<int, int, int>, QMatrix> cache_;
};

QMatrix coefficient_map(const ClassFunctionSpace& from, int g, const ClassFunctionSpace& to);

/// The categorical tensor complex: degree p carries the quotient of
/// sum over H of C_p(X^H) (x) R(H) by the tensor relations, with the
/// basis of the ambient space indexed by (object, simplex of X^H, class of H).
struct BredonChainComplex {
    OrbitCategory category;
    std::vector<SComplex> fixed;  // X^H per object
    // Ambient basis offsets: offset[p][obj] is the first ambient index of the
    // (obj, -, -) block in degree p; block size = count_p(X^H) * dim R(H).
    std::vector<std::vector<int>> offset;
    std::vector<int> ambient_dims;
    ChainComplex ambient;           // block-diagonal boundary, no relations
    QuotientComplex tensor;         // the quotient by all tensor relations
    std::vector<int> homology_dims;
};

BredonChainComplex bredon_complex(const GComplex& x, int subgroup_bound = 24);

std::vector<int> bredon_homology(const GComplex& x, int subgroup_bound = 24);

}  // namespace equihom
