#pragma once

#include <vector>

#include "equihom/fingroup.hpp"
#include "equihom/qmatrix.hpp"

namespace equihom {

/// A simplex as a strictly increasing vertex tuple. The canonical orientation
/// of a simplex is the sorted tuple with sign +1.
using Simplex = std::vector<int>;

struct OrientedSimplex {
    Simplex simplex;  // sorted
    int sign = 1;
};

/// Applies a vertex permutation to a sorted tuple; returns the canonical
/// tuple and the sign of the sorting permutation.
OrientedSimplex act_on_simplex(const std::vector<int>& vertex_perm, const Simplex& s);

/// Finite simplicial complex on a fixed ambient vertex set. A subcomplex may
/// use only part of the ambient vertices, so 0-simplices are stored
/// explicitly like every other dimension.
struct SComplex {
    int ambient_vertices = 0;
    std::vector<std::vector<Simplex>> by_dim;  // by_dim[d] sorted lexicographically

    int dim() const { return static_cast<int>(by_dim.size()) - 1; }
    long long size() const;
    int count(int d) const;
    bool contains(const Simplex& s) const;
    int index_of(int d, const Simplex& s) const;  // -1 when absent
    long long euler_characteristic() const;

    static SComplex from_maximal(int ambient_vertices, std::vector<Simplex> maximal);
    std::vector<Simplex> maximal_simplices() const;
    /// Validates closure under faces and strict sortedness.
    void validate() const;
};

/// Simplicial boundary C_d -> C_{d-1} on the sorted-tuple basis, alternating
/// signs on vertex deletion.
QMatrix boundary_matrix(const SComplex& x, int d);

struct GComplex {
    SComplex space;
    GroupPtr group;
    std::vector<std::vector<int>> vertex_action;  // [element][vertex]

    OrientedSimplex act(int g, const Simplex& s) const {
        return act_on_simplex(vertex_action[g], s);
    }
};

GComplex trivial_action(SComplex x, GroupPtr g);

/// Builds the closure group of the given permutation generators and extends
/// the matching per-generator vertex permutations to every element. Fails
/// when the vertex assignment is inconsistent (not a homomorphism).
GComplex g_complex_from_generators(const std::vector<std::vector<int>>& group_generators,
                                   SComplex space,
                                   const std::vector<std::vector<int>>& vertex_generators,
                                   int closure_bound = 512);

struct GComplexReport {
    bool simplicial = false;
    bool type_preserving = false;
};

/// Checks that the action permutes simplices and that simplex stabilizers fix
/// vertices. Throws when vertex_action is not a homomorphism by permutations.
GComplexReport validate_g_complex(const GComplex& x);

/// Vertices of the subdivision are the simplices of the input; simplices are
/// flags in the face poset. The induced action is always type-preserving.
GComplex barycentric_subdivision(const GComplex& x);

/// Full subcomplex on the H-fixed (resp. t-fixed) vertices. Requires a
/// type-preserving action.
SComplex fixed_subcomplex(const GComplex& x, const Subgroup& h);
SComplex fixed_subcomplex(const GComplex& x, int t);

struct SimplexOrbitInfo {
    Simplex representative;
    Subgroup stabilizer;
    int translator = 0;  // g with g . representative = simplex
    int sign = 1;        // orientation sign of the translation on the representative
};

struct OrbitData {
    // Aligned with the complex: info[d][i] describes by_dim[d][i].
    std::vector<std::vector<SimplexOrbitInfo>> info;
    // Indices (into by_dim[d]) of the lexicographically minimal orbit
    // representatives, per dimension.
    std::vector<std::vector<int>> representatives;
};

OrbitData orbit_data(const GComplex& x);

/// The Brylinski space of a finite-group complex, stored per conjugacy class:
/// the component over the class of t is the fixed complex X^t with its
/// centralizer action, and cross-component identifications are recovered from
/// chosen conjugating elements.
struct BrylinskiSpace {
    ConjugacyData classes;
    std::vector<SComplex> component;      // X^{t_rep} per class
    std::vector<Subgroup> centralizer;    // Z(t_rep)
    // conjugator[c][u] is a g with g t_rep g^-1 = u, for u in class c.
    std::vector<std::vector<int>> conjugator;

    int dim() const;  // max component dimension, -1 if all empty
};

BrylinskiSpace brylinski_space(const GComplex& x);

/// Chain map C_d(from) -> C_d(to) induced by the action of s, entries +-1.
/// Every simplex of from must land in to.
QMatrix action_chain_map(const GComplex& x, const SComplex& from, const SComplex& to, int s,
                         int d);

}  // namespace equihom
