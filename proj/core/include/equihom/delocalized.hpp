#pragma once

#include <map>
#include <vector>

#include "equihom/gcomplex.hpp"
#include "equihom/homalg.hpp"

namespace equihom {

/// Bounded complex of covariant modules over a finite group, stored per
/// conjugacy class: the graded piece at a class representative t together
/// with the centralizer action on it. The operator T acts on the piece at t
/// as the action of t^{-1}.
struct CovariantComplex {
    GroupPtr group;
    ConjugacyData classes;
    // piece[c]: cochain complex carried by the class representative t_c.
    std::vector<CochainComplex> piece;
    std::vector<Subgroup> centralizer;
    // action[c][z][k]: matrix of the z-th centralizer member on piece degree k.
    std::vector<std::vector<std::vector<QMatrix>>> action;
    // t_op[c][k]: T on piece degree k (the action of t_c^{-1}).
    std::vector<std::vector<QMatrix>> t_op;

    int class_count() const { return classes.class_count(); }
    int top_degree() const;
    void validate() const;
};

/// Simplicial cochains of the Brylinski space: the piece at t is the cochain
/// complex of X^t, the centralizer acts through the complex, and T = id
/// because t fixes X^t pointwise.
CovariantComplex covariant_cochains(const GComplex& x);

/// One graded piece of the covariant Hom complex: the Z(t)-equivariant maps
/// between the pieces at t, as a Z-graded complex. Degree-n elements lower
/// cochain degree by n; the differential sends degree n to degree n-1.
struct CovariantHomComplex {
    int min_degree = 0;
    std::vector<int> dims;       // per degree from min_degree
    std::vector<QMatrix> delta;  // delta[i]: degree (min+i) -> (min+i-1)

    int dim_at(int n) const;
    std::vector<int> homology() const;  // aligned with dims
};

/// Per-class covariant Hom built with the averaging projector over Z(t).
std::vector<CovariantHomComplex> covariant_hom(const CovariantComplex& m,
                                               const CovariantComplex& n);

/// H^n_G(X, Y): homology of the covariant Hom complex of Brylinski cochains,
/// reported on the supported degree window.
struct BivariantResult {
    int min_degree = 0;
    std::vector<int> dims;

    int at(int n) const;
};

BivariantResult bs_bivariant(const GComplex& x, const GComplex& y);

/// Independent oracle for bs_bivariant(X, point): per degree n, the sum over
/// conjugacy classes [t] of dim H^n(X^t)^{Z(t)}.
std::vector<int> delocalized_point(const GComplex& x);

}  // namespace equihom
