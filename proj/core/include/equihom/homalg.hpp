#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "equihom/qmatrix.hpp"

namespace equihom {

/// Bounded chain complex in degrees 0..D with boundary d[k]: C_k -> C_{k-1}.
/// d[0] maps C_0 to the zero space.
struct ChainComplex {
    std::vector<int> dims;
    std::vector<QMatrix> d;

    int top_degree() const { return static_cast<int>(dims.size()) - 1; }
    int dim(int k) const {
        return (k < 0 || k > top_degree()) ? 0 : dims[k];
    }
    void validate() const;  // shapes and dd = 0
};

/// Bounded cochain complex in degrees 0..D with differential d[k]: C^k -> C^{k+1}.
struct CochainComplex {
    std::vector<int> dims;
    std::vector<QMatrix> d;  // d[k] for k = 0..D (d[D] maps into the zero space)

    int top_degree() const { return static_cast<int>(dims.size()) - 1; }
    int dim(int k) const {
        return (k < 0 || k > top_degree()) ? 0 : dims[k];
    }
    void validate() const;
};

std::vector<int> chain_homology(const ChainComplex& c);
std::vector<int> cochain_cohomology(const CochainComplex& c);

struct SComplex;  // gcomplex.hpp
ChainComplex chains(const SComplex& x);
CochainComplex cochains(const SComplex& x);

/// Z/2-graded complex. Without para_defect the two differentials compose to
/// zero both ways; with it they compose to the recorded id - T per parity.
struct Supercomplex {
    int even_dim = 0, odd_dim = 0;
    QMatrix d_even;  // even -> odd
    QMatrix d_odd;   // odd -> even
    std::optional<std::pair<QMatrix, QMatrix>> para_defect;  // (id - T) on even, odd

    void validate() const;
    bool is_honest() const { return !para_defect.has_value(); }
};

/// (even, odd) homology dimensions of an honest supercomplex.
std::pair<int, int> supercomplex_homology(const Supercomplex& s);

/// Collapses a bounded chain complex onto its parity grading.
Supercomplex to_supercomplex(const ChainComplex& c);

struct QuotientPresentation {
    int ambient_dim = 0;
    std::vector<SparseVec> relations;
};

/// Quotient of a chain complex by boundary-stable relation subspaces,
/// realized on the complement of the relation pivots. projection[k] and
/// section[k] are the induced maps between ambient and quotient coordinates.
struct QuotientComplex {
    ChainComplex quotient;
    std::vector<QMatrix> projection;  // ambient -> quotient
    std::vector<QMatrix> section;     // quotient -> ambient (standard basis vectors)
    std::vector<std::vector<int>> kept_columns;
};

QuotientComplex quotient_complex(const ChainComplex& c,
                                 const std::vector<QuotientPresentation>& rels);

/// Hom-supercomplex of two supercomplexes, with differential
/// d(phi) = phi d_C - (-1)^{|phi|} d_D phi on flattened map coordinates.
/// For paracomplex inputs the Hom space is restricted to maps commuting with
/// the recorded T operators, which makes the result an honest supercomplex.
struct HomSupercomplex {
    Supercomplex complex;
    // Flattened blocks, row-major per block: even = [Hom(Ce,De), Hom(Co,Do)],
    // odd = [Hom(Ce,Do), Hom(Co,De)].
    std::vector<QVec> even_basis;  // in ambient flat coordinates (full Hom space)
    std::vector<QVec> odd_basis;
};

struct ParaOperators {
    QMatrix t_even;
    QMatrix t_odd;
};

HomSupercomplex hom_supercomplex(const Supercomplex& c, const Supercomplex& d,
                                 const std::optional<ParaOperators>& tc = std::nullopt,
                                 const std::optional<ParaOperators>& td = std::nullopt,
                                 long long budget = 250000);

/// The Hom differentials on the full flattened Hom space, before any
/// restriction. Flat layout: even = [Hom(Ce,De) | Hom(Co,Do)],
/// odd = [Hom(Ce,Do) | Hom(Co,De)], each block row-major.
struct HomDifferentials {
    int even_dim = 0, odd_dim = 0;
    int oo_offset = 0;  // start of the Hom(Co,Do) block in the even layout
    int oe_offset = 0;  // start of the Hom(Co,De) block in the odd layout
    QMatrix delta_even;
    QMatrix delta_odd;
};

HomDifferentials hom_differentials(const Supercomplex& c, const Supercomplex& d);

/// P = (1/|H|) sum of action(h) over the subgroup elements; the action is
/// validated to be multiplicative on a generating set.
struct Subgroup;  // fingroup.hpp
QMatrix average_projector(const Subgroup& h, const std::function<QMatrix(int)>& action);

/// Operators on the flattened Hom(V, W) space (phi stored row-major as a
/// dimW x dimV matrix): left_compose(A): phi -> A phi, right_compose(B):
/// phi -> phi B.
QMatrix left_compose(const QMatrix& a, int dim_v);
QMatrix right_compose(const QMatrix& b, int dim_w);

}  // namespace equihom
