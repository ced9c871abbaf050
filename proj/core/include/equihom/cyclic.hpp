#pragma once

#include <string>
#include <vector>

#include "equihom/gcomplex.hpp"
#include "equihom/homalg.hpp"

namespace equihom {

/// Finite-dimensional algebra with a group action by algebra automorphisms,
/// over the rationals. Structure constants are validated for associativity;
/// the action is validated to be multiplicative and by automorphisms.
struct GAlgebra {
    GroupPtr group;
    int dim = 0;
    std::vector<std::vector<SparseVec>> product;  // e_i * e_j
    bool unital = false;
    QVec unit;
    std::vector<QMatrix> action;  // per group element
    std::string kind;             // "field", "functions", "kg", "tensor"
    std::vector<int> tensor_factors;  // dims of the factors when kind == "tensor"

    SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
    void validate() const;
};

GAlgebra base_field_algebra(GroupPtr g);
/// Functions on the vertex set of a 0-dimensional complex, with the
/// translated action; coordinatewise product.
GAlgebra function_algebra(const GComplex& x);
/// K_G: the |G| x |G| matrix algebra spanned by e_(s,t), with the
/// conjugation-translation action r.e_(s,t) = e_(rs,rt).
GAlgebra compact_operators_algebra(GroupPtr g);
GAlgebra tensor_algebra(const GAlgebra& a, const GAlgebra& b);

/// Equivariant differential forms of A up to a fixed degree, with the
/// twisted Hochschild boundary b, the Connes operator B and the symmetry T
/// materialized as matrices. Degree 0 carries O_G (x) A; degrees n >= 1 carry
/// O_G (x) A+ (x) A^(x)n, the unitarization entering only the a0 slot.
struct OmegaForms {
    GAlgebra algebra;
    int max_degree = 0;
    std::vector<int> dims;
    std::vector<QMatrix> b;     // b[n]: degree n -> n-1; b[0] has zero rows
    std::vector<QMatrix> conn;  // conn[n] = B: degree n -> n+1, for n < max_degree
    std::vector<QMatrix> t;     // t[n]: degree n -> n

    int gsize() const { return algebra.group->order(); }
    int block_dim(int n) const;          // per-element block size in degree n
    int block_offset(int n, int g) const { return g * block_dim(n); }
};

OmegaForms omega_forms(const GAlgebra& a, int max_degree, long long budget = 20000);

/// The diagonal action of a group element on one O_G block of degree n
/// (inner coordinates only).
QMatrix omega_inner_action(const OmegaForms& omega, int s, int n);

/// The averaging projector E onto the T-invariants, per degree. On the block
/// of t it averages the powers of the action of t^{-1}.
std::vector<QMatrix> projector_e(const OmegaForms& omega);

/// theta^n level of the Hodge tower: degrees below n in full plus
/// Omega^n / b Omega^{n+1}, graded by parity, differential b + B, with
/// dd = id - T recorded as the paracomplex defect. Block data per group
/// element is kept for the per-conjugacy-class Hom assembly.
struct HodgeLevel {
    int level = 0;

    struct Block {
        Supercomplex para;                 // the t-block, defect included
        ParaOperators t_ops;
        std::vector<int> even_degrees;     // full degrees, ascending; the quotient
        std::vector<int> odd_degrees;      // piece (degree == level) comes last
        std::vector<int> even_offsets;
        std::vector<int> odd_offsets;
        QMatrix top_proj, top_sect;        // Omega^level block -> quotient coords
    };
    std::vector<Block> blocks;  // per group element

    Supercomplex para;      // direct sum of the blocks, element-major
    ParaOperators t_ops;
    std::vector<int> even_block_offsets, odd_block_offsets;
};

HodgeLevel hodge_level(const OmegaForms& omega, int level);

/// The action of z on a Hodge-level block of t, assembled per parity.
/// Valid whenever z maps the block to itself (z in Z(t)).
std::pair<QMatrix, QMatrix> hodge_block_action(const OmegaForms& omega, const HodgeLevel& lvl,
                                               int t, int z);

struct HpResult {
    int even = 0, odd = 0;
    std::vector<std::pair<int, int>> per_class;
};

/// Level-truncated bivariant equivariant periodic cyclic homology: homology
/// of the covariant Hom supercomplex between theta^m Omega(A') and
/// theta^n Omega(B'), where A', B' are the inputs, tensored with K_G when
/// stabilize is set.
HpResult hp_at_level(const GAlgebra& a, const GAlgebra& b, int level_m, int level_n,
                     bool stabilize = false, long long budget = 20000);

struct HkrResult {
    std::vector<int> hochschild;  // H_0 .. H_{max-1}
    int functions_dim = 0;        // dim of functions on the extended Brylinski space
    bool alpha_chain_map = false; // alpha . b = 0
    bool degree0_iso = false;
    QMatrix alpha0;
};

/// Equivariant HKR map for A = C(X), X 0-dimensional: alpha lands in
/// functions on the disjoint fixed-point sets and vanishes in positive form
/// degree.
HkrResult hkr_map(const OmegaForms& omega, const GComplex& x);

struct TraceResult {
    std::vector<QMatrix> tr;  // per degree 0..cap
    bool commutes_b = false;
    bool commutes_conn = false;
    bool commutes_t = false;
    bool degree0_surjective = false;
};

/// The trace map Omega(A (x) K_G) -> Omega(A) in degrees <= cap, verified to
/// commute with b, B and T wherever both sides are materialized.
TraceResult trace_map(const OmegaForms& stabilized, const OmegaForms& plain, int cap);

}  // namespace equihom
