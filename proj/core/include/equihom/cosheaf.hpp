#pragma once

#include <map>
#include <vector>

#include "equihom/bredon.hpp"
#include "equihom/gcomplex.hpp"
#include "equihom/homalg.hpp"

namespace equihom {

/// The induction cosheaf R_X: class functions on simplex stabilizers, with
/// corestrictions along face inclusions given by induction (stabilizers grow
/// when passing to faces, by type-preservation).
struct InductionCosheaf {
    OrbitData orbits;
    std::vector<std::vector<int>> space_index;  // [d][simplex] -> index into spaces
    std::vector<ClassFunctionSpace> spaces;     // distinct stabilizer spaces

    const ClassFunctionSpace& at(int d, int simplex) const {
        return spaces[space_index[d][simplex]];
    }
};

InductionCosheaf induction_cosheaf(const GComplex& x);

/// R(G_sigma) -> R(G_eta) for a codimension-one face eta of sigma.
QMatrix corestriction(const InductionCosheaf& r, const GComplex& x, int d, int simplex,
                      int face_drop);

/// The complex S_*(X; R_X) and its G-coinvariants. The ambient basis in each
/// degree lists non-representative simplices first, so the coinvariant
/// quotient is realized on the orbit-representative basis; this is asserted
/// at build time.
struct CosheafComplex {
    InductionCosheaf cosheaf;
    std::vector<std::vector<int>> pos_of_simplex;  // [d][simplex] -> ambient slot
    std::vector<std::vector<int>> simplex_at_pos;  // [d][slot] -> simplex
    std::vector<std::vector<int>> offsets;         // [d][slot] -> first ambient index
    std::vector<int> ambient_dims;
    ChainComplex ambient;    // boundary with induction corestrictions, all simplices
    QuotientComplex coinv;   // G-coinvariants
    // Labels of the coinvariant basis: (representative simplex index, class).
    std::vector<std::vector<std::pair<int, int>>> basis_labels;

    const ChainComplex& complex() const { return coinv.quotient; }
};

CosheafComplex cosheaf_complex(const GComplex& x);

std::vector<int> cosheaf_homology(const GComplex& x);

/// The explicit comparison isomorphism with the Bredon complex:
/// phi(f[sigma]) = [sigma](G_sigma) (x) f(G_sigma) and
/// psi([sigma](H) (x) f(H)) = ind_H^{G_sigma}(f)[sigma].
struct CompareResult {
    std::vector<QMatrix> phi;  // cosheaf coinvariants -> Bredon tensor quotient
    std::vector<QMatrix> psi;  // inverse direction
    bool psi_well_defined = false;  // psi kills the tensor relations
    bool chain_map = false;         // phi d = d phi
    bool psi_phi_id = false;
    bool phi_psi_id = false;
    bool is_iso = false;
    bool homology_match = false;
    std::vector<int> cosheaf_dims;
    std::vector<int> bredon_dims;
};

CompareResult compare_bredon_cosheaf(const GComplex& x, int subgroup_bound = 24);

}  // namespace equihom
