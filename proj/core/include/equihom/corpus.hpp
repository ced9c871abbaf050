#pragma once

#include <string>
#include <vector>

#include "equihom/gcomplex.hpp"

namespace equihom {

struct GComplexInstance {
    std::string name;
    GComplex complex;
    bool subdivided = false;
};

/// G-simplicial complexes used by the comparison and bivariant checks:
/// groups of order up to 8 (one nonabelian), free, trivial and
/// mixed-stabilizer actions, subdivided where needed.
std::vector<GComplexInstance> gcomplex_corpus();

/// 0-dimensional instances used by the cyclic-homology checks.
std::vector<GComplexInstance> zero_dim_corpus();

struct SpacePair {
    std::string name;
    GComplex x;
    GComplex y;  // same group object as x
};

/// (X, Y) pairs for the comparison theorem, groups of order up to 4.
std::vector<SpacePair> hp_corpus();

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs the full acceptance corpus; one result per criterion, exact checks.
std::vector<CriterionResult> run_acceptance_criteria();

}  // namespace equihom
