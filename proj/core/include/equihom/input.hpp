#pragma once

#include <optional>
#include <string>

#include "equihom/gcomplex.hpp"

namespace equihom {

struct Options {
    bool subdivide = false;
    int level_m = 2;
    int level_n = 1;
    int max_degree = 3;
    long long budget = 20000;
    int degree_cap = 2;
    bool stabilize = false;
    int subgroup_bound = 24;
    int closure_bound = 512;
};

/// Parsed and validated input: one group, a primary space X and an optional
/// second space Y over the same group, plus options. Spaces are subdivided on
/// parse when the action is not type-preserving and the flag allows it.
struct InputDocument {
    GComplex x;
    std::optional<GComplex> y;
    Options options;
    bool x_subdivided = false;
    bool y_subdivided = false;

    GroupPtr group() const { return x.group; }
    /// Deterministic canonical form; parsing it again reproduces the document.
    std::string canonical_json() const;
};

/// force_subdivide turns the subdivide option on regardless of the document
/// (the CLI flag overrides the document option).
InputDocument parse_input(const std::string& text, bool force_subdivide = false);

/// FNV-1a digest of the canonical form, for report provenance.
std::string input_digest(const InputDocument& doc);

}  // namespace equihom
