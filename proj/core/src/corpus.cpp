#include "equihom/corpus.hpp"

#include <sstream>

#include "equihom/bredon.hpp"
#include "equihom/cosheaf.hpp"
#include "equihom/cyclic.hpp"
#include "equihom/delocalized.hpp"
#include "equihom/errors.hpp"

namespace equihom {

namespace {

GroupPtr trivial_group() { return build_group_from_table({{0}}); }

GComplex instance(GroupPtr g, int nverts, std::vector<Simplex> maximal,
                  std::vector<std::vector<int>> per_element) {
    GComplex out;
    out.space = SComplex::from_maximal(nverts, std::move(maximal));
    out.group = std::move(g);
    out.vertex_action = std::move(per_element);
    return out;
}

GComplex gen_instance(std::vector<std::vector<int>> group_gens, int nverts,
                      std::vector<Simplex> maximal, std::vector<std::vector<int>> vertex_gens) {
    return g_complex_from_generators(group_gens, SComplex::from_maximal(nverts, std::move(maximal)),
                                     vertex_gens);
}

GComplexInstance finish(std::string name, GComplex x) {
    GComplexInstance out;
    out.name = std::move(name);
    auto report = validate_g_complex(x);
    if (!report.simplicial) throw verification_error("corpus: instance is not simplicial");
    out.subdivided = !report.type_preserving;
    out.complex = out.subdivided ? barycentric_subdivision(x) : std::move(x);
    return out;
}

std::string dims_str(const std::vector<int>& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

}  // namespace

std::vector<GComplexInstance> gcomplex_corpus() {
    std::vector<GComplexInstance> out;
    auto e = trivial_group();

    out.push_back(finish("trivial/point", instance(e, 1, {{0}}, {{0}})));
    out.push_back(finish("trivial/circle",
                         instance(e, 3, {{0, 1}, {0, 2}, {1, 2}}, {{0, 1, 2}})));
    out.push_back(finish("trivial/sphere",
                         instance(e, 4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}},
                                  {{0, 1, 2, 3}})));
    out.push_back(finish("trivial/disk", instance(e, 3, {{0, 1, 2}}, {{0, 1, 2}})));

    out.push_back(finish("z2/point", gen_instance({{1, 0}}, 1, {{0}}, {{0}})));
    out.push_back(finish("z2/swapped-edge", gen_instance({{1, 0}}, 2, {{0, 1}}, {{1, 0}})));
    out.push_back(finish("z2/free-two-points", gen_instance({{1, 0}}, 2, {{0}, {1}}, {{1, 0}})));
    out.push_back(finish("z2/reflected-circle",
                         gen_instance({{1, 0}}, 3, {{0, 1}, {0, 2}, {1, 2}}, {{1, 0, 2}})));
    out.push_back(finish("z2/antipodal-square",
                         gen_instance({{1, 0}}, 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}},
                                      {{2, 3, 0, 1}})));
    out.push_back(finish("z2/swapped-disk", gen_instance({{1, 0}}, 3, {{0, 1, 2}}, {{1, 0, 2}})));
    out.push_back(finish("z3/rotated-circle",
                         gen_instance({{1, 2, 0}}, 3, {{0, 1}, {0, 2}, {1, 2}}, {{1, 2, 0}})));
    out.push_back(finish("z4/rotated-square",
                         gen_instance({{1, 2, 3, 0}}, 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}},
                                      {{1, 2, 3, 0}})));
    out.push_back(finish("z2xz2/reflected-square",
                         gen_instance({{1, 0, 2, 3}, {0, 1, 3, 2}}, 4,
                                      {{0, 1}, {1, 2}, {2, 3}, {0, 3}},
                                      {{1, 0, 3, 2}, {3, 2, 1, 0}})));
    out.push_back(finish("s3/permuted-circle",
                         gen_instance({{1, 0, 2}, {1, 2, 0}}, 3, {{0, 1}, {0, 2}, {1, 2}},
                                      {{1, 0, 2}, {1, 2, 0}})));
    out.push_back(finish("d4/octagon",
                         gen_instance({{1, 2, 3, 0}, {0, 3, 2, 1}}, 4,
                                      {{0, 1}, {1, 2}, {2, 3}, {0, 3}},
                                      {{1, 2, 3, 0}, {0, 3, 2, 1}})));
    return out;
}

std::vector<GComplexInstance> zero_dim_corpus() {
    std::vector<GComplexInstance> out;
    out.push_back(finish("trivial/point-0d", instance(trivial_group(), 1, {{0}}, {{0}})));
    out.push_back(finish("z2/point-0d", gen_instance({{1, 0}}, 1, {{0}}, {{0}})));
    out.push_back(finish("z2/two-points-swap", gen_instance({{1, 0}}, 2, {{0}, {1}}, {{1, 0}})));
    out.push_back(finish("z2/two-points-trivial", gen_instance({{1, 0}}, 2, {{0}, {1}}, {{0, 1}})));
    out.push_back(
        finish("z2/three-points", gen_instance({{1, 0}}, 3, {{0}, {1}, {2}}, {{1, 0, 2}})));
    out.push_back(
        finish("z3/three-points-rotated", gen_instance({{1, 2, 0}}, 3, {{0}, {1}, {2}}, {{1, 2, 0}})));
    out.push_back(finish("z4/two-points-through-swap",
                         gen_instance({{1, 2, 3, 0}}, 2, {{0}, {1}}, {{1, 0}})));
    out.push_back(finish("z2xz2/two-points",
                         gen_instance({{1, 0, 2, 3}, {0, 1, 3, 2}}, 2, {{0}, {1}},
                                      {{1, 0}, {0, 1}})));
    return out;
}

std::vector<SpacePair> hp_corpus() {
    std::vector<SpacePair> out;
    auto pair = [&](std::string name, GComplex x, const SComplex& ysc,
                    std::vector<std::vector<int>> yaction) {
        SpacePair p;
        p.name = std::move(name);
        p.y = GComplex{ysc, x.group, std::move(yaction)};
        p.x = std::move(x);
        out.push_back(std::move(p));
    };
    const SComplex pt = SComplex::from_maximal(1, {{0}});
    const SComplex two = SComplex::from_maximal(2, {{0}, {1}});

    pair("trivial/pt-pt", instance(trivial_group(), 1, {{0}}, {{0}}), pt, {{0}});
    {
        auto x = gen_instance({{1, 0}}, 1, {{0}}, {{0}});
        pair("z2/pt-pt", x, pt, {{0}, {0}});
    }
    {
        auto x = gen_instance({{1, 0}}, 2, {{0}, {1}}, {{1, 0}});
        pair("z2/swap-pt", x, pt, {{0}, {0}});
    }
    {
        auto x = gen_instance({{1, 0}}, 1, {{0}}, {{0}});
        pair("z2/pt-swap", x, two, {{0, 1}, {1, 0}});
    }
    {
        auto x = gen_instance({{1, 0}}, 2, {{0}, {1}}, {{1, 0}});
        pair("z2/swap-swap", x, two, {{0, 1}, {1, 0}});
    }
    {
        auto x = gen_instance({{1, 0}}, 2, {{0}, {1}}, {{0, 1}});
        pair("z2/trivial2-pt", x, pt, {{0}, {0}});
    }
    {
        auto x = gen_instance({{1, 0}}, 3, {{0}, {1}, {2}}, {{1, 0, 2}});
        pair("z2/three-pt", x, pt, {{0}, {0}});
    }
    {
        auto x = gen_instance({{1, 2, 3, 0}}, 2, {{0}, {1}}, {{1, 0}});
        pair("z4/two-through-swap-pt", x, pt, {{0}, {0}, {0}, {0}});
    }
    {
        auto x = gen_instance({{1, 0, 2, 3}, {0, 1, 3, 2}}, 2, {{0}, {1}}, {{1, 0}, {0, 1}});
        pair("z2xz2/two-pt", x, pt, {{0}, {0}, {0}, {0}});
    }
    return out;
}

namespace {

std::vector<int> hp_parity_fold(const BivariantResult& bs) {
    int even = 0, odd = 0;
    for (size_t i = 0; i < bs.dims.size(); ++i) {
        const int n = bs.min_degree + static_cast<int>(i);
        if (((n % 2) + 2) % 2 == 0)
            even += bs.dims[i];
        else
            odd += bs.dims[i];
    }
    return {even, odd};
}

}  // namespace

std::vector<CriterionResult> run_acceptance_criteria() {
    std::vector<CriterionResult> results;

    // 1: Bredon = cosheaf through the explicit chain isomorphism.
    {
        CriterionResult r{1, "bredon-cosheaf comparison", true, ""};
        std::ostringstream detail;
        int count = 0;
        for (const auto& inst : gcomplex_corpus()) {
            auto cmp = compare_bredon_cosheaf(inst.complex);
            ++count;
            if (!(cmp.is_iso && cmp.homology_match)) {
                r.pass = false;
                detail << inst.name << " failed; ";
            }
        }
        detail << count << " instances";
        r.detail = detail.str();
        results.push_back(r);
    }

    // 2 and 3: paramixed identities and the projector mechanism.
    {
        CriterionResult r2{2, "paramixed identities", true, ""};
        CriterionResult r3{3, "projector mechanism", true, ""};
        std::ostringstream d2, d3;
        int count = 0;
        auto check = [&](const std::string& name, const GAlgebra& a, int max_degree) {
            // omega_forms verifies b^2, B^2, bB+Bb = id-T, [T,b], [T,B]
            // exactly on the full basis and throws on any failure.
            OmegaForms omega;
            try {
                omega = omega_forms(a, max_degree);
            } catch (const verification_error& e) {
                r2.pass = false;
                d2 << name << ": " << e.what() << "; ";
                return;
            }
            ++count;
            auto e_ops = projector_e(omega);
            for (int n = 0; n <= omega.max_degree; ++n) {
                const auto& e = e_ops[n];
                const auto& t = omega.t[n];
                const bool idempotent = (e * e == e);
                const bool et = (e * t == e) && (t * e == e);
                const bool invertible =
                    rank(QMatrix::identity(omega.dims[n]) - t) == omega.dims[n] - rank(e);
                if (!(idempotent && et && invertible)) {
                    r3.pass = false;
                    d3 << name << " degree " << n << "; ";
                }
            }
        };
        auto z2 = build_group_from_permutations({{1, 0}}).group;
        check("field/trivial", base_field_algebra(trivial_group()), 3);
        check("field/z2", base_field_algebra(z2), 3);
        for (const auto& inst : zero_dim_corpus()) {
            if (inst.complex.space.count(0) > 3) continue;
            check("functions/" + inst.name, function_algebra(inst.complex), 3);
        }
        check("kg-tensor/z2", tensor_algebra(base_field_algebra(z2), compact_operators_algebra(z2)),
              3);
        d2 << count << " instances, degrees <= " << 2;
        r2.detail = d2.str();
        if (r3.pass) d3 << count << " instances";
        r3.detail = d3.str();
        results.push_back(r2);
        results.push_back(r3);
    }

    // 4: equivariant HKR at 0-dimensional scale.
    {
        CriterionResult r{4, "equivariant HKR (0-dimensional)", true, ""};
        std::ostringstream detail;
        int count = 0;
        for (const auto& inst : zero_dim_corpus()) {
            auto omega = omega_forms(function_algebra(inst.complex), 3);
            auto hkr = hkr_map(omega, inst.complex);
            ++count;
            const bool ok = hkr.alpha_chain_map && hkr.degree0_iso &&
                            hkr.hochschild.size() == 3 && hkr.hochschild[0] == hkr.functions_dim &&
                            hkr.hochschild[1] == 0 && hkr.hochschild[2] == 0;
            if (!ok) {
                r.pass = false;
                detail << inst.name << " got " << dims_str(hkr.hochschild) << " vs H0="
                       << hkr.functions_dim << "; ";
            }
        }
        detail << count << " instances";
        r.detail = detail.str();
        results.push_back(r);
    }

    // 5: the trace map is a map of paramixed complexes in degrees <= 2.
    {
        CriterionResult r{5, "trace map", true, ""};
        std::ostringstream detail;
        auto z2 = build_group_from_permutations({{1, 0}}).group;
        auto kg = compact_operators_algebra(z2);
        GComplex two_points;
        two_points.space = SComplex::from_maximal(2, {{0}, {1}});
        two_points.group = z2;
        two_points.vertex_action = {{0, 1}, {1, 0}};
        std::vector<std::pair<std::string, GAlgebra>> algebras = {
            {"field", base_field_algebra(z2)},
            {"functions-2", function_algebra(two_points)},
        };
        for (const auto& [name, a] : algebras) {
            auto stab = omega_forms(tensor_algebra(a, kg), 2);
            auto plain = omega_forms(a, 2);
            auto tr = trace_map(stab, plain, 2);
            const bool ok =
                tr.commutes_b && tr.commutes_conn && tr.commutes_t && tr.degree0_surjective;
            if (!ok) {
                r.pass = false;
                detail << name << " failed; ";
            }
        }
        detail << algebras.size() << " instances, degrees <= 2";
        r.detail = detail.str();
        results.push_back(r);
    }

    // 6: the bivariant theory against the fixed-point oracle.
    {
        CriterionResult r{6, "bivariant specialization at a point", true, ""};
        std::ostringstream detail;
        int count = 0;
        auto corpus = gcomplex_corpus();
        for (const auto& inst : zero_dim_corpus()) corpus.push_back(inst);
        for (const auto& inst : corpus) {
            GComplex point;
            point.space = SComplex::from_maximal(1, {{0}});
            point.group = inst.complex.group;
            point.vertex_action.assign(inst.complex.group->order(), {0});
            auto bs = bs_bivariant(inst.complex, point);
            auto oracle = delocalized_point(inst.complex);
            ++count;
            bool ok = true;
            for (int n = bs.min_degree; n < bs.min_degree + static_cast<int>(bs.dims.size()); ++n) {
                const int expected =
                    (n >= 0 && n < static_cast<int>(oracle.size())) ? oracle[n] : 0;
                ok = ok && bs.at(n) == expected;
            }
            for (int n = 0; n < static_cast<int>(oracle.size()); ++n)
                ok = ok && bs.at(n) == oracle[n];
            if (!ok) {
                r.pass = false;
                detail << inst.name << "; ";
            }
        }
        detail << count << " instances";
        r.detail = detail.str();
        results.push_back(r);
    }

    // 7: comparison with HP at fixed Hodge levels, plus level stability.
    {
        CriterionResult r{7, "comparison theorem at desk scale", true, ""};
        std::ostringstream detail;
        int count = 0;
        for (const auto& p : hp_corpus()) {
            auto a = function_algebra(p.x);
            auto b = function_algebra(p.y);
            auto low = hp_at_level(a, b, 2, 1);
            auto high = hp_at_level(a, b, 3, 2);
            auto folded = hp_parity_fold(bs_bivariant(p.x, p.y));
            ++count;
            const bool ok = low.even == folded[0] && low.odd == folded[1] &&
                            high.even == folded[0] && high.odd == folded[1];
            if (!ok) {
                r.pass = false;
                detail << p.name << " hp=(" << low.even << "," << low.odd << ")/(" << high.even
                       << "," << high.odd << ") bs=(" << folded[0] << "," << folded[1] << "); ";
            }
        }
        detail << count << " pairs, levels (2,1) and (3,2)";
        r.detail = detail.str();
        results.push_back(r);
    }

    // 8: engine sanity for the trivial group.
    {
        CriterionResult r{8, "trivial-group sanity", true, ""};
        std::ostringstream detail;
        const std::vector<std::pair<std::string, std::vector<int>>> expected = {
            {"trivial/point", {1}},
            {"trivial/circle", {1, 1}},
            {"trivial/sphere", {1, 0, 1}},
        };
        auto corpus = gcomplex_corpus();
        for (const auto& [name, dims] : expected) {
            const GComplexInstance* found = nullptr;
            for (const auto& inst : corpus)
                if (inst.name == name) found = &inst;
            if (!found) {
                r.pass = false;
                detail << name << " missing; ";
                continue;
            }
            auto bred = bredon_homology(found->complex);
            auto cosh = cosheaf_homology(found->complex);
            auto deloc = delocalized_point(found->complex);
            if (!(bred == dims && cosh == dims && deloc == dims)) {
                r.pass = false;
                detail << name << " got " << dims_str(bred) << "/" << dims_str(cosh) << "/"
                       << dims_str(deloc) << " want " << dims_str(dims) << "; ";
            }
        }
        detail << "point, circle, sphere";
        r.detail = detail.str();
        results.push_back(r);
    }

    return results;
}

}  // namespace equihom
