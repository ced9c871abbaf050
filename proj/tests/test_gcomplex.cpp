#include <doctest.h>

#include "equihom/corpus.hpp"
#include "equihom/errors.hpp"
#include "equihom/gcomplex.hpp"

using namespace equihom;

namespace {

GComplex swapped_edge() {
    return g_complex_from_generators({{1, 0}}, SComplex::from_maximal(2, {{0, 1}}), {{1, 0}});
}

}  // namespace

TEST_CASE("validation distinguishes type-preserving actions") {
    auto e = build_group_from_table({{0}});
    auto x = trivial_action(SComplex::from_maximal(3, {{0, 1}, {1, 2}}), e);
    auto report = validate_g_complex(x);
    CHECK(report.simplicial);
    CHECK(report.type_preserving);

    auto swap = swapped_edge();
    auto swap_report = validate_g_complex(swap);
    CHECK(swap_report.simplicial);
    CHECK_FALSE(swap_report.type_preserving);

    auto sub = barycentric_subdivision(swap);
    auto sub_report = validate_g_complex(sub);
    CHECK(sub_report.simplicial);
    CHECK(sub_report.type_preserving);
    CHECK(sub.space.count(0) == 3);
    CHECK(sub.space.count(1) == 2);
}

TEST_CASE("broken actions are rejected") {
    auto z2 = build_group_from_permutations({{1, 0}}).group;
    GComplex bad;
    bad.space = SComplex::from_maximal(2, {{0}, {1}});
    bad.group = z2;
    bad.vertex_action = {{0, 1}, {0, 0}};  // not a permutation
    CHECK_THROWS_AS(validate_g_complex(bad), input_error);

    GComplex not_hom;
    not_hom.space = SComplex::from_maximal(2, {{0}, {1}});
    not_hom.group = z2;
    not_hom.vertex_action = {{1, 0}, {0, 1}};  // identity acts nontrivially
    CHECK_THROWS_AS(validate_g_complex(not_hom), input_error);
}

TEST_CASE("barycentric subdivision counts") {
    auto e = build_group_from_table({{0}});
    auto pt = barycentric_subdivision(trivial_action(SComplex::from_maximal(1, {{0}}), e));
    CHECK(pt.space.count(0) == 1);
    CHECK(pt.space.dim() == 0);

    auto disk = barycentric_subdivision(trivial_action(SComplex::from_maximal(3, {{0, 1, 2}}), e));
    CHECK(disk.space.count(0) == 7);
    CHECK(disk.space.count(1) == 12);
    CHECK(disk.space.count(2) == 6);
}

TEST_CASE("subdivision preserves the Euler characteristic and fixes typing") {
    for (const auto& inst : gcomplex_corpus()) {
        auto sub = barycentric_subdivision(inst.complex);
        CHECK(sub.space.euler_characteristic() == inst.complex.space.euler_characteristic());
        auto report = validate_g_complex(sub);
        CHECK(report.simplicial);
        CHECK(report.type_preserving);
    }
}

TEST_CASE("fixed subcomplexes") {
    auto sub = barycentric_subdivision(swapped_edge());
    auto g = sub.group;

    auto whole = fixed_subcomplex(sub, trivial_subgroup(g));
    CHECK(whole.size() == sub.space.size());

    auto fixed = fixed_subcomplex(sub, 1);  // the involution
    CHECK(fixed.dim() == 0);
    CHECK(fixed.count(0) == 1);

    auto free2 = g_complex_from_generators({{1, 0}}, SComplex::from_maximal(2, {{0}, {1}}),
                                           {{1, 0}});
    auto empty = fixed_subcomplex(free2, 1);
    CHECK(empty.size() == 0);
    CHECK(empty.dim() == -1);

    CHECK_THROWS_AS(fixed_subcomplex(swapped_edge(), 1), input_error);
}

TEST_CASE("fixed subcomplexes shrink as the subgroup grows") {
    for (const auto& inst : gcomplex_corpus()) {
        auto subs = enumerate_subgroups(inst.complex.group);
        for (const auto& h : subs)
            for (const auto& k : subs) {
                if (!is_subgroup_of(k, h)) continue;
                auto fh = fixed_subcomplex(inst.complex, h);
                auto fk = fixed_subcomplex(inst.complex, k);
                for (int d = 0; d <= fh.dim(); ++d)
                    for (const auto& s : fh.by_dim[d]) CHECK(fk.contains(s));
            }
    }
}

TEST_CASE("orbit data") {
    auto e = build_group_from_table({{0}});
    auto x = trivial_action(SComplex::from_maximal(3, {{0, 1}, {1, 2}}), e);
    auto orbits = orbit_data(x);
    for (int d = 0; d <= x.space.dim(); ++d)
        for (int i = 0; i < x.space.count(d); ++i) {
            CHECK(orbits.info[d][i].representative == x.space.by_dim[d][i]);
            CHECK(orbits.info[d][i].stabilizer.order() == 1);
        }

    auto sub = barycentric_subdivision(swapped_edge());
    auto sub_orbits = orbit_data(sub);
    CHECK(sub_orbits.representatives[1].size() == 1);  // one edge orbit
    for (int i = 0; i < sub.space.count(1); ++i)
        CHECK(sub_orbits.info[1][i].stabilizer.order() == 1);
    // The swap-fixed midpoint keeps the full stabilizer.
    int full_stab_vertices = 0;
    for (int i = 0; i < sub.space.count(0); ++i)
        if (sub_orbits.info[0][i].stabilizer.order() == 2) ++full_stab_vertices;
    CHECK(full_stab_vertices == 1);

    // Regular action of Z3 on itself: one orbit, trivial stabilizers.
    auto reg = g_complex_from_generators({{1, 2, 0}}, SComplex::from_maximal(3, {{0}, {1}, {2}}),
                                         {{1, 2, 0}});
    auto reg_orbits = orbit_data(reg);
    CHECK(reg_orbits.representatives[0].size() == 1);
    for (int i = 0; i < 3; ++i) CHECK(reg_orbits.info[0][i].stabilizer.order() == 1);
}

TEST_CASE("brylinski space components") {
    auto e = build_group_from_table({{0}});
    auto circle = trivial_action(SComplex::from_maximal(3, {{0, 1}, {0, 2}, {1, 2}}), e);
    auto bry = brylinski_space(circle);
    REQUIRE(bry.component.size() == 1);
    CHECK(bry.component[0].size() == circle.space.size());

    auto sub = barycentric_subdivision(swapped_edge());
    auto bry2 = brylinski_space(sub);
    REQUIRE(bry2.component.size() == 2);
    CHECK(bry2.component[0].size() == sub.space.size());
    CHECK(bry2.component[1].size() == 1);

    auto free2 = g_complex_from_generators({{1, 0}}, SComplex::from_maximal(2, {{0}, {1}}),
                                           {{1, 0}});
    auto bry3 = brylinski_space(free2);
    REQUIRE(bry3.component.size() == 2);
    CHECK(bry3.component[1].size() == 0);
}

TEST_CASE("the action identifies fixed complexes across a class") {
    for (const auto& inst : gcomplex_corpus()) {
        auto bry = brylinski_space(inst.complex);
        const auto& g = *inst.complex.group;
        for (int c = 0; c < bry.classes.class_count(); ++c) {
            const int rep = bry.classes.representatives[c];
            for (int s = 0; s < g.order(); ++s) {
                const int target = g.conjugate(s, rep);
                auto fixed_target = fixed_subcomplex(inst.complex, target);
                CHECK(fixed_target.size() == bry.component[c].size());
                for (int d = 0; d <= bry.component[c].dim(); ++d) {
                    // s maps X^rep bijectively onto X^{s rep s^-1}.
                    auto map = action_chain_map(inst.complex, bry.component[c], fixed_target, s, d);
                    CHECK(rank(map) == bry.component[c].count(d));
                }
            }
        }
    }
}
