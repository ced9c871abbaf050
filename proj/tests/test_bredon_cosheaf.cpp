#include <doctest.h>

#include "equihom/bredon.hpp"
#include "equihom/corpus.hpp"
#include "equihom/cosheaf.hpp"
#include "equihom/errors.hpp"

using namespace equihom;

namespace {

GComplex z2_point() {
    return g_complex_from_generators({{1, 0}}, SComplex::from_maximal(1, {{0}}), {{0}});
}

GComplex subdivided_swapped_edge() {
    return barycentric_subdivision(
        g_complex_from_generators({{1, 0}}, SComplex::from_maximal(2, {{0, 1}}), {{1, 0}}));
}

}  // namespace

TEST_CASE("orbit morphisms") {
    auto z2 = build_group_from_permutations({{1, 0}}).group;
    auto full = full_subgroup(z2);
    auto triv = trivial_subgroup(z2);
    CHECK(orbit_morphisms(full, full).size() == 1);
    CHECK(orbit_morphisms(triv, triv).size() == 2);
    CHECK(orbit_morphisms(triv, full).size() == 1);
    CHECK(orbit_morphisms(full, triv).empty());
}

TEST_CASE("coefficient maps") {
    auto z2 = build_group_from_permutations({{1, 0}}).group;
    auto full = class_function_space(full_subgroup(z2));
    auto triv = class_function_space(trivial_subgroup(z2));

    CHECK(coefficient_map(full, z2->identity, full) == QMatrix::identity(2));

    QMatrix inclusion = coefficient_map(triv, z2->identity, full);
    CHECK(inclusion.at(0, 0) == 2);
    CHECK(inclusion.at(1, 0) == 0);

    // Both representatives of the nontrivial coset give the same map.
    QMatrix rep0 = coefficient_map(triv, 0, triv);
    QMatrix rep1 = coefficient_map(triv, 1, triv);
    CHECK(rep0 == rep1);
}

TEST_CASE("the coefficient system is a functor") {
    for (auto group : {build_group_from_permutations({{1, 0}}).group,
                       build_group_from_permutations({{1, 0, 2}, {1, 2, 0}}).group}) {
        auto cat = orbit_category(group);
        CoefficientSystem coeff(cat);
        for (int h = 0; h < cat.object_count(); ++h)
            for (int k = 0; k < cat.object_count(); ++k)
                for (int g1 : cat.morphisms[h][k])
                    for (int l = 0; l < cat.object_count(); ++l)
                        for (int g2 : cat.morphisms[k][l]) {
                            const int composed = compose_morphisms(cat, k, l, g1, g2);
                            CHECK(coeff.along(h, l, composed) ==
                                  coeff.along(k, l, g2) * coeff.along(h, k, g1));
                        }
    }
}

TEST_CASE("bredon homology on the spec examples") {
    auto e = build_group_from_table({{0}});
    auto circle = trivial_action(SComplex::from_maximal(3, {{0, 1}, {0, 2}, {1, 2}}), e);
    CHECK(bredon_homology(circle) == std::vector<int>{1, 1});

    CHECK(bredon_homology(z2_point()) == std::vector<int>{2});

    auto edge = subdivided_swapped_edge();
    CHECK(bredon_homology(edge) == std::vector<int>{2, 0});
    CHECK(bredon_homology(edge) == cosheaf_homology(edge));
}

TEST_CASE("cosheaf complex on the spec examples") {
    auto e = build_group_from_table({{0}});
    auto pt = trivial_action(SComplex::from_maximal(1, {{0}}), e);
    auto cs_pt = cosheaf_complex(pt);
    CHECK(cs_pt.complex().dims == std::vector<int>{1});

    auto cs_z2pt = cosheaf_complex(z2_point());
    CHECK(cs_z2pt.complex().dims == std::vector<int>{2});

    auto edge = subdivided_swapped_edge();
    auto cs = cosheaf_complex(edge);
    REQUIRE(cs.complex().dims == std::vector<int>{3, 1});
    // The boundary of the edge-orbit generator: -1 on the endpoint orbit,
    // 2 on the midpoint with the trivial-class coefficient, 0 on the other.
    const QMatrix& d1 = cs.complex().d[1];
    REQUIRE(d1.rows() == 3);
    REQUIRE(d1.cols() == 1);
    // Identify the coordinates by their labels.
    int endpoint_slot = -1, mid_e_slot = -1, mid_s_slot = -1;
    for (int r = 0; r < 3; ++r) {
        auto [simplex, cls] = cs.basis_labels[0][r];
        const auto& space = cs.cosheaf.at(0, simplex);
        if (space.dim() == 1) endpoint_slot = r;
        if (space.dim() == 2 && cls == 0) mid_e_slot = r;
        if (space.dim() == 2 && cls == 1) mid_s_slot = r;
    }
    REQUIRE(endpoint_slot >= 0);
    REQUIRE(mid_e_slot >= 0);
    REQUIRE(mid_s_slot >= 0);
    CHECK(d1.at(endpoint_slot, 0) == -1);
    CHECK(d1.at(mid_e_slot, 0) == 2);
    CHECK(d1.at(mid_s_slot, 0) == 0);

    CHECK(cosheaf_homology(edge) == std::vector<int>{2, 0});

    auto circle = trivial_action(SComplex::from_maximal(3, {{0, 1}, {0, 2}, {1, 2}}), e);
    CHECK(cosheaf_homology(circle) == std::vector<int>{1, 1});
}

TEST_CASE("corestrictions compose along face chains") {
    auto inst = subdivided_swapped_edge();
    auto cosheaf = induction_cosheaf(inst);
    // iota_sigma^sigma is the identity on every simplex.
    for (int d = 0; d <= inst.space.dim(); ++d)
        for (int i = 0; i < inst.space.count(d); ++i)
            CHECK(induction_matrix(cosheaf.at(d, i), cosheaf.at(d, i)) ==
                  QMatrix::identity(cosheaf.at(d, i).dim()));
}

TEST_CASE("phi and psi invert each other") {
    auto e = build_group_from_table({{0}});
    auto pt = trivial_action(SComplex::from_maximal(1, {{0}}), e);
    auto cmp_pt = compare_bredon_cosheaf(pt);
    CHECK(cmp_pt.is_iso);
    CHECK(cmp_pt.phi[0] == QMatrix::identity(1));
    CHECK(cmp_pt.psi[0] == QMatrix::identity(1));

    auto cmp_z2 = compare_bredon_cosheaf(z2_point());
    CHECK(cmp_z2.is_iso);
    CHECK(cmp_z2.phi[0].rows() == 2);
    CHECK(cmp_z2.phi[0] * cmp_z2.psi[0] == QMatrix::identity(2));
    CHECK(cmp_z2.psi[0] * cmp_z2.phi[0] == QMatrix::identity(2));

    auto cmp_edge = compare_bredon_cosheaf(subdivided_swapped_edge());
    CHECK(cmp_edge.is_iso);
    CHECK(cmp_edge.homology_match);
    CHECK(cmp_edge.cosheaf_dims == std::vector<int>{2, 0});
}

TEST_CASE("homology is stable under relabelling the vertices") {
    // Changing vertex labels permutes sorted tuples and flips representative
    // orientations; the homology dimensions must not move.
    auto edge = subdivided_swapped_edge();
    const int n = edge.space.ambient_vertices;
    std::vector<int> relabel(n);
    for (int i = 0; i < n; ++i) relabel[i] = n - 1 - i;
    GComplex moved;
    moved.group = edge.group;
    std::vector<Simplex> maximal;
    for (const auto& s : edge.space.maximal_simplices()) {
        Simplex ms;
        for (int v : s) ms.push_back(relabel[v]);
        std::sort(ms.begin(), ms.end());
        maximal.push_back(ms);
    }
    moved.space = SComplex::from_maximal(n, maximal);
    moved.vertex_action.resize(edge.group->order());
    for (int g = 0; g < edge.group->order(); ++g) {
        moved.vertex_action[g].resize(n);
        for (int v = 0; v < n; ++v)
            moved.vertex_action[g][relabel[v]] = relabel[edge.vertex_action[g][v]];
    }
    auto cmp = compare_bredon_cosheaf(moved);
    CHECK(cmp.is_iso);
    CHECK(cmp.cosheaf_dims == std::vector<int>{2, 0});
}

TEST_CASE("the full corpus compares exactly") {
    for (const auto& inst : gcomplex_corpus()) {
        auto cmp = compare_bredon_cosheaf(inst.complex);
        CHECK(cmp.chain_map);
        CHECK(cmp.psi_well_defined);
        CHECK(cmp.psi_phi_id);
        CHECK(cmp.phi_psi_id);
        CHECK(cmp.homology_match);
    }
}
