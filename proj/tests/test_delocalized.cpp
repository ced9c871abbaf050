#include <doctest.h>

#include "equihom/corpus.hpp"
#include "equihom/delocalized.hpp"
#include "equihom/errors.hpp"
#include "equihom/homalg.hpp"

using namespace equihom;

namespace {

GComplex point(GroupPtr g) {
    GComplex pt;
    pt.space = SComplex::from_maximal(1, {{0}});
    pt.vertex_action.assign(g->order(), {0});
    pt.group = std::move(g);
    return pt;
}

GComplex subdivided_swapped_edge() {
    return barycentric_subdivision(
        g_complex_from_generators({{1, 0}}, SComplex::from_maximal(2, {{0, 1}}), {{1, 0}}));
}

}  // namespace

TEST_CASE("covariant cochains of the Brylinski space") {
    auto e = build_group_from_table({{0}});
    auto m = covariant_cochains(point(e));
    REQUIRE(m.class_count() == 1);
    CHECK(m.piece[0].dims == std::vector<int>{1});

    auto edge = subdivided_swapped_edge();
    auto me = covariant_cochains(edge);
    REQUIRE(me.class_count() == 2);
    CHECK(me.piece[0].dims == std::vector<int>{3, 2});
    CHECK(me.piece[1].dims == std::vector<int>{1});
    // t acts trivially on its own fixed complex.
    for (int c = 0; c < me.class_count(); ++c)
        for (int k = 0; k <= me.piece[c].top_degree(); ++k)
            CHECK(me.t_op[c][k] == QMatrix::identity(me.piece[c].dim(k)));
}

TEST_CASE("covariant hom on points") {
    auto e = build_group_from_table({{0}});
    auto m = covariant_cochains(point(e));
    auto homs = covariant_hom(m, m);
    REQUIRE(homs.size() == 1);
    auto h = homs[0].homology();
    CHECK(homs[0].min_degree == 0);
    CHECK(h == std::vector<int>{1});

    auto z2 = build_group_from_permutations({{1, 0}}).group;
    auto mz = covariant_cochains(point(z2));
    auto homs_z = covariant_hom(mz, mz);
    int total = 0;
    for (const auto& piece : homs_z) total += piece.homology()[0 - piece.min_degree];
    CHECK(total == 2);
}

TEST_CASE("bivariant dimensions on the spec examples") {
    auto e = build_group_from_table({{0}});
    auto bs_pt = bs_bivariant(point(e), point(e));
    CHECK(bs_pt.at(0) == 1);
    for (int n = -2; n <= 2; ++n)
        if (n != 0) CHECK(bs_pt.at(n) == 0);

    auto z2 = build_group_from_permutations({{1, 0}}).group;
    auto bs_z2 = bs_bivariant(point(z2), point(z2));
    CHECK(bs_z2.at(0) == 2);

    auto edge = subdivided_swapped_edge();
    auto bs_edge = bs_bivariant(edge, point(edge.group));
    CHECK(bs_edge.at(0) == 2);
    for (int n = -1; n <= 1; ++n)
        if (n != 0) CHECK(bs_edge.at(n) == 0);
}

TEST_CASE("covariant hom rejects mismatched groups") {
    auto z2a = build_group_from_permutations({{1, 0}}).group;
    auto z2b = build_group_from_permutations({{1, 0}}).group;
    auto ma = covariant_cochains(point(z2a));
    auto mb = covariant_cochains(point(z2b));
    CHECK_THROWS_AS(covariant_hom(ma, mb), input_error);
}

TEST_CASE("delocalized point oracle") {
    auto e = build_group_from_table({{0}});
    auto circle = trivial_action(SComplex::from_maximal(3, {{0, 1}, {0, 2}, {1, 2}}), e);
    CHECK(delocalized_point(circle) == std::vector<int>{1, 1});

    CHECK(delocalized_point(subdivided_swapped_edge()) == std::vector<int>{2, 0});

    auto free2 = g_complex_from_generators({{1, 0}}, SComplex::from_maximal(2, {{0}, {1}}),
                                           {{1, 0}});
    CHECK(delocalized_point(free2) == std::vector<int>{1});
}

TEST_CASE("bivariant theory agrees with the oracle on the corpus") {
    for (const auto& inst : gcomplex_corpus()) {
        auto bs = bs_bivariant(inst.complex, point(inst.complex.group));
        auto oracle = delocalized_point(inst.complex);
        for (int n = bs.min_degree; n < bs.min_degree + static_cast<int>(bs.dims.size()); ++n) {
            const int expected = (n >= 0 && n < static_cast<int>(oracle.size())) ? oracle[n] : 0;
            CHECK(bs.at(n) == expected);
        }
        for (int n = 0; n < static_cast<int>(oracle.size()); ++n) CHECK(bs.at(n) == oracle[n]);
    }
}

TEST_CASE("for the trivial group the theory is a plain Hom of cohomologies") {
    auto e = build_group_from_table({{0}});
    auto circle = trivial_action(SComplex::from_maximal(3, {{0, 1}, {0, 2}, {1, 2}}), e);
    auto sphere = trivial_action(
        SComplex::from_maximal(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}), e);
    auto bs = bs_bivariant(circle, sphere);
    auto hx = cochain_cohomology(cochains(circle.space));   // (1, 1)
    auto hy = cochain_cohomology(cochains(sphere.space));  // (1, 0, 1)
    for (int n = bs.min_degree; n < bs.min_degree + static_cast<int>(bs.dims.size()); ++n) {
        int expected = 0;
        for (int p = 0; p < static_cast<int>(hx.size()); ++p) {
            const int q = p - n;
            if (q >= 0 && q < static_cast<int>(hy.size())) expected += hx[p] * hy[q];
        }
        CHECK(bs.at(n) == expected);
    }
}

TEST_CASE("inclusions induce maps of covariant complexes that compose") {
    // Three nested equivariant subcomplexes of the reflected circle.
    auto x = barycentric_subdivision(g_complex_from_generators(
        {{1, 0}}, SComplex::from_maximal(3, {{0, 1}, {0, 2}, {1, 2}}), {{1, 0, 2}}));
    // The midpoint of the swapped edge is a fixed vertex of the subdivision.
    auto fixed = fixed_subcomplex(x, 1);
    REQUIRE(fixed.count(0) >= 1);
    SComplex tiny;
    tiny.ambient_vertices = x.space.ambient_vertices;
    tiny.by_dim = {{fixed.by_dim[0][0]}};
    // Middle: the closed star of that vertex inside the swapped edge orbit.
    Simplex center = fixed.by_dim[0][0];
    std::vector<Simplex> mid_maximal;
    for (const auto& s : x.space.by_dim[1])
        if (std::find(s.begin(), s.end(), center[0]) != s.end()) mid_maximal.push_back(s);
    REQUIRE(!mid_maximal.empty());
    SComplex middle = SComplex::from_maximal(x.space.ambient_vertices, mid_maximal);

    auto as_gcomplex = [&](SComplex sc) {
        GComplex out;
        out.space = std::move(sc);
        out.group = x.group;
        out.vertex_action = x.vertex_action;
        auto report = validate_g_complex(out);
        REQUIRE(report.simplicial);
        REQUIRE(report.type_preserving);
        return out;
    };
    GComplex a = as_gcomplex(tiny);
    GComplex b = as_gcomplex(middle);

    auto ma = covariant_cochains(a);
    auto mb = covariant_cochains(b);
    auto mx = covariant_cochains(x);

    // Restriction of cochains along an inclusion: transpose of the chain
    // inclusion. It must be a degreewise chain map commuting with the
    // centralizer action, and restriction along a two-step inclusion is the
    // composite of the single steps.
    auto restriction = [&](const CovariantComplex& big, const CovariantComplex& small,
                           const SComplex& big_space, const SComplex& small_space, int cls,
                           int deg) {
        QMatrix incl(big_space.count(deg), small_space.count(deg));
        for (int i = 0; i < small_space.count(deg); ++i)
            incl.set(big_space.index_of(deg, small_space.by_dim[deg][i]), i, 1);
        (void)big;
        (void)small;
        (void)cls;
        return incl.transpose();
    };

    auto bry_x = brylinski_space(x);
    auto bry_b = brylinski_space(b);
    auto bry_a = brylinski_space(a);
    for (int c = 0; c < mx.class_count(); ++c) {
        for (int deg = 0; deg <= 1; ++deg) {
            if (mb.piece[c].dim(deg) == 0 && mx.piece[c].dim(deg) == 0) continue;
            QMatrix x_to_b = restriction(mx, mb, bry_x.component[c], bry_b.component[c], c, deg);
            QMatrix b_to_a = restriction(mb, ma, bry_b.component[c], bry_a.component[c], c, deg);
            QMatrix x_to_a = restriction(mx, ma, bry_x.component[c], bry_a.component[c], c, deg);
            CHECK(b_to_a * x_to_b == x_to_a);
            // Chain map: restriction commutes with the differential.
            if (deg == 0 && mx.piece[c].top_degree() >= 1 && mb.piece[c].top_degree() >= 1) {
                QMatrix upper =
                    restriction(mx, mb, bry_x.component[c], bry_b.component[c], c, 1);
                CHECK(upper * mx.piece[c].d[0] == mb.piece[c].d[0] * x_to_b);
            }
            // Equivariance for the centralizer action.
            const auto& z = mx.centralizer[c];
            for (size_t zi = 0; zi < z.members.size(); ++zi) {
                if (deg > mb.piece[c].top_degree() || deg > mx.piece[c].top_degree()) continue;
                CHECK(x_to_b * mx.action[c][zi][deg] == mb.action[c][zi][deg] * x_to_b);
            }
        }
    }
}
