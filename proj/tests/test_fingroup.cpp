#include <doctest.h>

#include <random>

#include "equihom/errors.hpp"
#include "equihom/fingroup.hpp"

using namespace equihom;

namespace {

GroupPtr s3() { return build_group_from_permutations({{1, 0, 2}, {1, 2, 0}}).group; }

QVec random_class_function(const ClassFunctionSpace& space, std::mt19937& rng) {
    QVec f(space.dim());
    std::uniform_int_distribution<int> num(-4, 4);
    for (auto& v : f) v = Rat(num(rng), 1 + static_cast<int>(rng() % 3));
    return f;
}

}  // namespace

TEST_CASE("group construction") {
    auto trivial = build_group_from_table({{0}});
    CHECK(trivial->order() == 1);

    auto z2 = build_group_from_permutations({{1, 0}}).group;
    CHECK(z2->order() == 2);

    auto g = s3();
    CHECK(g->order() == 6);
    CHECK(conjugacy_data(g).class_count() == 3);

    CHECK_THROWS_AS(build_group_from_table({{0, 1}, {0, 1}}), input_error);
    CHECK_THROWS_AS(build_group_from_table({{1, 0}, {1, 0}}), input_error);
}

TEST_CASE("conjugacy data") {
    CHECK(conjugacy_data(build_group_from_table({{0}})).class_count() == 1);

    auto z4 = build_group_from_permutations({{1, 2, 3, 0}}).group;
    auto z4_conj = conjugacy_data(z4);
    CHECK(z4_conj.class_count() == 4);
    for (const auto& c : z4_conj.centralizers) CHECK(c.order() == 4);

    auto conj = conjugacy_data(s3());
    std::vector<int> sizes;
    for (const auto& c : conj.classes) sizes.push_back(static_cast<int>(c.size()));
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{1, 2, 3});
    for (int c = 0; c < conj.class_count(); ++c) {
        const int rep = conj.representatives[c];
        if (conj.domain.group->element_order[rep] == 2)
            CHECK(conj.centralizers[c].order() == 2);
        CHECK(static_cast<int>(conj.classes[c].size()) * conj.centralizers[c].order() == 6);
    }
}

TEST_CASE("subgroup enumeration") {
    CHECK(enumerate_subgroups(build_group_from_table({{0}})).size() == 1);

    auto z4 = build_group_from_permutations({{1, 2, 3, 0}}).group;
    auto subs4 = enumerate_subgroups(z4);
    REQUIRE(subs4.size() == 3);
    CHECK(subs4[0].order() == 1);
    CHECK(subs4[1].order() == 2);
    CHECK(subs4[2].order() == 4);

    CHECK(enumerate_subgroups(s3()).size() == 6);

    auto big = build_group_from_permutations({{1, 2, 3, 4, 0}}).group;
    CHECK_THROWS_AS(enumerate_subgroups(big, 4), budget_error);
}

TEST_CASE("induction on small cases") {
    auto z2 = build_group_from_permutations({{1, 0}}).group;
    auto full = class_function_space(full_subgroup(z2));
    auto triv = class_function_space(trivial_subgroup(z2));

    // H = K is the identity map.
    CHECK(induction_matrix(full, full) == QMatrix::identity(full.dim()));

    // Constant one induced from the trivial subgroup: 2 at e, 0 at the swap.
    QVec ind = induce(triv, QVec{Rat(1)}, full);
    REQUIRE(ind.size() == 2);
    CHECK(ind[0] == 2);
    CHECK(ind[1] == 0);

    // Restricting back gives the constant 2.
    QVec back = restrict_cf(full, ind, triv);
    CHECK(back == QVec{Rat(2)});
}

TEST_CASE("induction is transitive and linear") {
    auto g = s3();
    auto subs = enumerate_subgroups(g);
    std::mt19937 rng(7);
    for (const auto& h : subs)
        for (const auto& k : subs) {
            if (!is_subgroup_of(h, k)) continue;
            for (const auto& l : subs) {
                if (!is_subgroup_of(k, l)) continue;
                auto sh = class_function_space(h);
                auto sk = class_function_space(k);
                auto sl = class_function_space(l);
                QVec f = random_class_function(sh, rng);
                QVec direct = induce(sh, f, sl);
                QVec two_step = induce(sk, induce(sh, f, sk), sl);
                CHECK(direct == two_step);
            }
        }
}

TEST_CASE("Frobenius reciprocity") {
    auto g = s3();
    auto subs = enumerate_subgroups(g);
    std::mt19937 rng(11);
    for (const auto& h : subs) {
        auto k = full_subgroup(g);
        auto sh = class_function_space(h);
        auto sk = class_function_space(k);
        for (int trial = 0; trial < 3; ++trial) {
            QVec f = random_class_function(sh, rng);
            QVec fk = random_class_function(sk, rng);
            Rat lhs = inner_product(sk, induce(sh, f, sk), fk);
            Rat rhs = inner_product(sh, f, restrict_cf(sk, fk, sh));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("induction is linear and rejects non-inclusions") {
    auto g = s3();
    auto subs = enumerate_subgroups(g);
    auto full = class_function_space(full_subgroup(g));
    std::mt19937 rng(17);
    for (const auto& h : subs) {
        auto sh = class_function_space(h);
        QVec f = random_class_function(sh, rng);
        QVec f2 = random_class_function(sh, rng);
        QVec sum(f.size());
        for (size_t i = 0; i < f.size(); ++i) sum[i] = f[i] + Rat(3) * f2[i];
        QVec lhs = induce(sh, sum, full);
        QVec a = induce(sh, f, full);
        QVec b = induce(sh, f2, full);
        for (size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] == a[i] + Rat(3) * b[i]);
    }
    // An order-2 subgroup does not contain the 3-cycles.
    Subgroup order2, order3;
    for (const auto& s : subs) {
        if (s.order() == 2) order2 = s;
        if (s.order() == 3) order3 = s;
    }
    auto s2 = class_function_space(order2);
    auto s3_space = class_function_space(order3);
    CHECK_THROWS_AS(induce(s2, QVec{Rat(1), Rat(1)}, s3_space), input_error);
    CHECK_THROWS_AS(build_group_from_permutations({{1, 2, 3, 4, 5, 6, 0}}, 5), budget_error);
}

TEST_CASE("induction is invariant under conjugating the subgroup") {
    auto g = s3();
    auto subs = enumerate_subgroups(g);
    auto full = class_function_space(full_subgroup(g));
    std::mt19937 rng(13);
    for (const auto& h : subs) {
        auto sh = class_function_space(h);
        QVec f = random_class_function(sh, rng);
        for (int e = 0; e < g->order(); ++e) {
            auto hc = conjugate_subgroup(h, e);
            auto shc = class_function_space(hc);
            QMatrix conj = conjugation_matrix(sh, e, shc);
            QVec fc = conj.apply(f);
            CHECK(induce(sh, f, full) == induce(shc, fc, full));
        }
    }
}
