#include <doctest.h>

#include <random>

#include "equihom/qmatrix.hpp"

using namespace equihom;

TEST_CASE("rank of trivial matrices") {
    QMatrix zero(4, 5);
    CHECK(rank(zero) == 0);
    CHECK(kernel_basis(zero).size() == 5);
    CHECK(rank(QMatrix::identity(7)) == 7);
    CHECK(kernel_basis(QMatrix::identity(7)).empty());
}

TEST_CASE("rank, kernel and image are consistent") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        const int rows = 1 + static_cast<int>(rng() % 8);
        const int cols = 1 + static_cast<int>(rng() % 8);
        QMatrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (rng() % 3 == 0) m.set(r, c, Rat(entry(rng)));
        const int rk = rank(m);
        auto ker = kernel_basis(m);
        auto img = image_basis(m);
        CHECK(rk + static_cast<int>(ker.size()) == cols);
        CHECK(static_cast<int>(img.size()) == rk);
        for (const auto& v : ker) {
            auto image = m.apply(v);
            for (const auto& x : image) CHECK(x == 0);
        }
        // Every column lies in the span of the image basis.
        for (int c = 0; c < cols; ++c) CHECK(solve_in_span(img, m.column(c)).has_value());
    }
}

TEST_CASE("echelon reduction is canonical") {
    EchelonBasis basis(4);
    CHECK(basis.insert(QVec{Rat(1), Rat(2), Rat(0), Rat(0)}));
    CHECK(basis.insert(QVec{Rat(0), Rat(1), Rat(1), Rat(0)}));
    CHECK_FALSE(basis.insert(QVec{Rat(2), Rat(5), Rat(1), Rat(0)}));
    CHECK(basis.rank() == 2);
    CHECK(basis.pivot_columns() == std::vector<int>{0, 1});
    CHECK(basis.free_columns() == std::vector<int>{2, 3});
    // Residues agree for equal classes.
    auto r1 = basis.reduce(to_sparse(QVec{Rat(3), Rat(7), Rat(1), Rat(5)}));
    auto r2 = basis.reduce(basis.reduce(to_sparse(QVec{Rat(3), Rat(7), Rat(1), Rat(5)})));
    CHECK(r1 == r2);
}

TEST_CASE("solve_in_span finds exact rational coordinates") {
    std::vector<QVec> span = {
        {Rat(1), Rat(0), Rat(2)},
        {Rat(0), Rat(1, 2), Rat(1)},
    };
    auto coords = solve_in_span(span, QVec{Rat(2), Rat(1, 2), Rat(5)});
    REQUIRE(coords.has_value());
    CHECK((*coords)[0] == 2);
    CHECK((*coords)[1] == 1);
    CHECK_FALSE(solve_in_span(span, QVec{Rat(0), Rat(0), Rat(1)}).has_value());
}

TEST_CASE("restrict_operator reproduces the action on a subspace") {
    // Rotation by swap on the plane inside 3-space.
    QMatrix op(3, 3);
    op.set(0, 1, 1);
    op.set(1, 0, 1);
    op.set(2, 2, 1);
    std::vector<QVec> plane = {{Rat(1), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
    QMatrix restricted = restrict_operator(op, plane);
    CHECK(restricted == QMatrix::identity(2));
}
