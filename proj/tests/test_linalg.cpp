#include "doctest.h"

#include <cmath>

#include "dnmc/errors.hpp"
#include "dnmc/linalg.hpp"
#include "dnmc/random.hpp"

using namespace dnmc;

TEST_CASE("matmul against hand-multiplied 2x3 * 3x2") {
    Matrix a(2, 3);
    a.data = {1, 2, 3, 4, 5, 6};
    Matrix b(3, 2);
    b.data = {7, 8, 9, 10, 11, 12};
    const Matrix c = matmul(a, b);
    REQUIRE(c.rows == 2);
    REQUIRE(c.cols == 2);
    // row 0: 1*7+2*9+3*11 = 58, 1*8+2*10+3*12 = 64
    CHECK(c(0, 0) == 58.0);
    CHECK(c(0, 1) == 64.0);
    CHECK(c(1, 0) == 139.0);
    CHECK(c(1, 1) == 154.0);
}

TEST_CASE("matvec and transpose") {
    Matrix m(2, 3);
    m.data = {1, -1, 2, 0, 3, 1};
    const Vec v{2, 1, -1};
    const Vec out = matvec(m, v);
    CHECK(out == Vec{-1.0, 2.0});

    const Matrix t = transpose(m);
    REQUIRE(t.rows == 3);
    REQUIRE(t.cols == 2);
    CHECK(t(0, 0) == 1.0);
    CHECK(t(2, 1) == 1.0);
    CHECK(max_abs_diff(transpose(t), m) == 0.0);
}

TEST_CASE("vector helpers") {
    const Vec a{1, 2, 3}, b{4, -2, 0.5};
    CHECK(dot(a, b) == 1.0 * 4 + 2 * -2 + 3 * 0.5);
    CHECK(norm2(Vec{3, 4}) == 5.0);
    CHECK(add(a, b) == Vec{5.0, 0.0, 3.5});
    CHECK(sub(a, b) == Vec{-3.0, 4.0, 2.5});
    CHECK(scaled(a, -2.0) == Vec{-2.0, -4.0, -6.0});
    CHECK(max_abs(Vec{-7, 2}) == 7.0);
    CHECK(max_abs_diff(a, b) == 4.0);
    Vec c = a;
    add_inplace(c, b);
    CHECK(c == Vec{5.0, 0.0, 3.5});
}

TEST_CASE("lu determinant, solve and inverse") {
    Matrix m(2, 2);
    m.data = {4, 3, 6, 3};
    const LuFactor f = lu_factor(m);
    REQUIRE_FALSE(f.singular);
    CHECK(lu_det(f) == doctest::Approx(-6.0).epsilon(1e-14));

    // x = (1, -2) -> b = (-2, 0)
    const Vec x = lu_solve(f, Vec{-2.0, 0.0});
    CHECK(max_abs_diff(x, Vec{1.0, -2.0}) < 1e-14);

    const Matrix inv = lu_inverse(f);
    const Matrix should_be_i = matmul(inv, m);
    CHECK(max_abs_diff(should_be_i, Matrix::identity(2)) < 1e-14);
}

TEST_CASE("lu flags singular input") {
    Matrix m(2, 2);
    m.data = {1, 2, 2, 4};
    const LuFactor f = lu_factor(m);
    CHECK((f.singular || std::abs(lu_det(f)) < 1e-12));
}

TEST_CASE("lu solve round-trips random well-conditioned systems") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform_int(1, 12));
        const Matrix q = random_orthogonal(rng, n);
        const Vec want = random_vec(rng, n);
        const Vec rhs = matvec(q, want);
        const Vec got = lu_solve(lu_factor(q), rhs);
        CHECK(max_abs_diff(got, want) < 1e-11);
    }
}

TEST_CASE("random_orthogonal produces orthogonal columns") {
    Rng rng(3);
    for (std::size_t n : {2u, 5u, 16u}) {
        const Matrix q = random_orthogonal(rng, n);
        const Matrix gram = matmul(transpose(q), q);
        CHECK(max_abs_diff(gram, Matrix::identity(n)) < 1e-12);
    }
}

TEST_CASE("shape errors throw") {
    Matrix a(2, 3), b(2, 3);
    CHECK_THROWS_AS((void)matmul(a, b), DimMismatch);
    CHECK_THROWS_AS((void)matvec(a, Vec{1, 2}), DimMismatch);
    CHECK_THROWS_AS((void)lu_factor(a), DimMismatch);
    CHECK_THROWS_AS((void)dot(Vec{1}, Vec{1, 2}), DimMismatch);
}
