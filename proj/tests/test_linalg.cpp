#include <catch2/catch_amalgamated.hpp>

#include <qmod/matrix.hpp>

using namespace qmod;

TEST_CASE("rationals stay in lowest terms") {
    QQ q;
    CHECK(q.str(q.make(4, 6)) == "2/3");
    CHECK(q.str(q.add(q.make(1, 3), q.make(1, 3))) == "2/3");
    CHECK(q.str(q.parse("4/6")) == "2/3");
    CHECK(q.str(q.parse("-10/4")) == "-5/2");
    CHECK(q.eq(q.div(q.from_long(3), q.from_long(2)), q.make(3, 2)));
    CHECK_THROWS_AS(q.make(1, 0), InputError);
    CHECK_THROWS_AS(q.parse("x"), InputError);
}

TEST_CASE("prime field basics") {
    CHECK_THROWS_AS(GF(4), InputError);
    CHECK_THROWS_AS(GF(1), InputError);
    GF f7(7);
    for (long a = 1; a < 7; ++a) CHECK(f7.mul(a, f7.inv(a)) == 1);
    CHECK(f7.parse("10") == 3);
    CHECK(f7.parse("1/2") == 4); // 2*4 = 8 = 1
    CHECK(f7.sub(2, 5) == 4);
}

TEST_CASE("rref on hand cases") {
    QQ q;
    SECTION("empty matrix") {
        auto rr = rref(Mat<QQ>(q, 0, 0));
        CHECK(rr.rank == 0);
        CHECK(rr.pivots.empty());
    }
    SECTION("identity is fixed") {
        auto id = Mat<QQ>::identity(q, 3);
        auto rr = rref(id);
        CHECK(rr.red == id);
        CHECK(rr.rank == 3);
    }
    SECTION("rank-1 with dependent row") {
        auto m = Mat<QQ>::of(q, 2, 2, {1, 2, 2, 4});
        auto rr = rref(m);
        CHECK(rr.rank == 1);
        REQUIRE(rr.pivots.size() == 1);
        CHECK(rr.pivots[0] == 0);
        CHECK(q.eq(rr.red(0, 1), q.from_long(2)));
    }
    SECTION("idempotent") {
        Rng rng(7);
        auto m = rand_mat(q, 5, 7, rng, 4);
        auto rr = rref(m);
        CHECK(rref(rr.red).red == rr.red);
    }
}

TEST_CASE("kernel over F2") {
    GF f2(2);
    auto m = Mat<GF>::of(f2, 1, 2, {1, 1});
    auto k = kernel_basis(m);
    REQUIRE(k.cols() == 1);
    CHECK(k(0, 0) == 1);
    CHECK(k(1, 0) == 1);
    CHECK(mul(m, k).is_zero());
}

TEST_CASE("solve: exact answers and inconsistency") {
    QQ q;
    auto a = Mat<QQ>::of(q, 1, 1, {2});
    auto b = Mat<QQ>::of(q, 1, 1, {3});
    auto x = solve(a, b);
    REQUIRE(x.has_value());
    CHECK(q.eq((*x)(0, 0), q.make(3, 2)));

    auto bad = solve(Mat<QQ>::of(q, 2, 1, {1, 2}), Mat<QQ>::of(q, 2, 1, {1, 3}));
    CHECK(!bad.has_value());
}

TEMPLATE_TEST_CASE("random structural identities", "", QQ, GF) {
    TestType f;
    if constexpr (std::is_same_v<TestType, GF>) f = GF(5);
    Rng rng(20260819);
    for (int trial = 0; trial < 30; ++trial) {
        int r = int(rng() % 6), c = int(rng() % 6);
        auto m = rand_mat(f, r, c, rng, 5);
        auto rr = rref(m);
        auto k = kernel_basis(m);
        CHECK(rr.rank + k.cols() == c);
        if (r > 0 && c > 0) CHECK(mul(m, k).is_zero());

        // solving a solvable system returns a genuine solution
        auto x0 = rand_mat(f, c, 2, rng, 3);
        auto b = mul(m, x0);
        auto x = solve(m, b);
        REQUIRE(x.has_value());
        CHECK(mul(m, *x) == b);

        auto sq = rand_mat(f, r, r, rng, 5);
        if (auto inv = inverse(sq)) {
            CHECK(mul(*inv, sq) == Mat<TestType>::identity(f, r));
            CHECK(mul(sq, *inv) == Mat<TestType>::identity(f, r));
        } else {
            CHECK(rank(sq) < r);
        }
    }
}

TEST_CASE("quotient coordinates") {
    QQ q;
    // subspace of Q^3 spanned by (1,1,0) and (0,0,1): quotient is 1-dimensional
    auto rows = Mat<QQ>::of(q, 2, 3, {1, 1, 0, 0, 0, 1});
    auto quot = quotient_of(rows, 3);
    REQUIRE(quot.comp.size() == 1);
    CHECK(mul(quot.proj, quot.sect) == Mat<QQ>::identity(q, 1));
    CHECK(mul(quot.proj, rows.transpose()).is_zero());
}
