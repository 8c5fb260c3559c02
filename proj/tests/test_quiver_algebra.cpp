#include <catch2/catch_amalgamated.hpp>
#include <qmod/quiver.hpp>

#include "fixtures.hpp"

using namespace qmod;

namespace {

template <class F>
bool same_span(const Algebra<F>& a, const std::vector<typename Algebra<F>::Vec>& u,
               const std::vector<typename Algebra<F>::Vec>& v) {
    auto ru = detail::rows_from_vecs(a.fld, u, a.dim());
    auto rv = detail::rows_from_vecs(a.fld, v, a.dim());
    auto both = vstack<F>({ru, rv});
    int r1 = rank(ru), r2 = rank(rv), r3 = rank(both);
    return r1 == r2 && r2 == r3;
}

int basis_index(const Algebra<QQ>& a, const std::string& name) {
    for (int i = 0; i < a.dim(); ++i)
        if (a.bnames[i] == name) return i;
    return -1;
}

} // namespace

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_presentation_text("vertex 1\n"), InputError);
    CHECK_THROWS_AS(parse_presentation_text("field Q\n"), InputError);
    CHECK_THROWS_AS(parse_presentation_text("field Q\nfield Q\nvertex 1\n"), InputError);
    CHECK_THROWS_AS(parse_presentation_text("field Q\nvertex 1\nvertex 1\n"), InputError);
    CHECK_THROWS_AS(parse_presentation_text("field Q\nvertex 1\narrow a 1 2\n"), InputError);
    CHECK_THROWS_AS(parse_presentation_text("field Q\nvertex 1\nbogus x\n"), InputError);
    CHECK_THROWS_AS(parse_presentation_text("field F x\nvertex 1\n"), InputError);

    // typed stage: unknown arrows, short words, non-composable words, zero coeffs
    auto typed = [](const std::string& s) {
        return typed_presentation(QQ{}, parse_presentation_text(s));
    };
    std::string head = "field Q\nvertex 1\nvertex 2\narrow a 1 2\narrow b 2 1\n";
    CHECK_THROWS_AS(typed(head + "relation 1 a*z\n"), InputError);
    CHECK_THROWS_AS(typed(head + "relation 1 a\n"), InputError);
    CHECK_THROWS_AS(typed(head + "relation 1 a*a\n"), InputError);     // tgt(a) != src(a)
    CHECK_THROWS_AS(typed(head + "relation 0 b*a\n"), InputError);
    CHECK_THROWS_AS(typed(head + "relation 1 b*a - 1 a*b\n"), InputError); // endpoint clash
    CHECK_NOTHROW(typed(head + "relation 1 b*a\n"));
    CHECK_NOTHROW(typed(head + "relation 1 a*b*a*b - 2 a*b\n"));
}

TEST_CASE("presentation text round-trips through the writer") {
    for (auto text : {fx::commuting_square(), fx::grid6_mesh(), fx::cycle3_rad2()}) {
        auto p1 = parse_presentation_text(text);
        auto p2 = parse_presentation_text(write_presentation_text(p1));
        REQUIRE(p1.vertices == p2.vertices);
        REQUIRE(p1.arrows.size() == p2.arrows.size());
        REQUIRE(p1.relations.size() == p2.relations.size());
        auto a1 = build_algebra(typed_presentation(QQ{}, p1));
        auto a2 = build_algebra(typed_presentation(QQ{}, p2));
        REQUIRE(a1->bnames == a2->bnames);
    }
}

TEST_CASE("path algebra dimensions on known quotients") {
    CHECK(fx::build(fx::point())->dim() == 1);
    CHECK(fx::build(fx::a2())->dim() == 3);
    CHECK(fx::build(fx::dual_numbers())->dim() == 2);
    CHECK(fx::build(fx::cycle3_rad2())->dim() == 6);
    CHECK(fx::build(fx::chain(5))->dim() == 15);         // hereditary: one basis path per interval
    CHECK(fx::build(fx::chain5_rad3())->dim() == 12);
    CHECK(fx::build(fx::chain_rad2(3))->dim() == 5);
    CHECK(fx::build(fx::chain_rad2(4))->dim() == 7);
    CHECK(fx::build(fx::chain_rad2(5))->dim() == 9);
    CHECK(fx::build(fx::commuting_square())->dim() == 9);
    CHECK(fx::build(fx::grid6_mesh())->dim() == 15);
    CHECK(fx::build(fx::grid6_commuting())->dim() == 20);
    CHECK(fx::build(fx::square_tail5())->dim() == 14);
    CHECK(fx::build(fx::chain4_handle())->dim() == 20);
    CHECK(fx::build(fx::chain5_spur())->dim() == 20);
    // all middle compositions zero except through vertex k+1
    CHECK(fx::build(fx::chain_rad2_except(4, 2))->dim() == 8);
}

TEST_CASE("infinite-dimensional input is reported, not truncated") {
    auto raw = parse_presentation_text(fx::cycle3_free());
    CHECK_THROWS_AS(build_algebra(typed_presentation(QQ{}, raw), 12), CapExceeded);
}

TEST_CASE("built algebras satisfy the structural axioms") {
    for (auto text : {fx::a2(), fx::dual_numbers(), fx::cycle3_rad2(), fx::chain5_rad3(),
                      fx::commuting_square(), fx::grid6_mesh(), fx::grid6_commuting(),
                      fx::square_tail5(), fx::chain4_handle(), fx::chain5_spur()}) {
        auto a = fx::build(text);
        CHECK_NOTHROW(check_algebra(*a));
    }
}

TEST_CASE("declared radical matches the computed radical") {
    for (auto text : {fx::a2(), fx::dual_numbers(), fx::cycle3_rad2(), fx::chain5_rad3(),
                      fx::commuting_square(), fx::grid6_mesh()}) {
        auto a = fx::build(text);
        auto r = compute_radical(*a);
        CHECK(r.size() == a->rad.size());
        CHECK(same_span(*a, r, a->rad));
    }
}

TEST_CASE("prime fields take the small-characteristic radical route") {
    auto text = fx::cycle3_rad2();
    text.replace(text.find("field Q"), 7, "field F 2");
    auto raw = parse_presentation_text(text);
    REQUIRE(!raw.field.rational);
    auto a = build_algebra(typed_presentation(GF(2), raw));
    CHECK(a->dim() == 6);
    CHECK_NOTHROW(check_algebra(*a));
    auto r = compute_radical(*a);
    CHECK(r.size() == 3);
    CHECK(same_span(*a, r, a->rad));
}

TEST_CASE("identified paths reduce to the lexicographically earliest normal form") {
    auto a = fx::build(fx::commuting_square());
    int ab = basis_index(*a, "a*b");
    REQUIRE(ab >= 0);
    CHECK(basis_index(*a, "c*d") == -1);
    int ia = basis_index(*a, "a"), ib = basis_index(*a, "b");
    int ic = basis_index(*a, "c"), id = basis_index(*a, "d");
    REQUIRE(ia >= 0);
    CHECK(a->mult[ia][ib] == a->unitvec(ab));
    CHECK(a->mult[ic][id] == a->unitvec(ab));
    // paths into a zero product
    auto z = fx::build(fx::dual_numbers());
    CHECK(z->mult[1][1].empty());
}

TEST_CASE("quiver metadata survives on the built algebra") {
    auto a = fx::build(fx::chain5_rad3());
    REQUIRE(a->qinfo.has_value());
    CHECK(a->qinfo->trunc == 3);
    CHECK(a->qinfo->arrows.size() == 4);
    for (auto& ar : a->qinfo->arrows) {
        CHECK(a->bsrc[ar.basis] == ar.src);
        CHECK(a->btgt[ar.basis] == ar.tgt);
    }
    auto h = fx::build(fx::chain(4));
    REQUIRE(h->qinfo.has_value());
    CHECK(h->qinfo->trunc == 4); // longest path has length 3
}

TEST_CASE("opposite algebra is an involution with cached identity") {
    auto a = fx::build(fx::grid6_mesh());
    auto b = op_algebra(a);
    CHECK_NOTHROW(check_algebra(*b));
    CHECK(op_algebra(b).get() == a.get());
    CHECK(op_algebra(a).get() == b.get());
    auto ca = a->cartan(), cb = b->cartan();
    for (int i = 0; i < a->nv; ++i)
        for (int j = 0; j < a->nv; ++j) CHECK(ca[i][j] == cb[j][i]);
    // multiplication really is reversed
    for (int i = 0; i < a->dim(); ++i)
        for (int j = 0; j < a->dim(); ++j) CHECK(a->mult[i][j] == b->mult[j][i]);
}

TEST_CASE("cartan matrix counts basis paths between vertices") {
    auto a = fx::build(fx::commuting_square());
    auto c = a->cartan();
    CHECK(c[0][0] == 1);
    CHECK(c[3][0] == 1); // the single identified diagonal path
    CHECK(c[1][0] == 1);
    CHECK(c[0][1] == 0);
}
