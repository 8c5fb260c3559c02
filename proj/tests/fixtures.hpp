#pragma once
#include <qmod/quiver.hpp>

// Shared quiver presentations, written in the text input format so every test
// run also exercises the parser. Names describe the shape of the quiver.

namespace fx {

using qmod::QQ;

template <class F = QQ>
qmod::AlgP<F> build(const std::string& text, F fld = {}, int cap = 30) {
    auto raw = qmod::parse_presentation_text(text);
    return qmod::build_algebra(qmod::typed_presentation(fld, raw), cap);
}

// single arrow 1 -> 2
inline std::string a2() {
    return R"(field Q
vertex 1
vertex 2
arrow a 1 2
)";
}

// one vertex, one loop, loop squared = 0
inline std::string dual_numbers() {
    return R"(field Q
vertex v
arrow x v v
relation 1 x*x
)";
}

// one vertex, no arrows
inline std::string point() {
    return R"(field Q
vertex v
)";
}

// cyclic triangle with radical square zero (selfinjective Nakayama)
inline std::string cycle3_rad2() {
    return R"(field Q
vertex 1
vertex 2
vertex 3
arrow a 1 2
arrow b 2 3
arrow c 3 1
relation 1 b*a
relation 1 c*b
relation 1 a*c
)";
}

// linear A_n, no relations
inline std::string chain(int n) {
    std::string s = "field Q\n";
    for (int i = 1; i <= n; ++i) s += "vertex " + std::to_string(i) + "\n";
    for (int i = 1; i < n; ++i)
        s += "arrow a" + std::to_string(i) + " " + std::to_string(i) + " " +
             std::to_string(i + 1) + "\n";
    return s;
}

// linear A_n with every composition of two consecutive arrows zero
inline std::string chain_rad2(int n) {
    std::string s = chain(n);
    for (int i = 1; i + 1 < n; ++i)
        s += "relation 1 a" + std::to_string(i + 1) + "*a" + std::to_string(i) + "\n";
    return s;
}

// linear A_5 with all paths of length three zero
inline std::string chain5_rad3() {
    std::string s = chain(5);
    for (int i = 1; i <= 2; ++i)
        s += "relation 1 a" + std::to_string(i + 2) + "*a" + std::to_string(i + 1) + "*a" +
             std::to_string(i) + "\n";
    return s;
}

// linear A_n with all length-two compositions zero except the one through
// the given middle vertex
inline std::string chain_rad2_except(int n, int open_vertex) {
    std::string s = chain(n);
    for (int i = 1; i + 1 < n; ++i)
        if (i + 1 != open_vertex)
            s += "relation 1 a" + std::to_string(i + 1) + "*a" + std::to_string(i) + "\n";
    return s;
}

// commuting square: two paths 1 -> 4 identified
inline std::string commuting_square() {
    return R"(field Q
vertex 1
vertex 2
vertex 3
vertex 4
arrow b 1 2
arrow d 1 3
arrow a 2 4
arrow c 3 4
relation 1 a*b - 1 c*d
)";
}

// triangular grid on six vertices with mesh relations:
//
//       3
//      / \
//     2   5
//    / \ / \
//   1   4   6
//
// zero relations along the bottom, commutativity in the square
inline std::string grid6_mesh() {
    return R"(field Q
vertex 1
vertex 2
vertex 3
vertex 4
vertex 5
vertex 6
arrow a 1 2
arrow b 2 3
arrow c 2 4
arrow d 3 5
arrow e 4 5
arrow f 5 6
relation 1 c*a
relation 1 d*b - 1 e*c
relation 1 f*e
)";
}

// the same grid with only the commutativity relation
inline std::string grid6_commuting() {
    return R"(field Q
vertex 1
vertex 2
vertex 3
vertex 4
vertex 5
vertex 6
arrow a 1 2
arrow b 2 3
arrow c 2 4
arrow d 3 5
arrow e 4 5
arrow f 5 6
relation 1 d*b - 1 e*c
)";
}

// commuting square with a tail out of the confluence
//
//     2
//    / \
//   1   5 - 3
//    \ /
//     4
inline std::string square_tail5() {
    return R"(field Q
vertex 1
vertex 2
vertex 4
vertex 5
vertex 3
arrow p 1 2
arrow q 2 5
arrow r 1 4
arrow s 4 5
arrow t 5 3
relation 1 q*p - 1 s*r
)";
}

// two sources feeding a chain: 2 -> m <- 3, m -> 4
inline std::string confluence4() {
    return R"(field Q
vertex 2
vertex 3
vertex m
vertex 4
arrow u 2 m
arrow v 3 m
arrow w m 4
)";
}

// one source splitting: 1 -> m, m -> 2, m -> 3
inline std::string branch4() {
    return R"(field Q
vertex 1
vertex m
vertex 2
vertex 3
arrow u 1 m
arrow v m 2
arrow w m 3
)";
}

// four-vertex chain with a commuting handle underneath:
//
//   t1 -> t2 -> t3 -> t4
//   ^     ^
//   u1 -> u2     (u1->t1->t2 = u1->u2->t2)
inline std::string chain4_handle() {
    return R"(field Q
vertex t1
vertex t2
vertex t3
vertex t4
vertex u1
vertex u2
arrow x1 t1 t2
arrow x2 t2 t3
arrow x3 t3 t4
arrow p u1 t1
arrow r u1 u2
arrow q u2 t2
relation 1 x1*p - 1 q*r
)";
}

// five-vertex chain with a single spur into the second vertex
inline std::string chain5_spur() {
    return R"(field Q
vertex t1
vertex t2
vertex t3
vertex t4
vertex t5
vertex u
arrow x1 t1 t2
arrow x2 t2 t3
arrow x3 t3 t4
arrow x4 t4 t5
arrow p u t2
)";
}

// oriented 3-cycle with no relations: infinite-dimensional path algebra
inline std::string cycle3_free() {
    return R"(field Q
vertex 1
vertex 2
vertex 3
arrow a 1 2
arrow b 2 3
arrow c 3 1
)";
}

} // namespace fx
