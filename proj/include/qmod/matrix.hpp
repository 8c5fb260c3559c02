#pragma once
#include <cassert>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <vector>

#include "field.hpp"

namespace qmod {

template <class F>
class Mat {
public:
    using Elem = typename F::Elem;

    Mat() : f_{}, r_(0), c_(0) {}
    Mat(F f, int r, int c) : f_(f), r_(r), c_(c), a_(size_t(r) * c, f.zero()) {}

    static Mat identity(F f, int n) {
        Mat m(f, n, n);
        for (int i = 0; i < n; ++i) m(i, i) = f.one();
        return m;
    }

    // row-major long init, for tests
    static Mat of(F f, int r, int c, std::initializer_list<long> xs) {
        Mat m(f, r, c);
        assert((int)xs.size() == r * c);
        int i = 0;
        for (long x : xs) { m.a_[i++] = f.from_long(x); }
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    const F& field() const { return f_; }
    Elem& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const Elem& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!f_.is_zero(x)) return false;
        return true;
    }
    bool operator==(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) return false;
        for (size_t i = 0; i < a_.size(); ++i)
            if (!f_.eq(a_[i], o.a_[i])) return false;
        return true;
    }

    Mat transpose() const {
        Mat t(f_, c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::string str() const {
        std::ostringstream os;
        for (int i = 0; i < r_; ++i) {
            for (int j = 0; j < c_; ++j) os << (j ? " " : "") << f_.str((*this)(i, j));
            os << "\n";
        }
        return os.str();
    }

private:
    F f_;
    int r_, c_;
    std::vector<Elem> a_;
};

template <class F>
Mat<F> mul(const Mat<F>& a, const Mat<F>& b) {
    assert(a.cols() == b.rows());
    const F& f = a.field();
    Mat<F> c(f, a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (f.is_zero(a(i, k))) continue;
            for (int j = 0; j < b.cols(); ++j)
                c(i, j) = f.add(c(i, j), f.mul(a(i, k), b(k, j)));
        }
    return c;
}

template <class F>
Mat<F> add(const Mat<F>& a, const Mat<F>& b) {
    assert(a.rows() == b.rows() && a.cols() == b.cols());
    Mat<F> c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a.field().add(a(i, j), b(i, j));
    return c;
}

template <class F>
Mat<F> sub(const Mat<F>& a, const Mat<F>& b) {
    assert(a.rows() == b.rows() && a.cols() == b.cols());
    Mat<F> c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a.field().sub(a(i, j), b(i, j));
    return c;
}

template <class F>
Mat<F> scale(const typename F::Elem& s, const Mat<F>& a) {
    Mat<F> c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a.field().mul(s, a(i, j));
    return c;
}

template <class F>
Mat<F> neg(const Mat<F>& a) {
    return scale(a.field().neg(a.field().one()), a);
}

template <class F>
Mat<F> hstack(const std::vector<Mat<F>>& ms) {
    assert(!ms.empty());
    int r = ms[0].rows(), c = 0;
    for (auto& m : ms) { assert(m.rows() == r); c += m.cols(); }
    Mat<F> out(ms[0].field(), r, c);
    int off = 0;
    for (auto& m : ms) {
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < m.cols(); ++j) out(i, off + j) = m(i, j);
        off += m.cols();
    }
    return out;
}

template <class F>
Mat<F> vstack(const std::vector<Mat<F>>& ms) {
    assert(!ms.empty());
    int c = ms[0].cols(), r = 0;
    for (auto& m : ms) { assert(m.cols() == c); r += m.rows(); }
    Mat<F> out(ms[0].field(), r, c);
    int off = 0;
    for (auto& m : ms) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < c; ++j) out(off + i, j) = m(i, j);
        off += m.rows();
    }
    return out;
}

template <class F>
Mat<F> block(const Mat<F>& m, int i0, int j0, int r, int c) {
    Mat<F> out(m.field(), r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) out(i, j) = m(i0 + i, j0 + j);
    return out;
}

template <class F>
Mat<F> col(const Mat<F>& m, int j) {
    return block(m, 0, j, m.rows(), 1);
}

template <class F>
struct Rref {
    Mat<F> red;              // unique reduced row echelon form
    std::vector<int> pivots; // pivot column per nonzero row
    int rank = 0;
};

// Gauss-Jordan with leftmost-pivot selection: deterministic, and the leftmost
// convention is what makes path normal forms prefer lexicographically early columns.
template <class F>
Rref<F> rref(Mat<F> m) {
    const F f = m.field();
    Rref<F> out{m, {}, 0};
    Mat<F>& a = out.red;
    int row = 0;
    for (int colj = 0; colj < a.cols() && row < a.rows(); ++colj) {
        int piv = -1;
        for (int i = row; i < a.rows(); ++i)
            if (!f.is_zero(a(i, colj))) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
        auto inv = f.inv(a(row, colj));
        for (int j = colj; j < a.cols(); ++j) a(row, j) = f.mul(inv, a(row, j));
        for (int i = 0; i < a.rows(); ++i) {
            if (i == row || f.is_zero(a(i, colj))) continue;
            auto c = a(i, colj);
            for (int j = colj; j < a.cols(); ++j)
                a(i, j) = f.sub(a(i, j), f.mul(c, a(row, j)));
        }
        out.pivots.push_back(colj);
        ++row;
    }
    out.rank = row;
    return out;
}

template <class F>
int rank(const Mat<F>& m) {
    return rref(m).rank;
}

// columns span ker(m)
template <class F>
Mat<F> kernel_basis(const Mat<F>& m) {
    const F f = m.field();
    auto rr = rref(m);
    std::vector<int> free;
    {
        size_t pi = 0;
        for (int j = 0; j < m.cols(); ++j) {
            if (pi < rr.pivots.size() && rr.pivots[pi] == j) { ++pi; continue; }
            free.push_back(j);
        }
    }
    Mat<F> ker(f, m.cols(), (int)free.size());
    for (int k = 0; k < (int)free.size(); ++k) {
        int fc = free[k];
        ker(fc, k) = f.one();
        for (int i = 0; i < rr.rank; ++i)
            ker(rr.pivots[i], k) = f.neg(rr.red(i, fc));
    }
    return ker;
}

// X with a*X = b, if any (least thought: via rref of [a|b])
template <class F>
std::optional<Mat<F>> solve(const Mat<F>& a, const Mat<F>& b) {
    assert(a.rows() == b.rows());
    const F f = a.field();
    auto rr = rref(hstack<F>({a, b}));
    // any pivot in the b-part means inconsistency
    for (int p : rr.pivots)
        if (p >= a.cols()) return std::nullopt;
    Mat<F> x(f, a.cols(), b.cols());
    for (int i = 0; i < (int)rr.pivots.size(); ++i)
        for (int j = 0; j < b.cols(); ++j) x(rr.pivots[i], j) = rr.red(i, a.cols() + j);
    return x;
}

template <class F>
std::optional<Mat<F>> inverse(const Mat<F>& m) {
    assert(m.rows() == m.cols());
    auto x = solve(m, Mat<F>::identity(m.field(), m.rows()));
    if (!x) return std::nullopt;
    if (!(mul(*x, m) == Mat<F>::identity(m.field(), m.rows()))) return std::nullopt;
    return x;
}

template <class F>
bool is_invertible(const Mat<F>& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

// Coordinates for K^n / rowspace(rows): `proj` maps K^n onto the complement
// coordinates, `sect` embeds them back; proj*sect = id, ker(proj) = rowspace.
template <class F>
struct Quotient {
    std::vector<int> comp; // non-pivot columns: representatives of the quotient basis
    Mat<F> proj;           // |comp| x n
    Mat<F> sect;           // n x |comp|
};

template <class F>
Quotient<F> quotient_of(const Mat<F>& rows, int n) {
    const F f = rows.field();
    assert(rows.cols() == n);
    auto rr = rref(rows);
    Quotient<F> q;
    {
        size_t pi = 0;
        for (int j = 0; j < n; ++j) {
            if (pi < rr.pivots.size() && rr.pivots[pi] == j) { ++pi; continue; }
            q.comp.push_back(j);
        }
    }
    q.proj = Mat<F>(f, (int)q.comp.size(), n);
    q.sect = Mat<F>(f, n, (int)q.comp.size());
    for (int k = 0; k < (int)q.comp.size(); ++k) {
        int c = q.comp[k];
        q.proj(k, c) = f.one();
        q.sect(c, k) = f.one();
        for (int i = 0; i < rr.rank; ++i)
            q.proj(k, rr.pivots[i]) = f.neg(rr.red(i, c));
    }
    return q;
}

// basis (as columns) of the column space, taken from the original columns
template <class F>
Mat<F> column_space_basis(const Mat<F>& m) {
    auto rr = rref(m);
    Mat<F> out(m.field(), m.rows(), rr.rank);
    for (int k = 0; k < rr.rank; ++k)
        for (int i = 0; i < m.rows(); ++i) out(i, k) = m(i, rr.pivots[k]);
    return out;
}

template <class F>
Mat<F> rand_mat(F f, int r, int c, Rng& rng, long bound) {
    Mat<F> m(f, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = f.rand(rng, bound);
    return m;
}

} // namespace qmod
