#pragma once
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace qmod {

// Finite-dimensional algebra given by a basis with structure constants.
// Conventions, used everywhere downstream:
//   * basis[0..nv) are a complete set of primitive orthogonal idempotents e_v;
//   * every basis element x is vertex-homogeneous: e_{tgt(x)} * x * e_{src(x)} = x;
//   * multiplication is composition-style: x*y needs src(x) == tgt(y).
template <class F>
struct Algebra : std::enable_shared_from_this<Algebra<F>> {
    using Elem = typename F::Elem;
    using Vec = std::vector<Elem>;

    F fld;
    int nv = 0;
    std::vector<std::string> vnames;
    std::vector<std::string> bnames;
    std::vector<int> bsrc, btgt;
    // mult[i][j] = coefficients of b_i * b_j; empty vector encodes zero
    std::vector<std::vector<Vec>> mult;
    std::vector<Vec> rad; // basis of the Jacobson radical

    struct ArrowRef {
        std::string name;
        int src, tgt, basis;
    };
    struct QuiverInfo {
        std::vector<ArrowRef> arrows;
        std::vector<std::vector<int>> word; // arrow word of each basis path, empty for idempotents
        int trunc = 0;                      // every path of length >= trunc is zero
    };
    std::optional<QuiverInfo> qinfo;

    // weak on both sides: pointer identity is stable while anyone uses the
    // opposite algebra, and no shared_ptr cycle is formed
    mutable std::weak_ptr<const Algebra> op_cache;
    mutable std::mutex op_mx;

    int dim() const { return (int)bnames.size(); }

    Vec zerovec() const { return Vec(dim(), fld.zero()); }
    Vec unitvec(int i) const {
        Vec v = zerovec();
        v[i] = fld.one();
        return v;
    }
    Vec onevec() const {
        Vec v = zerovec();
        for (int i = 0; i < nv; ++i) v[i] = fld.one();
        return v;
    }

    bool vec_is_zero(const Vec& v) const {
        for (auto& x : v)
            if (!fld.is_zero(x)) return false;
        return true;
    }

    Vec mulv(const Vec& u, const Vec& v) const {
        Vec out = zerovec();
        for (int i = 0; i < dim(); ++i) {
            if (fld.is_zero(u[i])) continue;
            for (int j = 0; j < dim(); ++j) {
                if (fld.is_zero(v[j]) || mult[i][j].empty()) continue;
                auto c = fld.mul(u[i], v[j]);
                const Vec& w = mult[i][j];
                for (int k = 0; k < dim(); ++k)
                    if (!fld.is_zero(w[k])) out[k] = fld.add(out[k], fld.mul(c, w[k]));
            }
        }
        return out;
    }

    // left multiplication operator as a dim x dim matrix
    Mat<F> lmul(const Vec& u) const {
        Mat<F> m(fld, dim(), dim());
        for (int j = 0; j < dim(); ++j) {
            Vec col = mulv(u, unitvec(j));
            for (int i = 0; i < dim(); ++i) m(i, j) = col[i];
        }
        return m;
    }

    std::vector<std::vector<int>> cartan() const {
        // cartan[i][j] = dim e_i A e_j
        std::vector<std::vector<int>> c(nv, std::vector<int>(nv, 0));
        for (int b = 0; b < dim(); ++b) ++c[btgt[b]][bsrc[b]];
        return c;
    }
};

template <class F>
using AlgP = std::shared_ptr<const Algebra<F>>;

namespace detail {

template <class F>
Mat<F> rows_from_vecs(const F& f, const std::vector<typename Algebra<F>::Vec>& vs, int n) {
    Mat<F> m(f, (int)vs.size(), n);
    for (int i = 0; i < (int)m.rows(); ++i)
        for (int j = 0; j < n; ++j) m(i, j) = vs[i][j];
    return m;
}

template <class F>
bool subspace_nilpotent(const Algebra<F>& a, const std::vector<typename Algebra<F>::Vec>& gens) {
    // iterate products gens*span until empty or too deep
    auto span = gens;
    for (int step = 0; step < a.dim() + 1; ++step) {
        if (span.empty()) return true;
        std::vector<typename Algebra<F>::Vec> next;
        for (auto& g : gens)
            for (auto& s : span) {
                auto p = a.mulv(g, s);
                if (!a.vec_is_zero(p)) next.push_back(p);
            }
        if (next.empty()) return true;
        auto rr = rref(rows_from_vecs<F>(a.fld, next, a.dim()));
        span.clear();
        for (int i = 0; i < rr.rank; ++i) {
            typename Algebra<F>::Vec v(a.dim());
            for (int j = 0; j < a.dim(); ++j) v[j] = rr.red(i, j);
            span.push_back(v);
        }
    }
    return false;
}

// the unique scalar lambda with (y - lambda*e) nilpotent in a split local algebra
template <class F>
std::optional<typename F::Elem> local_eigenvalue(const F& f, const Mat<F>& ly, int m);

inline std::optional<QQ::Elem> local_eigenvalue_qq(const QQ& f, const Mat<QQ>& ly, int m) {
    QQ::Elem tr = f.zero();
    for (int i = 0; i < m; ++i) tr = f.add(tr, ly(i, i));
    return f.div(tr, f.from_long(m));
}

template <class F>
bool power_is_zero(const Mat<F>& m, int upto) {
    auto p = m;
    for (int s = 1; s < upto; s *= 2) p = mul(p, p);
    return p.is_zero();
}

template <class F>
std::optional<typename F::Elem> local_eigenvalue(const F& f, const Mat<F>& ly, int m) {
    if constexpr (std::is_same_v<F, QQ>) {
        return local_eigenvalue_qq(f, ly, m);
    } else {
        if (m % f.p != 0) {
            typename F::Elem tr = f.zero();
            for (int i = 0; i < m; ++i) tr = f.add(tr, ly(i, i));
            return f.div(tr, f.from_long(m));
        }
        // p divides m, so p <= m: try every scalar
        for (typename F::Elem lam = 0; lam < f.p; ++lam) {
            auto shifted = sub(ly, scale<F>(lam, Mat<F>::identity(f, m)));
            if (power_is_zero(shifted, 2 * m)) return lam;
        }
        return std::nullopt;
    }
}

} // namespace detail

// Jacobson radical. Char 0 (and p > dim) use the trace form of the regular
// representation; small p falls back to the basic-split structure: off-diagonal
// vertex components plus the nilpotent hyperplane of each local corner.
// The result is verified nilpotent, so a wrong answer cannot escape.
template <class F>
std::vector<typename Algebra<F>::Vec> compute_radical(const Algebra<F>& a) {
    const F& f = a.fld;
    const int n = a.dim();
    std::vector<typename Algebra<F>::Vec> out;

    bool trace_ok = true;
    if constexpr (!std::is_same_v<F, QQ>) trace_ok = (f.p > n);

    if (trace_ok) {
        std::vector<Mat<F>> lops;
        lops.reserve(n);
        for (int i = 0; i < n; ++i) lops.push_back(a.lmul(a.unitvec(i)));
        Mat<F> gram(f, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                auto p = mul(lops[i], lops[j]);
                auto tr = f.zero();
                for (int k = 0; k < n; ++k) tr = f.add(tr, p(k, k));
                gram(i, j) = tr;
                gram(j, i) = tr;
            }
        auto ker = kernel_basis(gram);
        for (int c = 0; c < ker.cols(); ++c) {
            typename Algebra<F>::Vec v(n);
            for (int i = 0; i < n; ++i) v[i] = ker(i, c);
            out.push_back(v);
        }
    } else {
        // cross-vertex basis elements are radical for a basic algebra
        for (int b = a.nv; b < n; ++b)
            if (a.bsrc[b] != a.btgt[b]) out.push_back(a.unitvec(b));
        for (int v = 0; v < a.nv; ++v) {
            std::vector<int> corner;
            for (int b = 0; b < n; ++b)
                if (a.bsrc[b] == v && a.btgt[b] == v) corner.push_back(b);
            int m = (int)corner.size();
            if (m == 1) continue;
            // left multiplication restricted to the corner e_v A e_v
            Mat<F> basis_to_corner(f, m, n);
            std::vector<Mat<F>> ls(m, Mat<F>(f, m, m));
            for (int cj = 0; cj < m; ++cj) {
                for (int ci = 0; ci < m; ++ci) {
                    auto p = a.mulv(a.unitvec(corner[ci]), a.unitvec(corner[cj]));
                    for (int ck = 0; ck < m; ++ck) ls[ci](ck, cj) = p[corner[ck]];
                }
            }
            // lambda is linear; evaluate it on each corner basis element
            std::vector<typename F::Elem> lam(m);
            for (int ci = 0; ci < m; ++ci) {
                auto l = detail::local_eigenvalue(f, ls[ci], m);
                if (!l) throw Error("radical: local corner is not split");
                lam[ci] = *l;
            }
            Mat<F> lrow(f, 1, m);
            for (int ci = 0; ci < m; ++ci) lrow(0, ci) = lam[ci];
            auto ker = kernel_basis(lrow);
            for (int c = 0; c < ker.cols(); ++c) {
                typename Algebra<F>::Vec w(n, f.zero());
                for (int ci = 0; ci < m; ++ci) w[corner[ci]] = ker(ci, c);
                out.push_back(w);
            }
        }
    }

    if (!detail::subspace_nilpotent(a, out))
        throw Error("radical: computed subspace is not nilpotent");
    return out;
}

// structure checks, meant for tests and for freshly constructed algebras
template <class F>
void check_algebra(const Algebra<F>& a) {
    const F& f = a.fld;
    const int n = a.dim();
    for (int v = 0; v < a.nv; ++v) {
        if (a.bsrc[v] != v || a.btgt[v] != v) throw Error("idempotent with wrong vertex tag");
        for (int w = 0; w < a.nv; ++w) {
            auto p = a.mulv(a.unitvec(v), a.unitvec(w));
            auto expect = (v == w) ? a.unitvec(v) : a.zerovec();
            if (p != expect) throw Error("idempotents not orthogonal");
        }
    }
    for (int b = 0; b < n; ++b) {
        auto x = a.unitvec(b);
        if (a.mulv(a.unitvec(a.btgt[b]), x) != x || a.mulv(x, a.unitvec(a.bsrc[b])) != x)
            throw Error("basis element not vertex-homogeneous");
        if (a.mulv(a.onevec(), x) != x || a.mulv(x, a.onevec()) != x)
            throw Error("unit fails");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                auto lhs = a.mulv(a.mulv(a.unitvec(i), a.unitvec(j)), a.unitvec(k));
                auto rhs = a.mulv(a.unitvec(i), a.mulv(a.unitvec(j), a.unitvec(k)));
                if (lhs != rhs) throw Error("associativity fails at a basis triple");
            }
}

template <class F>
AlgP<F> op_algebra(const AlgP<F>& a) {
    std::scoped_lock lk(a->op_mx);
    if (auto cached = a->op_cache.lock()) return cached;
    auto b = std::make_shared<Algebra<F>>();
    b->fld = a->fld;
    b->nv = a->nv;
    b->vnames = a->vnames;
    b->bnames = a->bnames;
    b->bsrc = a->btgt;
    b->btgt = a->bsrc;
    b->mult.assign(a->dim(), std::vector<typename Algebra<F>::Vec>(a->dim()));
    for (int i = 0; i < a->dim(); ++i)
        for (int j = 0; j < a->dim(); ++j) b->mult[i][j] = a->mult[j][i];
    b->rad = a->rad;
    if (a->qinfo) {
        typename Algebra<F>::QuiverInfo qi;
        qi.trunc = a->qinfo->trunc;
        for (auto& ar : a->qinfo->arrows) qi.arrows.push_back({ar.name, ar.tgt, ar.src, ar.basis});
        qi.word.resize(a->dim());
        for (int i = 0; i < a->dim(); ++i) {
            auto w = a->qinfo->word[i];
            std::reverse(w.begin(), w.end());
            qi.word[i] = w;
        }
        b->qinfo = std::move(qi);
    }
    b->op_cache = a;
    a->op_cache = b;
    return b;
}

} // namespace qmod
