#pragma once
#include <functional>

#include "module.hpp"

namespace qmod {

// --- polynomial helpers (dense, low degree) --------------------------------

namespace detail {

template <class F>
int poly_deg(const F& f, const std::vector<typename F::Elem>& p) {
    for (int i = (int)p.size() - 1; i >= 0; --i)
        if (!f.is_zero(p[i])) return i;
    return -1;
}

template <class F>
std::vector<typename F::Elem> poly_mul(const F& f, const std::vector<typename F::Elem>& a,
                                        const std::vector<typename F::Elem>& b) {
    int da = poly_deg(f, a), db = poly_deg(f, b);
    if (da < 0 || db < 0) return {f.zero()};
    std::vector<typename F::Elem> c(da + db + 1, f.zero());
    for (int i = 0; i <= da; ++i)
        for (int j = 0; j <= db; ++j) c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
    return c;
}

template <class F>
std::pair<std::vector<typename F::Elem>, std::vector<typename F::Elem>> poly_divmod(
    const F& f, std::vector<typename F::Elem> a, const std::vector<typename F::Elem>& b) {
    int db = poly_deg(f, b);
    if (db < 0) throw PreconditionError("polynomial division by zero");
    auto inv = f.inv(b[db]);
    std::vector<typename F::Elem> q(std::max(0, poly_deg(f, a) - db + 1), f.zero());
    for (int da = poly_deg(f, a); da >= db; da = poly_deg(f, a)) {
        auto c = f.mul(a[da], inv);
        q[da - db] = c;
        for (int i = 0; i <= db; ++i) a[da - db + i] = f.sub(a[da - db + i], f.mul(c, b[i]));
    }
    return {q, a};
}

// u*a + v*b = g (g the monic gcd)
template <class F>
struct ExtGcd {
    std::vector<typename F::Elem> g, u, v;
};

template <class F>
ExtGcd<F> poly_ext_gcd(const F& f, std::vector<typename F::Elem> a,
                       std::vector<typename F::Elem> b) {
    std::vector<typename F::Elem> u0{f.one()}, v0{f.zero()}, u1{f.zero()}, v1{f.one()};
    while (poly_deg(f, b) >= 0) {
        auto [q, r] = poly_divmod(f, a, b);
        auto qu = poly_mul(f, q, u1), qv = poly_mul(f, q, v1);
        std::vector<typename F::Elem> u2(std::max(u0.size(), qu.size()), f.zero());
        std::vector<typename F::Elem> v2(std::max(v0.size(), qv.size()), f.zero());
        for (size_t i = 0; i < u2.size(); ++i) {
            auto x = i < u0.size() ? u0[i] : f.zero();
            auto y = i < qu.size() ? qu[i] : f.zero();
            u2[i] = f.sub(x, y);
        }
        for (size_t i = 0; i < v2.size(); ++i) {
            auto x = i < v0.size() ? v0[i] : f.zero();
            auto y = i < qv.size() ? qv[i] : f.zero();
            v2[i] = f.sub(x, y);
        }
        a = std::move(b);
        b = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    int dg = poly_deg(f, a);
    auto lead = f.inv(a[dg]);
    auto scl = [&](std::vector<typename F::Elem>& p) {
        for (auto& c : p) c = f.mul(c, lead);
    };
    scl(a);
    scl(u0);
    scl(v0);
    return {a, u0, v0};
}

template <class F>
typename F::Elem poly_eval(const F& f, const std::vector<typename F::Elem>& p,
                           const typename F::Elem& x) {
    auto acc = f.zero();
    for (int i = poly_deg(f, p); i >= 0; --i) acc = f.add(f.mul(acc, x), p[i]);
    return acc;
}

// roots in the ground field of a nonzero polynomial
inline std::vector<mpq_class> field_roots(const QQ& f, const std::vector<mpq_class>& poly) {
    int d = poly_deg(f, poly);
    std::vector<mpq_class> mon(poly.begin(), poly.begin() + d + 1);
    for (auto& c : mon) c /= poly[d];
    // integer substitution: roots of x^d + sum c_i x^i are u/den for integer
    // roots u of the monic integer polynomial with coefficients c_i den^(d-i)
    mpz_class den = 1;
    for (auto& c : mon) den = lcm(den, c.get_den());
    std::vector<mpz_class> zc(d + 1);
    mpz_class pw = 1;
    for (int i = d; i >= 0; --i) {
        mpq_class t = mon[i] * pw;
        zc[i] = t.get_num();
        if (i > 0) pw *= den;
    }
    auto eval = [&](const mpz_class& x) {
        mpz_class acc = 0;
        for (int i = d; i >= 0; --i) acc = acc * x + zc[i];
        return acc;
    };
    std::vector<mpq_class> roots;
    mpz_class c0 = zc[0];
    if (c0 == 0) {
        roots.push_back(0);
        // factor out x once and retry on the cofactor for the remaining roots
        std::vector<mpq_class> rest(mon.begin() + 1, mon.end());
        if (poly_deg(f, rest) >= 1)
            for (auto& r : field_roots(f, rest))
                if (r != 0) roots.push_back(r);
        return roots;
    }
    mpz_class a0 = abs(c0);
    std::vector<mpz_class> divs;
    for (mpz_class i = 1; i * i <= a0 && i < 2000000; ++i)
        if (a0 % i == 0) {
            divs.push_back(i);
            divs.push_back(a0 / i);
        }
    for (auto& dv : divs)
        for (int sgn : {1, -1}) {
            mpz_class u = sgn * dv;
            if (eval(u) == 0) {
                mpq_class r(u, den);
                r.canonicalize();
                roots.push_back(r);
            }
        }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

inline std::vector<std::int64_t> field_roots(const GF& f, const std::vector<std::int64_t>& poly) {
    std::vector<std::int64_t> roots;
    if (f.p > 4096) return roots; // scanning is only viable for small fields
    for (std::int64_t x = 0; x < f.p; ++x)
        if (f.is_zero(poly_eval(f, poly, x))) roots.push_back(x);
    return roots;
}

} // namespace detail

// --- endomorphism rings in coordinates --------------------------------------

template <class F>
Mat<F> flatten_maps(const std::vector<MMap<F>>& maps) {
    if (maps.empty()) throw PreconditionError("no maps to flatten");
    const F& f = maps[0].dom.alg->fld;
    int rows = maps[0].cod.tdim() * maps[0].dom.tdim();
    Mat<F> out(f, rows, (int)maps.size());
    for (int j = 0; j < (int)maps.size(); ++j) {
        auto t = total_of_map(maps[j]);
        for (int r = 0; r < t.rows(); ++r)
            for (int c = 0; c < t.cols(); ++c) out(r * t.cols() + c, j) = t(r, c);
    }
    return out;
}

// End(M) with multiplication written in the coordinates of a hom basis
template <class F>
struct EndData {
    Module<F> m;
    std::vector<MMap<F>> basis;
    std::vector<std::vector<std::vector<typename F::Elem>>> mult; // [i][j] -> coords of b_i o b_j
    std::vector<typename F::Elem> unit;
    int n() const { return (int)basis.size(); }
};

template <class F>
EndData<F> end_data(const Module<F>& m) {
    EndData<F> e;
    e.m = m;
    e.basis = hom_basis(m, m);
    const F& f = m.alg->fld;
    int n = e.n();
    if (n == 0) return e;
    auto flat = flatten_maps(e.basis);
    auto coords = [&](const MMap<F>& g) {
        auto sol = solve(flat, flatten_maps<F>({g}));
        if (!sol) throw PreconditionError("endomorphism outside its own hom space");
        return col(*sol, 0);
    };
    e.mult.assign(n, std::vector<std::vector<typename F::Elem>>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto v = coords(compose(e.basis[i], e.basis[j]));
            e.mult[i][j].assign(v.rows(), f.zero());
            for (int k = 0; k < v.rows(); ++k) e.mult[i][j][k] = v(k, 0);
        }
    auto u = coords(identity_map(m));
    e.unit.assign(u.rows(), f.zero());
    for (int k = 0; k < u.rows(); ++k) e.unit[k] = u(k, 0);
    return e;
}

template <class F>
std::vector<typename F::Elem> end_mul(const EndData<F>& e,
                                      const std::vector<typename F::Elem>& x,
                                      const std::vector<typename F::Elem>& y) {
    const F& f = e.m.alg->fld;
    std::vector<typename F::Elem> out(e.n(), f.zero());
    for (int i = 0; i < e.n(); ++i) {
        if (f.is_zero(x[i])) continue;
        for (int j = 0; j < e.n(); ++j) {
            if (f.is_zero(y[j])) continue;
            auto c = f.mul(x[i], y[j]);
            for (int k = 0; k < e.n(); ++k)
                out[k] = f.add(out[k], f.mul(c, e.mult[i][j][k]));
        }
    }
    return out;
}

template <class F>
MMap<F> end_realize(const EndData<F>& e, const std::vector<typename F::Elem>& x) {
    auto g = zero_map(e.m, e.m);
    for (int i = 0; i < e.n(); ++i)
        if (!e.m.alg->fld.is_zero(x[i])) g = map_add(g, map_scale(x[i], e.basis[i]));
    return g;
}

// radical of End(M), certified: the kernel of the associative trace pairings
// always contains the radical, and a nilpotency check promotes the inclusion
// to equality. Throws Inconclusive when the certificate fails (small fields).
template <class F>
std::vector<std::vector<typename F::Elem>> end_radical(const EndData<F>& e) {
    const F& f = e.m.alg->fld;
    int n = e.n();
    // trace of left multiplication and trace of the action on M itself
    std::vector<typename F::Elem> trL(n, f.zero()), trM(n, f.zero());
    for (int c = 0; c < n; ++c) {
        for (int i = 0; i < n; ++i) trL[c] = f.add(trL[c], e.mult[c][i][i]);
        auto t = total_of_map(e.basis[c]);
        for (int i = 0; i < t.rows(); ++i) trM[c] = f.add(trM[c], t(i, i));
    }
    Mat<F> gram(f, 2 * n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto a = f.zero(), b = f.zero();
            for (int c = 0; c < n; ++c) {
                a = f.add(a, f.mul(e.mult[i][j][c], trL[c]));
                b = f.add(b, f.mul(e.mult[i][j][c], trM[c]));
            }
            gram(i, j) = a;
            gram(n + i, j) = b;
        }
    auto ker = kernel_basis(gram);
    std::vector<std::vector<typename F::Elem>> rad;
    for (int j = 0; j < ker.cols(); ++j) {
        std::vector<typename F::Elem> v(n, f.zero());
        for (int i = 0; i < n; ++i) v[i] = ker(i, j);
        rad.push_back(std::move(v));
    }
    // nilpotency certificate for the candidate ideal
    auto span = rad;
    for (int round = 0; round <= n && !span.empty(); ++round) {
        std::vector<std::vector<typename F::Elem>> next;
        for (auto& x : rad)
            for (auto& y : span) next.push_back(end_mul(e, x, y));
        Mat<F> rows(f, (int)next.size(), n);
        for (int i = 0; i < (int)next.size(); ++i)
            for (int j = 0; j < n; ++j) rows(i, j) = next[i][j];
        auto rr = rref(rows);
        span.clear();
        for (int i = 0; i < rr.rank; ++i) {
            std::vector<typename F::Elem> v(n, f.zero());
            for (int j = 0; j < n; ++j) v[j] = rr.red(i, j);
            span.push_back(std::move(v));
        }
        if (span.empty()) return rad;
    }
    if (!rad.empty())
        throw Inconclusive("radical certificate failed for an endomorphism ring");
    return rad;
}

// --- decomposition into indecomposable summands ------------------------------

namespace detail {

// coordinates of the power sequence 1, s, s^2, ... until linear dependence;
// returns the monic minimal polynomial of s
template <class F>
std::vector<typename F::Elem> min_poly_of(
    const F& f, int n, const std::vector<typename F::Elem>& unit,
    const std::vector<typename F::Elem>& s,
    const std::function<std::vector<typename F::Elem>(const std::vector<typename F::Elem>&,
                                                      const std::vector<typename F::Elem>&)>& mul) {
    std::vector<std::vector<typename F::Elem>> pows{unit};
    while (true) {
        auto nxt = mul(pows.back(), s);
        Mat<F> m(f, n, (int)pows.size()), b(f, n, 1);
        for (int j = 0; j < (int)pows.size(); ++j)
            for (int i = 0; i < n; ++i) m(i, j) = pows[j][i];
        for (int i = 0; i < n; ++i) b(i, 0) = nxt[i];
        if (auto sol = solve(m, b)) {
            std::vector<typename F::Elem> poly((int)pows.size() + 1, f.zero());
            for (int j = 0; j < (int)pows.size(); ++j) poly[j] = f.neg((*sol)(j, 0));
            poly[pows.size()] = f.one();
            return poly;
        }
        pows.push_back(std::move(nxt));
        if ((int)pows.size() > n + 1) throw PreconditionError("minimal polynomial overflow");
    }
}

} // namespace detail

// one nontrivial idempotent endomorphism, or nothing within the budget
template <class F>
std::optional<MMap<F>> split_idempotent(const EndData<F>& e,
                                        const std::vector<std::vector<typename F::Elem>>& rad,
                                        Rng& rng, int budget) {
    const F& f = e.m.alg->fld;
    int n = e.n();
    // coordinates on S = End/rad
    Mat<F> jrows(f, (int)rad.size(), n);
    for (int i = 0; i < (int)rad.size(); ++i)
        for (int j = 0; j < n; ++j) jrows(i, j) = rad[i][j];
    auto qu = quotient_of(jrows, n);
    int ns = qu.proj.rows();
    if (ns <= 1) return std::nullopt; // local: nothing to split
    auto to_s = [&](const std::vector<typename F::Elem>& x) {
        Mat<F> c(f, n, 1);
        for (int i = 0; i < n; ++i) c(i, 0) = x[i];
        auto y = mul(qu.proj, c);
        std::vector<typename F::Elem> out(ns, f.zero());
        for (int i = 0; i < ns; ++i) out[i] = y(i, 0);
        return out;
    };
    auto from_s = [&](const std::vector<typename F::Elem>& x) {
        Mat<F> c(f, ns, 1);
        for (int i = 0; i < ns; ++i) c(i, 0) = x[i];
        auto y = mul(qu.sect, c);
        std::vector<typename F::Elem> out(n, f.zero());
        for (int i = 0; i < n; ++i) out[i] = y(i, 0);
        return out;
    };
    std::function<std::vector<typename F::Elem>(const std::vector<typename F::Elem>&,
                                                const std::vector<typename F::Elem>&)>
        smul = [&](const std::vector<typename F::Elem>& x, const std::vector<typename F::Elem>& y) {
            return to_s(end_mul(e, from_s(x), from_s(y)));
        };
    auto sunit = to_s(e.unit);

    // center of S: elements commuting with every coordinate vector
    std::vector<std::vector<typename F::Elem>> cands;
    {
        // commutator matrix: for unknown x, [x, e_j] = 0 for all j
        Mat<F> sys(f, ns * ns, ns);
        for (int j = 0; j < ns; ++j) {
            std::vector<typename F::Elem> ej(ns, f.zero());
            ej[j] = f.one();
            for (int i = 0; i < ns; ++i) {
                std::vector<typename F::Elem> ei(ns, f.zero());
                ei[i] = f.one();
                auto lhs = smul(ei, ej), rhs = smul(ej, ei);
                for (int k = 0; k < ns; ++k)
                    sys(j * ns + k, i) = f.sub(lhs[k], rhs[k]);
            }
        }
        auto z = kernel_basis(sys);
        for (int jc = 0; jc < z.cols(); ++jc) {
            std::vector<typename F::Elem> v(ns, f.zero());
            for (int i = 0; i < ns; ++i) v[i] = z(i, jc);
            cands.push_back(std::move(v));
        }
    }
    // then random elements of S as fallback candidates
    for (int t = 0; t < budget; ++t) {
        std::vector<typename F::Elem> v(ns, f.zero());
        for (int i = 0; i < ns; ++i) v[i] = f.rand(rng, 3 + t / 8);
        cands.push_back(std::move(v));
    }

    for (auto& s : cands) {
        auto mp = detail::min_poly_of<F>(f, ns, sunit, s, smul);
        if (detail::poly_deg(f, mp) < 2) continue;
        auto roots = detail::field_roots(f, mp);
        for (auto& lam : roots) {
            // m = (t - lam)^k q with q(lam) != 0; the idempotent supported on
            // the (t - lam)-part is v(s) q(s) from the Bezout identity
            std::vector<typename F::Elem> lin{f.neg(lam), f.one()};
            auto rem = mp;
            std::vector<typename F::Elem> pk{f.one()};
            while (true) {
                auto [q2, r2] = detail::poly_divmod(f, rem, lin);
                bool zero = detail::poly_deg(f, r2) < 0;
                if (!zero) break;
                rem = q2;
                pk = detail::poly_mul(f, pk, lin);
            }
            if (detail::poly_deg(f, rem) < 1) continue; // s - lam nilpotent: no split
            auto bez = detail::poly_ext_gcd(f, pk, rem);
            // u*pk + v*rem = 1, idempotent = (v*rem)(s)
            auto vq = detail::poly_mul(f, bez.v, rem);
            // evaluate vq at s inside S
            std::vector<typename F::Elem> eps(ns, f.zero());
            std::vector<typename F::Elem> pw = sunit;
            for (int i = 0; i <= detail::poly_deg(f, vq); ++i) {
                for (int k = 0; k < ns; ++k) eps[k] = f.add(eps[k], f.mul(vq[i], pw[k]));
                pw = smul(pw, s);
            }
            bool is_zero = true, is_unit = true;
            for (int k = 0; k < ns; ++k) {
                if (!f.is_zero(eps[k])) is_zero = false;
                if (!f.eq(eps[k], sunit[k])) is_unit = false;
            }
            if (is_zero || is_unit) continue;
            // lift to an exact idempotent of End(M): Newton iteration
            auto ecur = from_s(eps);
            for (int it = 0; it < 64; ++it) {
                auto sq = end_mul(e, ecur, ecur);
                bool exact = true;
                for (int k = 0; k < n; ++k) exact &= f.eq(sq[k], ecur[k]);
                if (exact) {
                    auto g = end_realize(e, ecur);
                    if (map_is_zero(g)) break;
                    bool ident = true;
                    for (int v = 0; v < e.m.alg->nv && ident; ++v)
                        ident = g.comp[v] == Mat<F>::identity(f, e.m.dims[v]);
                    if (ident) break;
                    return g;
                }
                // 3e^2 - 2e^3
                auto cube = end_mul(e, sq, ecur);
                for (int k = 0; k < n; ++k)
                    ecur[k] = f.sub(f.mul(f.from_long(3), sq[k]), f.mul(f.from_long(2), cube[k]));
            }
        }
    }
    return std::nullopt;
}

// decompose into indecomposable summands; every returned piece is certified
// indecomposable (local endomorphism ring). Throws Inconclusive rather than
// ever returning a wrong decomposition.
template <class F>
std::vector<Module<F>> decompose(const Module<F>& m, Rng& rng, int budget = 64) {
    std::vector<Module<F>> out;
    if (m.tdim() == 0) return out;
    if (m.tdim() == 1) return {m};
    auto e = end_data(m);
    if (e.n() == 1) return {m};
    auto rad = end_radical(e);
    if (e.n() - (int)rad.size() == 1) return {m};
    auto idem = split_idempotent(e, rad, rng, budget);
    if (!idem)
        throw Inconclusive("could not split a module with non-local endomorphism ring");
    auto im = image(*idem);
    auto ker = kernel(*idem).first;
    if (im.mod.tdim() + ker.tdim() != m.tdim() || im.mod.tdim() == 0 || ker.tdim() == 0)
        throw PreconditionError("idempotent split failed");
    for (auto& part : decompose(im.mod, rng, budget)) out.push_back(std::move(part));
    for (auto& part : decompose(ker, rng, budget)) out.push_back(std::move(part));
    return out;
}

// isomorphism of two certified-indecomposable modules: some hom-basis element
// must be invertible (the non-isomorphisms form a proper subspace)
template <class F>
bool indec_isomorphic(const Module<F>& m, const Module<F>& n) {
    if (m.dims != n.dims) return false;
    for (auto& h : hom_basis(m, n))
        if (map_is_iso(h)) return true;
    return false;
}

template <class F>
bool is_isomorphic(const Module<F>& m, const Module<F>& n, Rng& rng) {
    if (m.alg.get() != n.alg.get()) throw PreconditionError("modules over different algebras");
    if (m.dims != n.dims) return false;
    if (m.tdim() == 0) return true;
    // fast path: a random combination of hom basis elements that happens to be
    // invertible is already a certificate
    auto hb = hom_basis(m, n);
    if (hb.empty()) return false;
    const F& f = m.alg->fld;
    for (int t = 0; t < 24; ++t) {
        auto g = zero_map(m, n);
        for (auto& h : hb) g = map_add(g, map_scale(f.rand(rng, 2 + t / 6), h));
        if (map_is_iso(g)) return true;
    }
    auto dm = decompose(m, rng);
    auto dn = decompose(n, rng);
    if (dm.size() != dn.size()) return false;
    std::vector<bool> used(dn.size(), false);
    for (auto& x : dm) {
        bool hit = false;
        for (size_t j = 0; j < dn.size() && !hit; ++j) {
            if (used[j]) continue;
            if (indec_isomorphic(x, dn[j])) {
                used[j] = true;
                hit = true;
            }
        }
        if (!hit) return false;
    }
    return true;
}

// group the summands of M into isomorphism classes with multiplicities
template <class F>
std::vector<std::pair<Module<F>, int>> summand_classes(const Module<F>& m, Rng& rng) {
    std::vector<std::pair<Module<F>, int>> out;
    for (auto& s : decompose(m, rng)) {
        bool merged = false;
        for (auto& [rep, count] : out)
            if (rep.dims == s.dims && indec_isomorphic(rep, s)) {
                ++count;
                merged = true;
                break;
            }
        if (!merged) out.push_back({std::move(s), 1});
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.tdim() != b.first.tdim()) return a.first.tdim() < b.first.tdim();
        return a.first.dims < b.first.dims;
    });
    return out;
}

// direct sum of one representative from each isomorphism class
template <class F>
Module<F> make_basic(const Module<F>& m, Rng& rng) {
    auto cls = summand_classes(m, rng);
    std::vector<Module<F>> reps;
    for (auto& [rep, count] : cls) reps.push_back(rep);
    if (reps.empty()) return zero_module(m.alg);
    return direct_sum(reps, m.alg).mod;
}

// every indecomposable summand of M occurs (up to iso) as a summand of T
template <class F>
bool in_add(const Module<F>& m, const Module<F>& t, Rng& rng) {
    auto cm = summand_classes(m, rng);
    auto ct = summand_classes(t, rng);
    for (auto& [x, cx] : cm) {
        bool hit = false;
        for (auto& [y, cy] : ct)
            if (x.dims == y.dims && indec_isomorphic(x, y)) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

template <class F>
bool add_equal(const Module<F>& m, const Module<F>& n, Rng& rng) {
    return in_add(m, n, rng) && in_add(n, m, rng);
}

} // namespace qmod
