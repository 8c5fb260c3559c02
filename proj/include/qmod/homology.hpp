#pragma once
#include "decompose.hpp"

namespace qmod {

// --- covers, hulls, minimal resolutions -------------------------------------

template <class F>
struct CoverData {
    Module<F> term;
    MMap<F> map;            // term -> M for covers, M -> term for hulls
    std::vector<int> verts; // vertex multiset of the indecomposable summands
};

template <class F>
CoverData<F> projective_cover(const Module<F>& m) {
    const auto& a = *m.alg;
    auto [t, pr] = top(m);
    CoverData<F> out;
    std::vector<Module<F>> parts;
    std::vector<MMap<F>> maps;
    for (int v = 0; v < a.nv; ++v) {
        if (t.dims[v] == 0) continue;
        // preimages in M_v of a basis of top(M)_v
        auto pre = solve(pr.comp[v], Mat<F>::identity(a.fld, t.dims[v]));
        if (!pre) throw PreconditionError("top projection is not surjective");
        for (int j = 0; j < t.dims[v]; ++j) {
            auto pv = proj_module(m.alg, v);
            maps.push_back(hom_from_proj(pv, v, m, col(*pre, j)));
            parts.push_back(std::move(pv));
            out.verts.push_back(v);
        }
    }
    if (parts.empty()) {
        out.term = zero_module(m.alg);
        out.map = zero_map(out.term, m);
        return out;
    }
    auto sum = direct_sum(parts, m.alg);
    out.map = sum_map_out(sum, maps);
    out.term = std::move(sum.mod);
    return out;
}

// dual of a map: D(cod) -> D(dom) over the opposite algebra
template <class F>
MMap<F> dual_map(const MMap<F>& f) {
    MMap<F> d{dual_module(f.cod), dual_module(f.dom), {}};
    for (auto& c : f.comp) d.comp.push_back(c.transpose());
    return d;
}

template <class F>
CoverData<F> injective_hull(const Module<F>& m) {
    auto cov = projective_cover(dual_module(m));
    CoverData<F> out;
    out.term = dual_module(cov.term);
    out.map = dual_map(cov.map); // M = D(D(M)) -> D(cover)
    out.verts = std::move(cov.verts);
    return out;
}

// minimal resolution: terms[i] with maps[0] the augmentation and maps[i] the
// differential between terms i and i-1. `complete` says the final kernel or
// cokernel vanished within the requested length.
template <class F>
struct Resolution {
    std::vector<Module<F>> terms;
    std::vector<MMap<F>> maps;
    std::vector<std::vector<int>> verts;
    bool complete = false;
};

template <class F>
Resolution<F> min_proj_resolution(const Module<F>& m, int maxterms) {
    Resolution<F> r;
    Module<F> k = m;
    MMap<F> prev_incl; // kernel -> previous term
    for (int i = 0; i < maxterms; ++i) {
        if (k.tdim() == 0) {
            r.complete = true;
            return r;
        }
        auto cov = projective_cover(k);
        r.maps.push_back(i == 0 ? cov.map : compose(prev_incl, cov.map));
        auto [ker, incl] = kernel(cov.map);
        r.terms.push_back(std::move(cov.term));
        r.verts.push_back(std::move(cov.verts));
        prev_incl = std::move(incl);
        k = std::move(ker);
    }
    r.complete = (k.tdim() == 0);
    return r;
}

template <class F>
Resolution<F> min_inj_resolution(const Module<F>& m, int maxterms) {
    auto rp = min_proj_resolution(dual_module(m), maxterms);
    Resolution<F> r;
    r.complete = rp.complete;
    r.verts = std::move(rp.verts);
    for (auto& t : rp.terms) r.terms.push_back(dual_module(t));
    for (auto& f : rp.maps) r.maps.push_back(dual_map(f));
    return r;
}

template <class F>
Module<F> syzygy(const Module<F>& m, int k) {
    Module<F> cur = m;
    for (int i = 0; i < k; ++i) {
        if (cur.tdim() == 0) break;
        auto cov = projective_cover(cur);
        cur = kernel(cov.map).first;
    }
    return cur;
}

template <class F>
Module<F> cosyzygy(const Module<F>& m, int k) {
    Module<F> cur = m;
    for (int i = 0; i < k; ++i) {
        if (cur.tdim() == 0) break;
        auto hull = injective_hull(cur);
        cur = cokernel(hull.map).first;
    }
    return cur;
}

// --- homological dimensions --------------------------------------------------

struct Extent {
    enum Kind { Exact, AtLeast, Infinite } kind = Exact;
    int n = 0;
    bool operator==(const Extent&) const = default;
    static Extent exact(int k) { return {Exact, k}; }
    static Extent at_least(int k) { return {AtLeast, k}; }
    static Extent infinite() { return {Infinite, 0}; }
    std::string str() const {
        if (kind == Infinite) return "infinity";
        if (kind == AtLeast) return "at least " + std::to_string(n);
        return std::to_string(n);
    }
    // true when the value is known to be <= b (resp. >= b)
    bool known_le(int b) const { return kind == Exact && n <= b; }
    bool known_ge(int b) const {
        return kind == Infinite || (kind != Infinite && n >= b);
    }
};

template <class F>
Extent pdim(const Module<F>& m, int cap = 24) {
    if (m.tdim() == 0) return Extent::exact(-1);
    auto r = min_proj_resolution(m, cap + 1);
    if (r.complete) return Extent::exact((int)r.terms.size() - 1);
    return Extent::at_least((int)r.terms.size());
}

template <class F>
Extent idim(const Module<F>& m, int cap = 24) {
    return pdim(dual_module(m), cap);
}

inline Extent combine_max(const std::vector<Extent>& xs) {
    bool lower_only = false;
    int hi = -1;
    for (auto& x : xs) {
        if (x.kind == Extent::Infinite) return Extent::infinite();
        if (x.kind == Extent::AtLeast) lower_only = true;
        hi = std::max(hi, x.n);
    }
    return lower_only ? Extent::at_least(hi) : Extent::exact(hi);
}

template <class F>
Extent global_dimension(const AlgP<F>& a, int cap = 24) {
    std::vector<Extent> xs;
    for (int v = 0; v < a->nv; ++v) xs.push_back(pdim(simple_module(a, v), cap));
    return combine_max(xs);
}

// vertices whose injective I(v) is also projective
template <class F>
std::vector<int> projective_injective_vertices(const AlgP<F>& a) {
    std::vector<int> out;
    for (int v = 0; v < a->nv; ++v) {
        auto iv = inj_module(a, v);
        for (int w = 0; w < a->nv; ++w)
            if (indec_isomorphic(iv, proj_module(a, w))) {
                out.push_back(v);
                break;
            }
    }
    return out;
}

// vertices whose projective P(v) is also injective
template <class F>
std::vector<int> injective_projective_vertices(const AlgP<F>& a) {
    std::vector<int> out;
    for (int v = 0; v < a->nv; ++v) {
        auto pv = proj_module(a, v);
        for (int w = 0; w < a->nv; ++w)
            if (indec_isomorphic(pv, inj_module(a, w))) {
                out.push_back(v);
                break;
            }
    }
    return out;
}

// number of leading terms of the minimal injective resolution of the regular
// module that are projective
template <class F>
Extent dominant_dimension(const AlgP<F>& a, int cap = 24) {
    auto pinj = projective_injective_vertices(a);
    std::vector<bool> ok(a->nv, false);
    for (int v : pinj) ok[v] = true;
    Module<F> k = regular_module(a);
    for (int n = 0; n <= cap; ++n) {
        if (k.tdim() == 0) return Extent::infinite();
        auto hull = injective_hull(k);
        for (int v : hull.verts)
            if (!ok[v]) return Extent::exact(n);
        k = cokernel(hull.map).first;
    }
    return Extent::at_least(cap + 1);
}

template <class F>
bool is_selfinjective(const AlgP<F>& a) {
    auto pinj = projective_injective_vertices(a);
    return (int)pinj.size() == a->nv;
}

// --- Ext groups ---------------------------------------------------------------

// matrix of "compose with d" between hom spaces, in the given bases
template <class F>
Mat<F> induced_matrix(const F& f, const std::vector<MMap<F>>& to_basis,
                      const std::vector<MMap<F>>& from_basis, const MMap<F>& d) {
    // column j = coordinates of from_basis[j] o d in to_basis
    Mat<F> out(f, (int)to_basis.size(), (int)from_basis.size());
    if (from_basis.empty()) return out;
    if (to_basis.empty()) {
        for (auto& h : from_basis)
            if (!map_is_zero(compose(h, d)))
                throw PreconditionError("induced map escapes the empty hom space");
        return out;
    }
    auto flat = flatten_maps(to_basis);
    std::vector<MMap<F>> comps;
    for (auto& h : from_basis) comps.push_back(compose(h, d));
    auto sol = solve(flat, flatten_maps(comps));
    if (!sol) throw PreconditionError("induced map escapes its hom space");
    return *sol;
}

// dimensions of Ext^0..Ext^upto (M, N)
template <class F>
std::vector<int> ext_dims(const Module<F>& m, const Module<F>& n, int upto) {
    auto r = min_proj_resolution(m, upto + 2);
    const F& f = m.alg->fld;
    std::vector<std::vector<MMap<F>>> homs;
    for (int i = 0; i <= upto + 1; ++i) {
        if (i < (int)r.terms.size())
            homs.push_back(hom_basis(r.terms[i], n));
        else
            homs.push_back({});
    }
    std::vector<int> ranks(upto + 2, 0); // rank of Hom(P_{i-1},N) -> Hom(P_i,N)
    for (int i = 1; i <= upto + 1; ++i) {
        if (i >= (int)r.terms.size() || homs[i].empty() || homs[i - 1].empty()) continue;
        ranks[i] = rank(induced_matrix(f, homs[i], homs[i - 1], r.maps[i]));
    }
    std::vector<int> out;
    for (int i = 0; i <= upto; ++i) {
        // dim ker(d_{i+1}^*) - dim im(d_i^*)
        out.push_back((int)homs[i].size() - ranks[i + 1] - ranks[i]);
    }
    return out;
}

// --- Nakayama functor and the translate ---------------------------------------

// right multiplication by a basis element, as a map P(tgt x) -> P(src x)
template <class F>
MMap<F> right_mult_map(const AlgP<F>& a, int x) {
    auto pt = proj_module(a, a->btgt[x]);
    auto ps = proj_module(a, a->bsrc[x]);
    std::vector<std::vector<int>> bt(a->nv), bs(a->nv);
    std::vector<int> post(a->dim(), -1), poss(a->dim(), -1);
    for (int b = 0; b < a->dim(); ++b) {
        if (a->bsrc[b] == a->btgt[x]) {
            post[b] = (int)bt[a->btgt[b]].size();
            bt[a->btgt[b]].push_back(b);
        }
        if (a->bsrc[b] == a->bsrc[x]) {
            poss[b] = (int)bs[a->btgt[b]].size();
            bs[a->btgt[b]].push_back(b);
        }
    }
    MMap<F> f{pt, ps, {}};
    for (int v = 0; v < a->nv; ++v) {
        Mat<F> cv(a->fld, ps.dims[v], pt.dims[v]);
        for (int j = 0; j < pt.dims[v]; ++j) {
            int b = bt[v][j];
            const auto& prod = a->mult[b][x];
            if (prod.empty()) continue;
            for (int c = 0; c < a->dim(); ++c)
                if (!a->fld.is_zero(prod[c])) cv(poss[c], j) = prod[c];
        }
        f.comp.push_back(std::move(cv));
    }
    return f;
}

// Hom(M, A) as a module over the opposite algebra, with the hom bases kept
// so that maps can be transported through the functor
template <class F>
struct NuData {
    Module<F> orig;
    std::vector<std::vector<MMap<F>>> homs; // homs[w]: basis of Hom(M, P(w))
    Module<F> hom_mod;                      // over op(A)
    Module<F> nu;                           // D Hom(M, A) over A
};

template <class F>
NuData<F> nu_data(const Module<F>& m) {
    const auto& a = *m.alg;
    const F& f = a.fld;
    NuData<F> d;
    d.orig = m;
    for (int w = 0; w < a.nv; ++w) d.homs.push_back(hom_basis(m, proj_module(m.alg, w)));
    auto aop = op_algebra(m.alg);
    d.hom_mod.alg = aop;
    for (int w = 0; w < a.nv; ++w) d.hom_mod.dims.push_back((int)d.homs[w].size());
    for (int x = 0; x < a.dim(); ++x) {
        if (x < a.nv) {
            d.hom_mod.act.push_back(Mat<F>::identity(f, d.hom_mod.dims[x]));
            continue;
        }
        // op action of x: Hom(M, P(tgt x)) -> Hom(M, P(src x)), h -> rho_x o h
        int s = a.bsrc[x], t = a.btgt[x];
        auto rho = right_mult_map(m.alg, x);
        std::vector<MMap<F>> imgs;
        for (auto& h : d.homs[t]) imgs.push_back(compose(rho, h));
        Mat<F> mx(f, d.hom_mod.dims[s], d.hom_mod.dims[t]);
        if (!d.homs[t].empty()) {
            if (d.homs[s].empty()) {
                for (auto& g : imgs)
                    if (!map_is_zero(g)) throw PreconditionError("hom module action escaped");
            } else {
                auto sol = solve(flatten_maps(d.homs[s]), flatten_maps(imgs));
                if (!sol) throw PreconditionError("hom module action escaped");
                mx = *sol;
            }
        }
        d.hom_mod.act.push_back(std::move(mx));
    }
    d.nu = dual_module(d.hom_mod);
    return d;
}

template <class F>
Module<F> nu_module(const Module<F>& m) {
    return nu_data(m).nu;
}

// the Nakayama functor on a map: nu(f): nu(X) -> nu(Y) for f: X -> Y
template <class F>
MMap<F> nu_of_map(const NuData<F>& nx, const NuData<F>& ny, const MMap<F>& f) {
    const auto& a = *nx.orig.alg;
    MMap<F> out{nx.nu, ny.nu, {}};
    for (int w = 0; w < a.nv; ++w) {
        // Hom(Y, P(w)) -> Hom(X, P(w)), g -> g o f ; then transpose
        Mat<F> bw(a.fld, (int)nx.homs[w].size(), (int)ny.homs[w].size());
        if (!ny.homs[w].empty()) {
            std::vector<MMap<F>> imgs;
            for (auto& g : ny.homs[w]) imgs.push_back(compose(g, f));
            if (nx.homs[w].empty()) {
                for (auto& g : imgs)
                    if (!map_is_zero(g)) throw PreconditionError("hom image escaped");
            } else {
                auto sol = solve(flatten_maps(nx.homs[w]), flatten_maps(imgs));
                if (!sol) throw PreconditionError("hom image escaped");
                bw = *sol;
            }
        }
        out.comp.push_back(bw.transpose());
    }
    return out;
}

template <class F>
Module<F> nu_inv_module(const Module<F>& m) {
    return dual_module(nu_module(dual_module(m)));
}

// Auslander-Reiten translate via a minimal projective presentation
template <class F>
Module<F> ar_translate(const Module<F>& m) {
    auto r = min_proj_resolution(m, 2);
    if (r.terms.size() < 2) return zero_module(m.alg); // projective (or zero)
    auto n1 = nu_data(r.terms[1]), n0 = nu_data(r.terms[0]);
    auto nd = nu_of_map(n1, n0, r.maps[1]);
    return kernel(nd).first;
}

template <class F>
Module<F> ar_translate_inv(const Module<F>& m) {
    return dual_module(ar_translate(dual_module(m)));
}

// --- generation and cogeneration conditions -----------------------------------

// vertices v with P(v) in add(p); p must be projective
template <class F>
std::vector<int> add_vertices_of_projective(const Module<F>& p, Rng& rng) {
    std::vector<int> out;
    auto cls = summand_classes(p, rng);
    std::vector<bool> seen(p.alg->nv, false);
    for (auto& [rep, mult] : cls) {
        bool matched = false;
        for (int v = 0; v < p.alg->nv; ++v)
            if (indec_isomorphic(rep, proj_module(p.alg, v))) {
                if (!seen[v]) out.push_back(v);
                seen[v] = true;
                matched = true;
                break;
            }
        if (!matched) throw PreconditionError("module is not projective");
    }
    std::sort(out.begin(), out.end());
    return out;
}

// first k+1 terms of the minimal projective resolution lie in add(p)
template <class F>
bool generated_to_level(const Module<F>& m, const std::vector<int>& proj_verts, int k) {
    auto r = min_proj_resolution(m, k + 1);
    std::vector<bool> ok(m.alg->nv, false);
    for (int v : proj_verts) ok[v] = true;
    for (int i = 0; i < std::min<int>(k + 1, (int)r.terms.size()); ++i)
        for (int v : r.verts[i])
            if (!ok[v]) return false;
    return true;
}

template <class F>
bool cogenerated_to_level(const Module<F>& m, const std::vector<int>& inj_verts, int k) {
    auto r = min_inj_resolution(m, k + 1);
    std::vector<bool> ok(m.alg->nv, false);
    for (int v : inj_verts) ok[v] = true;
    for (int i = 0; i < std::min<int>(k + 1, (int)r.terms.size()); ++i)
        for (int v : r.verts[i])
            if (!ok[v]) return false;
    return true;
}

} // namespace qmod
