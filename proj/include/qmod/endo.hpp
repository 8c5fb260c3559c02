#pragma once
#include <algorithm>
#include <map>
#include <numeric>

#include "homology.hpp"
#include "quiver.hpp"

namespace qmod {

// --- End(T)^op as a based algebra ---------------------------------------------
//
// Vertex i of the endomorphism algebra is the i-th summand. A basis element
// realizing a map X_i -> X_j is graded with source j and target i: composition
// in the opposite algebra is f*g = (g then f read as module maps).

template <class F>
struct EndAlgebra {
    AlgP<F> alg;
    std::vector<Module<F>> parts;
    std::vector<int> mfrom, mto; // basis element b realizes parts[mfrom[b]] -> parts[mto[b]]
    std::vector<MMap<F>> maps;
    std::vector<std::vector<std::vector<int>>> block; // block[i][j]: basis indices of Hom(X_i, X_j)
};

template <class F>
EndAlgebra<F> end_algebra(const std::vector<Module<F>>& parts) {
    if (parts.empty()) throw PreconditionError("endomorphism algebra needs at least one summand");
    const F& f = parts[0].alg->fld;
    int nv = (int)parts.size();

    // each summand must be indecomposable (local endomorphism ring), and the
    // summands pairwise non-isomorphic, so that the identities become a complete
    // set of primitive orthogonal idempotents and the radical is unit-spanned
    std::vector<std::vector<MMap<F>>> diag_rad(nv);
    for (int i = 0; i < nv; ++i) {
        auto ed = end_data(parts[i]);
        auto rad = end_radical(ed);
        if (ed.n() - (int)rad.size() != 1)
            throw PreconditionError("summand does not have local endomorphism ring");
        for (auto& r : rad) diag_rad[i].push_back(end_realize(ed, r));
    }
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            if (parts[i].dims == parts[j].dims && indec_isomorphic(parts[i], parts[j]))
                throw PreconditionError("summands must be pairwise non-isomorphic");

    EndAlgebra<F> e;
    e.parts = parts;
    e.block.assign(nv, std::vector<std::vector<int>>(nv));
    std::vector<std::string> bnames;
    for (int i = 0; i < nv; ++i) {
        e.maps.push_back(identity_map(parts[i]));
        e.mfrom.push_back(i);
        e.mto.push_back(i);
        e.block[i][i].push_back(i);
        bnames.push_back("e_" + std::to_string(i + 1));
    }
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) {
            std::vector<MMap<F>> hs = (i == j) ? diag_rad[i] : hom_basis(parts[i], parts[j]);
            int k = 0;
            for (auto& h : hs) {
                e.block[i][j].push_back((int)e.maps.size());
                bnames.push_back("f" + std::to_string(i + 1) + "_" + std::to_string(j + 1) +
                                 "_" + std::to_string(++k));
                e.maps.push_back(h);
                e.mfrom.push_back(i);
                e.mto.push_back(j);
            }
        }

    int dim = (int)e.maps.size();
    std::vector<std::vector<Mat<F>>> flat(nv, std::vector<Mat<F>>(nv, Mat<F>(f, 0, 0)));
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) {
            if (e.block[i][j].empty()) continue;
            std::vector<MMap<F>> bl;
            for (int idx : e.block[i][j]) bl.push_back(e.maps[idx]);
            flat[i][j] = flatten_maps(bl);
        }

    auto alg = std::make_shared<Algebra<F>>();
    alg->fld = f;
    alg->nv = nv;
    for (int i = 0; i < nv; ++i) alg->vnames.push_back(std::to_string(i + 1));
    alg->bnames = bnames;
    for (int b = 0; b < dim; ++b) {
        alg->bsrc.push_back(e.mto[b]); // opposite algebra: grading is mirrored
        alg->btgt.push_back(e.mfrom[b]);
    }
    alg->mult.assign(dim, std::vector<typename Algebra<F>::Vec>(dim));
    for (int b = 0; b < dim; ++b)
        for (int c = 0; c < dim; ++c) {
            if (e.mto[b] != e.mfrom[c]) continue; // not composable
            auto comp = compose(e.maps[c], e.maps[b]);
            if (map_is_zero(comp)) continue;
            int bi = e.mfrom[b], bj = e.mto[c];
            auto sol = solve(flat[bi][bj], flatten_maps<F>({comp}));
            if (!sol) throw PreconditionError("endomorphism product escaped its hom block");
            auto vec = alg->zerovec();
            bool nonzero = false;
            for (int k = 0; k < (int)e.block[bi][bj].size(); ++k) {
                vec[e.block[bi][bj][k]] = (*sol)(k, 0);
                if (!f.is_zero((*sol)(k, 0))) nonzero = true;
            }
            if (nonzero) alg->mult[b][c] = std::move(vec);
        }
    for (int b = nv; b < dim; ++b) alg->rad.push_back(alg->unitvec(b));
    if (!detail::subspace_nilpotent(*alg, alg->rad))
        throw PreconditionError("endomorphism radical failed its nilpotency certificate");
    check_algebra(*alg);
    e.alg = alg;
    return e;
}

// decompose first, then take the basic endomorphism algebra of the summand classes
template <class F>
EndAlgebra<F> end_algebra_basic(const Module<F>& m, Rng& rng) {
    std::vector<Module<F>> parts;
    for (auto& [rep, mult] : summand_classes(m, rng)) parts.push_back(rep);
    return end_algebra(parts);
}

// --- the hom functor into End(T)^op-modules ------------------------------------

template <class F>
struct PhiData {
    Module<F> mod;                          // Hom(T, X) over End(T)^op
    std::vector<std::vector<MMap<F>>> homs; // homs[i]: basis of Hom(X_i, X)
};

template <class F>
PhiData<F> phi_data(const EndAlgebra<F>& e, const Module<F>& x) {
    const F& f = x.alg->fld;
    int nv = (int)e.parts.size();
    PhiData<F> d;
    for (int i = 0; i < nv; ++i) d.homs.push_back(hom_basis(e.parts[i], x));
    d.mod.alg = e.alg;
    for (int i = 0; i < nv; ++i) d.mod.dims.push_back((int)d.homs[i].size());
    for (int b = 0; b < e.alg->dim(); ++b) {
        if (b < nv) {
            d.mod.act.push_back(Mat<F>::identity(f, d.mod.dims[b]));
            continue;
        }
        // action of (h: X_i -> X_j) sends Hom(X_j, X) to Hom(X_i, X) by g -> g o h
        int i = e.mfrom[b], j = e.mto[b];
        Mat<F> mx(f, d.mod.dims[i], d.mod.dims[j]);
        if (!d.homs[j].empty() && !d.homs[i].empty()) {
            std::vector<MMap<F>> imgs;
            for (auto& g : d.homs[j]) imgs.push_back(compose(g, e.maps[b]));
            auto sol = solve(flatten_maps(d.homs[i]), flatten_maps(imgs));
            if (!sol) throw PreconditionError("hom action escaped its basis");
            mx = *sol;
        } else if (!d.homs[j].empty()) {
            for (auto& g : d.homs[j])
                if (!map_is_zero(compose(g, e.maps[b])))
                    throw PreconditionError("hom action escaped its basis");
        }
        d.mod.act.push_back(std::move(mx));
    }
    return d;
}

template <class F>
Module<F> phi_module(const EndAlgebra<F>& e, const Module<F>& x) {
    return phi_data(e, x).mod;
}

// the functor on maps: Hom(T, f) for f: X -> Y
template <class F>
MMap<F> phi_of_map(const EndAlgebra<F>& e, const PhiData<F>& dx, const PhiData<F>& dy,
                   const MMap<F>& f) {
    MMap<F> out{dx.mod, dy.mod, {}};
    for (size_t i = 0; i < e.parts.size(); ++i) {
        Mat<F> mx(e.alg->fld, (int)dy.homs[i].size(), (int)dx.homs[i].size());
        if (!dx.homs[i].empty() && !dy.homs[i].empty()) {
            std::vector<MMap<F>> imgs;
            for (auto& g : dx.homs[i]) imgs.push_back(compose(f, g));
            auto sol = solve(flatten_maps(dy.homs[i]), flatten_maps(imgs));
            if (!sol) throw PreconditionError("hom image escaped its basis");
            mx = *sol;
        } else if (!dx.homs[i].empty()) {
            for (auto& g : dx.homs[i])
                if (!map_is_zero(compose(f, g)))
                    throw PreconditionError("hom image escaped its basis");
        }
        out.comp.push_back(std::move(mx));
    }
    return out;
}

// D(T) as a left module over End(T)^op: component i is the dual space of X_i,
// and a basis map h acts by precomposition, i.e. by the transposed total matrix
template <class F>
Module<F> dt_module(const EndAlgebra<F>& e) {
    Module<F> m;
    m.alg = e.alg;
    for (auto& p : e.parts) m.dims.push_back(p.tdim());
    for (auto& h : e.maps) m.act.push_back(total_of_map(h).transpose());
    check_module(m);
    return m;
}

// --- recovering a quiver presentation ------------------------------------------

template <class F>
int rad_nilpotency_index(const AlgP<F>& a) {
    std::vector<typename Algebra<F>::Vec> cur = a->rad;
    int m = 1;
    while (!cur.empty()) {
        if (m > a->dim() + 1) throw PreconditionError("radical is not nilpotent");
        std::vector<typename Algebra<F>::Vec> prods;
        for (auto& x : cur)
            for (auto& r : a->rad) {
                auto p = a->mulv(x, r);
                if (!a->vec_is_zero(p)) prods.push_back(std::move(p));
            }
        auto rr = rref(detail::rows_from_vecs<F>(a->fld, prods, a->dim()));
        cur.clear();
        for (int i = 0; i < rr.rank; ++i) {
            typename Algebra<F>::Vec v(a->dim());
            for (int c = 0; c < a->dim(); ++c) v[c] = rr.red(i, c);
            cur.push_back(std::move(v));
        }
        ++m;
    }
    return m;
}

template <class F>
struct QuiverPresentation {
    Presentation<F> pres;
    std::vector<typename Algebra<F>::Vec> arrow_reps; // realization of each arrow
};

namespace detail {

// homogeneous (src, tgt) components of a set of vectors, grouped per block
template <class F>
std::vector<std::vector<typename Algebra<F>::Vec>> split_blocks(
    const Algebra<F>& a, const std::vector<typename Algebra<F>::Vec>& vecs) {
    std::vector<std::vector<typename Algebra<F>::Vec>> out(a.nv * a.nv);
    for (auto& v : vecs) {
        std::map<int, typename Algebra<F>::Vec> comps;
        for (int b = 0; b < a.dim(); ++b) {
            if (a.fld.is_zero(v[b])) continue;
            int key = a.bsrc[b] * a.nv + a.btgt[b];
            auto it = comps.find(key);
            if (it == comps.end()) it = comps.emplace(key, a.zerovec()).first;
            it->second[b] = v[b];
        }
        for (auto& [key, comp] : comps) out[key].push_back(std::move(comp));
    }
    return out;
}

} // namespace detail

template <class F>
QuiverPresentation<F> present_by_quiver(const AlgP<F>& a, int path_cap = 50000) {
    const F& f = a->fld;
    QuiverPresentation<F> out;
    out.pres.fld = f;
    out.pres.vertices = a->vnames;

    // arrows: a complement of rad^2 inside rad, block by block
    std::vector<typename Algebra<F>::Vec> rad2;
    for (auto& x : a->rad)
        for (auto& y : a->rad) {
            auto p = a->mulv(x, y);
            if (!a->vec_is_zero(p)) rad2.push_back(std::move(p));
        }
    auto rad_blocks = detail::split_blocks(*a, a->rad);
    auto rad2_blocks = detail::split_blocks(*a, rad2);
    std::vector<int> arrow_src, arrow_tgt;
    for (int s = 0; s < a->nv; ++s)
        for (int t = 0; t < a->nv; ++t) {
            int key = s * a->nv + t;
            auto rows = rad2_blocks[key];
            auto rr = rref(detail::rows_from_vecs<F>(f, rows, a->dim()));
            int base = rr.rank;
            for (auto& v : rad_blocks[key]) {
                rows.push_back(v);
                auto rr2 = rref(detail::rows_from_vecs<F>(f, rows, a->dim()));
                if (rr2.rank == base) {
                    rows.pop_back();
                    continue;
                }
                base = rr2.rank;
                out.pres.arrows.push_back({"x" + std::to_string(out.pres.arrows.size() + 1), s, t});
                out.arrow_reps.push_back(v);
                arrow_src.push_back(s);
                arrow_tgt.push_back(t);
            }
        }

    // paths of the discovered quiver, up to one step past the nilpotency index
    int n = rad_nilpotency_index(a);
    int na = (int)out.pres.arrows.size();
    struct QPath {
        std::vector<int> word; // word[0] applied last
        int src, tgt;
    };
    std::vector<std::vector<QPath>> level(n + 2);
    for (int x = 0; x < na; ++x) level[1].push_back({{x}, arrow_src[x], arrow_tgt[x]});
    for (int d = 2; d <= n + 1; ++d) {
        for (auto& p : level[d - 1])
            for (int x = 0; x < na; ++x) {
                if (arrow_src[x] != p.tgt) continue;
                QPath q{{}, p.src, arrow_tgt[x]};
                q.word.reserve(d);
                q.word.push_back(x);
                q.word.insert(q.word.end(), p.word.begin(), p.word.end());
                level[d].push_back(std::move(q));
            }
        if ((int)level[d].size() > path_cap)
            throw CapExceeded("path enumeration exceeded its cap");
    }

    std::vector<QPath> paths; // all lengths 2..n+1
    std::map<std::vector<int>, int> pindex;
    for (int d = 2; d <= n + 1; ++d)
        for (auto& p : level[d]) {
            pindex[p.word] = (int)paths.size();
            paths.push_back(p);
        }

    // relations: a minimal generating set for the kernel of evaluation
    if (!paths.empty()) {
        Mat<F> ev(f, a->dim(), (int)paths.size());
        for (int j = 0; j < (int)paths.size(); ++j) {
            auto v = out.arrow_reps[paths[j].word[0]];
            for (size_t i = 1; i < paths[j].word.size(); ++i)
                v = a->mulv(v, out.arrow_reps[paths[j].word[i]]);
            for (int r = 0; r < a->dim(); ++r) ev(r, j) = v[r];
        }
        auto ker = kernel_basis(ev); // columns of the kernel matrix
        // products of kernel elements with arrows, with terms beyond the window dropped
        std::vector<std::vector<typename F::Elem>> consequences;
        for (int k = 0; k < ker.cols(); ++k)
            for (int x = 0; x < na; ++x) {
                std::vector<typename F::Elem> left((int)paths.size(), f.zero()),
                    right((int)paths.size(), f.zero());
                bool anyl = false, anyr = false;
                for (int j = 0; j < (int)paths.size(); ++j) {
                    if (f.is_zero(ker(j, k))) continue;
                    const auto& p = paths[j];
                    if ((int)p.word.size() < n + 1) {
                        if (arrow_src[x] == p.tgt) {
                            std::vector<int> w{x};
                            w.insert(w.end(), p.word.begin(), p.word.end());
                            left[pindex.at(w)] = f.add(left[pindex.at(w)], ker(j, k));
                            anyl = true;
                        }
                        if (arrow_tgt[x] == p.src) {
                            auto w = p.word;
                            w.push_back(x);
                            right[pindex.at(w)] = f.add(right[pindex.at(w)], ker(j, k));
                            anyr = true;
                        }
                    }
                }
                if (anyl) consequences.push_back(std::move(left));
                if (anyr) consequences.push_back(std::move(right));
            }
        // candidate generators: homogeneous components of the kernel basis
        std::vector<std::vector<typename F::Elem>> cands;
        for (int k = 0; k < ker.cols(); ++k) {
            std::map<int, std::vector<typename F::Elem>> comps;
            for (int j = 0; j < (int)paths.size(); ++j) {
                if (f.is_zero(ker(j, k))) continue;
                int key = paths[j].src * a->nv + paths[j].tgt;
                auto it = comps.find(key);
                if (it == comps.end())
                    it = comps.emplace(key, std::vector<typename F::Elem>((int)paths.size(), f.zero()))
                             .first;
                it->second[j] = ker(j, k);
            }
            for (auto& [key, c] : comps) cands.push_back(std::move(c));
        }
        std::stable_sort(cands.begin(), cands.end(), [&](const auto& u, const auto& v) {
            auto wt = [&](const auto& w) {
                int c = 0;
                for (auto& e : w)
                    if (!f.is_zero(e)) ++c;
                return c;
            };
            return wt(u) < wt(v);
        });
        auto stacked = consequences;
        auto base = rref(detail::rows_from_vecs<F>(f, stacked, (int)paths.size())).rank;
        for (auto& c : cands) {
            stacked.push_back(c);
            auto rk = rref(detail::rows_from_vecs<F>(f, stacked, (int)paths.size())).rank;
            if (rk == base) {
                stacked.pop_back();
                continue;
            }
            base = rk;
            std::vector<typename Presentation<F>::Term> rel;
            for (int j = 0; j < (int)paths.size(); ++j)
                if (!f.is_zero(c[j])) rel.push_back({c[j], paths[j].word});
            out.pres.relations.push_back(std::move(rel));
        }
    }

    // certificate: the presentation rebuilds an algebra of the same dimension,
    // so the found relations generate the whole kernel of the surjection
    auto rebuilt = build_algebra(out.pres, n + 3);
    if (rebuilt->dim() != a->dim())
        throw PreconditionError("quiver presentation failed its dimension certificate");
    return out;
}

// --- isomorphism tests -----------------------------------------------------------

namespace detail {

inline std::vector<std::vector<int>> arrow_counts(int nv, const std::vector<int>& src,
                                                  const std::vector<int>& tgt) {
    std::vector<std::vector<int>> c(nv, std::vector<int>(nv, 0));
    for (size_t i = 0; i < src.size(); ++i) c[src[i]][tgt[i]]++;
    return c;
}

} // namespace detail

// does some vertex bijection match the two arrow-count matrices?
template <class F>
bool quiver_isomorphic(const Presentation<F>& pa, const Presentation<F>& pb) {
    int nv = (int)pa.vertices.size();
    if ((int)pb.vertices.size() != nv || pa.arrows.size() != pb.arrows.size()) return false;
    std::vector<int> sa, ta, sb, tb;
    for (auto& x : pa.arrows) sa.push_back(x.src), ta.push_back(x.tgt);
    for (auto& x : pb.arrows) sb.push_back(x.src), tb.push_back(x.tgt);
    auto ca = detail::arrow_counts(nv, sa, ta), cb = detail::arrow_counts(nv, sb, tb);
    std::vector<int> perm(nv);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int s = 0; s < nv && ok; ++s)
            for (int t = 0; t < nv && ok; ++t)
                if (ca[s][t] != cb[perm[s]][perm[t]]) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// certified isomorphism test of an algebra against a quiver presentation: look
// for a vertex bijection, an arrow matching and a sign pattern under which the
// target's relations evaluate to zero. Dimensions equal + relations satisfied
// gives a surjection from the presented algebra, hence an isomorphism.
template <class F>
bool algebra_isomorphic(const AlgP<F>& b, const Presentation<F>& target, int cap = 30) {
    auto c = build_algebra(target, cap);
    if (c->dim() != b->dim() || c->nv != b->nv) return false;
    int nv = b->nv;
    auto qb = present_by_quiver(b);
    if (qb.pres.arrows.size() != target.arrows.size()) return false;

    std::vector<int> sb, tb, sc, tc;
    for (auto& x : qb.pres.arrows) sb.push_back(x.src), tb.push_back(x.tgt);
    for (auto& x : target.arrows) sc.push_back(x.src), tc.push_back(x.tgt);
    auto cb = detail::arrow_counts(nv, sb, tb), cc = detail::arrow_counts(nv, sc, tc);
    auto cart_b = b->cartan(), cart_c = c->cartan();
    int na = (int)target.arrows.size();
    if (na > 16) throw Inconclusive("too many arrows for the sign search");

    std::vector<int> perm(nv);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int s = 0; s < nv && ok; ++s)
            for (int t = 0; t < nv && ok; ++t)
                if (cc[s][t] != cb[perm[s]][perm[t]] || cart_c[s][t] != cart_b[perm[s]][perm[t]])
                    ok = false;
        if (!ok) continue;

        // bijections between parallel-arrow groups
        std::vector<std::vector<int>> group(nv * nv); // target arrows per (s,t)
        for (int x = 0; x < na; ++x) group[sc[x] * nv + tc[x]].push_back(x);
        std::vector<std::vector<int>> bgroup(nv * nv);
        for (int x = 0; x < na; ++x) bgroup[sb[x] * nv + tb[x]].push_back(x);

        // assign[x] = index of the b-arrow matched to target arrow x
        std::vector<int> assign(na, -1);
        std::vector<std::vector<int>> orders;
        std::vector<int> keys;
        for (int key = 0; key < nv * nv; ++key)
            if (!group[key].empty()) {
                keys.push_back(key);
                std::vector<int> ord(group[key].size());
                std::iota(ord.begin(), ord.end(), 0);
                orders.push_back(ord);
            }
        // iterate over the product of permutations of each group
        while (true) {
            for (size_t g = 0; g < keys.size(); ++g) {
                int key = keys[g];
                int s = key / nv, t = key % nv;
                auto& bg = bgroup[perm[s] * nv + perm[t]];
                for (size_t k = 0; k < group[key].size(); ++k)
                    assign[group[key][k]] = bg[orders[g][k]];
            }
            // sign search
            for (long sgn = 0; sgn < (1L << na); ++sgn) {
                bool all_zero = true;
                for (auto& rel : target.relations) {
                    auto acc = b->zerovec();
                    for (auto& term : rel) {
                        auto v = qb.arrow_reps[assign[term.word[0]]];
                        bool neg = (sgn >> term.word[0]) & 1;
                        for (size_t i = 1; i < term.word.size(); ++i) {
                            v = b->mulv(v, qb.arrow_reps[assign[term.word[i]]]);
                            if ((sgn >> term.word[i]) & 1) neg = !neg;
                        }
                        auto coeff = neg ? b->fld.neg(term.coeff) : term.coeff;
                        for (int r = 0; r < b->dim(); ++r)
                            acc[r] = b->fld.add(acc[r], b->fld.mul(coeff, v[r]));
                    }
                    if (!b->vec_is_zero(acc)) {
                        all_zero = false;
                        break;
                    }
                }
                if (all_zero) return true;
            }
            // next assignment
            size_t g = 0;
            while (g < orders.size() && !std::next_permutation(orders[g].begin(), orders[g].end())) {
                std::iota(orders[g].begin(), orders[g].end(), 0);
                ++g;
            }
            if (g == orders.size()) break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

template <class F>
bool algebras_isomorphic(const AlgP<F>& a, const AlgP<F>& b) {
    if (a->dim() != b->dim() || a->nv != b->nv) return false;
    return algebra_isomorphic(b, present_by_quiver(a).pres);
}

} // namespace qmod
