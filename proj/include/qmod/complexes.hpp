#pragma once
#include <algorithm>

#include "endo.hpp"

namespace qmod {

// --- bounded complexes -------------------------------------------------------
//
// cohomological indexing: terms[i] sits in degree lo+i and differentials raise
// the degree by one. A shift by k moves degree 0 to -k and flips the sign of
// the differential k times.

template <class F>
struct BoundedComplex {
    AlgP<F> alg;
    int lo = 0;
    std::vector<Module<F>> terms;
    std::vector<MMap<F>> diffs; // diffs[i]: terms[i] -> terms[i+1]

    int hi() const { return lo + (int)terms.size() - 1; }
};

template <class F>
Module<F> term_at(const BoundedComplex<F>& x, int n) {
    if (n < x.lo || n > x.hi()) return zero_module(x.alg);
    return x.terms[n - x.lo];
}

// the differential leaving degree n, as a map term(n) -> term(n+1)
template <class F>
MMap<F> diff_at(const BoundedComplex<F>& x, int n) {
    if (n >= x.lo && n + 1 <= x.hi()) return x.diffs[n - x.lo];
    return zero_map(term_at(x, n), term_at(x, n + 1));
}

template <class F>
void check_complex(const BoundedComplex<F>& x) {
    if (x.terms.empty()) throw PreconditionError("complex needs at least one term");
    for (auto& t : x.terms)
        if (t.alg != x.alg) throw PreconditionError("complex terms live over different algebras");
    if (x.diffs.size() + 1 != x.terms.size())
        throw PreconditionError("complex differential count does not match its terms");
    for (size_t i = 0; i < x.diffs.size(); ++i) {
        if (x.diffs[i].dom.dims != x.terms[i].dims || x.diffs[i].cod.dims != x.terms[i + 1].dims)
            throw PreconditionError("complex differential has the wrong shape");
        check_map(x.diffs[i]);
    }
    for (size_t i = 0; i + 1 < x.diffs.size(); ++i)
        if (!map_is_zero(compose(x.diffs[i + 1], x.diffs[i])))
            throw PreconditionError("differentials do not square to zero");
}

template <class F>
BoundedComplex<F> stalk_complex(const Module<F>& m, int deg) {
    return {m.alg, deg, {m}, {}};
}

template <class F>
BoundedComplex<F> shift_complex(const BoundedComplex<F>& x, int k) {
    BoundedComplex<F> out = x;
    out.lo -= k;
    if (k % 2 != 0)
        for (auto& d : out.diffs)
            for (auto& c : d.comp) c = neg(c);
    return out;
}

// --- chain maps --------------------------------------------------------------

template <class F>
struct ChainMap {
    int lo = 0;                 // degree of comps[0]; zero outside the stored range
    std::vector<MMap<F>> comps;
};

template <class F>
MMap<F> chain_comp_at(const ChainMap<F>& f, int n, const BoundedComplex<F>& x,
                      const BoundedComplex<F>& y) {
    int i = n - f.lo;
    if (i >= 0 && i < (int)f.comps.size()) return f.comps[i];
    return zero_map(term_at(x, n), term_at(y, n));
}

template <class F>
ChainMap<F> identity_chain(const BoundedComplex<F>& x) {
    ChainMap<F> out{x.lo, {}};
    for (auto& t : x.terms) out.comps.push_back(identity_map(t));
    return out;
}

// g after f, stored on the overlap of the outer complexes
template <class F>
ChainMap<F> compose_chain(const BoundedComplex<F>& x, const BoundedComplex<F>& y,
                          const BoundedComplex<F>& z, const ChainMap<F>& g,
                          const ChainMap<F>& f) {
    ChainMap<F> out{std::max(x.lo, z.lo), {}};
    int hi = std::min(x.hi(), z.hi());
    for (int n = out.lo; n <= hi; ++n)
        out.comps.push_back(compose(chain_comp_at(g, n, y, z), chain_comp_at(f, n, x, y)));
    return out;
}

template <class F>
ChainMap<F> add_chain(const ChainMap<F>& a, const ChainMap<F>& b) {
    if (a.lo != b.lo || a.comps.size() != b.comps.size())
        throw PreconditionError("chain map sum needs aligned ranges");
    ChainMap<F> out{a.lo, {}};
    for (size_t i = 0; i < a.comps.size(); ++i) {
        MMap<F> c = a.comps[i];
        for (size_t v = 0; v < c.comp.size(); ++v)
            c.comp[v] = add(c.comp[v], b.comps[i].comp[v]);
        out.comps.push_back(std::move(c));
    }
    return out;
}

// --- hom up to homotopy -------------------------------------------------------
//
// chain maps are the kernel of the commutation system over the degreewise
// module-hom spaces; null-homotopic ones are the image of the assembly map
// s |-> ds + sd. Classes keep explicit representatives chosen among the kernel
// basis, so composites can be re-reduced exactly.

template <class F>
struct KbHom {
    int lo = 0;                               // overlap start degree
    std::vector<std::vector<MMap<F>>> bases;  // module-hom bases per overlap degree
    std::vector<int> offs;                    // coefficient offsets, offs.back() = total
    Mat<F> nh;                                // null-homotopic columns, hom coordinates
    Mat<F> repc;                              // representative columns, hom coordinates
    std::vector<ChainMap<F>> reps;

    int dim() const { return (int)reps.size(); }
};

namespace detail {

// coordinates of a module map in a hom-space basis
template <class F>
Mat<F> hom_coords(const F& f, const std::vector<MMap<F>>& basis, const MMap<F>& m) {
    if (basis.empty()) {
        if (!map_is_zero(m)) throw Error("map escapes its hom space");
        return Mat<F>(f, 0, 1);
    }
    auto sol = solve(flatten_maps(basis), flatten_maps<F>({m}));
    if (!sol) throw Error("map escapes its hom space");
    return *sol;
}

} // namespace detail

// chain map from hom-space coefficients (one column)
template <class F>
ChainMap<F> chain_from_coeffs(const BoundedComplex<F>& x, const BoundedComplex<F>& y,
                              const KbHom<F>& h, const Mat<F>& coeff) {
    const F& f = x.alg->fld;
    ChainMap<F> out{h.lo, {}};
    int hi = h.lo + (int)h.bases.size() - 1;
    for (int n = h.lo; n <= hi; ++n) {
        MMap<F> comp = zero_map(term_at(x, n), term_at(y, n));
        const auto& basis = h.bases[n - h.lo];
        for (size_t t = 0; t < basis.size(); ++t) {
            auto w = coeff(h.offs[n - h.lo] + (int)t, 0);
            if (f.is_zero(w)) continue;
            for (size_t v = 0; v < comp.comp.size(); ++v)
                comp.comp[v] = add(comp.comp[v], scale(w, basis[t].comp[v]));
        }
        out.comps.push_back(std::move(comp));
    }
    return out;
}

template <class F>
KbHom<F> kb_hom(const BoundedComplex<F>& x, const BoundedComplex<F>& y) {
    if (x.alg != y.alg) throw PreconditionError("complexes live over different algebras");
    const F& f = x.alg->fld;
    KbHom<F> h;
    h.lo = std::max(x.lo, y.lo);
    int hi = std::min(x.hi(), y.hi());
    h.offs.push_back(0);
    for (int n = h.lo; n <= hi; ++n) {
        h.bases.push_back(hom_basis(term_at(x, n), term_at(y, n)));
        h.offs.push_back(h.offs.back() + (int)h.bases.back().size());
    }
    int total = h.offs.back();

    // commutation system: for every degree n, d_Y phi^n = phi^{n+1} d_X
    std::vector<int> roff;
    int rows = 0;
    for (int n = h.lo - 1; n <= hi; ++n) {
        roff.push_back(rows);
        rows += term_at(y, n + 1).tdim() * term_at(x, n).tdim();
    }
    roff.push_back(rows);
    Mat<F> sys(f, rows, total);
    auto put = [&](int n, int colidx, const MMap<F>& m, bool negate) {
        auto flat = flatten_maps<F>({m});
        int base = roff[n - (h.lo - 1)];
        for (int r = 0; r < flat.rows(); ++r) {
            auto v = flat(r, 0);
            if (negate) v = f.neg(v);
            sys(base + r, colidx) = f.add(sys(base + r, colidx), v);
        }
    };
    for (int n = h.lo; n <= hi; ++n)
        for (size_t t = 0; t < h.bases[n - h.lo].size(); ++t) {
            int colidx = h.offs[n - h.lo] + (int)t;
            const auto& bma = h.bases[n - h.lo][t];
            put(n, colidx, compose(diff_at(y, n), bma), false);
            put(n - 1, colidx, compose(bma, diff_at(x, n - 1)), true);
        }
    auto cm = kernel_basis(sys);

    // homotopy assembly: phi^n = d_Y s^n + s^{n+1} d_X
    std::vector<Mat<F>> nhcols;
    for (int m = std::max(x.lo, y.lo + 1); m <= std::min(x.hi(), y.hi() + 1); ++m) {
        auto sb = hom_basis(term_at(x, m), term_at(y, m - 1));
        for (auto& s : sb) {
            Mat<F> coeff(f, total, 1);
            auto contribute = [&](int deg, const MMap<F>& part) {
                if (deg < h.lo || deg > hi) {
                    if (!map_is_zero(part)) throw Error("homotopy assembly left the overlap");
                    return;
                }
                auto c = detail::hom_coords(f, h.bases[deg - h.lo], part);
                for (int r = 0; r < c.rows(); ++r)
                    coeff(h.offs[deg - h.lo] + r, 0) =
                        f.add(coeff(h.offs[deg - h.lo] + r, 0), c(r, 0));
            };
            contribute(m, compose(diff_at(y, m - 1), s));
            contribute(m - 1, compose(s, diff_at(x, m - 1)));
            nhcols.push_back(std::move(coeff));
        }
    }
    h.nh = nhcols.empty() ? Mat<F>(f, total, 0) : hstack(nhcols);

    // every null-homotopic map must already be a chain map
    auto joint = rref(hstack<F>({h.nh, cm}));
    if (joint.rank != rref(cm).rank)
        throw Error("a null-homotopic map failed the chain condition");

    // class representatives: kernel columns completing the null-homotopic ones
    std::vector<Mat<F>> repcols;
    for (int p : joint.pivots)
        if (p >= h.nh.cols()) repcols.push_back(col(cm, p - h.nh.cols()));
    h.repc = repcols.empty() ? Mat<F>(f, total, 0) : hstack(repcols);
    for (int j = 0; j < h.repc.cols(); ++j)
        h.reps.push_back(chain_from_coeffs(x, y, h, col(h.repc, j)));
    return h;
}

// homotopy-class coordinates of a chain map in the representative basis
template <class F>
Mat<F> to_class(const F& f, const KbHom<F>& h, const ChainMap<F>& cm,
                const BoundedComplex<F>& x, const BoundedComplex<F>& y) {
    int total = h.offs.back();
    Mat<F> coeff(f, total, 1);
    int hi = h.lo + (int)h.bases.size() - 1;
    for (int n = h.lo; n <= hi; ++n) {
        auto c = detail::hom_coords(f, h.bases[n - h.lo], chain_comp_at(cm, n, x, y));
        for (int r = 0; r < c.rows(); ++r) coeff(h.offs[n - h.lo] + r, 0) = c(r, 0);
    }
    auto sol = solve(hstack<F>({h.nh, h.repc}), coeff);
    if (!sol) throw Error("map is not a chain map up to homotopy");
    Mat<F> out(f, h.dim(), 1);
    for (int r = 0; r < h.dim(); ++r) out(r, 0) = (*sol)(h.nh.cols() + r, 0);
    return out;
}

// --- endomorphism algebras in the homotopy category ---------------------------

template <class F>
struct KbEnd {
    AlgP<F> alg;
    std::vector<BoundedComplex<F>> parts;
    std::vector<int> tagged; // vertices of the shifted regular/coregular stalks
};

namespace detail {

// change of basis putting the identity class first, plus the radical classes
template <class F>
struct LocalEnd {
    Mat<F> idc;                // identity class in representative coordinates
    Mat<F> u;                  // columns: identity class, then a completion
    std::vector<Mat<F>> rad;   // radical elements as class-coordinate columns

    // identity plus radical: the basis in which the leading coefficient
    // decides invertibility
    Mat<F> adapted() const {
        std::vector<Mat<F>> cols{idc};
        for (auto& rv : rad) cols.push_back(rv);
        return hstack(cols);
    }
};

template <class F>
LocalEnd<F> local_end(const BoundedComplex<F>& x, const KbHom<F>& h) {
    const F& f = x.alg->fld;
    int m = h.dim();
    auto idc = to_class(f, h, identity_chain(x), x, x);
    bool idzero = true;
    for (int r = 0; r < m; ++r)
        if (!f.is_zero(idc(r, 0))) idzero = false;
    if (m == 0 || idzero) throw PreconditionError("summand complex is null-homotopic");

    auto ext = rref(hstack<F>({idc, Mat<F>::identity(f, m)}));
    std::vector<Mat<F>> cols;
    for (int p : ext.pivots) cols.push_back(p == 0 ? idc : col(Mat<F>::identity(f, m), p - 1));
    LocalEnd<F> out;
    out.idc = idc;
    out.u = hstack(cols);

    // multiplication table of the class algebra in the adapted basis
    std::vector<ChainMap<F>> basis_maps;
    for (int j = 0; j < m; ++j) basis_maps.push_back(chain_from_coeffs(x, x, h, mul(h.repc, col(out.u, j))));
    Algebra<F> mini;
    mini.fld = f;
    mini.nv = 1;
    mini.vnames = {"1"};
    for (int j = 0; j < m; ++j) {
        mini.bnames.push_back("c" + std::to_string(j + 1));
        mini.bsrc.push_back(0);
        mini.btgt.push_back(0);
    }
    mini.mult.assign(m, std::vector<typename Algebra<F>::Vec>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            auto comp = compose_chain(x, x, x, basis_maps[i], basis_maps[j]);
            auto sol = solve(out.u, to_class(f, h, comp, x, x));
            if (!sol) throw Error("endomorphism class product left the class space");
            typename Algebra<F>::Vec vec(m, f.zero());
            bool nz = false;
            for (int r = 0; r < m; ++r) {
                vec[r] = (*sol)(r, 0);
                if (!f.is_zero(vec[r])) nz = true;
            }
            if (nz) mini.mult[i][j] = std::move(vec);
        }
    mini.rad = compute_radical(mini);
    check_algebra(mini);
    if ((int)mini.rad.size() != m - 1)
        throw PreconditionError("complex summand does not have a local endomorphism ring");
    for (auto& rv : mini.rad) {
        Mat<F> w(f, m, 1);
        for (int r = 0; r < m; ++r) w(r, 0) = rv[r];
        out.rad.push_back(mul(out.u, w));
    }
    return out;
}

} // namespace detail

template <class F>
KbEnd<F> end_algebra_Kb(const std::vector<BoundedComplex<F>>& parts,
                        const std::vector<int>& tagged, Rng& rng) {
    if (parts.empty()) throw PreconditionError("endomorphism algebra needs at least one summand");
    const F& f = parts[0].alg->fld;
    for (auto& p : parts)
        if (p.alg != parts[0].alg)
            throw PreconditionError("summand complexes live over different algebras");
    int nv = (int)parts.size();

    std::vector<std::vector<KbHom<F>>> hb(nv);
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) hb[i].push_back(kb_hom(parts[i], parts[j]));

    std::vector<detail::LocalEnd<F>> locals;
    for (int i = 0; i < nv; ++i) locals.push_back(detail::local_end(parts[i], hb[i][i]));

    // distinct indecomposables: any composite through another summand stays
    // radical, so a unit coefficient certifies an isomorphism between parts
    std::vector<Mat<F>> adapted;
    for (int i = 0; i < nv; ++i) adapted.push_back(locals[i].adapted());
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            for (auto& fw : hb[i][j].reps)
                for (auto& bw : hb[j][i].reps) {
                    auto comp = compose_chain(parts[i], parts[j], parts[i], bw, fw);
                    auto sol = solve(adapted[i], to_class(f, hb[i][i], comp, parts[i], parts[i]));
                    if (!sol) throw Error("endomorphism class product left the class space");
                    if (!f.is_zero((*sol)(0, 0)))
                        throw PreconditionError(
                            "summand complexes must be pairwise non-isomorphic in the homotopy "
                            "category");
                }

    KbEnd<F> e;
    e.parts = parts;
    e.tagged = tagged;
    std::vector<ChainMap<F>> maps;
    std::vector<int> mfrom, mto;
    std::vector<std::vector<std::vector<int>>> block(nv, std::vector<std::vector<int>>(nv));
    std::vector<std::string> bnames;
    for (int i = 0; i < nv; ++i) {
        maps.push_back(identity_chain(parts[i]));
        mfrom.push_back(i);
        mto.push_back(i);
        block[i][i].push_back(i);
        bnames.push_back("e_" + std::to_string(i + 1));
    }
    // class-coordinate columns of each block's chosen basis
    std::vector<std::vector<Mat<F>>> flat(nv, std::vector<Mat<F>>(nv, Mat<F>(f, 0, 0)));
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) {
            int k = 0;
            if (i == j) {
                std::vector<Mat<F>> cols{locals[i].idc};
                for (auto& rv : locals[i].rad) {
                    block[i][i].push_back((int)maps.size());
                    bnames.push_back("f" + std::to_string(i + 1) + "_" + std::to_string(i + 1) +
                                     "_" + std::to_string(++k));
                    maps.push_back(chain_from_coeffs(parts[i], parts[i], hb[i][i],
                                                     mul(hb[i][i].repc, rv)));
                    mfrom.push_back(i);
                    mto.push_back(i);
                    cols.push_back(rv);
                }
                flat[i][j] = hstack(cols);
            } else {
                for (int t = 0; t < hb[i][j].dim(); ++t) {
                    block[i][j].push_back((int)maps.size());
                    bnames.push_back("f" + std::to_string(i + 1) + "_" + std::to_string(j + 1) +
                                     "_" + std::to_string(++k));
                    maps.push_back(hb[i][j].reps[t]);
                    mfrom.push_back(i);
                    mto.push_back(j);
                }
                flat[i][j] = Mat<F>::identity(f, hb[i][j].dim());
            }
        }

    int dim = (int)maps.size();
    auto alg = std::make_shared<Algebra<F>>();
    alg->fld = f;
    alg->nv = nv;
    for (int i = 0; i < nv; ++i) alg->vnames.push_back(std::to_string(i + 1));
    alg->bnames = bnames;
    for (int b = 0; b < dim; ++b) {
        alg->bsrc.push_back(mto[b]); // opposite algebra: grading is mirrored
        alg->btgt.push_back(mfrom[b]);
    }
    alg->mult.assign(dim, std::vector<typename Algebra<F>::Vec>(dim));
    for (int b = 0; b < dim; ++b)
        for (int c = 0; c < dim; ++c) {
            if (mto[b] != mfrom[c]) continue;
            int bi = mfrom[b], bj = mto[c];
            auto comp = compose_chain(parts[bi], parts[mto[b]], parts[bj], maps[c], maps[b]);
            auto cls = to_class(f, hb[bi][bj], comp, parts[bi], parts[bj]);
            // well-definedness: perturbing a factor by a null-homotopic map
            // must land in the same class
            if (hb[bi][mto[b]].nh.cols() > 0) {
                Mat<F> rc(f, hb[bi][mto[b]].nh.cols(), 1);
                for (int r = 0; r < rc.rows(); ++r) rc(r, 0) = f.rand(rng, 3);
                auto pert = add_chain(
                    maps[b], chain_from_coeffs(parts[bi], parts[mto[b]], hb[bi][mto[b]],
                                               mul(hb[bi][mto[b]].nh, rc)));
                auto cls2 = to_class(f, hb[bi][bj],
                                     compose_chain(parts[bi], parts[mto[b]], parts[bj], maps[c],
                                                   pert),
                                     parts[bi], parts[bj]);
                for (int r = 0; r < cls.rows(); ++r)
                    if (!f.eq(cls(r, 0), cls2(r, 0)))
                        throw Error("homotopy-class composition is not well defined");
            }
            bool nz = false;
            for (int r = 0; r < cls.rows(); ++r)
                if (!f.is_zero(cls(r, 0))) nz = true;
            if (!nz) continue;
            auto sol = solve(flat[bi][bj], cls);
            if (!sol) throw Error("homotopy-class product escaped its hom block");
            auto vec = alg->zerovec();
            bool any = false;
            for (int t = 0; t < (int)block[bi][bj].size(); ++t) {
                vec[block[bi][bj][t]] = (*sol)(t, 0);
                if (!f.is_zero((*sol)(t, 0))) any = true;
            }
            if (any) alg->mult[b][c] = std::move(vec);
        }
    for (int b = nv; b < dim; ++b) alg->rad.push_back(alg->unitvec(b));
    if (!detail::subspace_nilpotent(*alg, alg->rad))
        throw PreconditionError("homotopy endomorphism radical failed its nilpotency certificate");
    check_algebra(*alg);
    e.alg = alg;
    return e;
}

// --- shift models from minimal resolutions ------------------------------------

template <class F>
struct KbModel {
    AlgP<F> base;
    std::vector<BoundedComplex<F>> parts;
    std::vector<int> tagged; // indices of the stalk summands of the regular/coregular module
    int k = 0;
    bool upper = true;
};

namespace detail {

template <class F>
bool is_projective(const Module<F>& m) {
    return kernel(projective_cover(m).map).first.tdim() == 0;
}

template <class F>
bool is_injective(const Module<F>& m) {
    return cokernel(injective_hull(m).map).first.tdim() == 0;
}

template <class F>
void check_gen_cogen(const AlgP<F>& a, const Module<F>& e, Rng& rng) {
    if (e.alg != a) throw PreconditionError("module lives over a different algebra");
    auto reg = regular_module(a);
    auto coreg = coregular_module(a);
    if (!in_add(reg, e, rng) || !in_add(coreg, e, rng))
        throw PreconditionError("module is not a generator-cogenerator");
}

} // namespace detail

// truncated minimal projective resolutions of the summands, plus the shifted
// regular stalks; contractible pieces (projective summands in degree 0) are
// dropped for k >= 1
template <class F>
KbModel<F> build_Ek_upper(const AlgP<F>& a, const Module<F>& e, int k, Rng& rng) {
    if (k < 0) throw InputError("shift level must be nonnegative");
    detail::check_gen_cogen(a, e, rng);
    KbModel<F> out{a, {}, {}, k, true};
    for (auto& [rep, mult] : summand_classes(e, rng)) {
        bool proj = detail::is_projective(rep);
        if (k == 0) {
            if (proj) out.tagged.push_back((int)out.parts.size());
            out.parts.push_back(stalk_complex(rep, 0));
            continue;
        }
        if (proj) continue;
        auto res = min_proj_resolution(rep, k);
        int t = (int)res.terms.size();
        BoundedComplex<F> x{a, -t, {}, {}};
        for (int i = t - 1; i >= 0; --i) x.terms.push_back(res.terms[i]);
        x.terms.push_back(rep);
        for (int i = t - 1; i >= 0; --i) x.diffs.push_back(res.maps[i]);
        check_complex(x);
        out.parts.push_back(std::move(x));
    }
    if (k >= 1)
        for (int u = 0; u < a->nv; ++u) {
            out.tagged.push_back((int)out.parts.size());
            out.parts.push_back(stalk_complex(proj_module(a, u), -k));
        }
    return out;
}

// dual model: truncated minimal injective resolutions plus shifted coregular stalks
template <class F>
KbModel<F> build_Ek_lower(const AlgP<F>& a, const Module<F>& e, int k, Rng& rng) {
    if (k < 0) throw InputError("shift level must be nonnegative");
    detail::check_gen_cogen(a, e, rng);
    KbModel<F> out{a, {}, {}, k, false};
    for (auto& [rep, mult] : summand_classes(e, rng)) {
        bool inj = detail::is_injective(rep);
        if (k == 0) {
            if (inj) out.tagged.push_back((int)out.parts.size());
            out.parts.push_back(stalk_complex(rep, 0));
            continue;
        }
        if (inj) continue;
        auto res = min_inj_resolution(rep, k);
        int t = (int)res.terms.size();
        BoundedComplex<F> y{a, 0, {}, {}};
        y.terms.push_back(rep);
        for (int i = 0; i < t; ++i) y.terms.push_back(res.terms[i]);
        for (int i = 0; i < t; ++i) y.diffs.push_back(res.maps[i]);
        check_complex(y);
        out.parts.push_back(std::move(y));
    }
    if (k >= 1)
        for (int u = 0; u < a->nv; ++u) {
            out.tagged.push_back((int)out.parts.size());
            out.parts.push_back(stalk_complex(inj_module(a, u), k));
        }
    return out;
}

template <class F>
KbEnd<F> end_algebra_Kb(const KbModel<F>& model, Rng& rng) {
    return end_algebra_Kb(model.parts, model.tagged, rng);
}

// --- value formulas for the adjoint functors ----------------------------------

// coordinates of {d o h : h in from_basis} over to_basis (post-composition)
template <class F>
Mat<F> coinduced_matrix(const F& f, const std::vector<MMap<F>>& to_basis,
                        const std::vector<MMap<F>>& from_basis, const MMap<F>& d) {
    Mat<F> out(f, (int)to_basis.size(), (int)from_basis.size());
    if (from_basis.empty()) return out;
    if (to_basis.empty()) {
        for (auto& h : from_basis)
            if (!map_is_zero(compose(d, h)))
                throw PreconditionError("induced map escapes the empty hom space");
        return out;
    }
    auto flat = flatten_maps(to_basis);
    std::vector<MMap<F>> comps;
    for (auto& h : from_basis) comps.push_back(compose(d, h));
    auto sol = solve(flat, flatten_maps(comps));
    if (!sol) throw PreconditionError("induced map escapes its hom space");
    return *sol;
}

template <class F>
struct FormulaValues {
    int ell = -1; // -1 when no closed form applies at this level
    int r = -1;
    int c_image = 0;
    int c_coker = 0;
    int c_kernel = 0;

    int c() const { return c_image; }
};

// values at a summand X = (X_k -> ... -> X_0) of the upper model: the leading
// differential f gives r via Hom(Ker f, M), the counit via a cokernel of
// restriction along f (k >= 2), and the intermediate image three ways
template <class F>
FormulaValues<F> upper_formula_values(const BoundedComplex<F>& x, int k, const Module<F>& m) {
    if (k < 1) throw InputError("formula level must be positive");
    if (x.alg != m.alg) throw PreconditionError("module lives over a different algebra");
    const F& f = x.alg->fld;
    auto xk = term_at(x, -k);
    auto fmap = diff_at(x, -k);
    auto [kerf, kincl] = kernel(fmap);
    auto imf = image(fmap).mod;

    auto hker = hom_basis(kerf, m);
    auto hxk = hom_basis(xk, m);
    FormulaValues<F> out;
    out.r = (int)hker.size();
    out.c_image = rank(induced_matrix(f, hker, hxk, kincl));
    out.c_coker = (int)hxk.size() - (int)hom_basis(imf, m).size();
    out.c_kernel = out.r - ext_dims(imf, m, 1)[1];
    int prev = rank(induced_matrix(f, hxk, hom_basis(term_at(x, -k + 1), m), fmap));
    if (k >= 2) out.ell = (int)hxk.size() - prev;
    if (out.c_image != out.c_coker || out.c_coker != out.c_kernel ||
        (k == 1 && out.c_image != (int)hxk.size() - prev))
        throw Error("the extension-image formulas disagree");
    return out;
}

// dual values at a summand Y = (Y_0 -> ... -> Y_k) of the lower model
template <class F>
FormulaValues<F> lower_formula_values(const BoundedComplex<F>& y, int k, const Module<F>& m) {
    if (k < 1) throw InputError("formula level must be positive");
    if (y.alg != m.alg) throw PreconditionError("module lives over a different algebra");
    const F& f = y.alg->fld;
    auto yk = term_at(y, k);
    auto gmap = diff_at(y, k - 1);
    auto [cok, cproj] = cokernel(gmap);
    auto img = image(gmap).mod;

    auto hcok = hom_basis(m, cok);
    auto hyk = hom_basis(m, yk);
    FormulaValues<F> out;
    out.ell = (int)hcok.size();
    out.c_image = rank(coinduced_matrix(f, hcok, hyk, cproj));
    out.c_coker = (int)hyk.size() - (int)hom_basis(m, img).size();
    out.c_kernel = out.ell - ext_dims(m, img, 1)[1];
    int prev = rank(coinduced_matrix(f, hyk, hom_basis(m, term_at(y, k - 1)), gmap));
    if (k >= 2) out.r = (int)hyk.size() - prev;
    if (out.c_image != out.c_coker || out.c_coker != out.c_kernel ||
        (k == 1 && out.c_image != (int)hyk.size() - prev))
        throw Error("the extension-image formulas disagree");
    return out;
}

} // namespace qmod
