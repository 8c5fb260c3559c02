#pragma once
#include "endo.hpp"

namespace qmod {

// --- maximal projective-injective summand -------------------------------

// basic direct sum of the projective-injective indecomposables; may be zero
template <class F>
Module<F> max_proj_inj(const AlgP<F>& a) {
    auto verts = injective_projective_vertices(a);
    if (verts.empty()) return zero_module(a);
    std::vector<Module<F>> ps;
    for (int v : verts) ps.push_back(proj_module(a, v));
    return direct_sum(ps, a).mod;
}

template <class F>
struct ShiftContext {
    AlgP<F> alg;
    std::vector<int> pi_verts; // vertices v with P(v) injective
    Module<F> pi;              // basic maximal projective-injective summand
    Extent dd;                 // dominant dimension
};

template <class F>
ShiftContext<F> shift_context(const AlgP<F>& a, int cap = 24) {
    ShiftContext<F> ctx;
    ctx.alg = a;
    ctx.pi_verts = injective_projective_vertices(a);
    std::vector<Module<F>> ps;
    for (int v : ctx.pi_verts) ps.push_back(proj_module(a, v));
    ctx.pi = ps.empty() ? zero_module(a) : direct_sum(ps, a).mod;
    ctx.dd = dominant_dimension(a, cap);
    return ctx;
}

// shifted module T_k: basic version of (k-th cosyzygy of the regular module)
// plus the projective-injectives. Needs dominant dimension >= k so the first
// k coresolution terms stay projective.
template <class F>
Module<F> shifted_module(const ShiftContext<F>& ctx, int k, Rng& rng) {
    if (k < 0 || !ctx.dd.known_ge(k))
        throw PreconditionError("dominant dimension too small for shift level " +
                                std::to_string(k));
    auto core = cosyzygy(regular_module(ctx.alg), k);
    return make_basic(direct_sum(std::vector<Module<F>>{core, ctx.pi}, ctx.alg).mod, rng);
}

template <class F>
Module<F> coshifted_module(const ShiftContext<F>& ctx, int k, Rng& rng) {
    if (k < 0 || !ctx.dd.known_ge(k))
        throw PreconditionError("dominant dimension too small for coshift level " +
                                std::to_string(k));
    auto core = syzygy(coregular_module(ctx.alg), k);
    return make_basic(direct_sum(std::vector<Module<F>>{core, ctx.pi}, ctx.alg).mod, rng);
}

// --- minimal left add(T)-approximations ----------------------------------

// prepared data: indecomposable summand classes of T together with the
// radical maps between them (all maps for distinct parts, rad End for equal)
template <class F>
struct AddTarget {
    std::vector<Module<F>> parts;
    Module<F> sum;
    std::vector<std::vector<std::vector<MMap<F>>>> rad; // rad[i][j]: parts[j] -> parts[i]
};

template <class F>
AddTarget<F> add_target(const std::vector<Module<F>>& parts, const AlgP<F>& a) {
    AddTarget<F> t;
    t.parts = parts;
    t.sum = parts.empty() ? zero_module(a) : direct_sum(parts, a).mod;
    int r = (int)parts.size();
    t.rad.assign(r, {});
    for (int i = 0; i < r; ++i) {
        t.rad[i].resize(r);
        for (int j = 0; j < r; ++j) {
            if (i != j) {
                t.rad[i][j] = hom_basis(parts[j], parts[i]);
                continue;
            }
            auto ed = end_data(parts[i]);
            for (auto& x : end_radical(ed)) t.rad[i][j].push_back(end_realize(ed, x));
        }
    }
    return t;
}

template <class F>
AddTarget<F> add_target_of(const Module<F>& t, Rng& rng) {
    std::vector<Module<F>> parts;
    for (auto& [rep, mult] : summand_classes(t, rng)) parts.push_back(rep);
    return add_target(parts, t.alg);
}

// minimal left add(T)-approximation of M: pick hom-basis representatives of
// Hom(M, X_i) modulo the radical span  sum_j rad(X_j, X_i) o Hom(M, X_j);
// these generate Hom(M, T) minimally over End(T), so the assembled map is a
// left approximation and no summand of the target is superfluous
template <class F>
MMap<F> left_approximation(const AddTarget<F>& t, const Module<F>& m) {
    int r = (int)t.parts.size();
    std::vector<std::vector<MMap<F>>> vb(r);
    for (int j = 0; j < r; ++j) vb[j] = hom_basis(m, t.parts[j]);
    std::vector<Module<F>> tgt;
    std::vector<MMap<F>> comps;
    for (int i = 0; i < r; ++i) {
        if (vb[i].empty()) continue;
        std::vector<MMap<F>> span;
        for (int j = 0; j < r; ++j)
            for (auto& g : vb[j])
                for (auto& rm : t.rad[i][j]) span.push_back(compose(rm, g));
        Mat<F> u = span.empty()
                       ? Mat<F>(m.alg->fld, t.parts[i].tdim() * m.tdim(), 0)
                       : flatten_maps(span);
        int rk = rank(u);
        for (auto& g : vb[i]) {
            Mat<F> cand = hstack<F>({u, flatten_maps(std::vector<MMap<F>>{g})});
            int rk2 = rank(cand);
            if (rk2 == rk) continue;
            u = cand;
            rk = rk2;
            tgt.push_back(t.parts[i]);
            comps.push_back(g);
        }
    }
    if (tgt.empty()) return zero_map(m, zero_module(m.alg));
    return sum_map_in(direct_sum(tgt, m.alg), comps);
}

// --- add(T)-coresolutions and tilting certificates ------------------------

template <class F>
struct ApproxStep {
    MMap<F> map; // minimal left approximation of the running cokernel
    bool mono;
};

template <class F>
struct CoresChain {
    std::vector<ApproxStep<F>> steps;
    Module<F> tail; // what is left after the last step
    bool exact = false;
    bool tail_ok = false;
    bool ok() const { return exact && tail_ok; }
};

// try to build an exact sequence 0 -> m -> t_0 -> ... -> t_{k-1} -> tail -> 0
// with all t_i in add(T) and tail in add(T), by iterating minimal left
// approximations; if any such sequence exists the minimal chain finds one
template <class F>
CoresChain<F> coresolution_chain(const AddTarget<F>& t, Module<F> m, int k, Rng& rng) {
    CoresChain<F> out;
    out.exact = true;
    for (int s = 0; s < k; ++s) {
        if (m.tdim() == 0) break;
        auto f = left_approximation(t, m);
        bool mono = kernel(f).first.tdim() == 0;
        out.steps.push_back({f, mono});
        if (!mono) {
            out.exact = false;
            break;
        }
        m = cokernel(f).first;
    }
    out.tail = m;
    out.tail_ok = out.exact && (m.tdim() == 0 || in_add(m, t.sum, rng));
    return out;
}

template <class F>
struct TiltingCertificate {
    Module<F> t;
    int k = 0;
    Extent pd;                 // projective dimension of t
    bool c1 = false;           // pd <= k
    std::vector<int> ext_self; // dim Ext^j(t, t) for j = 1..deg
    bool c2 = false;           // all self-extensions vanish
    CoresChain<F> chain;       // add(t)-coresolution of the regular module
    bool c3 = false;
    bool special = false;      // all chain targets lie in add of the given module
    bool ok() const { return c1 && c2 && c3; }
};

template <class F>
TiltingCertificate<F> verify_tilting(const Module<F>& t, int k, Rng& rng,
                                     const Module<F>* special_for = nullptr) {
    TiltingCertificate<F> cert;
    cert.t = t;
    cert.k = k;
    cert.pd = pdim(t);
    cert.c1 = cert.pd.known_le(k);
    int deg = std::max(k, cert.pd.kind == Extent::Exact ? cert.pd.n : k);
    if (deg > 0) {
        auto xs = ext_dims(t, t, deg);
        cert.ext_self.assign(xs.begin() + 1, xs.end());
    }
    cert.c2 = cert.pd.kind == Extent::Exact;
    for (int x : cert.ext_self)
        if (x != 0) cert.c2 = false;
    auto tgt = add_target_of(t, rng);
    cert.chain = coresolution_chain(tgt, regular_module(t.alg), k, rng);
    cert.c3 = cert.chain.ok();
    if (special_for) {
        cert.special = true;
        for (auto& s : cert.chain.steps)
            if (s.map.cod.tdim() != 0 && !in_add(s.map.cod, *special_for, rng))
                cert.special = false;
    }
    return cert;
}

// cotilting is tilting for the dual module over the opposite algebra; the
// certificate consequently carries opposite-side witnesses
template <class F>
TiltingCertificate<F> verify_cotilting(const Module<F>& c, int k, Rng& rng,
                                       const Module<F>* special_for = nullptr) {
    auto dc = dual_module(c);
    if (!special_for) return verify_tilting(dc, k, rng);
    auto dsf = dual_module(*special_for);
    return verify_tilting(dc, k, rng, &dsf);
}

// --- shifted and coshifted algebras ---------------------------------------

template <class F>
struct ShiftData {
    Module<F> tilt;            // the (co)shifted module, basic
    EndAlgebra<F> endo;        // its endomorphism algebra, opposite convention
    std::vector<int> pi_parts; // endo vertices whose part is projective-injective
};

template <class F>
ShiftData<F> tag_pi_parts(const ShiftContext<F>& ctx, EndAlgebra<F> e) {
    ShiftData<F> sd;
    sd.pi_parts.clear();
    for (int i = 0; i < (int)e.parts.size(); ++i)
        for (int v : ctx.pi_verts)
            if (indec_isomorphic(e.parts[i], proj_module(ctx.alg, v))) {
                sd.pi_parts.push_back(i);
                break;
            }
    sd.tilt = direct_sum(e.parts, ctx.alg).mod;
    sd.endo = std::move(e);
    return sd;
}

template <class F>
ShiftData<F> shifted_algebra(const ShiftContext<F>& ctx, int k, Rng& rng) {
    return tag_pi_parts(ctx, end_algebra_basic(shifted_module(ctx, k, rng), rng));
}

template <class F>
ShiftData<F> coshifted_algebra(const ShiftContext<F>& ctx, int k, Rng& rng) {
    return tag_pi_parts(ctx, end_algebra_basic(coshifted_module(ctx, k, rng), rng));
}

// idempotent of End(T)^op projecting onto the projective-injective summands
template <class F>
typename Algebra<F>::Vec pi_idempotent(const ShiftData<F>& sd) {
    auto e = sd.endo.alg->zerovec();
    for (int i : sd.pi_parts) e[i] = sd.endo.alg->fld.one();
    return e;
}

// --- Auslander--Gorenstein checks -----------------------------------------

// one-sided comparisons that may stay undecided under a cap
inline int tri_le(const Extent& x, int b) { // 1 yes, 0 no, -1 unknown
    if (x.kind == Extent::Infinite) return 0;
    if (x.kind == Extent::Exact) return x.n <= b ? 1 : 0;
    return x.n > b ? 0 : -1;
}
inline int tri_ge(const Extent& x, int b) {
    if (x.kind == Extent::Infinite || x.n >= b) return 1;
    return x.kind == Extent::Exact ? 0 : -1;
}

struct AGReport {
    Extent hdim; // idim of the regular module, or gldim for the Auslander case
    Extent dd;
    int d = 0;
    bool ok = false;
    bool conclusive = false;
    int suggested_d = -1; // idim - 1 when that is exact and positive
};

template <class F>
AGReport check_dAG(const AlgP<F>& a, int d, int cap = 24) {
    AGReport rep;
    rep.d = d;
    rep.hdim = idim(regular_module(a), cap);
    rep.dd = dominant_dimension(a, cap);
    int up = tri_le(rep.hdim, d + 1), lo = tri_ge(rep.dd, d + 1);
    rep.ok = up == 1 && lo == 1;
    rep.conclusive = up == 0 || lo == 0 || rep.ok;
    if (rep.hdim.kind == Extent::Exact && rep.hdim.n >= 1 && !is_selfinjective(a))
        rep.suggested_d = rep.hdim.n - 1; // the only d not ruled out by the dimensions
    return rep;
}

template <class F>
AGReport check_dAuslander(const AlgP<F>& a, int d, int cap = 24) {
    AGReport rep;
    rep.d = d;
    rep.hdim = global_dimension(a, cap);
    rep.dd = dominant_dimension(a, cap);
    int up = tri_le(rep.hdim, d + 1), lo = tri_ge(rep.dd, d + 1);
    rep.ok = up == 1 && lo == 1;
    rep.conclusive = up == 0 || lo == 0 || rep.ok;
    if (rep.hdim.kind == Extent::Exact && rep.hdim.n >= 1)
        rep.suggested_d = rep.hdim.n - 1;
    return rep;
}

// --- the shifted family against the coshifted family ----------------------

enum class FamilyVerdict { Equal, Intersecting, Disjoint };

template <class F>
struct FamilyReport {
    std::vector<Module<F>> shifted, coshifted; // indices 0..d+1
    FamilyVerdict verdict = FamilyVerdict::Disjoint;
    bool pairing = false; // T_k isomorphic to C^{d+1-k} throughout
};

template <class F>
FamilyReport<F> shifted_family_equals_coshifted(const ShiftContext<F>& ctx, int d,
                                                Rng& rng) {
    if (!ctx.dd.known_ge(d + 1))
        throw PreconditionError("family comparison needs dominant dimension >= d+1");
    FamilyReport<F> rep;
    for (int k = 0; k <= d + 1; ++k) {
        rep.shifted.push_back(shifted_module(ctx, k, rng));
        rep.coshifted.push_back(coshifted_module(ctx, k, rng));
    }
    auto covered = [&](const Module<F>& x, const std::vector<Module<F>>& fam) {
        for (auto& y : fam)
            if (is_isomorphic(x, y, rng)) return true;
        return false;
    };
    int hits = 0;
    bool all = true;
    for (auto& x : rep.shifted) {
        if (covered(x, rep.coshifted))
            ++hits;
        else
            all = false;
    }
    for (auto& y : rep.coshifted)
        if (!covered(y, rep.shifted)) all = false;
    rep.verdict = all          ? FamilyVerdict::Equal
                  : hits > 0   ? FamilyVerdict::Intersecting
                               : FamilyVerdict::Disjoint;
    rep.pairing = true;
    for (int k = 0; k <= d + 1; ++k)
        if (!is_isomorphic(rep.shifted[k], rep.coshifted[d + 1 - k], rng))
            rep.pairing = false;
    return rep;
}

// --- precluster-tilting ----------------------------------------------------

template <class F>
struct PreclusterReport {
    bool gen_ok = false, cogen_ok = false;   // generator and cogenerator
    std::vector<int> ext_self;               // Ext^1..Ext^{d-1}(e, e)
    bool ext_ok = false;
    bool tau_ok = false;                     // tau_d and tau_d^- closure of add e
    bool dag_ok = true;                      // d >= 2 cross-check via End(e)^op
    std::string route;
    bool ok() const { return gen_ok && cogen_ok && ext_ok && tau_ok && dag_ok; }
};

// Iyama--Solberg form of the precluster-tilting conditions: generator-
// cogenerator, rigidity below d, and closure under tau_d = tau Omega^{d-1}
// and its inverse. For d >= 2 the equivalent route through the endomorphism
// algebra is run as well, and both must agree.
template <class F>
PreclusterReport<F> precluster_check(const AlgP<F>& a, const Module<F>& e, int d,
                                     Rng& rng) {
    if (d < 1) throw PreconditionError("precluster level must be at least 1");
    PreclusterReport<F> rep;
    rep.gen_ok = in_add(regular_module(a), e, rng);
    rep.cogen_ok = in_add(coregular_module(a), e, rng);
    rep.ext_ok = true;
    if (d > 1) {
        auto xs = ext_dims(e, e, d - 1);
        rep.ext_self.assign(xs.begin() + 1, xs.end());
        for (int x : rep.ext_self)
            if (x != 0) rep.ext_ok = false;
    }
    rep.tau_ok = true;
    for (auto& [rep_mod, mult] : summand_classes(e, rng)) {
        auto fwd = ar_translate(syzygy(rep_mod, d - 1));
        auto bwd = ar_translate_inv(cosyzygy(rep_mod, d - 1));
        if (fwd.tdim() != 0 && !in_add(fwd, e, rng)) rep.tau_ok = false;
        if (bwd.tdim() != 0 && !in_add(bwd, e, rng)) rep.tau_ok = false;
    }
    rep.route = d == 1 ? "tau-closure" : "tau_d-closure + endo-dAG";
    if (d >= 2) rep.dag_ok = check_dAG(end_algebra_basic(e, rng).alg, d).ok;
    return rep;
}

// --- tilting subcategories -------------------------------------------------

// x in T_i(t) for t k-tilting: Ext^j(t, x) = 0 for all j != i up to k
template <class F>
bool tilt_subcat_member(const Module<F>& t, int k, const Module<F>& x, int i) {
    auto xs = ext_dims(t, x, k);
    for (int j = 0; j <= k; ++j)
        if (j != i && xs[j] != 0) return false;
    return true;
}

// x in C_i(c) for c k-cotilting: Ext^j(x, c) = 0 for all j != i up to k
template <class F>
bool cotilt_subcat_member(const Module<F>& c, int k, const Module<F>& x, int i) {
    auto xs = ext_dims(x, c, k);
    for (int j = 0; j <= k; ++j)
        if (j != i && xs[j] != 0) return false;
    return true;
}

// membership in gen_k(Pi) / cogen^k(Pi); level -1 is everything
template <class F>
bool in_gen_level(const ShiftContext<F>& ctx, const Module<F>& m, int level) {
    if (level < 0) return true;
    return generated_to_level(m, ctx.pi_verts, level);
}

template <class F>
bool in_cogen_level(const ShiftContext<F>& ctx, const Module<F>& m, int level) {
    if (level < 0) return true;
    // the injective labels of the projective-injectives: I(v) projective
    return cogenerated_to_level(m, projective_injective_vertices(ctx.alg), level);
}

// --- global dimension bounds ----------------------------------------------

struct GldimBoundReport {
    Extent gldim_gamma, gldim_b;
    int k = 0;
    bool applicable = false; // needs finite gldim of the base algebra
    bool ok = false;
};

template <class F>
GldimBoundReport gldim_bound_report(const ShiftContext<F>& ctx, int k, Rng& rng,
                                    bool coshifted = false) {
    GldimBoundReport rep;
    rep.k = k;
    rep.gldim_gamma = global_dimension(ctx.alg);
    rep.applicable = rep.gldim_gamma.kind == Extent::Exact;
    auto sd = coshifted ? coshifted_algebra(ctx, k, rng) : shifted_algebra(ctx, k, rng);
    rep.gldim_b = global_dimension(sd.endo.alg);
    if (!rep.applicable) return rep;
    int n = rep.gldim_gamma.n;
    rep.ok = rep.gldim_b.kind == Extent::Exact && n - k <= rep.gldim_b.n &&
             rep.gldim_b.n <= n;
    return rep;
}

} // namespace qmod
