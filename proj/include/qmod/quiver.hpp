#pragma once
#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "algebra.hpp"

namespace qmod {

// Presentation of an algebra by quiver and admissible relations.
// Relation words are composition-style: "a*b" applies b first, then a,
// and needs tgt(b) == src(a).

struct RawTerm {
    std::string coeff;
    std::vector<std::string> word;
};
struct RawPresentation {
    FieldSpec field;
    std::vector<std::string> vertices;
    struct RawArrow {
        std::string name, src, tgt;
    };
    std::vector<RawArrow> arrows;
    std::vector<std::vector<RawTerm>> relations;
};

template <class F>
struct Presentation {
    F fld;
    std::vector<std::string> vertices;
    struct Arrow {
        std::string name;
        int src, tgt;
    };
    std::vector<Arrow> arrows;
    struct Term {
        typename F::Elem coeff;
        std::vector<int> word; // arrow indices, word[0] applied last
    };
    std::vector<std::vector<Term>> relations;
};

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline RawPresentation parse_presentation_text(const std::string& text) {
    RawPresentation p;
    bool saw_field = false;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& m) {
        throw InputError("line " + std::to_string(lineno) + ": " + m);
    };
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        const auto& kw = toks[0];
        if (kw == "field") {
            if (saw_field) fail("duplicate field line");
            saw_field = true;
            if (toks.size() == 2 && toks[1] == "Q") {
                p.field = {true, 0};
            } else if (toks.size() == 3 && toks[1] == "F") {
                try {
                    p.field = {false, std::stoll(toks[2])};
                } catch (const std::exception&) {
                    fail("bad characteristic");
                }
            } else
                fail("expected 'field Q' or 'field F <p>'");
        } else if (kw == "vertex") {
            if (toks.size() != 2) fail("expected 'vertex <label>'");
            p.vertices.push_back(toks[1]);
        } else if (kw == "arrow") {
            if (toks.size() != 4) fail("expected 'arrow <name> <src> <dst>'");
            p.arrows.push_back({toks[1], toks[2], toks[3]});
        } else if (kw == "relation") {
            // coeff word (+|- coeff word)*
            std::vector<RawTerm> rel;
            size_t i = 1;
            bool negate = false;
            while (i < toks.size()) {
                if (toks[i] == "+" || toks[i] == "-") {
                    if (rel.empty()) fail("relation cannot start with a sign");
                    negate = (toks[i] == "-");
                    ++i;
                    if (i >= toks.size()) fail("dangling sign in relation");
                }
                if (i + 1 >= toks.size()) fail("expected '<coeff> <word>' in relation");
                RawTerm t;
                t.coeff = (negate ? "-" : "") + toks[i];
                std::string w = toks[i + 1];
                size_t pos = 0;
                while (pos != std::string::npos) {
                    auto star = w.find('*', pos);
                    auto piece = w.substr(pos, star == std::string::npos ? star : star - pos);
                    if (piece.empty()) fail("empty arrow name in word");
                    t.word.push_back(piece);
                    pos = star == std::string::npos ? star : star + 1;
                }
                rel.push_back(std::move(t));
                negate = false;
                i += 2;
            }
            if (rel.empty()) fail("empty relation");
            p.relations.push_back(std::move(rel));
        } else {
            fail("unknown keyword '" + kw + "'");
        }
    }
    if (!saw_field) throw InputError("presentation has no field line");
    if (p.vertices.empty()) throw InputError("presentation has no vertices");
    std::set<std::string> seen(p.vertices.begin(), p.vertices.end());
    if (seen.size() != p.vertices.size()) throw InputError("duplicate vertex label");
    std::set<std::string> anames;
    for (auto& a : p.arrows) {
        if (!anames.insert(a.name).second) throw InputError("duplicate arrow name " + a.name);
        if (!seen.count(a.src) || !seen.count(a.tgt))
            throw InputError("arrow " + a.name + " has an unknown endpoint");
    }
    return p;
}

inline std::string write_presentation_text(const RawPresentation& p) {
    std::ostringstream os;
    if (p.field.rational)
        os << "field Q\n";
    else
        os << "field F " << p.field.p << "\n";
    for (auto& v : p.vertices) os << "vertex " << v << "\n";
    for (auto& a : p.arrows) os << "arrow " << a.name << " " << a.src << " " << a.tgt << "\n";
    for (auto& rel : p.relations) {
        os << "relation";
        bool first = true;
        for (auto& t : rel) {
            std::string c = t.coeff;
            if (!first) {
                if (!c.empty() && c[0] == '-') {
                    os << " -";
                    c = c.substr(1);
                } else
                    os << " +";
            }
            first = false;
            os << " " << c << " ";
            for (size_t i = 0; i < t.word.size(); ++i) os << (i ? "*" : "") << t.word[i];
        }
        os << "\n";
    }
    return os.str();
}

template <class F>
Presentation<F> typed_presentation(F fld, const RawPresentation& raw) {
    Presentation<F> p;
    p.fld = fld;
    p.vertices = raw.vertices;
    std::map<std::string, int> vidx, aidx;
    for (int i = 0; i < (int)raw.vertices.size(); ++i) vidx[raw.vertices[i]] = i;
    for (auto& a : raw.arrows) {
        p.arrows.push_back({a.name, vidx.at(a.src), vidx.at(a.tgt)});
        aidx[a.name] = (int)p.arrows.size() - 1;
    }
    for (auto& rel : raw.relations) {
        std::vector<typename Presentation<F>::Term> tr;
        int rsrc = -1, rtgt = -1;
        for (auto& t : rel) {
            typename Presentation<F>::Term term;
            term.coeff = fld.parse(t.coeff);
            if (fld.is_zero(term.coeff)) throw InputError("zero coefficient in relation");
            for (auto& aname : t.word) {
                auto it = aidx.find(aname);
                if (it == aidx.end()) throw InputError("unknown arrow '" + aname + "' in relation");
                term.word.push_back(it->second);
            }
            if (term.word.size() < 2)
                throw InputError("relation word shorter than 2 (ideal must be admissible)");
            for (size_t i = 0; i + 1 < term.word.size(); ++i)
                if (p.arrows[term.word[i]].src != p.arrows[term.word[i + 1]].tgt)
                    throw InputError("non-composable word in relation");
            int s = p.arrows[term.word.back()].src;
            int t2 = p.arrows[term.word.front()].tgt;
            if (rsrc < 0) {
                rsrc = s;
                rtgt = t2;
            } else if (rsrc != s || rtgt != t2)
                throw InputError("relation terms have mismatched endpoints");
            tr.push_back(std::move(term));
        }
        p.relations.push_back(std::move(tr));
    }
    return p;
}

namespace detail {

struct Path {
    int src = -1;              // kept for trivial paths
    std::vector<int> word;     // arrow indices, word.front() applied last
};

template <class F>
int path_src(const Presentation<F>& p, const Path& w) {
    return w.word.empty() ? w.src : p.arrows[w.word.back()].src;
}
template <class F>
int path_tgt(const Presentation<F>& p, const Path& w) {
    return w.word.empty() ? w.src : p.arrows[w.word.front()].tgt;
}

} // namespace detail

// Build the finite-dimensional quotient of the path algebra.
//
// Paths are enumerated by increasing length; for a candidate nilpotency
// degree L the ideal is spanned inside paths of length <= L+D-2 by all
// u*r*v whose every component fits the bound (D = longest relation word, so
// the spanning set is honest: no truncation). If every path of length in
// [L, L+D-2] lies in that span, each longer path factors through one of them,
// hence rad^L sits inside the ideal and the quotient basis is exact.
// Columns are ordered longest-first so row reduction eliminates late paths:
// the surviving normal forms are the lexicographically earliest choices.
template <class F>
AlgP<F> build_algebra(const Presentation<F>& pres, int cap = 30) {
    using P = detail::Path;
    const F& f = pres.fld;
    const int nv = (int)pres.vertices.size();

    int D = 2;
    for (auto& rel : pres.relations)
        for (auto& t : rel) D = std::max(D, (int)t.word.size());

    // levels[l] = all paths of length l, lexicographically ordered
    std::vector<std::vector<P>> levels;
    {
        std::vector<P> l0;
        for (int v = 0; v < nv; ++v) l0.push_back({v, {}});
        levels.push_back(std::move(l0));
    }
    auto extend_levels = [&](int upto) {
        while ((int)levels.size() <= upto) {
            std::vector<P> next;
            const auto& prev = levels.back();
            for (int a = 0; a < (int)pres.arrows.size(); ++a)
                for (const auto& w : prev)
                    if (pres.arrows[a].src == detail::path_tgt(pres, w)) {
                        P ext;
                        ext.word.reserve(w.word.size() + 1);
                        ext.word.push_back(a);
                        ext.word.insert(ext.word.end(), w.word.begin(), w.word.end());
                        next.push_back(std::move(ext));
                    }
            levels.push_back(std::move(next));
        }
    };

    for (int L = 2; L <= cap; ++L) {
        const int N = L + D - 2;
        extend_levels(N);

        // index all paths of length 2..N, longest first and reverse-lex within a
        // level, so the leftmost-pivot reduction eliminates late paths and the
        // surviving normal forms are the lexicographically earliest ones
        std::vector<std::pair<int, int>> colpath; // (level, index-in-level)
        std::map<std::vector<int>, int> colidx;
        for (int l = N; l >= 2; --l)
            for (int i = (int)levels[l].size() - 1; i >= 0; --i) {
                colidx[levels[l][i].word] = (int)colpath.size();
                colpath.push_back({l, i});
            }
        const int ncols = (int)colpath.size();

        // spanning set u*r*v with every component inside the bound
        std::vector<std::vector<typename F::Elem>> rows;
        for (auto& rel : pres.relations) {
            int rmax = 0, rs = -1, rt = -1;
            for (auto& t : rel) rmax = std::max(rmax, (int)t.word.size());
            rs = pres.arrows[rel[0].word.back()].src;
            rt = pres.arrows[rel[0].word.front()].tgt;
            for (int lu = 0; lu + rmax <= N; ++lu)
                for (const auto& u : levels[lu]) {
                    if (detail::path_src(pres, u) != rt) continue;
                    for (int lv = 0; lu + rmax + lv <= N; ++lv)
                        for (const auto& v : levels[lv]) {
                            if (detail::path_tgt(pres, v) != rs) continue;
                            std::vector<typename F::Elem> row(ncols, f.zero());
                            for (auto& t : rel) {
                                std::vector<int> w;
                                w.insert(w.end(), u.word.begin(), u.word.end());
                                w.insert(w.end(), t.word.begin(), t.word.end());
                                w.insert(w.end(), v.word.begin(), v.word.end());
                                int c = colidx.at(w);
                                row[c] = f.add(row[c], t.coeff);
                            }
                            rows.push_back(std::move(row));
                        }
                }
        }

        Mat<F> m(f, (int)rows.size(), ncols);
        for (int i = 0; i < (int)rows.size(); ++i)
            for (int j = 0; j < ncols; ++j) m(i, j) = rows[i][j];
        auto rr = rref(m);

        std::vector<int> pivot_of(ncols, -1);
        for (int i = 0; i < (int)rr.pivots.size(); ++i) pivot_of[rr.pivots[i]] = i;

        // e_path lies in the span iff its column is a pivot whose row is a unit vector
        auto path_in_span = [&](int c) {
            int r = pivot_of[c];
            if (r < 0) return false;
            for (int j = 0; j < ncols; ++j)
                if (j != c && !f.is_zero(rr.red(r, j))) return false;
            return true;
        };
        bool terminated = true;
        for (int c = 0; c < ncols && terminated; ++c)
            if (colpath[c].first >= L && !path_in_span(c)) terminated = false;
        if (!terminated) continue;

        // assemble the quotient: vertices, arrows, surviving paths of length < L
        auto alg = std::make_shared<Algebra<F>>();
        alg->fld = f;
        alg->nv = nv;
        alg->vnames = pres.vertices;
        typename Algebra<F>::QuiverInfo qi;
        qi.trunc = L;

        auto pathname = [&](const std::vector<int>& w) {
            std::string s;
            for (size_t i = 0; i < w.size(); ++i) s += (i ? "*" : "") + pres.arrows[w[i]].name;
            return s;
        };

        std::map<std::vector<int>, int> basis_of_word;
        for (int v = 0; v < nv; ++v) {
            alg->bnames.push_back("e_" + pres.vertices[v]);
            alg->bsrc.push_back(v);
            alg->btgt.push_back(v);
            qi.word.push_back({});
        }
        for (int a = 0; a < (int)pres.arrows.size(); ++a) {
            basis_of_word[{a}] = (int)alg->bnames.size();
            qi.arrows.push_back({pres.arrows[a].name, pres.arrows[a].src, pres.arrows[a].tgt,
                                 (int)alg->bnames.size()});
            alg->bnames.push_back(pres.arrows[a].name);
            alg->bsrc.push_back(pres.arrows[a].src);
            alg->btgt.push_back(pres.arrows[a].tgt);
            qi.word.push_back({a});
        }
        for (int l = 2; l < L; ++l)
            for (const auto& w : levels[l]) {
                int c = colidx.at(w.word);
                if (pivot_of[c] >= 0) continue; // eliminated by the ideal
                basis_of_word[w.word] = (int)alg->bnames.size();
                alg->bnames.push_back(pathname(w.word));
                alg->bsrc.push_back(detail::path_src(pres, w));
                alg->btgt.push_back(detail::path_tgt(pres, w));
                qi.word.push_back(w.word);
            }

        const int dim = (int)alg->bnames.size();
        // reduce an enumerated path (length <= N) to its basis expansion
        auto reduce_word = [&](const std::vector<int>& w) -> typename Algebra<F>::Vec {
            typename Algebra<F>::Vec out(dim, f.zero());
            if ((int)w.size() >= L) return out;
            auto it = basis_of_word.find(w);
            if (it != basis_of_word.end()) {
                out[it->second] = f.one();
                return out;
            }
            int c = colidx.at(w);
            int r = pivot_of[c];
            for (int j = 0; j < ncols; ++j) {
                if (j == c || f.is_zero(rr.red(r, j))) continue;
                auto [lvl, idx] = colpath[j];
                // rref rows only involve surviving columns beyond the pivot
                int bj = basis_of_word.at(levels[lvl][idx].word);
                out[bj] = f.neg(rr.red(r, j));
            }
            return out;
        };

        alg->mult.assign(dim, std::vector<typename Algebra<F>::Vec>(dim));
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                if (alg->bsrc[i] != alg->btgt[j]) continue; // zero
                std::vector<int> w;
                w.insert(w.end(), qi.word[i].begin(), qi.word[i].end());
                w.insert(w.end(), qi.word[j].begin(), qi.word[j].end());
                if (w.empty()) { // e_v * e_v
                    alg->mult[i][j] = alg->unitvec(i);
                    continue;
                }
                auto red = reduce_word(w);
                if (!alg->vec_is_zero(red)) alg->mult[i][j] = std::move(red);
            }

        for (int b = nv; b < dim; ++b) alg->rad.push_back(alg->unitvec(b));
        alg->qinfo = std::move(qi);
        return alg;
    }
    throw CapExceeded("path algebra does not stabilize below the length cap (is the quotient finite-dimensional?)");
}

} // namespace qmod
