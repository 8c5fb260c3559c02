#pragma once
#include <cstdint>
#include <cstdio>
#include <fstream>

#include "module.hpp"
#include "quiver.hpp"

namespace qmod {

// 64-bit FNV-1a of a byte string, as 16 hex digits; used to tie module files
// and report inputs to exact file contents
inline std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
    if (!out) throw InputError("write to '" + path + "' failed");
}

inline FieldSpec field_spec(const QQ&) { return {true, 0}; }
inline FieldSpec field_spec(const GF& f) { return {false, f.p}; }

// back to the text-format view of a typed presentation
template <class F>
RawPresentation raw_presentation(const Presentation<F>& p) {
    RawPresentation raw;
    raw.field = field_spec(p.fld);
    raw.vertices = p.vertices;
    for (auto& a : p.arrows) raw.arrows.push_back({a.name, p.vertices[a.src], p.vertices[a.tgt]});
    for (auto& rel : p.relations) {
        std::vector<RawTerm> rr;
        for (auto& t : rel) {
            RawTerm rt;
            rt.coeff = p.fld.str(t.coeff);
            for (int ai : t.word) rt.word.push_back(p.arrows[ai].name);
            rr.push_back(std::move(rt));
        }
        raw.relations.push_back(std::move(rr));
    }
    return raw;
}

// --- module files -------------------------------------------------------------
//
// line oriented like the quiver format: `module over <hash>` names the algebra
// file by content hash, `dim <vertex> <n>` lines fix the dimension vector, and
// each `map <arrow>` line is followed by a row-major rational matrix (target
// dimension many rows). Arrows with an empty matrix are omitted.

template <class F>
std::string write_module_text(const Module<F>& m, const std::string& algebra_hash) {
    const auto& a = *m.alg;
    if (!a.qinfo) throw PreconditionError("algebra carries no quiver data");
    std::ostringstream os;
    os << "module over " << algebra_hash << "\n";
    for (int v = 0; v < a.nv; ++v) os << "dim " << a.vnames[v] << " " << m.dims[v] << "\n";
    for (auto& ar : a.qinfo->arrows) {
        const auto& mx = m.act[ar.basis];
        if (mx.rows() == 0 || mx.cols() == 0) continue;
        os << "map " << ar.name << "\n";
        for (int i = 0; i < mx.rows(); ++i) {
            for (int j = 0; j < mx.cols(); ++j) os << (j ? " " : "") << a.fld.str(mx(i, j));
            os << "\n";
        }
    }
    return os.str();
}

template <class F>
Module<F> parse_module_text(const std::string& text, const AlgP<F>& a,
                            const std::string& algebra_hash) {
    if (!a->qinfo) throw PreconditionError("algebra carries no quiver data");
    const auto& qi = *a->qinfo;
    const F& f = a->fld;

    std::vector<std::string> lines;
    {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            lines.push_back(line);
        }
    }
    size_t li = 0;
    auto next = [&]() -> std::optional<std::vector<std::string>> {
        while (li < lines.size()) {
            auto toks = split_ws(lines[li++]);
            if (!toks.empty()) return toks;
        }
        return std::nullopt;
    };
    auto fail = [&](const std::string& m) {
        throw InputError("line " + std::to_string(li) + ": " + m);
    };

    auto head = next();
    if (!head || head->size() != 3 || (*head)[0] != "module" || (*head)[1] != "over")
        fail("expected 'module over <hash>'");
    if ((*head)[2] != algebra_hash) fail("module file targets a different algebra");

    std::map<std::string, int> vidx, aidx;
    for (int v = 0; v < a->nv; ++v) vidx[a->vnames[v]] = v;
    for (int i = 0; i < (int)qi.arrows.size(); ++i) aidx[qi.arrows[i].name] = i;

    std::vector<int> dims(a->nv, -1);
    std::vector<std::optional<Mat<F>>> mats(qi.arrows.size());
    while (auto toks = next()) {
        const auto& kw = (*toks)[0];
        if (kw == "dim") {
            if (toks->size() != 3) fail("expected 'dim <vertex> <n>'");
            auto it = vidx.find((*toks)[1]);
            if (it == vidx.end()) fail("unknown vertex '" + (*toks)[1] + "'");
            if (dims[it->second] >= 0) fail("duplicate dim line for '" + (*toks)[1] + "'");
            try {
                dims[it->second] = std::stoi((*toks)[2]);
            } catch (const std::exception&) {
                fail("bad dimension");
            }
            if (dims[it->second] < 0) fail("bad dimension");
        } else if (kw == "map") {
            for (int d : dims)
                if (d < 0) fail("map block before all dim lines");
            if (toks->size() != 2) fail("expected 'map <arrow>'");
            auto it = aidx.find((*toks)[1]);
            if (it == aidx.end()) fail("unknown arrow '" + (*toks)[1] + "'");
            if (mats[it->second]) fail("duplicate map block for '" + (*toks)[1] + "'");
            const auto& ar = qi.arrows[it->second];
            int r = dims[ar.tgt], c = dims[ar.src];
            Mat<F> mx(f, r, c);
            for (int i = 0; i < r; ++i) {
                auto row = next();
                if (!row || (int)row->size() != c) fail("expected a matrix row with " +
                                                        std::to_string(c) + " entries");
                for (int j = 0; j < c; ++j) mx(i, j) = f.parse((*row)[j]);
            }
            mats[it->second] = std::move(mx);
        } else {
            fail("unknown keyword '" + kw + "'");
        }
    }
    for (int v = 0; v < a->nv; ++v)
        if (dims[v] < 0) throw InputError("missing dim line for vertex '" + a->vnames[v] + "'");

    std::vector<Mat<F>> arrow_mats;
    for (int i = 0; i < (int)qi.arrows.size(); ++i) {
        const auto& ar = qi.arrows[i];
        arrow_mats.push_back(mats[i] ? std::move(*mats[i])
                                     : Mat<F>(f, dims[ar.tgt], dims[ar.src]));
    }
    return module_from_arrows(a, dims, arrow_mats);
}

} // namespace qmod
