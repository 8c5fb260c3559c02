#pragma once
#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "complexes.hpp"
#include "io.hpp"
#include "recollement.hpp"

namespace qmod {

using json = nlohmann::ordered_json;

// --- reports -------------------------------------------------------------------
//
// every command produces one Report; rendering is deterministic, so a rerun
// with the same inputs and seed reproduces the output byte for byte.

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs; // path, content hash
    std::uint64_t seed = 0;
    std::string status = "ok"; // ok | inconclusive | failed
    json results = json::object();
};

inline void escalate(std::string& status, const std::string& to) {
    auto rank = [](const std::string& s) { return s == "ok" ? 0 : s == "inconclusive" ? 1 : 2; };
    if (rank(to) > rank(status)) status = to;
}

inline int exit_code_of(const std::string& status) {
    return status == "ok" ? 0 : status == "inconclusive" ? 2 : 1;
}

inline json extent_json(const Extent& e) {
    if (e.kind == Extent::Exact) return e.n;
    if (e.kind == Extent::Infinite) return "infinity";
    return json{{"at_least", e.n}};
}

namespace detail {

inline void render_tree(std::ostringstream& os, const json& j, int indent) {
    std::string pad(2 * indent, ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.value().is_object() && !it.value().empty()) {
            os << pad << it.key() << ":\n";
            render_tree(os, it.value(), indent + 1);
        } else {
            os << pad << it.key() << ": " << it.value().dump() << "\n";
        }
    }
}

} // namespace detail

inline std::string render_report(const Report& r, bool as_json) {
    if (as_json) {
        json out;
        out["command"] = r.command;
        out["inputs"] = json::array();
        for (auto& [path, hash] : r.inputs)
            out["inputs"].push_back(json{{"path", path}, {"fnv1a", hash}});
        out["seed"] = r.seed;
        out["status"] = r.status;
        out["results"] = r.results;
        return out.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "command: " << r.command << "\n";
    for (auto& [path, hash] : r.inputs) os << "input: " << path << " fnv1a " << hash << "\n";
    os << "seed: " << r.seed << "\n";
    os << "status: " << r.status << "\n";
    os << "results:\n";
    detail::render_tree(os, r.results, 1);
    return os.str();
}

// --- shared result builders ----------------------------------------------------

struct CliOptions {
    std::string command; // info | run
    std::string file, task, field_override, dump_dir;
    int k = 1;
    int cap = 30;
    std::uint64_t seed = 8151;
    bool as_json = false;
};

namespace detail {

template <class F>
json cartan_json(const AlgP<F>& a) {
    json rows = json::array();
    for (auto& r : a->cartan()) rows.push_back(r);
    return rows;
}

template <class F>
json presentation_lines(const Presentation<F>& p) {
    std::istringstream is(write_presentation_text(raw_presentation(p)));
    json lines = json::array();
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    return lines;
}

template <class F>
json summand_dims(const std::vector<Module<F>>& parts) {
    json out = json::array();
    for (auto& p : parts) out.push_back(p.dims);
    return out;
}

template <class F>
json tilting_certificate_json(const TiltingCertificate<F>& cert, bool dual) {
    json c;
    c[dual ? "injective_dimension" : "projective_dimension"] = extent_json(cert.pd);
    c["dimension_bounded"] = cert.c1;
    c["self_extensions"] = cert.ext_self;
    c["self_orthogonal"] = cert.c2;
    c[dual ? "resolution_ok" : "coresolution_ok"] = cert.c3;
    c["ok"] = cert.ok();
    return c;
}

// the generator-cogenerator data behind every shift: the corner algebra of the
// projective-injectives and the restricted dual regular module over it
template <class F>
struct CornerData {
    Recollement<F> rc;
    Module<F> e;
};

template <class F>
CornerData<F> corner_data(const AlgP<F>& a, const ShiftContext<F>& ctx) {
    if (ctx.pi_verts.empty())
        throw PreconditionError("algebra has no projective-injective modules");
    auto rc = recollement(a, ctx.pi_verts);
    auto e = restrict_module(rc, coregular_module(a));
    return {std::move(rc), std::move(e)};
}

} // namespace detail

// --- commands ------------------------------------------------------------------

template <class F>
void cmd_info(const AlgP<F>& a, const CliOptions& o, Report& rep) {
    json& res = rep.results;
    res["dim"] = a->dim();
    res["vertices"] = a->vnames;
    res["cartan"] = detail::cartan_json(a);
    json pi = json::array();
    for (int v : projective_injective_vertices(a)) pi.push_back(a->vnames[v]);
    res["projective_injective_vertices"] = pi;
    auto gd = global_dimension(a, o.cap);
    auto dd = dominant_dimension(a, o.cap);
    res["global_dimension"] = extent_json(gd);
    res["dominant_dimension"] = extent_json(dd);
    res["selfinjective"] = is_selfinjective(a);
    if (gd.kind == Extent::AtLeast || dd.kind == Extent::AtLeast)
        escalate(rep.status, "inconclusive");

    int hi = dd.kind == Extent::Exact ? dd.n - 1 : std::min(o.cap, 6);
    json ag = json::array(), aus = json::array();
    for (int d = 1; d <= hi; ++d) {
        auto r = check_dAG(a, d, o.cap);
        if (!r.conclusive) escalate(rep.status, "inconclusive");
        if (r.ok) ag.push_back(d);
        auto h = check_dAuslander(a, d, o.cap);
        if (!h.conclusive) escalate(rep.status, "inconclusive");
        if (h.ok) aus.push_back(d);
    }
    res["auslander_gorenstein_levels"] = ag;
    res["higher_auslander_levels"] = aus;
}

template <class F>
void task_shift(const AlgP<F>& a, const CliOptions& o, bool upper, Rng& rng, Report& rep,
                const std::string& input_hash) {
    auto ctx = shift_context(a, o.cap);
    auto sd = upper ? coshifted_algebra(ctx, o.k, rng) : shifted_algebra(ctx, o.k, rng);
    auto cert = upper ? verify_cotilting(sd.tilt, o.k, rng, &ctx.pi)
                      : verify_tilting(sd.tilt, o.k, rng, &ctx.pi);
    json& res = rep.results;
    res["k"] = o.k;
    res["dominant_dimension"] = extent_json(ctx.dd);
    res["module"] = json{{"summands", detail::summand_dims(sd.endo.parts)},
                         {"total_dim", sd.tilt.tdim()}};
    res["certificate"] = detail::tilting_certificate_json(cert, upper);
    res["certificate"]["summands_with_fixed_part"] = cert.special;
    auto gb = global_dimension(sd.endo.alg, o.cap);
    res["endomorphism_algebra"] =
        json{{"dim", sd.endo.alg->dim()},
             {"cartan", detail::cartan_json(sd.endo.alg)},
             {"tagged_vertices", sd.pi_parts},
             {"global_dimension", extent_json(gb)},
             {"presentation", detail::presentation_lines(present_by_quiver(sd.endo.alg).pres)}};
    if (!cert.ok()) escalate(rep.status, "failed");
    if (gb.kind == Extent::AtLeast) escalate(rep.status, "inconclusive");
    if (!o.dump_dir.empty()) {
        auto ap = o.dump_dir + "/endomorphism_algebra.quiver";
        auto mp = o.dump_dir + "/module.mod";
        write_text_file(
            ap, write_presentation_text(raw_presentation(present_by_quiver(sd.endo.alg).pres)));
        write_text_file(mp, write_module_text(sd.tilt, input_hash));
        res["dump"] = json{{"algebra", ap}, {"module", mp}};
    }
}

template <class F>
void task_verify_tilting(const AlgP<F>& a, const CliOptions& o, Rng& rng, Report& rep) {
    auto ctx = shift_context(a, o.cap);
    auto t = shifted_module(ctx, o.k, rng);
    auto cert = verify_tilting(t, o.k, rng, &ctx.pi);
    json& res = rep.results;
    res["k"] = o.k;
    res["module_dim"] = t.tdim();
    res["certificate"] = detail::tilting_certificate_json(cert, false);
    res["certificate"]["summands_with_fixed_part"] = cert.special;
    if (!cert.ok()) escalate(rep.status, "failed");
}

template <class F>
void task_ag_check(const AlgP<F>& a, const CliOptions& o, Report& rep) {
    json& res = rep.results;
    auto hd = idim(regular_module(a), o.cap);
    auto dd = dominant_dimension(a, o.cap);
    res["injective_dimension_of_regular"] = extent_json(hd);
    res["dominant_dimension"] = extent_json(dd);
    int hi = dd.kind == Extent::Exact ? dd.n - 1 : std::min(o.cap, 6);
    json levels = json::array();
    int suggested = -1;
    for (int d = 1; d <= hi; ++d) {
        auto r = check_dAG(a, d, o.cap);
        auto h = check_dAuslander(a, d, o.cap);
        levels.push_back(json{{"d", d},
                              {"auslander_gorenstein", r.ok},
                              {"higher_auslander", h.ok},
                              {"conclusive", r.conclusive && h.conclusive}});
        if (!r.conclusive || !h.conclusive) escalate(rep.status, "inconclusive");
        suggested = r.suggested_d;
    }
    if (hi < 1) suggested = check_dAG(a, 1, o.cap).suggested_d;
    res["levels"] = levels;
    res["suggested_d"] = suggested;
}

template <class F>
void task_mt(const AlgP<F>& a, const CliOptions& o, Rng& rng, Report& rep) {
    auto ctx = shift_context(a, o.cap);
    auto cd = detail::corner_data(a, ctx);
    auto ea = end_algebra_basic(cd.e, rng);
    json& res = rep.results;
    res["dominant_dimension"] = extent_json(ctx.dd);
    res["corner"] = json{{"dim", cd.rc.corner->dim()},
                         {"presentation",
                          detail::presentation_lines(present_by_quiver(cd.rc.corner).pres)}};
    res["module"] = json{{"summands", detail::summand_dims(ea.parts)},
                         {"total_dim", cd.e.tdim()}};
    bool iso = algebras_isomorphic(ea.alg, a);
    res["double_centralizer"] =
        json{{"end_dim", ea.alg->dim()}, {"algebra_dim", a->dim()}, {"isomorphic", iso}};
    if (ctx.dd.known_ge(2) && !iso) escalate(rep.status, "failed");
}

template <class F>
void task_intext(const AlgP<F>& a, const CliOptions& o, Rng& rng, Report& rep) {
    auto ctx = shift_context(a, o.cap);
    if (ctx.dd.kind != Extent::Exact) {
        escalate(rep.status, "inconclusive");
        rep.results["error"] = "dominant dimension not determined within the cap";
        return;
    }
    int d = ctx.dd.n;
    json& res = rep.results;
    res["k"] = o.k;
    res["dominant_dimension"] = d;
    if (d < 2 || o.k <= 0 || o.k >= d)
        throw PreconditionError(
            "needs 0 < k < dominant dimension with dominant dimension >= 2; "
            "at the boundary the intermediate-extension description can fail");
    auto sd = shifted_algebra(ctx, o.k, rng);
    auto rs = verify_intext_theorem(sd, o.k, d, rng);
    res["shifted"] = json{
        {"is_intermediate_extension", rs.iso}, {"gen_ok", rs.gen_ok}, {"cogen_ok", rs.cogen_ok}};
    auto sdc = coshifted_algebra(ctx, o.k, rng);
    auto rc = verify_intext_levels(sdc, o.k - 1, d - o.k - 1, rng);
    res["coshifted"] = json{
        {"is_intermediate_extension", rc.iso}, {"gen_ok", rc.gen_ok}, {"cogen_ok", rc.cogen_ok}};
    if (!rs.ok() || !rc.ok()) escalate(rep.status, "failed");
}

template <class F>
void task_homotopy(const AlgP<F>& a, const CliOptions& o, Rng& rng, Report& rep) {
    auto ctx = shift_context(a, o.cap);
    auto sd = shifted_algebra(ctx, o.k, rng);
    auto sdc = coshifted_algebra(ctx, o.k, rng);
    auto cd = detail::corner_data(a, ctx);
    json& res = rep.results;
    res["k"] = o.k;
    auto side = [&](bool upper, const ShiftData<F>& pipe) {
        auto model = upper ? build_Ek_upper(cd.rc.corner, cd.e, o.k, rng)
                           : build_Ek_lower(cd.rc.corner, cd.e, o.k, rng);
        auto me = end_algebra_Kb(model, rng);
        bool iso = algebras_isomorphic(me.alg, pipe.endo.alg);
        if (!iso) escalate(rep.status, "failed");
        return json{{"parts", (int)model.parts.size()},
                    {"tagged", model.tagged},
                    {"end_dim", me.alg->dim()},
                    {"pipeline_dim", pipe.endo.alg->dim()},
                    {"isomorphic", iso}};
    };
    res["upper"] = side(true, sdc);
    res["lower"] = side(false, sd);
}

template <class F>
void task_iterate(const AlgP<F>& a, const CliOptions& o, Rng& rng, Report& rep) {
    json steps = json::array();
    std::string end_reason;
    std::vector<AlgP<F>> seen{a};
    AlgP<F> cur = a;
    const int limit = 16;
    for (int s = 0; s <= limit; ++s) {
        auto dd = dominant_dimension(cur, o.cap);
        steps.push_back(json{{"dim", cur->dim()}, {"dominant_dimension", extent_json(dd)}});
        if (dd.kind == Extent::AtLeast) {
            escalate(rep.status, "inconclusive");
            end_reason = "dominant dimension not determined within the cap";
            break;
        }
        if (dd.kind == Extent::Exact && dd.n == 0) {
            end_reason = "dominant dimension zero, no further shift";
            break;
        }
        if (s == limit) {
            escalate(rep.status, "inconclusive");
            end_reason = "step limit reached";
            break;
        }
        auto ctx = shift_context(cur, o.cap);
        auto next = shifted_algebra(ctx, 1, rng).endo.alg;
        int rep_at = -1;
        for (int i = 0; i < (int)seen.size() && rep_at < 0; ++i)
            if (next->dim() == seen[i]->dim() && algebras_isomorphic(next, seen[i])) rep_at = i;
        if (rep_at >= 0) {
            steps.push_back(json{{"dim", next->dim()}, {"repetition_of_step", rep_at}});
            end_reason = "repetition detected";
            break;
        }
        seen.push_back(next);
        cur = next;
    }
    rep.results["steps"] = steps;
    rep.results["end"] = end_reason;
}

// --- driver ---------------------------------------------------------------------

struct CliResult {
    int code = 0;
    std::string out;
};

template <class F>
Report run_typed(const CliOptions& o, const RawPresentation& raw, F fld,
                 const std::string& input_hash) {
    Report rep;
    rep.seed = o.seed;
    rep.inputs.push_back({o.file, input_hash});
    auto a = build_algebra(typed_presentation(fld, raw), o.cap);
    Rng rng(o.seed);
    try {
        if (o.command == "info") {
            cmd_info(a, o, rep);
        } else if (o.task == "shift" || o.task == "coshift") {
            task_shift(a, o, o.task == "coshift", rng, rep, input_hash);
        } else if (o.task == "verify-tilting") {
            task_verify_tilting(a, o, rng, rep);
        } else if (o.task == "ag-check") {
            task_ag_check(a, o, rep);
        } else if (o.task == "mt") {
            task_mt(a, o, rng, rep);
        } else if (o.task == "intext") {
            task_intext(a, o, rng, rep);
        } else if (o.task == "homotopy") {
            task_homotopy(a, o, rng, rep);
        } else if (o.task == "iterate") {
            task_iterate(a, o, rng, rep);
        } else {
            throw InputError("unknown task '" + o.task + "'");
        }
    } catch (const PreconditionError& e) {
        escalate(rep.status, "failed");
        rep.results["error"] = e.what();
    } catch (const Error& e) {
        escalate(rep.status, "failed");
        rep.results["error"] = e.what();
        rep.results["internal"] = true;
    }
    return rep;
}

inline CliResult run_cli(const std::vector<std::string>& args) {
    CliOptions o;
    CLI::App app{"exact arithmetic for quiver algebras and shifted tilting"};
    app.require_subcommand(1);
    auto add_common = [&](CLI::App* c) {
        c->add_option("file", o.file, "algebra file in the quiver text format")->required();
        c->add_flag("--json", o.as_json, "emit the report as JSON");
        c->add_option("--cap", o.cap, "resolution and path length cap");
        c->add_option("--seed", o.seed, "randomness seed echoed into the report");
        c->add_option("--field-override", o.field_override,
                      "build over this field instead: Q or F<p>");
    };
    auto* info = app.add_subcommand("info", "dimensions and homological invariants");
    add_common(info);
    auto* run = app.add_subcommand("run", "run a task against the algebra");
    add_common(run);
    run->add_option("--task", o.task, "shift|coshift|verify-tilting|ag-check|mt|intext|homotopy|iterate")
        ->required();
    run->add_option("-k,--level", o.k, "shift level");
    run->add_option("--dump", o.dump_dir, "directory for algebra/module files the task writes");

    std::vector<const char*> argv{"qmod"};
    for (auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream os;
        os << app.help();
        return {0, os.str()};
    } catch (const CLI::ParseError& e) {
        return {3, std::string("input error: ") + e.what() + "\n"};
    }
    o.command = app.got_subcommand(info) ? "info" : "run";

    try {
        auto text = read_text_file(o.file);
        auto hash = fnv1a_hex(text);
        auto raw = parse_presentation_text(text);
        if (!o.field_override.empty()) {
            if (o.field_override == "Q") {
                raw.field = {true, 0};
            } else if (o.field_override.size() > 1 && o.field_override[0] == 'F') {
                std::string ps = o.field_override.substr(1);
                if (!ps.empty() && ps[0] == ' ') ps = ps.substr(1);
                try {
                    raw.field = {false, std::stoll(ps)};
                } catch (const std::exception&) {
                    throw InputError("bad field override '" + o.field_override + "'");
                }
            } else {
                throw InputError("bad field override '" + o.field_override + "'");
            }
        }
        std::string cmd;
        for (auto& s : args) cmd += (cmd.empty() ? "" : " ") + s;
        Report rep = raw.field.rational ? run_typed(o, raw, QQ{}, hash)
                                        : run_typed(o, raw, GF(raw.field.p), hash);
        rep.command = cmd;
        return {exit_code_of(rep.status), render_report(rep, o.as_json)};
    } catch (const InputError& e) {
        return {3, std::string("input error: ") + e.what() + "\n"};
    }
}

} // namespace qmod
