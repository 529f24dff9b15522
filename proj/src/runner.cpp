#include "teq/runner.hpp"

#include "teq/error.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace teq {

using nlohmann::json;

namespace {

json pair_list(const std::vector<std::pair<int, int>>& v) {
    json out = json::array();
    for (const auto& [e, o] : v) out.push_back(json{{"even", e}, {"odd", o}});
    return out;
}

std::string ranks_str(int e, int o) {
    return "(" + std::to_string(e) + ", " + std::to_string(o) + ")";
}

json gens_json(const std::vector<GradedElement>& gens) {
    json out = json::array();
    for (const auto& g : gens)
        out.push_back(json{{"text", g.str()}, {"terms", element_to_json(g)}});
    return out;
}

void gens_lines(TaskResult& tr, const std::string& label,
                const std::vector<GradedElement>& gens) {
    tr.lines.push_back(label + ":");
    if (gens.empty()) tr.lines.push_back("  (none)");
    for (const auto& g : gens) tr.lines.push_back("  [" + g.str() + "]");
}

json validation_json(const ValidationReport& r) {
    json out = json::array();
    for (const auto& c : r.checks) {
        json e{{"name", c.name}, {"ok", c.ok}};
        if (!c.ok) e["witness"] = c.witness;
        out.push_back(std::move(e));
    }
    return out;
}

void validation_lines(TaskResult& tr, const std::string& label, const ValidationReport& r) {
    tr.lines.push_back(label + ": " + (r.ok() ? "ok" : "FAIL"));
    for (const auto& c : r.checks) {
        std::string line = "  [" + std::string(c.ok ? "ok" : "XX") + "] " + c.name;
        if (!c.ok) line += "  --  " + c.witness;
        tr.lines.push_back(line);
    }
}

json minpoly_json(const std::vector<std::pair<int, std::vector<Rational>>>& mp) {
    json out = json::array();
    for (const auto& [mode, coeffs] : mp) {
        json cs = json::array();
        for (const auto& c : coeffs) cs.push_back(rational_to_json(c));
        out.push_back(json{{"mode", mode}, {"coeffs", cs}});
    }
    return out;
}

std::string poly_str(const std::vector<Rational>& coeffs) {
    std::ostringstream os;
    bool first = true;
    for (int d = static_cast<int>(coeffs.size()) - 1; d >= 0; --d) {
        if (coeffs[d] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (d == 0 || coeffs[d] != 1) os << format_rational(coeffs[d]);
        if (d > 0) os << (d == 1 ? "x" : "x^" + std::to_string(d));
    }
    if (first) os << "0";
    return os.str();
}

// --- task bodies ------------------------------------------------------------

void task_validate(const Problem& p, TaskResult& tr) {
    ValidationReport def = validate_extended_action(p.act);
    ValidationReport tw = validate_twisting(p.act);
    tr.ok = def.ok() && tw.ok();
    tr.data["definition"] = validation_json(def);
    tr.data["twisting"] = validation_json(tw);
    validation_lines(tr, "extended action definition", def);
    validation_lines(tr, "closed equivariant twisting", tw);
}

void task_cohomology(const Problem& p, TaskResult& tr, int levels, int mode_cap) {
    GradedOperator D = twisted_cartan_differential(p.act);
    ComplexLevel lvl = completed_level(p.act, D, levels, mode_cap);
    LevelCohomology h = level_cohomology(lvl);
    tr.data["level"] = levels;
    tr.data["modes"] = mode_cap;
    tr.data["rank_even"] = h.rank_even;
    tr.data["rank_odd"] = h.rank_odd;
    tr.data["generators_even"] = gens_json(h.gens_even);
    tr.data["generators_odd"] = gens_json(h.gens_odd);
    tr.lines.push_back("truncation level " + std::to_string(levels) + ", mode cap " +
                       std::to_string(mode_cap));
    tr.lines.push_back("ranks (even, odd) = " + ranks_str(h.rank_even, h.rank_odd));
    gens_lines(tr, "even generators", h.gens_even);
    gens_lines(tr, "odd generators", h.gens_odd);
}

void task_tower(const Problem& p, TaskResult& tr, int levels, int mode_cap) {
    Tower t = omega_tower(p.act, levels, mode_cap);
    std::vector<std::pair<int, int>> ranks;
    for (const auto& h : t.cohom) ranks.emplace_back(h.rank_even, h.rank_odd);
    tr.data["levels"] = pair_list(ranks);
    json res = json::array();
    for (size_t i = 0; i < t.res_even.size(); ++i)
        res.push_back(json{{"even", image_basis(t.res_even[i]).rank()},
                           {"odd", image_basis(t.res_odd[i]).rank()}});
    tr.data["restriction_ranks"] = res;
    const LevelCohomology& top = t.cohom.back();
    tr.data["generators_even"] = gens_json(top.gens_even);
    tr.data["generators_odd"] = gens_json(top.gens_odd);
    for (size_t i = 0; i < ranks.size(); ++i)
        tr.lines.push_back("level " + std::to_string(i) + ": ranks " +
                           ranks_str(ranks[i].first, ranks[i].second));
    gens_lines(tr, "even generators at the deepest level", top.gens_even);
    gens_lines(tr, "odd generators at the deepest level", top.gens_odd);
}

void limit_payload(TaskResult& tr, const LimitProfile& lp) {
    tr.ok = lp.certified;
    tr.data["certified"] = lp.certified;
    tr.data["finitely_generated"] = lp.finitely_generated;
    tr.data["level_ranks"] = pair_list(lp.level_ranks);
    tr.data["stable_ranks"] = pair_list(lp.stable_ranks);
    if (lp.finitely_generated) {
        tr.data["rank_even"] = lp.rank_even;
        tr.data["rank_odd"] = lp.rank_odd;
    }
    tr.data["generators_even"] = gens_json(lp.gens_even);
    tr.data["generators_odd"] = gens_json(lp.gens_odd);
    tr.data["gens_level"] = lp.gens_level;
    if (!lp.note.empty()) tr.data["note"] = lp.note;

    if (!lp.certified) {
        tr.lines.push_back("limit not certified: compute more levels");
    } else if (lp.finitely_generated) {
        tr.lines.push_back("limit ranks (even, odd) = " + ranks_str(lp.rank_even, lp.rank_odd));
        gens_lines(tr, "even generators (at level " + std::to_string(lp.gens_level) + ")",
                   lp.gens_even);
        gens_lines(tr, "odd generators (at level " + std::to_string(lp.gens_level) + ")",
                   lp.gens_odd);
    } else {
        tr.lines.push_back("limit is not finitely generated over the certified range");
    }
    if (!lp.note.empty()) tr.lines.push_back("note: " + lp.note);
}

void task_limit(const Problem& p, TaskResult& tr, int levels, int mode_cap) {
    Tower t = omega_tower(p.act, levels, mode_cap);
    limit_payload(tr, inverse_limit(t));
}

void task_uncompleted(const Problem& p, TaskResult& tr, int levels, int mode_cap) {
    UncompletedReport ur = uncompleted_tower(p.act, levels, mode_cap);
    tr.ok = ur.stabilized;
    std::vector<std::pair<int, int>> ranks;
    for (const auto& st : ur.stages) ranks.emplace_back(st.rank_even, st.rank_odd);
    tr.data["stages"] = pair_list(ranks);
    tr.data["stabilized"] = ur.stabilized;
    tr.data["stable_from"] = ur.stable_from;
    tr.data["minpoly_even"] = minpoly_json(ur.minpoly_even);
    tr.data["minpoly_odd"] = minpoly_json(ur.minpoly_odd);
    for (size_t i = 0; i < ranks.size(); ++i)
        tr.lines.push_back("stage " + std::to_string(i) + ": ranks " +
                           ranks_str(ranks[i].first, ranks[i].second));
    if (ur.stabilized) {
        tr.lines.push_back("stage cohomology stabilizes from stage " +
                           std::to_string(ur.stable_from));
        for (const auto& [mode, coeffs] : ur.minpoly_even)
            tr.lines.push_back("Omega-action minimal polynomial (even, mode " +
                               std::to_string(mode) + "): " + poly_str(coeffs));
        for (const auto& [mode, coeffs] : ur.minpoly_odd)
            tr.lines.push_back("Omega-action minimal polynomial (odd, mode " +
                               std::to_string(mode) + "): " + poly_str(coeffs));
    } else {
        tr.lines.push_back("stage cohomology did not stabilize: compute more stages");
    }
}

void task_compare(const Problem& p, TaskResult& tr, int levels, int mode_cap) {
    ProfileComparison pc = completed_vs_tensored(p.act, levels, mode_cap);
    tr.data["completed"] = pair_list(pc.completed_ranks);
    tr.data["tensored"] = pair_list(pc.tensored_ranks);
    tr.data["point_ranks"] =
        json{{"even", pc.point_rank_growth.first}, {"odd", pc.point_rank_growth.second}};
    tr.data["manifold_ranks"] =
        json{{"even", pc.manifold_ranks.first}, {"odd", pc.manifold_ranks.second}};
    tr.data["equal"] = pc.equal;
    for (size_t i = 0; i < pc.completed_ranks.size(); ++i)
        tr.lines.push_back(
            "level " + std::to_string(i) + ": completed " +
            ranks_str(pc.completed_ranks[i].first, pc.completed_ranks[i].second) +
            "  vs tensored " +
            ranks_str(pc.tensored_ranks[i].first, pc.tensored_ranks[i].second));
    tr.lines.push_back(pc.equal
                           ? "completed invariants match the tensor-product profile"
                           : "completed invariants differ from the tensor-product profile");
}

void task_average(const Problem& p, TaskResult& tr) {
    if (!p.group) {
        tr.ok = false;
        tr.lines.push_back("error: the problem carries no group-averaging data");
        tr.data["error"] = "no group data";
        return;
    }
    if (p.alpha.is_zero()) {
        tr.ok = false;
        tr.lines.push_back("error: the problem carries no alpha family to split");
        tr.data["error"] = "no alpha data";
        return;
    }
    GradedElement B = invariant_splitting(*p.group, p.alpha);
    tr.data["B"] = json{{"text", B.str()}, {"terms", element_to_json(B)}};
    tr.lines.push_back("alpha splits as B - lambda*B with");
    tr.lines.push_back("  B = " + B.str());
}

// Maps a formal-backend element into a sibling context by basis name; basis
// elements absent from the target are sent to zero (family truncation).
GradedElement remap_by_name(const Context* to, const GradedElement& e) {
    const FormalBackend& src = e.ctx()->backend.formal();
    const FormalBackend& dst = to->backend.formal();
    GradedElement out(to);
    for (const auto& [mono, f] : e.terms()) {
        const std::string& nm = src.names[mono.mbasis];
        int tgt = -1;
        for (int i = 0; i < dst.size(); ++i)
            if (dst.names[i] == nm) tgt = i;
        if (tgt < 0) continue;
        MonoKey k{static_cast<uint32_t>(tgt), mono.theta, mono.omega};
        out.add_term(k, f);
    }
    return out;
}

void task_ktower(const Problem& p, TaskResult& tr, int mode_cap) {
    if (!p.manifold_desc.is_object() || p.manifold_desc.value("type", "") != "s1xcpk")
        throw Error("ktower: only defined for the s1xcpk model family");
    const int kmax = p.k_max;
    if (kmax < 1) throw Error("ktower: set truncation.k_max >= 1");

    std::vector<std::shared_ptr<Context>> pool;
    std::vector<ComplexLevel> levels;
    for (int k = 1; k <= kmax; ++k) {
        auto ctx = std::make_shared<Context>();
        ctx->lie = p.ctx->lie;
        ctx->backend = Backend(s1xcpk_backend(k));
        ExtendedAction act;
        act.ctx = ctx.get();
        act.xi.reserve(p.act.xi.size());
        for (const auto& x : p.act.xi) act.xi.push_back(remap_by_name(ctx.get(), x));
        act.H = remap_by_name(ctx.get(), p.act.H);
        GradedOperator D = twisted_cartan_differential(act);
        levels.push_back(completed_level(act, D, 0, mode_cap));
        pool.push_back(std::move(ctx));
    }
    std::vector<std::function<GradedElement(const GradedElement&)>> step;
    for (int k = 1; k < kmax; ++k) {
        const Context* to = pool[k - 1].get();
        step.push_back([to](const GradedElement& e) { return remap_by_name(to, e); });
    }
    Tower t = generic_tower(std::move(levels), step);
    t.ctx_pool = pool;

    json kranks = json::array();
    for (int i = 0; i < kmax; ++i) {
        const auto& h = t.cohom[i];
        kranks.push_back(json{{"k", i + 1},
                              {"even", h.rank_even},
                              {"odd", h.rank_odd},
                              {"generators_even", gens_json(h.gens_even)},
                              {"generators_odd", gens_json(h.gens_odd)}});
        tr.lines.push_back("k = " + std::to_string(i + 1) + ": ranks " +
                           ranks_str(h.rank_even, h.rank_odd));
    }
    tr.data["family"] = std::move(kranks);
    TaskResult lim;
    limit_payload(lim, inverse_limit(t));
    tr.ok = lim.ok;
    tr.data["limit"] = lim.data;
    for (const auto& l : lim.lines) tr.lines.push_back(l);
}

void task_verify(TaskResult& tr, const RunOptions& opt) {
    VerifyConfig cfg;
    cfg.seed = opt.seed;
    cfg.probes = opt.probes;
    std::vector<SuiteResult> res = run_verifier(cfg);
    json suites = json::array();
    bool all = true;
    for (const auto& r : res) {
        json e{{"suite", r.suite}, {"ok", r.ok}, {"checks", r.checks}};
        if (!r.ok) e["witness"] = r.witness;
        suites.push_back(std::move(e));
        std::string line = (r.ok ? "PASS " : "FAIL ") + r.suite + "  (" +
                           std::to_string(r.checks) + " checks)";
        tr.lines.push_back(line);
        if (!r.ok) tr.lines.push_back("  " + r.witness);
        all = all && r.ok;
    }
    tr.ok = all;
    tr.data["suites"] = std::move(suites);
    tr.data["seed"] = cfg.seed;
    tr.data["probes"] = cfg.probes;
}

}  // namespace

TaskResult run_task(const Problem& p, const std::string& task, const RunOptions& opt) {
    const auto& known = problem_task_names();
    if (std::find(known.begin(), known.end(), task) == known.end())
        throw Error("run_task: unknown task '" + task + "'");
    TaskResult tr;
    tr.task = task;
    const int levels = opt.levels.value_or(p.levels);
    const int mode_cap = opt.mode_cap.value_or(p.mode_cap);
    try {
        if (task == "validate") task_validate(p, tr);
        else if (task == "cohomology") task_cohomology(p, tr, levels, mode_cap);
        else if (task == "tower") task_tower(p, tr, levels, mode_cap);
        else if (task == "limit") task_limit(p, tr, levels, mode_cap);
        else if (task == "uncompleted") task_uncompleted(p, tr, levels, mode_cap);
        else if (task == "compare") task_compare(p, tr, levels, mode_cap);
        else if (task == "average") task_average(p, tr);
        else if (task == "ktower") task_ktower(p, tr, mode_cap);
        else if (task == "verify") task_verify(tr, opt);
    } catch (const std::exception& e) {
        tr.ok = false;
        tr.data["error"] = e.what();
        tr.lines.push_back(std::string("error: ") + e.what());
    }
    return tr;
}

RunReport run_problem(const Problem& p, const std::vector<std::string>& tasks,
                      const RunOptions& opt, const std::string& source,
                      const std::string& digest) {
    RunReport rep;
    rep.source = source;
    rep.digest = digest;
    rep.seed = opt.seed;
    for (const auto& t : tasks) rep.tasks.push_back(run_task(p, t, opt));
    return rep;
}

bool RunReport::ok() const {
    for (const auto& t : tasks)
        if (!t.ok) return false;
    return true;
}

json RunReport::to_json() const {
    json j;
    j["tool"] = "teq";
    j["version"] = teq_version;
    j["source"] = source;
    if (!digest.empty()) j["digest"] = digest;
    j["seed"] = seed;
    j["ok"] = ok();
    json ts = json::array();
    for (const auto& t : tasks) ts.push_back(json{{"task", t.task}, {"ok", t.ok}, {"data", t.data}});
    j["tasks"] = std::move(ts);
    return j;
}

std::string RunReport::render_text() const {
    std::ostringstream os;
    os << "teq " << teq_version << " — " << source << "\n";
    for (const auto& t : tasks) {
        os << "\n== " << t.task << ": " << (t.ok ? "ok" : "FAIL") << "\n";
        for (const auto& l : t.lines) os << "   " << l << "\n";
    }
    os << "\n" << (ok() ? "all tasks ok" : "some tasks FAILED") << "\n";
    return os.str();
}

std::string fnv1a64_hex(const std::string& bytes) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; --i) os << ((h >> (4 * i)) & 0xf);
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace teq
