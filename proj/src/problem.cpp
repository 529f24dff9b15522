#include "teq/problem.hpp"

#include "teq/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace teq {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& msg) {
    throw Error("problem: " + where + ": " + msg);
}

const json& need(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing key '") + key + "'");
    return j.at(key);
}

int need_int(const json& j, const char* key, const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_number_integer()) bad(where + "." + key, "expected an integer");
    return v.get<int>();
}

std::string need_str(const json& j, const char* key, const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_string()) bad(where + "." + key, "expected a string");
    return v.get<std::string>();
}

// Strictly increasing index list -> bitmask.
uint32_t mask_from_list(const json& j, int bound, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array of indices");
    uint32_t mask = 0;
    int prev = -1;
    for (const auto& v : j) {
        if (!v.is_number_integer()) bad(where, "expected integer indices");
        const int i = v.get<int>();
        if (i < 0 || i >= bound) bad(where, "index " + std::to_string(i) + " out of range");
        if (i <= prev) bad(where, "indices must be strictly increasing");
        prev = i;
        mask |= 1u << i;
    }
    return mask;
}

LieAlgebra lie_from_json(const json& j) {
    const std::string where = "lie";
    const std::string type = need_str(j, "type", where);
    if (type == "abelian") return LieAlgebra::abelian(need_int(j, "dim", where));
    if (type == "su2") return LieAlgebra::su2();
    if (type == "explicit") {
        const int dim = need_int(j, "dim", where);
        if (dim < 0 || dim > 16) bad(where, "dim out of range");
        std::vector f(dim, std::vector(dim, std::vector<Rational>(dim, Rational(0))));
        const json& entries = need(j, "entries", where);
        if (!entries.is_array()) bad(where + ".entries", "expected an array");
        for (size_t t = 0; t < entries.size(); ++t) {
            const std::string ew = where + ".entries[" + std::to_string(t) + "]";
            const json& e = entries[t];
            const int a = need_int(e, "a", ew), b = need_int(e, "b", ew),
                      c = need_int(e, "c", ew);
            if (a < 0 || b < 0 || c < 0 || a >= dim || b >= dim || c >= dim)
                bad(ew, "generator index out of range");
            if (a >= b) bad(ew, "give each bracket once with a < b");
            Rational q = rational_from_json(need(e, "coeff", ew), ew + ".coeff");
            f[a][b][c] += q;
            f[b][a][c] -= q;
        }
        return make_lie_algebra(dim, f);
    }
    bad(where, "unknown type '" + type + "'");
}

FormalBackend::LinMap linmap_from_json(const json& j, int size, const std::string& where) {
    FormalBackend::LinMap m(size);
    if (!j.is_array()) bad(where, "expected an array of columns");
    for (size_t t = 0; t < j.size(); ++t) {
        const std::string cw = where + "[" + std::to_string(t) + "]";
        const json& col = j[t];
        const int src = need_int(col, "i", cw);
        if (src < 0 || src >= size) bad(cw, "source index out of range");
        const json& terms = need(col, "terms", cw);
        if (!terms.is_array()) bad(cw + ".terms", "expected an array");
        for (const auto& term : terms) {
            const int dst = need_int(term, "k", cw);
            if (dst < 0 || dst >= size) bad(cw, "target index out of range");
            m[src].emplace_back(dst, rational_from_json(need(term, "c", cw), cw + ".c"));
        }
    }
    return m;
}

Backend manifold_from_json(const json& j, const LieAlgebra& lie) {
    const std::string where = "manifold";
    const std::string type = need_str(j, "type", where);
    if (type == "torus") {
        const int n = need_int(j, "n", where);
        if (n < 0 || n > 16) bad(where, "n out of range");
        return Backend(TorusBackend{n});
    }
    if (type == "point") return Backend(point_backend(lie.dim));
    if (type == "ce") return Backend(ce_backend(lie, j.value("prefix", "e")));
    if (type == "ce-double")
        return Backend(tensor_backend(ce_backend(lie, "e"), ce_backend(lie, "E")));
    if (type == "s1xcpk") return Backend(s1xcpk_backend(need_int(j, "k", where)));
    if (type == "table") {
        FormalBackend F;
        const json& names = need(j, "names", where);
        if (!names.is_array() || names.empty()) bad(where + ".names", "expected a nonempty array");
        for (const auto& n : names) {
            if (!n.is_string()) bad(where + ".names", "expected strings");
            F.names.push_back(n.get<std::string>());
        }
        const int size = F.size();
        const json& degrees = need(j, "degrees", where);
        if (!degrees.is_array() || (int)degrees.size() != size)
            bad(where + ".degrees", "expected one degree per basis element");
        for (const auto& d : degrees) {
            if (!d.is_number_integer()) bad(where + ".degrees", "expected integers");
            F.degrees.push_back(d.get<int>());
        }
        F.unit = need_int(j, "unit", where);
        if (F.unit < 0 || F.unit >= size) bad(where + ".unit", "index out of range");
        F.product.assign(size, std::vector<std::vector<std::pair<int, Rational>>>(size));
        const json& prod = need(j, "product", where);
        if (!prod.is_array()) bad(where + ".product", "expected an array");
        for (size_t t = 0; t < prod.size(); ++t) {
            const std::string pw = where + ".product[" + std::to_string(t) + "]";
            const json& p = prod[t];
            const int i = need_int(p, "i", pw), jdx = need_int(p, "j", pw);
            if (i < 0 || i >= size || jdx < 0 || jdx >= size) bad(pw, "index out of range");
            const json& terms = need(p, "terms", pw);
            for (const auto& term : terms) {
                const int k = need_int(term, "k", pw);
                if (k < 0 || k >= size) bad(pw, "target index out of range");
                F.product[i][jdx].emplace_back(
                    k, rational_from_json(need(term, "c", pw), pw + ".c"));
            }
        }
        F.diff = j.contains("diff") ? linmap_from_json(j.at("diff"), size, where + ".diff")
                                    : FormalBackend::LinMap(size);
        if (j.contains("iota")) {
            const json& io = j.at("iota");
            if (!io.is_array() || (int)io.size() != lie.dim)
                bad(where + ".iota", "expected one map per symmetry generator");
            for (size_t a = 0; a < io.size(); ++a)
                F.iota.push_back(linmap_from_json(io[a], size,
                                                  where + ".iota[" + std::to_string(a) + "]"));
        }
        if (j.contains("lie")) {
            const json& lo = j.at("lie");
            if (!lo.is_array() || (int)lo.size() != lie.dim)
                bad(where + ".lie", "expected one map per symmetry generator");
            for (size_t a = 0; a < lo.size(); ++a)
                F.lie_op.push_back(linmap_from_json(lo[a], size,
                                                    where + ".lie[" + std::to_string(a) + "]"));
        }
        if (auto msg = F.validate(lie)) bad(where, *msg);
        return Backend(std::move(F));
    }
    bad(where, "unknown type '" + type + "'");
}

int basis_index(const Context* ctx, const json& v, const std::string& where) {
    const FormalBackend& F = ctx->backend.formal();
    if (v.is_number_integer()) {
        const int i = v.get<int>();
        if (i < 0 || i >= F.size()) bad(where, "basis index out of range");
        return i;
    }
    if (v.is_string()) {
        const std::string name = v.get<std::string>();
        for (int i = 0; i < F.size(); ++i)
            if (F.names[i] == name) return i;
        bad(where, "unknown basis element '" + name + "'");
    }
    bad(where, "expected a basis index or name");
}

VectorField vf_from_json(const Context* ctx, const json& j, const std::string& where) {
    const int n = ctx->torus_n();
    if (!j.is_array() || (int)j.size() != n)
        bad(where, "expected one component per manifold coordinate");
    VectorField X;
    for (int i = 0; i < n; ++i)
        X.comp.push_back(
            trig_from_json(j[i], ctx->nvars(), where + "[" + std::to_string(i) + "]"));
    return X;
}

}  // namespace

const std::vector<std::string>& problem_task_names() {
    static const std::vector<std::string> names = {
        "validate", "cohomology", "tower", "limit",     "uncompleted",
        "compare",  "average",    "ktower", "verify"};
    return names;
}

Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        auto q = parse_rational(j.get<std::string>());
        if (!q) bad(where, "malformed rational '" + j.get<std::string>() + "'");
        return *q;
    }
    bad(where, "expected an integer or a \"p/q\" string");
}

json rational_to_json(const Rational& r) { return format_rational(r); }

TrigPoly trig_from_json(const json& j, int nvars, const std::string& where) {
    if (j.is_number_integer() || j.is_string())
        return TrigPoly::constant(nvars, rational_from_json(j, where));
    if (!j.is_array()) bad(where, "expected a scalar or an array of modes");
    TrigPoly f(nvars);
    for (size_t t = 0; t < j.size(); ++t) {
        const std::string mw = where + "[" + std::to_string(t) + "]";
        const json& entry = j[t];
        const json& kj = need(entry, "k", mw);
        if (!kj.is_array() || (int)kj.size() != nvars)
            bad(mw + ".k", "expected " + std::to_string(nvars) + " frequencies");
        Mode k(nvars, 0);
        for (int i = 0; i < nvars; ++i) {
            if (!kj[i].is_number_integer()) bad(mw + ".k", "expected integers");
            k[i] = kj[i].get<int32_t>();
        }
        Rational c = entry.contains("cos")
                         ? rational_from_json(entry.at("cos"), mw + ".cos")
                         : Rational(0);
        Rational s = entry.contains("sin")
                         ? rational_from_json(entry.at("sin"), mw + ".sin")
                         : Rational(0);
        const bool zero_mode = std::all_of(k.begin(), k.end(), [](int32_t x) { return x == 0; });
        if (zero_mode) {
            if (s != 0) bad(mw, "the zero mode has no sine part");
            f += TrigPoly::constant(nvars, c);
            continue;
        }
        if (!mode_positive(k))
            bad(mw + ".k", "modes must be positive representatives "
                           "(first nonzero frequency positive)");
        if (c != 0) f += TrigPoly::cosine(nvars, k, c);
        if (s != 0) f += TrigPoly::sine(nvars, k, s);
    }
    return f;
}

json trig_to_json(const TrigPoly& f) {
    if (f.is_constant()) return rational_to_json(f.constant_term());
    json out = json::array();
    for (const auto& [k, c] : f.modes()) {
        (void)c;
        const bool zero_mode = std::all_of(k.begin(), k.end(), [](int32_t x) { return x == 0; });
        if (!zero_mode && !mode_positive(k)) continue;  // emit each pair once
        auto [a, b] = f.real_pair(k);
        json entry;
        entry["k"] = k;
        if (a != 0 || (zero_mode && b == 0)) entry["cos"] = rational_to_json(a);
        if (b != 0) entry["sin"] = rational_to_json(b);
        out.push_back(std::move(entry));
    }
    return out;
}

GradedElement element_from_json(const Context* ctx, const json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array of terms");
    GradedElement e(ctx);
    const int m = ctx->lie.dim;
    for (size_t t = 0; t < j.size(); ++t) {
        const std::string tw = where + "[" + std::to_string(t) + "]";
        const json& term = j[t];
        if (!term.is_object()) bad(tw, "expected an object");
        MonoKey key;
        key.omega.assign(m, 0);
        if (ctx->backend.is_torus()) {
            if (term.contains("b")) bad(tw, "torus terms use 'm', not 'b'");
            key.mbasis = term.contains("m")
                             ? mask_from_list(term.at("m"), ctx->torus_n(), tw + ".m")
                             : 0u;
        } else {
            if (term.contains("m")) bad(tw, "formal terms use 'b', not 'm'");
            key.mbasis = term.contains("b")
                             ? static_cast<uint32_t>(basis_index(ctx, term.at("b"), tw + ".b"))
                             : static_cast<uint32_t>(ctx->backend.formal().unit);
        }
        if (term.contains("theta")) key.theta = mask_from_list(term.at("theta"), m, tw + ".theta");
        if (term.contains("omega")) {
            const json& om = term.at("omega");
            if (!om.is_array()) bad(tw + ".omega", "expected an array of generator indices");
            for (const auto& v : om) {
                if (!v.is_number_integer()) bad(tw + ".omega", "expected integers");
                const int a = v.get<int>();
                if (a < 0 || a >= m) bad(tw + ".omega", "generator index out of range");
                key.omega[a]++;
            }
        }
        TrigPoly c = trig_from_json(need(term, "coeff", tw), ctx->nvars(), tw + ".coeff");
        if (!ctx->backend.is_torus() && !c.is_constant())
            bad(tw + ".coeff", "formal backends take constant coefficients");
        e.add_term(key, c);
    }
    return e;
}

json element_to_json(const GradedElement& e) {
    json out = json::array();
    const Context* ctx = e.ctx();
    for (const auto& [key, c] : e.terms()) {
        json term;
        if (ctx->backend.is_torus()) {
            json mlist = json::array();
            for (int i = 0; i < ctx->torus_n(); ++i)
                if (key.mbasis & (1u << i)) mlist.push_back(i);
            if (!mlist.empty()) term["m"] = std::move(mlist);
        } else {
            term["b"] = ctx->backend.formal().names[key.mbasis];
        }
        json tlist = json::array();
        for (int a = 0; a < ctx->lie.dim; ++a)
            if (key.theta & (1u << a)) tlist.push_back(a);
        if (!tlist.empty()) term["theta"] = std::move(tlist);
        json olist = json::array();
        for (int a = 0; a < ctx->lie.dim; ++a)
            for (int r = 0; r < key.omega[a]; ++r) olist.push_back(a);
        if (!olist.empty()) term["omega"] = std::move(olist);
        term["coeff"] = trig_to_json(c);
        out.push_back(std::move(term));
    }
    return out;
}

Problem problem_from_json(const json& j) {
    if (!j.is_object()) bad("$", "expected a JSON object");
    Problem p;
    p.name = j.value("name", "unnamed");
    p.lie_desc = need(j, "lie", "$");
    p.manifold_desc = need(j, "manifold", "$");

    p.ctx = std::make_shared<Context>();
    p.ctx->lie = lie_from_json(p.lie_desc);
    p.ctx->backend = manifold_from_json(p.manifold_desc, p.ctx->lie);

    if (j.contains("group")) {
        const json& g = j.at("group");
        if (!p.ctx->backend.is_torus()) bad("group", "group averaging needs a torus manifold");
        GroupAction ga;
        ga.l = need_int(g, "l", "group");
        if (ga.l <= 0) bad("group.l", "expected a positive rank");
        const json& A = need(g, "A", "group");
        const int n = p.ctx->backend.torus().n;
        if (!A.is_array() || (int)A.size() != n)
            bad("group.A", "expected one row per manifold coordinate");
        for (size_t r = 0; r < A.size(); ++r) {
            const json& row = A[r];
            if (!row.is_array() || (int)row.size() != ga.l)
                bad("group.A[" + std::to_string(r) + "]", "expected l integer entries");
            std::vector<int> out;
            for (const auto& v : row) {
                if (!v.is_number_integer())
                    bad("group.A[" + std::to_string(r) + "]", "expected integers");
                out.push_back(v.get<int>());
            }
            ga.A.push_back(std::move(out));
        }
        p.ctx->group_params = ga.l;
        p.group = std::move(ga);
    }

    const Context* ctx = p.ctx.get();
    const int m = ctx->lie.dim;
    p.act.ctx = ctx;
    p.act.xi.assign(m, GradedElement::zero(ctx));
    p.act.H = GradedElement::zero(ctx);
    p.alpha = GradedElement::zero(ctx);
    if (j.contains("action")) {
        const json& a = j.at("action");
        if (a.contains("X")) {
            if (!ctx->backend.is_torus())
                bad("action.X", "formal backends carry the fundamental fields internally");
            const json& X = a.at("X");
            if (!X.is_array() || (int)X.size() != m)
                bad("action.X", "expected one vector field per symmetry generator");
            for (int i = 0; i < m; ++i)
                p.act.X.push_back(
                    vf_from_json(ctx, X[i], "action.X[" + std::to_string(i) + "]"));
        } else if (ctx->backend.is_torus()) {
            VectorField zero;
            zero.comp.assign(ctx->torus_n(), TrigPoly(ctx->nvars()));
            p.act.X.assign(m, zero);
        }
        if (a.contains("xi")) {
            const json& xi = a.at("xi");
            if (!xi.is_array() || (int)xi.size() != m)
                bad("action.xi", "expected one form per symmetry generator");
            for (int i = 0; i < m; ++i)
                p.act.xi[i] =
                    element_from_json(ctx, xi[i], "action.xi[" + std::to_string(i) + "]");
        }
        if (a.contains("H")) p.act.H = element_from_json(ctx, a.at("H"), "action.H");
    } else if (ctx->backend.is_torus()) {
        VectorField zero;
        zero.comp.assign(ctx->torus_n(), TrigPoly(ctx->nvars()));
        p.act.X.assign(m, zero);
    }

    if (j.contains("alpha")) p.alpha = element_from_json(ctx, j.at("alpha"), "alpha");

    if (j.contains("truncation")) {
        const json& tr = j.at("truncation");
        if (tr.contains("levels")) p.levels = need_int(tr, "levels", "truncation");
        if (tr.contains("modes")) p.mode_cap = need_int(tr, "modes", "truncation");
        if (tr.contains("k_max")) p.k_max = need_int(tr, "k_max", "truncation");
        if (p.levels < 0 || p.mode_cap < 0 || p.k_max < 0)
            bad("truncation", "parameters must be nonnegative");
    }

    if (j.contains("tasks")) {
        const json& tasks = j.at("tasks");
        if (!tasks.is_array()) bad("tasks", "expected an array of task names");
        for (const auto& t : tasks) {
            if (!t.is_string()) bad("tasks", "expected strings");
            const std::string name = t.get<std::string>();
            const auto& known = problem_task_names();
            if (std::find(known.begin(), known.end(), name) == known.end())
                bad("tasks", "unknown task '" + name + "'");
            p.tasks.push_back(name);
        }
    }
    return p;
}

json problem_to_json(const Problem& p) {
    json j;
    j["name"] = p.name;
    j["lie"] = p.lie_desc;
    j["manifold"] = p.manifold_desc;
    if (p.group) {
        j["group"]["l"] = p.group->l;
        j["group"]["A"] = p.group->A;
    }
    json act;
    if (p.act.ctx->backend.is_torus()) {
        json X = json::array();
        bool any = false;
        for (const auto& vf : p.act.X) {
            json comps = json::array();
            for (const auto& c : vf.comp) {
                comps.push_back(trig_to_json(c));
                any = any || !c.is_zero();
            }
            X.push_back(std::move(comps));
        }
        if (any) act["X"] = std::move(X);
    }
    json xi = json::array();
    bool any_xi = false;
    for (const auto& x : p.act.xi) {
        xi.push_back(element_to_json(x));
        any_xi = any_xi || !x.is_zero();
    }
    if (any_xi) act["xi"] = std::move(xi);
    if (!p.act.H.is_zero()) act["H"] = element_to_json(p.act.H);
    if (!act.empty()) j["action"] = std::move(act);
    if (!p.alpha.is_zero()) j["alpha"] = element_to_json(p.alpha);
    j["truncation"]["levels"] = p.levels;
    j["truncation"]["modes"] = p.mode_cap;
    if (p.k_max > 0) j["truncation"]["k_max"] = p.k_max;
    if (!p.tasks.empty()) j["tasks"] = p.tasks;
    return j;
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("problem: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("problem: '" + path + "' is not valid JSON: " + e.what());
    }
    return problem_from_json(j);
}

void save_problem(const Problem& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("problem: cannot write '" + path + "'");
    out << problem_to_json(p).dump(2) << "\n";
}

}  // namespace teq
