#include "teq/action.hpp"

#include "teq/error.hpp"

namespace teq {

Section ExtendedAction::section(int a) const {
    std::vector<Rational> coeff(ctx->lie.dim, Rational(0));
    coeff[a] = 1;
    return section_combination(coeff);
}

Section ExtendedAction::section_combination(const std::vector<Rational>& coeff) const {
    if (static_cast<int>(coeff.size()) != ctx->lie.dim)
        throw Error("section_combination: coefficient count mismatch");
    Section s;
    s.xi = GradedElement::zero(ctx);
    for (int a = 0; a < ctx->lie.dim; ++a) s.xi += xi[a].scaled(coeff[a]);
    if (torus()) {
        const int n = ctx->backend.torus().n;
        VectorField v;
        v.comp.assign(n, TrigPoly(ctx->nvars()));
        for (int a = 0; a < ctx->lie.dim; ++a)
            for (int i = 0; i < n; ++i) v.comp[i] += X[a].comp[i].scaled(coeff[a]);
        s.vec = std::move(v);
    } else {
        s.vec = coeff;
    }
    return s;
}

Derivation iota_vec(const Context* ctx, const Section& s) {
    if (std::holds_alternative<VectorField>(s.vec))
        return iota_vf(ctx, std::get<VectorField>(s.vec));
    const auto& coeff = std::get<std::vector<Rational>>(s.vec);
    Derivation d = zero_derivation(ctx, 1);
    for (int a = 0; a < ctx->lie.dim; ++a)
        if (coeff[a] != 0)
            d = derivation_add(d, derivation_scale(iota_formal(ctx, a), coeff[a]));
    return d;
}

Derivation lie_vec(const Context* ctx, const Section& s) {
    if (std::holds_alternative<VectorField>(s.vec))
        return lie_vf(ctx, std::get<VectorField>(s.vec));
    const auto& coeff = std::get<std::vector<Rational>>(s.vec);
    Derivation d = zero_derivation(ctx, 0);
    for (int a = 0; a < ctx->lie.dim; ++a)
        if (coeff[a] != 0)
            d = derivation_add(d, derivation_scale(lie_formal(ctx, a), coeff[a]));
    return d;
}

Derivation iota_x(const ExtendedAction& act, int a) {
    if (act.torus()) return iota_vf(act.ctx, act.X[a]);
    return iota_formal(act.ctx, a);
}

Derivation lie_x(const ExtendedAction& act, int a) {
    if (act.torus()) return lie_vf(act.ctx, act.X[a]);
    return lie_formal(act.ctx, a);
}

GradedElement pairing(const Context* ctx, const Section& s1, const Section& s2) {
    GradedElement p = iota_vec(ctx, s1).apply(s2.xi) + iota_vec(ctx, s2).apply(s1.xi);
    return p.scaled(Rational(1, 2));
}

namespace {

std::variant<VectorField, std::vector<Rational>> vector_bracket(
    const Context* ctx, const Section& s1, const Section& s2) {
    if (std::holds_alternative<VectorField>(s1.vec)) {
        const VectorField& X = std::get<VectorField>(s1.vec);
        const VectorField& Y = std::get<VectorField>(s2.vec);
        const int n = ctx->backend.torus().n;
        VectorField r;
        r.comp.assign(n, TrigPoly(ctx->nvars()));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                r.comp[i] += X.comp[j] * Y.comp[i].derivative(ctx->coord_var(j));
                r.comp[i] -= Y.comp[j] * X.comp[i].derivative(ctx->coord_var(j));
            }
        return r;
    }
    const auto& u = std::get<std::vector<Rational>>(s1.vec);
    const auto& v = std::get<std::vector<Rational>>(s2.vec);
    std::vector<Rational> w(ctx->lie.dim, Rational(0));
    for (int a = 0; a < ctx->lie.dim; ++a)
        for (int b = 0; b < ctx->lie.dim; ++b)
            if (u[a] != 0 && v[b] != 0)
                for (int c = 0; c < ctx->lie.dim; ++c) w[c] += u[a] * v[b] * ctx->lie.fc(a, b, c);
    return w;
}

}  // namespace

Section courant_bracket(const Context* ctx, const Section& s1, const Section& s2,
                        const GradedElement& H) {
    if (!s1.xi.is_zero() && s1.xi.homogeneous_degree() != std::optional<int>(1))
        throw Error("courant_bracket: first form part must be a 1-form");
    if (!s2.xi.is_zero() && s2.xi.homogeneous_degree() != std::optional<int>(1))
        throw Error("courant_bracket: second form part must be a 1-form");
    Section r;
    r.vec = vector_bracket(ctx, s1, s2);
    Derivation d = exterior_d(ctx);
    Derivation i1 = iota_vec(ctx, s1), i2 = iota_vec(ctx, s2);
    GradedElement form = lie_vec(ctx, s1).apply(s2.xi) - lie_vec(ctx, s2).apply(s1.xi);
    form -= d.apply(i1.apply(s2.xi) - i2.apply(s1.xi)).scaled(Rational(1, 2));
    form -= i1.apply(i2.apply(H));
    r.xi = form;
    return r;
}

std::string ValidationReport::summary() const {
    std::string s;
    for (const auto& c : checks) {
        s += (c.ok ? "[ok]   " : "[FAIL] ") + c.name;
        if (!c.ok && !c.witness.empty()) s += "  witness: " + c.witness;
        s += "\n";
    }
    return s;
}

const CheckResult* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

bool xi_matches(const Section& s, const GradedElement& expected_xi) {
    return s.xi == expected_xi;
}

}  // namespace

ValidationReport validate_extended_action(const ExtendedAction& act) {
    const Context* ctx = act.ctx;
    const int m = ctx->lie.dim;
    ValidationReport rep;

    {
        CheckResult c{"closed-twisting", true, ""};
        GradedElement dH = exterior_d(ctx).apply(act.H);
        if (!dH.is_zero()) {
            c.ok = false;
            c.witness = "dH = " + dH.str();
        }
        rep.checks.push_back(std::move(c));
    }
    {
        CheckResult c{"isotropy", true, ""};
        for (int a = 0; a < m && c.ok; ++a)
            for (int b = a; b < m && c.ok; ++b) {
                GradedElement p = pairing(ctx, act.section(a), act.section(b));
                if (!p.is_zero()) {
                    c.ok = false;
                    c.witness = "<delta(" + std::to_string(a + 1) + "), delta(" +
                                std::to_string(b + 1) + ")> = " + p.str();
                }
            }
        rep.checks.push_back(std::move(c));
    }
    {
        CheckResult c{"algebra-morphism", true, ""};
        for (int a = 0; a < m && c.ok; ++a)
            for (int b = a + 1; b < m && c.ok; ++b) {
                Section br = courant_bracket(ctx, act.section(a), act.section(b), act.H);
                std::vector<Rational> lie_ab(m, Rational(0));
                for (int cc = 0; cc < m; ++cc) lie_ab[cc] = ctx->lie.fc(a, b, cc);
                Section expect = act.section_combination(lie_ab);
                // Vector parts.
                if (act.torus()) {
                    const VectorField& got = std::get<VectorField>(br.vec);
                    const VectorField& want = std::get<VectorField>(expect.vec);
                    for (std::size_t i = 0; i < got.comp.size() && c.ok; ++i)
                        if (!(got.comp[i] == want.comp[i])) {
                            c.ok = false;
                            c.witness = "[X_" + std::to_string(a + 1) + ", X_" +
                                        std::to_string(b + 1) + "] - X_[a,b] has component " +
                                        std::to_string(i + 1) + " = " +
                                        (got.comp[i] - want.comp[i]).str();
                        }
                } else {
                    const auto& got = std::get<std::vector<Rational>>(br.vec);
                    const auto& want = std::get<std::vector<Rational>>(expect.vec);
                    if (got != want) {
                        c.ok = false;
                        c.witness = "vector parts disagree at (" + std::to_string(a + 1) + "," +
                                    std::to_string(b + 1) + ")";
                    }
                }
                if (c.ok && !xi_matches(br, expect.xi)) {
                    GradedElement diff = br.xi - expect.xi;
                    c.ok = false;
                    c.witness = "[delta(" + std::to_string(a + 1) + "), delta(" +
                                std::to_string(b + 1) + ")]_H - delta([a,b]) = " + diff.str();
                }
            }
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

ValidationReport validate_twisting(const ExtendedAction& act) {
    const Context* ctx = act.ctx;
    const int m = ctx->lie.dim;
    ValidationReport rep;
    Derivation d = exterior_d(ctx);

    {
        CheckResult c{"closed-twisting", true, ""};
        GradedElement dH = d.apply(act.H);
        if (!dH.is_zero()) {
            c.ok = false;
            c.witness = "dH = " + dH.str();
        }
        rep.checks.push_back(std::move(c));
    }
    {
        CheckResult c{"moment-condition", true, ""};  // dξ_a = ι_{X_a} H
        for (int a = 0; a < m && c.ok; ++a) {
            GradedElement r = d.apply(act.xi[a]) - iota_x(act, a).apply(act.H);
            if (!r.is_zero()) {
                c.ok = false;
                c.witness =
                    "d xi_" + std::to_string(a + 1) + " - iota_" + std::to_string(a + 1) +
                    " H = " + r.str();
            }
        }
        rep.checks.push_back(std::move(c));
    }
    {
        CheckResult c{"contraction-antisymmetry", true, ""};  // ι_a ξ_b = −ι_b ξ_a
        for (int a = 0; a < m && c.ok; ++a)
            for (int b = a; b < m && c.ok; ++b) {
                GradedElement r =
                    iota_x(act, a).apply(act.xi[b]) + iota_x(act, b).apply(act.xi[a]);
                if (!r.is_zero()) {
                    c.ok = false;
                    c.witness = "iota_" + std::to_string(a + 1) + " xi_" +
                                std::to_string(b + 1) + " + iota_" + std::to_string(b + 1) +
                                " xi_" + std::to_string(a + 1) + " = " + r.str();
                }
            }
        rep.checks.push_back(std::move(c));
    }
    {
        CheckResult c{"invariance", true, ""};  // L_b H = 0, L_b ξ_a = ξ_{[b,a]}
        for (int b = 0; b < m && c.ok; ++b) {
            GradedElement lh = lie_x(act, b).apply(act.H);
            if (!lh.is_zero()) {
                c.ok = false;
                c.witness = "L_" + std::to_string(b + 1) + " H = " + lh.str();
                break;
            }
            for (int a = 0; a < m && c.ok; ++a) {
                GradedElement want(ctx);
                for (int cc = 0; cc < m; ++cc)
                    want += act.xi[cc].scaled(ctx->lie.fc(b, a, cc));
                GradedElement r = lie_x(act, b).apply(act.xi[a]) - want;
                if (!r.is_zero()) {
                    c.ok = false;
                    c.witness = "L_" + std::to_string(b + 1) + " xi_" + std::to_string(a + 1) +
                                " - xi_[b,a] = " + r.str();
                }
            }
        }
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

}  // namespace teq
