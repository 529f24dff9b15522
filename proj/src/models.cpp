#include "teq/models.hpp"

#include "teq/error.hpp"

namespace teq {

namespace {

// op - z∧ with a zero-guard (op_sub is parity-checked and the zero element
// reports parity 0).
GradedOperator sub_lmul(const GradedOperator& op, const GradedElement& z,
                        const std::string& zname) {
    if (z.is_zero()) return op;
    return op_sub(op, op_lmul(z, zname));
}

}  // namespace

GradedElement equivariant_twisting(const ExtendedAction& act) {
    const Context* ctx = act.ctx;
    GradedElement h = act.H;
    for (int a = 0; a < ctx->lie.dim; ++a)
        h += wedge(GradedElement::omega(ctx, a), act.xi[a]).scaled(Rational(-iota_sign));
    return h;
}

Derivation cartan_differential(const ExtendedAction& act) {
    const Context* ctx = act.ctx;
    Derivation d = exterior_d(ctx);
    for (int a = 0; a < ctx->lie.dim; ++a) {
        Derivation term = derivation_mul_central(GradedElement::omega(ctx, a), iota_x(act, a));
        d = derivation_add(d, derivation_scale(term, Rational(iota_sign)));
    }
    return d;
}

GradedOperator d_H(const Context* ctx, const GradedElement& H) {
    return sub_lmul(op_from(exterior_d(ctx), "d"), H, "H");
}

GradedOperator extended_differential(const ExtendedAction& act) {
    const Context* ctx = act.ctx;
    GradedOperator op = d_H(ctx, act.H);
    for (int a = 0; a < ctx->lie.dim; ++a) {
        // ι_{δ(a)} = ι_{X_a} + ξ_a ∧
        GradedOperator contr = op_from(iota_x(act, a), "iota");
        if (!act.xi[a].is_zero()) contr = op_add(contr, op_lmul(act.xi[a], "xi"));
        GradedOperator term =
            op_compose(op_lmul(GradedElement::omega(ctx, a), "Om"), contr);
        op = op_add(op, op_scale(term, Rational(iota_sign)));
    }
    op.name = "d_{g,delta}";
    return op;
}

GradedOperator twisted_cartan_differential(const ExtendedAction& act) {
    ValidationReport rep = validate_twisting(act);
    if (!rep.ok())
        throw Error("twisted_cartan_differential: twisting element is not equivariantly "
                    "closed and invariant: " + rep.summary());
    GradedOperator op =
        sub_lmul(op_from(cartan_differential(act), "d_g"), equivariant_twisting(act), "Hcal");
    op.name = "d_{g,Hcal}";
    return op;
}

Derivation total_lie(const ExtendedAction& act, int a) {
    return derivation_add(lie_x(act, a), coadjoint_lie(act.ctx, a));
}

Derivation total_iota(const ExtendedAction& act, int a) {
    return derivation_add(iota_x(act, a), weil_iota(act.ctx, a));
}

GradedOperator extended_lie(const ExtendedAction& act, int a) {
    // L_{δ(a)} = L_{X_a} + (dξ_a - ι_{X_a} H)∧ + coadjoint part.  The wedge
    // summand vanishes exactly when the moment condition holds.
    GradedOperator op = op_from(total_lie(act, a), "L_delta");
    Derivation d = exterior_d(act.ctx);
    GradedElement corr = d(act.xi[a]) - iota_x(act, a)(act.H);
    if (!corr.is_zero()) op = op_add(op, op_lmul(corr, "dxi-iH"));
    return op;
}

Derivation weil_total_d(const Context* ctx) {
    return derivation_add(exterior_d(ctx), weil_d(ctx));
}

GradedOperator weil_twisted_d(const Context* ctx, const GradedElement& boldH) {
    GradedOperator op = sub_lmul(op_from(weil_total_d(ctx), "D"), boldH, "boldH");
    op.name = "D_{boldH}";
    return op;
}

namespace {

GradedElement apply_j(const ExtendedAction& act, const GradedElement& x, bool reversed) {
    if (x.has_theta())
        throw Error("cartan_map_j: input must be a Cartan-model element "
                    "(no theta generators)");
    const Context* ctx = act.ctx;
    const int m = ctx->lie.dim;
    GradedElement e = x;
    // Operator composition: the factor for the highest generator acts first in
    // ascending order, so walk the generators downward (the factors commute;
    // `reversed` exists so tests can confirm that).
    for (int i = 0; i < m; ++i) {
        int a = reversed ? i : m - 1 - i;
        e -= wedge(GradedElement::theta(ctx, a), iota_x(act, a)(e));
    }
    return e;
}

}  // namespace

GradedElement cartan_map_j(const ExtendedAction& act, const GradedElement& x) {
    return apply_j(act, x, false);
}

GradedElement cartan_map_j_reversed(const ExtendedAction& act, const GradedElement& x) {
    return apply_j(act, x, true);
}

GradedElement weil_three_form(const ExtendedAction& act) {
    const Context* ctx = act.ctx;
    const int m = ctx->lie.dim;
    Derivation D = weil_total_d(ctx);

    GradedElement lin = GradedElement::zero(ctx);  // θ^a ξ_a
    for (int a = 0; a < m; ++a)
        lin += wedge(GradedElement::theta(ctx, a), act.xi[a]);

    GradedElement quad = GradedElement::zero(ctx);  // θ^p θ^q (ι_{X_q} ξ_p)
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            if (p == q) continue;
            GradedElement f = iota_x(act, q)(act.xi[p]);
            if (f.is_zero()) continue;
            quad += wedge(wedge(GradedElement::theta(ctx, p), GradedElement::theta(ctx, q)), f);
        }

    GradedElement bold = act.H + D(lin) - D(quad).scaled(Rational(1, 2));

    // The result must be basic and closed; anything else means the action data
    // or the algebra above is inconsistent.
    if (!D(bold).is_zero())
        throw Error("weil_three_form: internal inconsistency, result is not closed");
    for (int a = 0; a < m; ++a) {
        if (!total_iota(act, a)(bold).is_zero())
            throw Error("weil_three_form: internal inconsistency, result is not "
                        "horizontal for generator " + std::to_string(a + 1));
        if (!total_lie(act, a)(bold).is_zero())
            throw Error("weil_three_form: internal inconsistency, result is not "
                        "invariant for generator " + std::to_string(a + 1));
    }
    return bold;
}

GradedElement exp_wedge(const GradedElement& B, const GradedElement& x, int omega_cap) {
    auto [even, odd] = B.parity_split();
    if (!odd.is_zero()) throw Error("exp_wedge: exponent must be even");
    for (const auto& [key, c] : B.terms()) {
        (void)c;
        int deg = B.degree_of(key);
        if (deg == 0) throw Error("exp_wedge: exponent has a degree-0 component");
        int nilpotent_deg = deg - 2 * omega_total(key);  // manifold + θ part
        if (nilpotent_deg == 0 && omega_cap < 0)
            throw Error("exp_wedge: exponent has a pure-Ω component; an Ω-degree cap "
                        "is required for the series to terminate");
    }
    GradedElement result = x;
    GradedElement term = x;
    for (int i = 1;; ++i) {
        term = wedge(B, term).scaled(Rational(1, i));
        if (omega_cap >= 0) term = term.truncate_omega(omega_cap);
        if (term.is_zero()) break;
        result += term;
        if (i > 4096)
            throw Error("exp_wedge: series did not terminate");
    }
    return result;
}

ExtendedAction transform_action(const ExtendedAction& act, const GradedElement& B) {
    auto [even, odd] = B.parity_split();
    if (!odd.is_zero()) throw Error("transform_action: B must be an even form");
    ExtendedAction out = act;
    Derivation d = exterior_d(act.ctx);
    out.H = act.H - d(B);
    for (int a = 0; a < act.ctx->lie.dim; ++a)
        out.xi[a] = act.xi[a] + iota_x(act, a)(B);
    return out;
}

}  // namespace teq
