#include "teq/verifier.hpp"

#include "teq/averaging.hpp"
#include "teq/error.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <utility>

namespace teq {
namespace {

// === deterministic probe generation =========================================

// Thin wrapper over mt19937_64.  Draws are reduced with plain modulo rather
// than uniform_int_distribution, whose output stream is implementation
// defined; the verifier must replay identically everywhere for a fixed seed.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}

    int pick(int lo, int hi) {  // uniform-ish in [lo, hi]
        return lo + static_cast<int>(eng() % static_cast<uint64_t>(hi - lo + 1));
    }
    Rational rat() { return Rational(pick(-3, 3), pick(1, 3)); }
    Rational rat_nonzero() {
        for (;;) {
            Rational q = rat();
            if (q != 0) return q;
        }
    }
};

// Random trig polynomial; coordinates below `skip` stay mode-free.
TrigPoly rand_fn(Rng& rng, int nvars, int max_mode, int skip = 0) {
    TrigPoly f(nvars);
    const int terms = rng.pick(1, 2);
    for (int t = 0; t < terms; ++t) {
        Mode k(nvars, 0);
        for (int i = skip; i < nvars; ++i) k[i] = rng.pick(-max_mode, max_mode);
        if (!mode_positive(k)) k = mode_negate(k);
        if (!mode_positive(k))
            f += TrigPoly::constant(nvars, rng.rat());
        else
            f += rng.pick(0, 1) ? TrigPoly::sine(nvars, k, rng.rat_nonzero())
                                : TrigPoly::cosine(nvars, k, rng.rat_nonzero());
    }
    if (f.is_zero()) f = TrigPoly::constant(nvars, Rational(1));
    return f;
}

GradedElement rand_element(Rng& rng, const Context* ctx, int nterms, int max_mode,
                           bool allow_theta, int max_omega) {
    GradedElement e(ctx);
    const int m = ctx->lie.dim;
    for (int t = 0; t < nterms; ++t) {
        MonoKey k;
        k.omega.assign(m, 0);
        if (ctx->backend.is_torus()) {
            const int n = ctx->backend.torus().n;
            k.mbasis = static_cast<uint32_t>(rng.pick(0, (1 << n) - 1));
        } else {
            k.mbasis = static_cast<uint32_t>(rng.pick(0, ctx->backend.formal().size() - 1));
        }
        if (allow_theta && m > 0) k.theta = static_cast<uint32_t>(rng.pick(0, (1 << m) - 1));
        if (m > 0 && max_omega > 0) {
            const int budget = rng.pick(0, max_omega);
            for (int j = 0; j < budget; ++j) k.omega[rng.pick(0, m - 1)]++;
        }
        TrigPoly c = ctx->backend.is_torus()
                         ? rand_fn(rng, ctx->nvars(), max_mode, ctx->group_params)
                         : TrigPoly::constant(ctx->nvars(), rng.rat_nonzero());
        e.add_term(k, c);
    }
    return e;
}

// === check harness ===========================================================

struct Suite {
    SuiteResult res;
    explicit Suite(std::string name) { res.suite = std::move(name); }

    void fail(const std::string& label, const std::string& detail) {
        if (!res.ok) return;
        res.ok = false;
        res.witness = detail.empty() ? label : label + ": " + detail;
    }
    void zero(const GradedElement& r, const std::string& label) {
        ++res.checks;
        if (!r.is_zero()) fail(label, "residual = " + r.str());
    }
    void equal(const GradedElement& a, const GradedElement& b, const std::string& label) {
        zero(a - b, label);
    }
    void require(bool ok, const std::string& label) {
        ++res.checks;
        if (!ok) fail(label, "");
    }
};

// === built-in reference instances ===========================================

struct Testbed {
    std::string name;
    std::shared_ptr<Context> ctx;
    ExtendedAction act;
};

// Pure Weil algebra: one-point manifold, arbitrary symmetry algebra.
Testbed make_point(LieAlgebra lie, const std::string& name) {
    Testbed tb;
    tb.name = name;
    tb.ctx = std::make_shared<Context>();
    tb.ctx->lie = std::move(lie);
    tb.ctx->backend = Backend(point_backend(tb.ctx->lie.dim));
    tb.act.ctx = tb.ctx.get();
    tb.act.xi.assign(tb.ctx->lie.dim, GradedElement::zero(tb.ctx.get()));
    tb.act.H = GradedElement::zero(tb.ctx.get());
    return tb;
}

// Trivial circle action on S¹ with the generator mapped to 0 + dθ.
Testbed make_circle_circle() {
    Testbed tb;
    tb.name = "circle-circle";
    tb.ctx = std::make_shared<Context>();
    tb.ctx->lie = LieAlgebra::abelian(1);
    tb.ctx->backend = Backend(TorusBackend{1});
    tb.act.ctx = tb.ctx.get();
    tb.act.X = {VectorField{{TrigPoly(1)}}};
    tb.act.xi = {GradedElement::dtheta(tb.ctx.get(), 0)};
    tb.act.H = GradedElement::zero(tb.ctx.get());
    return tb;
}

// Free rotation of S¹: X = ∂θ, ξ = 0.
Testbed make_rotation() {
    Testbed tb;
    tb.name = "s1-rotation";
    tb.ctx = std::make_shared<Context>();
    tb.ctx->lie = LieAlgebra::abelian(1);
    tb.ctx->backend = Backend(TorusBackend{1});
    tb.act.ctx = tb.ctx.get();
    tb.act.X = {VectorField{{TrigPoly::constant(1, Rational(1))}}};
    tb.act.xi = {GradedElement::zero(tb.ctx.get())};
    tb.act.H = GradedElement::zero(tb.ctx.get());
    return tb;
}

// Two translation circles on T³ with an H-twist supported on θ₃.
Testbed make_t3() {
    Testbed tb;
    tb.name = "t3-twisted";
    tb.ctx = std::make_shared<Context>();
    tb.ctx->lie = LieAlgebra::abelian(2);
    tb.ctx->backend = Backend(TorusBackend{3});
    Context* c = tb.ctx.get();
    TrigPoly zero3(3), one3 = TrigPoly::constant(3, Rational(1));
    TrigPoly sin3 = TrigPoly::sine(3, {0, 0, 1}, Rational(1));
    TrigPoly cos3 = TrigPoly::cosine(3, {0, 0, 1}, Rational(1));
    tb.act.ctx = c;
    tb.act.X = {VectorField{{one3, zero3, zero3}}, VectorField{{zero3, one3, zero3}}};
    tb.act.xi = {GradedElement::dtheta(c, 1).mul_fn(-sin3),
                 GradedElement::dtheta(c, 0).mul_fn(sin3)};
    tb.act.H = wedge(wedge(GradedElement::dtheta(c, 0), GradedElement::dtheta(c, 1)),
                     GradedElement::dtheta(c, 2))
                   .mul_fn(cos3);
    return tb;
}

// su(2) acting on its own group manifold, both sides modelled by
// Chevalley-Eilenberg algebras; ξ_a = e^a - ē^a, H = ē¹ē²ē³ - e¹e²e³.
Testbed make_su2ce() {
    Testbed tb;
    tb.name = "su2-ce";
    tb.ctx = std::make_shared<Context>();
    tb.ctx->lie = LieAlgebra::su2();
    tb.ctx->backend =
        Backend(tensor_backend(ce_backend(tb.ctx->lie, "e"), ce_backend(tb.ctx->lie, "E")));
    Context* c = tb.ctx.get();
    tb.act.ctx = c;
    const int nB = 8;  // basis size of the second factor
    for (int a = 0; a < 3; ++a)
        tb.act.xi.push_back(GradedElement::formal_basis(c, (1 << a) * nB) -
                            GradedElement::formal_basis(c, 1 << a));
    tb.act.H = GradedElement::formal_basis(c, 7) - GradedElement::formal_basis(c, 7 * nB);
    return tb;
}

// T² with a skew generator image: valid dH and isotropy, broken morphism
// condition.  The square identity of the extended differential holds anyway,
// with a nonzero (dξ - ι_X H) correction in play.
Testbed make_t2_skew() {
    Testbed tb;
    tb.name = "t2-skew";
    tb.ctx = std::make_shared<Context>();
    tb.ctx->lie = LieAlgebra::abelian(2);
    tb.ctx->backend = Backend(TorusBackend{2});
    Context* c = tb.ctx.get();
    TrigPoly zero2(2);
    TrigPoly sin2 = TrigPoly::sine(2, {0, 1}, Rational(1));
    tb.act.ctx = c;
    tb.act.X = {VectorField{{zero2, zero2}}, VectorField{{zero2, zero2}}};
    tb.act.xi = {GradedElement::dtheta(c, 0).mul_fn(sin2), GradedElement::zero(c)};
    tb.act.H = GradedElement::zero(c);
    return tb;
}

// T² translation circle with a constant-coefficient generator image; stays in
// the family under constant B-field transforms.
Testbed make_t2_const() {
    Testbed tb;
    tb.name = "t2-const";
    tb.ctx = std::make_shared<Context>();
    tb.ctx->lie = LieAlgebra::abelian(1);
    tb.ctx->backend = Backend(TorusBackend{2});
    Context* c = tb.ctx.get();
    TrigPoly zero2(2), one2 = TrigPoly::constant(2, Rational(1));
    tb.act.ctx = c;
    tb.act.X = {VectorField{{one2, zero2}}};
    tb.act.xi = {GradedElement::dtheta(c, 1)};
    tb.act.H = GradedElement::zero(c);
    return tb;
}

// === operator helpers ========================================================

GradedOperator add_lmul(GradedOperator op, const GradedElement& z, const std::string& zname) {
    if (z.is_zero()) return op;
    return op_add(op, op_lmul(z, zname));
}

GradedOperator iota_section_op(const Context* ctx, const Section& s) {
    return add_lmul(op_from(iota_vec(ctx, s), "iota"), s.xi, "xi");
}

GradedElement section_correction(const Context* ctx, const Section& s, const GradedElement& H) {
    return exterior_d(ctx)(s.xi) - iota_vec(ctx, s)(H);
}

GradedOperator lie_section_op(const Context* ctx, const Section& s, const GradedElement& H) {
    return add_lmul(op_from(lie_vec(ctx, s), "L"), section_correction(ctx, s, H), "corr");
}

std::vector<Rational> bracket_coeffs(const LieAlgebra& lie, const std::vector<Rational>& u,
                                     const std::vector<Rational>& v) {
    std::vector<Rational> w(lie.dim, Rational(0));
    for (int a = 0; a < lie.dim; ++a)
        for (int b = 0; b < lie.dim; ++b) {
            if (u[a] == 0 || v[b] == 0) continue;
            for (int c = 0; c < lie.dim; ++c) w[c] += u[a] * v[b] * lie.fc(a, b, c);
        }
    return w;
}

bool section_equal(const Section& s, const Section& t) {
    if (!((s.xi - t.xi).is_zero())) return false;
    if (s.vec.index() != t.vec.index()) return false;
    if (std::holds_alternative<VectorField>(s.vec)) {
        const auto& a = std::get<VectorField>(s.vec).comp;
        const auto& b = std::get<VectorField>(t.vec).comp;
        if (a.size() != b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (!(a[i] == b[i])) return false;
        return true;
    }
    return std::get<std::vector<Rational>>(s.vec) == std::get<std::vector<Rational>>(t.vec);
}

// Degree-(0,0,0) part in (θ, Ω): the underlying untwisted manifold form.
GradedElement manifold_part(const GradedElement& e) {
    GradedElement out(e.ctx());
    for (const auto& [mono, f] : e.terms())
        if (mono.theta == 0 && omega_total(mono) == 0) out.add_term(mono, f);
    return out;
}

// === suites ==================================================================

// Commutation relations of the total differential, contraction and Lie
// derivative in the Weil model, on pure Weil algebras and on full models.
void suite_weil_identities(Suite& s, const VerifyConfig& cfg) {
    Rng rng(cfg.seed);
    std::vector<Testbed> beds;
    beds.push_back(make_point(LieAlgebra::abelian(1), "weil-u1"));
    beds.push_back(make_point(LieAlgebra::abelian(2), "weil-u1xu1"));
    beds.push_back(make_point(LieAlgebra::su2(), "weil-su2"));
    beds.push_back(make_circle_circle());
    beds.push_back(make_rotation());
    beds.push_back(make_t3());
    beds.push_back(make_su2ce());

    for (const auto& tb : beds) {
        const Context* ctx = tb.ctx.get();
        const int m = ctx->lie.dim;
        Derivation D = weil_total_d(ctx);
        std::vector<Derivation> iota, lie;
        for (int a = 0; a < m; ++a) {
            iota.push_back(total_iota(tb.act, a));
            lie.push_back(total_lie(tb.act, a));
        }
        for (int p = 0; p < cfg.probes; ++p) {
            GradedElement x = rand_element(rng, ctx, 2, cfg.max_mode, true, 2);
            const int a = rng.pick(0, m - 1), b = rng.pick(0, m - 1);
            auto tag = [&](const std::string& id) {
                return tb.name + ": " + id + " (probe " + std::to_string(p) + ")";
            };
            s.zero(D(D(x)), tag("D^2 = 0"));
            s.equal(derivation_commutator(D, iota[a])(x), lie[a](x), tag("[D, i_a] = L_a"));
            s.zero(derivation_commutator(D, lie[a])(x), tag("[D, L_a] = 0"));
            s.zero(derivation_commutator(iota[a], iota[b])(x), tag("[i_a, i_b] = 0"));
            GradedElement str_i(ctx), str_l(ctx);
            for (int c = 0; c < m; ++c) {
                const Rational& f = ctx->lie.fc(a, b, c);
                if (f == 0) continue;
                str_i += iota[c](x).scaled(f);
                str_l += lie[c](x).scaled(f);
            }
            s.equal(derivation_commutator(lie[a], iota[b])(x), str_i, tag("[L_a, i_b] = i_[a,b]"));
            s.equal(derivation_commutator(lie[a], lie[b])(x), str_l, tag("[L_a, L_b] = L_[a,b]"));
        }
    }

    // Twisted total differential: square zero and the same contraction
    // relation, using the basic twisting form of each valid action.
    std::vector<Testbed> twisted;
    twisted.push_back(make_circle_circle());
    twisted.push_back(make_t3());
    twisted.push_back(make_su2ce());
    for (const auto& tb : twisted) {
        const Context* ctx = tb.ctx.get();
        GradedOperator Dt = weil_twisted_d(ctx, weil_three_form(tb.act));
        const int m = ctx->lie.dim;
        for (int p = 0; p < cfg.probes / 4; ++p) {
            GradedElement x = rand_element(rng, ctx, 2, cfg.max_mode, true, 2);
            const int a = rng.pick(0, m - 1);
            GradedOperator ia = op_from(total_iota(tb.act, a), "i_a");
            auto tag = [&](const std::string& id) {
                return tb.name + ": " + id + " (probe " + std::to_string(p) + ")";
            };
            s.zero(Dt(Dt(x)), tag("D_tw^2 = 0"));
            s.equal(op_commutator(Dt, ia)(x), total_lie(tb.act, a)(x), tag("[D_tw, i_a] = L_a"));
        }
    }
}

// The six relations of the twisted differential complex for sections in the
// image of the action map, plus closure of the bracket against the image.
void suite_bracket_relations(Suite& s, const VerifyConfig& cfg) {
    Rng rng(cfg.seed + 1);
    std::vector<Testbed> beds;
    beds.push_back(make_circle_circle());
    beds.push_back(make_rotation());
    beds.push_back(make_t3());
    beds.push_back(make_su2ce());

    for (const auto& tb : beds) {
        const Context* ctx = tb.ctx.get();
        const int m = ctx->lie.dim;
        GradedOperator dH = d_H(ctx, tb.act.H);
        for (int p = 0; p < cfg.probes; ++p) {
            std::vector<Rational> u(m), v(m);
            for (int a = 0; a < m; ++a) u[a] = rng.rat();
            for (int a = 0; a < m; ++a) v[a] = rng.rat();
            Section S = tb.act.section_combination(u);
            Section T = tb.act.section_combination(v);
            Section C = courant_bracket(ctx, S, T, tb.act.H);
            GradedOperator iS = iota_section_op(ctx, S), iT = iota_section_op(ctx, T);
            GradedOperator lS = lie_section_op(ctx, S, tb.act.H);
            GradedOperator lT = lie_section_op(ctx, T, tb.act.H);
            GradedOperator iC = iota_section_op(ctx, C);
            GradedOperator lC = lie_section_op(ctx, C, tb.act.H);
            GradedElement x = rand_element(rng, ctx, 2, cfg.max_mode, false, 1);
            auto tag = [&](const std::string& id) {
                return tb.name + ": " + id + " (probe " + std::to_string(p) + ")";
            };
            s.zero(dH(dH(x)), tag("d_H^2 = 0"));
            s.equal(op_commutator(dH, iS)(x), lS(x), tag("[d_H, i_S] = L_S"));
            s.zero(op_commutator(dH, lS)(x), tag("[d_H, L_S] = 0"));
            s.zero(op_commutator(iS, iT)(x), tag("[i_S, i_T] = 0 (isotropy)"));
            s.equal(op_commutator(lS, iT)(x), iC(x), tag("[L_S, i_T] = i_[S,T]"));
            s.equal(op_commutator(lS, lT)(x), lC(x), tag("[L_S, L_T] = L_[S,T]"));
            // the bracket of image sections is the image of the Lie bracket
            Section D = tb.act.section_combination(bracket_coeffs(ctx->lie, u, v));
            s.require(section_equal(C, D), tag("[delta u, delta v] = delta [u,v]"));
            // the Lie-derivative correction dξ_S - ι_S H of an image section
            // is closed (uses dH = 0 and invariance of H)
            s.zero(exterior_d(ctx)(section_correction(ctx, S, tb.act.H)),
                   tag("d(dxi_S - i_S H) = 0"));
        }
    }
}

// (d_{g,δ})² = iota_sign · Ω^a L_{δ(a)} on θ-free elements; needs only dH = 0
// and isotropy, so it is also exercised on an action with a broken morphism
// condition.
void suite_extended_square(Suite& s, const VerifyConfig& cfg) {
    Rng rng(cfg.seed + 2);
    std::vector<Testbed> beds;
    beds.push_back(make_circle_circle());
    beds.push_back(make_t3());
    beds.push_back(make_su2ce());
    beds.push_back(make_t2_skew());

    for (const auto& tb : beds) {
        const Context* ctx = tb.ctx.get();
        const int m = ctx->lie.dim;
        GradedOperator D = extended_differential(tb.act);
        std::vector<GradedOperator> L;
        for (int a = 0; a < m; ++a) L.push_back(extended_lie(tb.act, a));
        for (int p = 0; p < cfg.probes; ++p) {
            GradedElement x = rand_element(rng, ctx, 2, cfg.max_mode, false, 2);
            GradedElement rhs(ctx);
            for (int a = 0; a < m; ++a)
                rhs += wedge(GradedElement::omega(ctx, a), L[a](x));
            s.equal(D(D(x)), rhs.scaled(Rational(iota_sign)),
                    tb.name + ": square of extended differential (probe " + std::to_string(p) +
                        ")");
        }
    }
}

// The Cartan map carries the equivariant twisting element to the basic form
// computed from the closed formula, intertwines the twisted differentials on
// invariant elements, and is insensitive to the factor order.
void suite_proposition_j(Suite& s, const VerifyConfig& cfg) {
    Rng rng(cfg.seed + 3);
    std::vector<Testbed> beds;
    beds.push_back(make_circle_circle());
    beds.push_back(make_t3());
    beds.push_back(make_su2ce());

    for (const auto& tb : beds) {
        const Context* ctx = tb.ctx.get();
        GradedElement hcal = equivariant_twisting(tb.act);
        GradedElement bold = weil_three_form(tb.act);
        s.equal(cartan_map_j(tb.act, hcal), bold, tb.name + ": j(Hcal) = boldH");
        s.equal(cartan_map_j_reversed(tb.act, hcal), bold,
                tb.name + ": j(Hcal) = boldH (reversed factors)");

        bool threw = false;
        try {
            cartan_map_j(tb.act, GradedElement::theta(ctx, 0));
        } catch (const Error&) {
            threw = true;
        }
        s.require(threw, tb.name + ": j rejects input with connection generators");

        // chain map on invariant elements: j ∘ d_{g,Hcal} = D_boldH ∘ j
        GradedOperator Dc = twisted_cartan_differential(tb.act);
        GradedOperator Dw = weil_twisted_d(ctx, bold);
        TruncatedSpace sp(ctx, 2, cfg.max_mode);
        InvariantBasis inv = invariant_basis(sp, tb.act);
        std::vector<SparseVec> all = inv.even;
        all.insert(all.end(), inv.odd.begin(), inv.odd.end());
        if (all.empty()) {
            s.require(false, tb.name + ": invariant subspace is empty");
            continue;
        }
        for (int p = 0; p < cfg.probes; ++p) {
            GradedElement x(ctx);
            const int picks = rng.pick(1, 3);
            for (int t = 0; t < picks; ++t) {
                const auto& v = all[static_cast<size_t>(rng.pick(0, (int)all.size() - 1))];
                x += sp.devectorize(v).scaled(rng.rat());
            }
            auto tag = [&](const std::string& id) {
                return tb.name + ": " + id + " (probe " + std::to_string(p) + ")";
            };
            s.equal(cartan_map_j(tb.act, Dc(x)), Dw(cartan_map_j(tb.act, x)),
                    tag("j d_{g,Hcal} = D_boldH j"));
            // order independence on general inputs
            GradedElement y = rand_element(rng, ctx, 2, cfg.max_mode, false, 2);
            s.equal(cartan_map_j(tb.act, y), cartan_map_j_reversed(tb.act, y),
                    tag("j is factor-order independent"));
        }
    }
}

// The basic form is annihilated by every total contraction and Lie derivative
// and by the total differential, and restricts to H at θ = Ω = 0.
void suite_basicness(Suite& s, const VerifyConfig& cfg) {
    (void)cfg;
    std::vector<Testbed> beds;
    beds.push_back(make_circle_circle());
    beds.push_back(make_t3());
    beds.push_back(make_su2ce());
    for (const auto& tb : beds) {
        const Context* ctx = tb.ctx.get();
        GradedElement bold = weil_three_form(tb.act);
        s.zero(weil_total_d(ctx)(bold), tb.name + ": D boldH = 0");
        for (int a = 0; a < ctx->lie.dim; ++a) {
            s.zero(total_iota(tb.act, a)(bold),
                   tb.name + ": i_" + std::to_string(a + 1) + " boldH = 0");
            s.zero(total_lie(tb.act, a)(bold),
                   tb.name + ": L_" + std::to_string(a + 1) + " boldH = 0");
        }
        s.equal(manifold_part(bold), tb.act.H, tb.name + ": boldH restricts to H");
    }
}

// B-field transforms: the exponential intertwines the twisted differentials,
// transforms the action data coherently, and leaves the cohomology of the
// truncated complexes unchanged.
void suite_b_field(Suite& s, const VerifyConfig& cfg) {
    Rng rng(cfg.seed + 4);

    // (a) untwisted manifold level on T³: e^{-B} d_H = d_{H - dB} e^{-B}
    {
        Testbed tb = make_t3();
        const Context* ctx = tb.ctx.get();
        auto dt = [&](int i) { return GradedElement::dtheta(ctx, i); };
        for (int p = 0; p < cfg.probes; ++p) {
            GradedElement B = wedge(dt(0), dt(1)).mul_fn(rand_fn(rng, 3, cfg.max_mode)) +
                              wedge(dt(0), dt(2)).mul_fn(rand_fn(rng, 3, cfg.max_mode)) +
                              wedge(dt(1), dt(2)).mul_fn(rand_fn(rng, 3, cfg.max_mode));
            GradedElement H3 =
                wedge(wedge(dt(0), dt(1)), dt(2)).mul_fn(rand_fn(rng, 3, cfg.max_mode));
            GradedOperator d1 = d_H(ctx, H3);
            GradedOperator d2 = d_H(ctx, H3 - exterior_d(ctx)(B));
            GradedElement x = rand_element(rng, ctx, 2, cfg.max_mode, false, 0);
            GradedElement mB = B.scaled(Rational(-1));
            s.equal(exp_wedge(mB, d1(x)), d2(exp_wedge(mB, x)),
                    "t3: e^{-B} d_H = d_{H-dB} e^{-B} (probe " + std::to_string(p) + ")");
        }
    }

    // (b) transformed action data: validity is preserved by invariant B, and
    // the twisting element shifts by the equivariant differential of B
    {
        Testbed tb = make_t3();
        const Context* ctx = tb.ctx.get();
        auto dt = [&](int i) { return GradedElement::dtheta(ctx, i); };
        Derivation dg = cartan_differential(tb.act);
        for (int p = 0; p < cfg.probes / 4; ++p) {
            // coefficients in θ₃ only: invariant under both translation circles
            auto f3 = [&]() {
                TrigPoly f(3);
                const int k = rng.pick(1, cfg.max_mode);
                f += rng.pick(0, 1) ? TrigPoly::sine(3, {0, 0, k}, rng.rat_nonzero())
                                    : TrigPoly::cosine(3, {0, 0, k}, rng.rat_nonzero());
                return f;
            };
            GradedElement B = wedge(dt(0), dt(1)).mul_fn(f3()) +
                              wedge(dt(0), dt(2)).mul_fn(f3()) +
                              wedge(dt(1), dt(2)).mul_fn(f3());
            ExtendedAction moved = transform_action(tb.act, B);
            auto tag = [&](const std::string& id) {
                return "t3: " + id + " (probe " + std::to_string(p) + ")";
            };
            s.require(validate_extended_action(moved).ok(),
                      tag("transformed action satisfies the definition"));
            s.require(validate_twisting(moved).ok(), tag("transformed twisting data is valid"));
            s.equal(equivariant_twisting(moved), equivariant_twisting(tb.act) - dg(B),
                    tag("Hcal' = Hcal - d_g B"));
        }
    }

    // (c) equivariant quotient level on the trivial circle pair: conjugation
    // by e^{-B} with B = c(θ)Ω carries the twisted differential of Hcal to
    // the one of Hcal - d_g B, and e^{B} inverts e^{-B}
    {
        Testbed tb = make_circle_circle();
        const Context* ctx = tb.ctx.get();
        const int cap = 3;
        Derivation dg = cartan_differential(tb.act);
        GradedOperator D = twisted_cartan_differential(tb.act);
        TruncatedSpace sp(ctx, cap, cfg.max_mode);
        const int draws = std::max(1, std::min(cfg.probes / 20, 10));
        for (int w = 0; w < draws; ++w) {
            GradedElement B =
                wedge(GradedElement::from_function(ctx, rand_fn(rng, 1, cfg.max_mode)),
                      GradedElement::omega(ctx, 0));
            GradedElement mB = B.scaled(Rational(-1));
            GradedElement hcal2 = equivariant_twisting(tb.act) - dg(B);
            GradedOperator D2 = op_from(dg, "d_g");
            if (!hcal2.is_zero()) D2 = op_sub(D2, op_lmul(hcal2, "Hcal'"));
            for (int i = 0; i < sp.dim(); ++i) {
                GradedElement e = sp.devectorize(SparseVec{{i, Rational(1)}});
                GradedElement lhs = D2(exp_wedge(mB, e, cap)).truncate_omega(cap);
                GradedElement rhs =
                    exp_wedge(mB, D(e).truncate_omega(cap), cap).truncate_omega(cap);
                auto tag = [&](const std::string& id) {
                    return "circle-circle: " + id + " (draw " + std::to_string(w) +
                           ", basis " + std::to_string(i) + ")";
                };
                s.equal(lhs, rhs, tag("D' e^{-B} = e^{-B} D in the quotient"));
                s.equal(exp_wedge(B, exp_wedge(mB, e, cap), cap).truncate_omega(cap), e,
                        tag("e^{B} e^{-B} = id in the quotient"));
            }
        }
    }

    // (d) rank invariance: a constant B-field transform of a translation
    // circle on T² leaves every truncation level's cohomology ranks unchanged
    {
        Testbed tb = make_t2_const();
        GradedElement B = wedge(GradedElement::dtheta(tb.ctx.get(), 0),
                                GradedElement::dtheta(tb.ctx.get(), 1))
                              .scaled(Rational(1, 2));
        ExtendedAction moved = transform_action(tb.act, B);
        Tower t1 = omega_tower(tb.act, 2, 1);
        Tower t2 = omega_tower(moved, 2, 1);
        for (size_t i = 0; i < t1.cohom.size(); ++i) {
            s.require(t1.cohom[i].rank_even == t2.cohom[i].rank_even &&
                          t1.cohom[i].rank_odd == t2.cohom[i].rank_odd,
                      "t2-const: cohomology ranks unchanged at level " + std::to_string(i));
        }
    }
}

// The two constructions of the twisted equivariant differential agree on the
// invariant truncated complexes, which the differential preserves.
void suite_operator_identity(Suite& s, const VerifyConfig& cfg) {
    (void)cfg;
    struct Case {
        Testbed tb;
        int omega_cap;
        int mode_cap;
    };
    std::vector<Case> cases;
    cases.push_back({make_circle_circle(), 4, 3});
    cases.push_back({make_su2ce(), 4, 0});

    for (const auto& cs : cases) {
        const Context* ctx = cs.tb.ctx.get();
        GradedOperator A = extended_differential(cs.tb.act);
        GradedOperator B = twisted_cartan_differential(cs.tb.act);
        TruncatedSpace sp(ctx, cs.omega_cap, cs.mode_cap);
        InvariantBasis inv = invariant_basis(sp, cs.tb.act);
        std::vector<SparseVec> all = inv.even;
        all.insert(all.end(), inv.odd.begin(), inv.odd.end());
        s.require(!all.empty(), cs.tb.name + ": invariant subspace is nonempty");
        for (size_t i = 0; i < all.size(); ++i) {
            GradedElement e = sp.devectorize(all[i]);
            s.equal(A(e), B(e),
                    cs.tb.name + ": extended = twisted Cartan on invariant vector " +
                        std::to_string(i));
            GradedElement de = B(e);
            for (int a = 0; a < ctx->lie.dim; ++a)
                s.zero(total_lie(cs.tb.act, a)(de),
                       cs.tb.name + ": differential preserves invariance (vector " +
                           std::to_string(i) + ", generator " + std::to_string(a + 1) + ")");
        }
    }
}

// Exact group averaging on T²: splits coboundary families, recovers the known
// solution, and rejects families that do not split.
void suite_averaging(Suite& s, const VerifyConfig& cfg) {
    Rng rng(cfg.seed + 5);
    Context ctx;
    ctx.lie = LieAlgebra::abelian(1);
    ctx.backend = Backend(TorusBackend{2});
    ctx.group_params = 1;
    GroupAction ga{1, {{1}, {0}}};  // θ₁ ↦ θ₁ + h
    auto dt = [&](int i) { return GradedElement::dtheta(&ctx, i); };

    // known solution: B₀ = cos(θ₁) dθ₁∧dθ₂ has zero group average, so the
    // splitting of α = B₀ - λ*B₀ returns B₀ itself
    GradedElement B0 = wedge(dt(0), dt(1)).mul_fn(TrigPoly::cosine(3, {0, 1, 0}, Rational(1)));
    GradedElement alpha0 = B0 - pullback_lambda(ga, B0, +1);
    s.equal(invariant_splitting(ga, alpha0), B0, "t2: splitting recovers cos(t1) dt1 dt2");

    auto group_free = [](const GradedElement& e) {
        for (const auto& [mono, f] : e.terms()) {
            (void)mono;
            for (const auto& [k, c] : f.modes()) {
                (void)c;
                if (k[0] != 0) return false;
            }
        }
        return true;
    };

    for (int p = 0; p < cfg.probes; ++p) {
        // random h-independent form; α = B - λ*B always splits and the
        // recovered primitive solves the same equation
        GradedElement B(&ctx);
        B += dt(0).mul_fn(rand_fn(rng, 3, cfg.max_mode, 1));
        B += dt(1).mul_fn(rand_fn(rng, 3, cfg.max_mode, 1));
        B += wedge(dt(0), dt(1)).mul_fn(rand_fn(rng, 3, cfg.max_mode, 1));
        GradedElement alpha = B - pullback_lambda(ga, B, +1);
        GradedElement got = invariant_splitting(ga, alpha);
        auto tag = [&](const std::string& id) {
            return "t2: " + id + " (probe " + std::to_string(p) + ")";
        };
        s.zero(alpha + pullback_lambda(ga, got, +1) - got, tag("alpha = B - lambda*B"));
        s.require(group_free(got), tag("recovered form is group-independent"));
    }

    // families that are not of coboundary shape must be rejected
    GradedElement bad1 = wedge(dt(0), dt(1)).mul_fn(TrigPoly::cosine(3, {1, 0, 0}, Rational(1)));
    GradedElement bad2 = dt(0);
    for (const auto& [bad, label] :
         {std::make_pair(bad1, std::string("h-dependent top form")),
          std::make_pair(bad2, std::string("constant one-form"))}) {
        bool threw = false;
        try {
            invariant_splitting(ga, bad);
        } catch (const Error&) {
            threw = true;
        }
        s.require(threw, "t2: non-split family rejected (" + label + ")");
    }
}

using SuiteFn = void (*)(Suite&, const VerifyConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"weil-identities", suite_weil_identities},
        {"bracket-relations", suite_bracket_relations},
        {"extended-square", suite_extended_square},
        {"proposition-j", suite_proposition_j},
        {"basicness", suite_basicness},
        {"b-field", suite_b_field},
        {"operator-identity", suite_operator_identity},
        {"averaging", suite_averaging},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& verifier_suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : suite_table()) v.push_back(name);
        return v;
    }();
    return names;
}

std::vector<SuiteResult> run_verifier(const VerifyConfig& cfg) {
    std::vector<std::string> wanted = cfg.suites;
    for (const auto& w : wanted) {
        bool known = false;
        for (const auto& [name, fn] : suite_table()) known = known || name == w;
        if (!known) throw Error("run_verifier: unknown suite '" + w + "'");
    }
    std::vector<SuiteResult> out;
    for (const auto& [name, fn] : suite_table()) {
        if (!wanted.empty() &&
            std::find(wanted.begin(), wanted.end(), name) == wanted.end())
            continue;
        Suite s(name);
        try {
            fn(s, cfg);
        } catch (const std::exception& e) {
            s.fail("unexpected exception", e.what());
        }
        out.push_back(s.res);
    }
    return out;
}

}  // namespace teq
