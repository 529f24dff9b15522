#include "teq/derivation.hpp"

#include "teq/error.hpp"

#include <bit>

namespace teq {

namespace {

MonoKey key_manifold(const Context* ctx, uint32_t mbasis) {
    MonoKey k;
    k.mbasis = mbasis;
    k.omega.assign(ctx->lie.dim, 0);
    return k;
}

uint32_t unit_mbasis(const Context* ctx) {
    return ctx->backend.is_torus() ? 0u : static_cast<uint32_t>(ctx->backend.formal().unit);
}

}  // namespace

GradedElement Derivation::apply(const GradedElement& e) const {
    GradedElement out(ctx);
    const bool torus = ctx->backend.is_torus();
    for (const auto& [k, c] : e.terms()) {
        // Coefficient functions are even and sit leftmost: D(c·rest) = D(c)∧rest + c·D(rest).
        if (coeff_rule) {
            GradedElement dc = coeff_rule(c);
            if (!dc.is_zero()) out += wedge(dc, GradedElement::monomial(ctx, k, Rational(1)));
        }
        // Manifold factor.
        if (torus) {
            if (!dtheta_img.empty()) {
                int pos = 0;
                for (int i = 0; i < ctx->backend.torus().n; ++i) {
                    if (!(k.mbasis & (1u << i))) continue;
                    const GradedElement& img = dtheta_img[i];
                    if (!img.is_zero()) {
                        const uint32_t lo = k.mbasis & ((1u << i) - 1);
                        MonoKey rest = k;
                        rest.mbasis = k.mbasis & ~((1u << i) - 1) & ~(1u << i);
                        GradedElement piece = wedge(
                            GradedElement::monomial(ctx, key_manifold(ctx, lo), Rational(1)),
                            wedge(img, GradedElement::monomial(ctx, rest, Rational(1))));
                        const int sgn = (parity & pos & 1) ? -1 : 1;
                        out += piece.mul_fn(c).scaled(Rational(sgn));
                    }
                    ++pos;
                }
            }
        } else if (!formal_img.empty()) {
            const GradedElement& img = formal_img[k.mbasis];
            if (!img.is_zero()) {
                MonoKey rest = k;
                rest.mbasis = unit_mbasis(ctx);
                out += wedge(img, GradedElement::monomial(ctx, rest, Rational(1))).mul_fn(c);
            }
        }
        const int mpar = ctx->backend.manifold_parity(k.mbasis);
        // θ factors.
        if (!theta_img.empty()) {
            int pos = 0;
            for (int a = 0; a < ctx->lie.dim; ++a) {
                if (!(k.theta & (1u << a))) continue;
                const GradedElement& img = theta_img[a];
                if (!img.is_zero()) {
                    MonoKey left = key_manifold(ctx, k.mbasis);
                    left.theta = k.theta & ((1u << a) - 1);
                    MonoKey right = key_manifold(ctx, unit_mbasis(ctx));
                    right.theta = k.theta & ~((1u << a) - 1) & ~(1u << a);
                    right.omega = k.omega;
                    GradedElement piece =
                        wedge(GradedElement::monomial(ctx, left, Rational(1)),
                              wedge(img, GradedElement::monomial(ctx, right, Rational(1))));
                    const int prefix = (mpar + pos) & 1;
                    const int sgn = (parity & prefix) ? -1 : 1;
                    out += piece.mul_fn(c).scaled(Rational(sgn));
                }
                ++pos;
            }
        }
        // Ω factors (even, central): D(Ω^e) = e Ω^{e-1} D(Ω).
        if (!omega_img.empty()) {
            const int prefix = (mpar + std::popcount(k.theta)) & 1;
            const int sgn = (parity & prefix) ? -1 : 1;
            for (int a = 0; a < ctx->lie.dim; ++a) {
                if (k.omega[a] == 0) continue;
                const GradedElement& img = omega_img[a];
                if (img.is_zero()) continue;
                MonoKey rest = k;
                rest.omega[a] -= 1;
                GradedElement piece =
                    wedge(GradedElement::monomial(ctx, rest, Rational(1)), img);
                out += piece.mul_fn(c).scaled(Rational(sgn * k.omega[a]));
            }
        }
    }
    return out;
}

Derivation zero_derivation(const Context* ctx, int parity) {
    Derivation d;
    d.ctx = ctx;
    d.parity = parity;
    return d;
}

namespace {

std::vector<GradedElement> add_images(const std::vector<GradedElement>& a,
                                      const std::vector<GradedElement>& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.size() != b.size()) throw Error("derivation_add: image table size mismatch");
    std::vector<GradedElement> r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

}  // namespace

Derivation derivation_add(const Derivation& a, const Derivation& b) {
    if (a.ctx != b.ctx) throw Error("derivation_add: context mismatch");
    if (a.parity != b.parity) throw Error("derivation_add: parity mismatch");
    Derivation r = zero_derivation(a.ctx, a.parity);
    r.dtheta_img = add_images(a.dtheta_img, b.dtheta_img);
    r.formal_img = add_images(a.formal_img, b.formal_img);
    r.theta_img = add_images(a.theta_img, b.theta_img);
    r.omega_img = add_images(a.omega_img, b.omega_img);
    if (a.coeff_rule && b.coeff_rule) {
        auto fa = a.coeff_rule, fb = b.coeff_rule;
        r.coeff_rule = [fa, fb](const TrigPoly& f) { return fa(f) + fb(f); };
    } else {
        r.coeff_rule = a.coeff_rule ? a.coeff_rule : b.coeff_rule;
    }
    return r;
}

Derivation derivation_scale(const Derivation& a, const Rational& c) {
    Derivation r = zero_derivation(a.ctx, a.parity);
    auto scale_all = [&c](const std::vector<GradedElement>& v) {
        std::vector<GradedElement> out = v;
        for (auto& e : out) e = e.scaled(c);
        return out;
    };
    r.dtheta_img = scale_all(a.dtheta_img);
    r.formal_img = scale_all(a.formal_img);
    r.theta_img = scale_all(a.theta_img);
    r.omega_img = scale_all(a.omega_img);
    if (a.coeff_rule) {
        auto fa = a.coeff_rule;
        Rational cc = c;
        r.coeff_rule = [fa, cc](const TrigPoly& f) { return fa(f).scaled(cc); };
    }
    return r;
}

Derivation derivation_mul_central(const GradedElement& z, const Derivation& d) {
    auto deg = z.homogeneous_degree();
    if (!deg || (*deg & 1)) throw Error("derivation_mul_central: central factor must be even");
    Derivation r = zero_derivation(d.ctx, d.parity);
    auto mul_all = [&z](const std::vector<GradedElement>& v) {
        std::vector<GradedElement> out = v;
        for (auto& e : out) e = wedge(z, e);
        return out;
    };
    r.dtheta_img = mul_all(d.dtheta_img);
    r.formal_img = mul_all(d.formal_img);
    r.theta_img = mul_all(d.theta_img);
    r.omega_img = mul_all(d.omega_img);
    if (d.coeff_rule) {
        auto fd = d.coeff_rule;
        GradedElement zz = z;
        r.coeff_rule = [fd, zz](const TrigPoly& f) { return wedge(zz, fd(f)); };
    }
    return r;
}

Derivation derivation_commutator(const Derivation& d1, const Derivation& d2) {
    if (d1.ctx != d2.ctx) throw Error("derivation_commutator: context mismatch");
    const Context* ctx = d1.ctx;
    const int sgn = (d1.parity & d2.parity) ? -1 : 1;
    Derivation r = zero_derivation(ctx, (d1.parity + d2.parity) & 1);

    auto bracket = [&](const GradedElement& x) {
        return d1.apply(d2.apply(x)) - d2.apply(d1.apply(x)).scaled(Rational(sgn));
    };
    const bool torus = ctx->backend.is_torus();
    if (torus) {
        const int n = ctx->backend.torus().n;
        bool any = false;
        std::vector<GradedElement> imgs;
        for (int i = 0; i < n; ++i) {
            imgs.push_back(bracket(GradedElement::dtheta(ctx, i)));
            any = any || !imgs.back().is_zero();
        }
        if (any) r.dtheta_img = std::move(imgs);
    } else {
        const int B = ctx->backend.formal().size();
        bool any = false;
        std::vector<GradedElement> imgs;
        for (int j = 0; j < B; ++j) {
            imgs.push_back(bracket(GradedElement::formal_basis(ctx, j)));
            any = any || !imgs.back().is_zero();
        }
        if (any) r.formal_img = std::move(imgs);
    }
    {
        bool any = false;
        std::vector<GradedElement> th, om;
        for (int a = 0; a < ctx->lie.dim; ++a) {
            th.push_back(bracket(GradedElement::theta(ctx, a)));
            om.push_back(bracket(GradedElement::omega(ctx, a)));
            any = any || !th.back().is_zero() || !om.back().is_zero();
        }
        if (any) {
            r.theta_img = std::move(th);
            r.omega_img = std::move(om);
        }
    }
    if (d1.coeff_rule || d2.coeff_rule) {
        auto p1 = std::make_shared<Derivation>(d1);
        auto p2 = std::make_shared<Derivation>(d2);
        Rational s(sgn);
        r.coeff_rule = [p1, p2, s, ctx](const TrigPoly& f) {
            GradedElement a =
                p1->coeff_rule ? p2->apply(p1->coeff_rule(f)) : GradedElement::zero(ctx);
            GradedElement b =
                p2->coeff_rule ? p1->apply(p2->coeff_rule(f)) : GradedElement::zero(ctx);
            return b - a.scaled(s);
        };
    }
    return r;
}

Derivation exterior_d(const Context* ctx) {
    Derivation d = zero_derivation(ctx, 1);
    if (ctx->backend.is_torus()) {
        const int n = ctx->backend.torus().n;
        d.coeff_rule = [ctx, n](const TrigPoly& f) {
            GradedElement out(ctx);
            for (int i = 0; i < n; ++i) {
                TrigPoly df = f.derivative(ctx->coord_var(i));
                if (!df.is_zero()) out += GradedElement::dtheta(ctx, i).mul_fn(df);
            }
            return out;
        };
    } else {
        const FormalBackend& F = ctx->backend.formal();
        d.formal_img.resize(F.size(), GradedElement::zero(ctx));
        for (int j = 0; j < F.size(); ++j)
            for (const auto& [i, c] : F.diff[j])
                d.formal_img[j] += GradedElement::formal_basis(ctx, i).scaled(c);
    }
    return d;
}

Derivation weil_d(const Context* ctx) {
    const int m = ctx->lie.dim;
    Derivation d = zero_derivation(ctx, 1);
    d.theta_img.resize(m, GradedElement::zero(ctx));
    d.omega_img.resize(m, GradedElement::zero(ctx));
    for (int a = 0; a < m; ++a) {
        GradedElement img = GradedElement::omega(ctx, a);
        for (int b = 0; b < m; ++b)
            for (int c = b + 1; c < m; ++c)
                if (ctx->lie.fc(b, c, a) != 0)
                    img += wedge(GradedElement::theta(ctx, b), GradedElement::theta(ctx, c))
                               .scaled(-ctx->lie.fc(b, c, a));
        d.theta_img[a] = img;
        GradedElement omg(ctx);
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                if (ctx->lie.fc(b, c, a) != 0)
                    omg += wedge(GradedElement::omega(ctx, b), GradedElement::theta(ctx, c))
                               .scaled(ctx->lie.fc(b, c, a));
        d.omega_img[a] = omg;
    }
    return d;
}

Derivation weil_iota(const Context* ctx, int a) {
    Derivation d = zero_derivation(ctx, 1);
    d.theta_img.resize(ctx->lie.dim, GradedElement::zero(ctx));
    d.theta_img[a] = GradedElement::one(ctx);
    return d;
}

Derivation coadjoint_lie(const Context* ctx, int a) {
    const int m = ctx->lie.dim;
    Derivation d = zero_derivation(ctx, 0);
    d.theta_img.resize(m, GradedElement::zero(ctx));
    d.omega_img.resize(m, GradedElement::zero(ctx));
    for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
            // L_a θ^b = -f^b_{ac} θ^c with f^b_{ac} the e_b-coefficient of [e_a, e_c].
            const Rational& coef = ctx->lie.fc(a, c, b);
            if (coef == 0) continue;
            d.theta_img[b] += GradedElement::theta(ctx, c).scaled(-coef);
            d.omega_img[b] += GradedElement::omega(ctx, c).scaled(-coef);
        }
    return d;
}

Derivation iota_vf(const Context* ctx, const VectorField& X) {
    if (!ctx->backend.is_torus()) throw Error("iota_vf: torus backend required");
    const int n = ctx->backend.torus().n;
    if (static_cast<int>(X.comp.size()) != n) throw Error("iota_vf: component count mismatch");
    Derivation d = zero_derivation(ctx, 1);
    d.dtheta_img.resize(n, GradedElement::zero(ctx));
    for (int i = 0; i < n; ++i)
        if (!X.comp[i].is_zero()) d.dtheta_img[i] = GradedElement::from_function(ctx, X.comp[i]);
    return d;
}

Derivation lie_vf(const Context* ctx, const VectorField& X) {
    if (!ctx->backend.is_torus()) throw Error("lie_vf: torus backend required");
    const int n = ctx->backend.torus().n;
    if (static_cast<int>(X.comp.size()) != n) throw Error("lie_vf: component count mismatch");
    Derivation d = zero_derivation(ctx, 0);
    auto comp = std::make_shared<std::vector<TrigPoly>>(X.comp);
    d.coeff_rule = [ctx, n, comp](const TrigPoly& f) {
        TrigPoly out(ctx->nvars());
        for (int i = 0; i < n; ++i)
            if (!(*comp)[i].is_zero()) out += (*comp)[i] * f.derivative(ctx->coord_var(i));
        return GradedElement::from_function(ctx, out);
    };
    d.dtheta_img.resize(n, GradedElement::zero(ctx));
    for (int i = 0; i < n; ++i) {
        // L_X dθ_i = d(X^i)
        for (int j = 0; j < n; ++j) {
            TrigPoly dj = X.comp[i].derivative(ctx->coord_var(j));
            if (!dj.is_zero()) d.dtheta_img[i] += GradedElement::dtheta(ctx, j).mul_fn(dj);
        }
    }
    return d;
}

namespace {

Derivation formal_linmap_derivation(const Context* ctx, const FormalBackend::LinMap& M,
                                    int parity) {
    Derivation d = zero_derivation(ctx, parity);
    const FormalBackend& F = ctx->backend.formal();
    d.formal_img.resize(F.size(), GradedElement::zero(ctx));
    for (int j = 0; j < F.size(); ++j)
        for (const auto& [i, c] : M[j])
            d.formal_img[j] += GradedElement::formal_basis(ctx, i).scaled(c);
    return d;
}

}  // namespace

Derivation iota_formal(const Context* ctx, int a) {
    if (ctx->backend.is_torus()) throw Error("iota_formal: formal backend required");
    const FormalBackend& F = ctx->backend.formal();
    if (F.iota.empty()) throw Error("iota_formal: backend carries no action data");
    return formal_linmap_derivation(ctx, F.iota[a], 1);
}

Derivation lie_formal(const Context* ctx, int a) {
    if (ctx->backend.is_torus()) throw Error("lie_formal: formal backend required");
    const FormalBackend& F = ctx->backend.formal();
    if (F.lie_op.empty()) throw Error("lie_formal: backend carries no action data");
    return formal_linmap_derivation(ctx, F.lie_op[a], 0);
}

}  // namespace teq
