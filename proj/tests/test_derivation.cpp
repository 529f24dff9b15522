#include "teq/derivation.hpp"
#include "teq/error.hpp"

#include <doctest.h>

#include <memory>

using namespace teq;

namespace {

std::shared_ptr<Context> torus_ctx(int n, int lie_dim) {
    auto ctx = std::make_shared<Context>();
    ctx->lie = LieAlgebra::abelian(lie_dim);
    ctx->backend = Backend(TorusBackend{n});
    return ctx;
}

std::shared_ptr<Context> su2_weil_ctx() {
    auto ctx = std::make_shared<Context>();
    ctx->lie = LieAlgebra::su2();
    ctx->backend = Backend(point_backend(3));
    return ctx;
}

// A fixed assortment of inhomogeneous probe elements.
std::vector<GradedElement> probes(const Context* ctx) {
    std::vector<GradedElement> out;
    GradedElement a = GradedElement::one(ctx);
    if (ctx->backend.is_torus()) {
        const int n = ctx->torus_n();
        a += GradedElement::dtheta(ctx, 0).mul_fn(
            TrigPoly::sine(ctx->nvars(), [&] {
                Mode k(ctx->nvars(), 0);
                k[ctx->coord_var(0)] = 1;
                return k;
            }(), 1));
        if (n > 1) a += wedge(GradedElement::dtheta(ctx, 0), GradedElement::dtheta(ctx, 1));
    }
    for (int x = 0; x < ctx->lie.dim; ++x) {
        a += GradedElement::theta(ctx, x);
        a += wedge(GradedElement::omega(ctx, x), GradedElement::theta(ctx, x));
    }
    out.push_back(a);
    out.push_back(wedge(a, a));
    return out;
}

}  // namespace

TEST_CASE("exterior differential on functions and forms") {
    auto ctx = torus_ctx(2, 0);
    Derivation d = exterior_d(ctx.get());

    // d(sin t1) = cos t1 dt1
    GradedElement f = GradedElement::from_function(
        ctx.get(), TrigPoly::sine(2, {1, 0}, 1));
    CHECK(d(f) == GradedElement::dtheta(ctx.get(), 0)
                      .mul_fn(TrigPoly::cosine(2, {1, 0}, 1)));

    // d(cos t2 dt1) = -sin t2 dt2^dt1 = sin t2 dt1^dt2
    GradedElement g = GradedElement::dtheta(ctx.get(), 0)
                          .mul_fn(TrigPoly::cosine(2, {0, 1}, 1));
    GradedElement want = wedge(GradedElement::dtheta(ctx.get(), 0),
                               GradedElement::dtheta(ctx.get(), 1))
                             .mul_fn(TrigPoly::sine(2, {0, 1}, 1));
    CHECK(d(g) == want);

    // d^2 = 0 on the probe assortment.
    for (const auto& p : probes(ctx.get())) CHECK(d(d(p)).is_zero());
}

TEST_CASE("derivations satisfy the graded Leibniz rule") {
    auto ctx = torus_ctx(2, 2);
    Derivation d = exterior_d(ctx.get());
    VectorField X;
    X.comp.assign(2, TrigPoly(2));
    X.comp[0] = TrigPoly::cosine(2, {0, 1}, 1);  // X = cos(t2) d/dt1
    Derivation io = iota_vf(ctx.get(), X);

    // Homogeneous factors of mixed parities.
    GradedElement odd1 = GradedElement::dtheta(ctx.get(), 0)
                             .mul_fn(TrigPoly::sine(2, {1, 0}, 1));
    GradedElement odd2 = GradedElement::theta(ctx.get(), 1);
    GradedElement even = GradedElement::omega(ctx.get(), 0) +
                         GradedElement::one(ctx.get());

    for (const Derivation* D : {&d, &io}) {
        const int sgn = 1 - 2 * D->parity;
        // D(odd1 ^ odd2) = D(odd1)^odd2 - odd1^D(odd2)   (|odd1| = 1)
        CHECK(D->apply(wedge(odd1, odd2)) ==
              wedge(D->apply(odd1), odd2) - wedge(odd1, D->apply(odd2)));
        // D(even ^ odd1) = D(even)^odd1 + even^D(odd1)
        CHECK(D->apply(wedge(even, odd1)) ==
              wedge(D->apply(even), odd1) + wedge(even, D->apply(odd1)));
        (void)sgn;
    }
}

TEST_CASE("contraction and Lie derivative along vector fields") {
    auto ctx = torus_ctx(2, 0);
    VectorField X;
    X.comp.assign(2, TrigPoly(2));
    X.comp[0] = TrigPoly::constant(2, 1);
    X.comp[1] = TrigPoly::sine(2, {1, 0}, 1);  // X = d/dt1 + sin(t1) d/dt2
    Derivation io = iota_vf(ctx.get(), X);
    Derivation lie = lie_vf(ctx.get(), X);
    Derivation d = exterior_d(ctx.get());

    CHECK(io(GradedElement::dtheta(ctx.get(), 0)) == GradedElement::one(ctx.get()));
    CHECK(io(GradedElement::dtheta(ctx.get(), 1)) ==
          GradedElement::from_function(ctx.get(), TrigPoly::sine(2, {1, 0}, 1)));

    // iota^2 = 0 (odd derivation squares to zero on everything).
    GradedElement vol = wedge(GradedElement::dtheta(ctx.get(), 0),
                              GradedElement::dtheta(ctx.get(), 1));
    CHECK(io(io(vol)).is_zero());

    // Cartan formula: L_X = [d, iota_X] pointwise on probes.
    Derivation cartan = derivation_commutator(d, io);
    for (const auto& p : probes(ctx.get())) CHECK(lie(p) == cartan(p));

    // L_X f = X(f) on functions.
    GradedElement f = GradedElement::from_function(ctx.get(),
                                                   TrigPoly::cosine(2, {0, 1}, 1));
    CHECK(lie(f) == GradedElement::from_function(
              ctx.get(), TrigPoly::sine(2, {1, 0}, 1) * TrigPoly::sine(2, {0, 1}, -1)));
}

TEST_CASE("connection-generator differential and contraction") {
    auto ctx = su2_weil_ctx();
    Derivation dw = weil_d(ctx.get());
    GradedElement th1 = GradedElement::theta(ctx.get(), 0);
    GradedElement th2 = GradedElement::theta(ctx.get(), 1);
    GradedElement th3 = GradedElement::theta(ctx.get(), 2);
    GradedElement om1 = GradedElement::omega(ctx.get(), 0);

    // d th^1 = Om^1 - th^2 th^3 for the su(2) structure constants.
    CHECK(dw(th1) == om1 - wedge(th2, th3));

    // d Om^1 = f^1_{bc} Om^b th^c = Om^2 th^3 - Om^3 th^2.
    GradedElement want = wedge(GradedElement::omega(ctx.get(), 1), th3) -
                         wedge(GradedElement::omega(ctx.get(), 2), th2);
    CHECK(dw(om1) == want);

    // Contraction hits only the connection generators.
    Derivation i1 = weil_iota(ctx.get(), 0);
    CHECK(i1(th1) == GradedElement::one(ctx.get()));
    CHECK(i1(th2).is_zero());
    CHECK(i1(om1).is_zero());
    CHECK(i1(i1(wedge(th1, th2))).is_zero());
}

TEST_CASE("coadjoint action rotates the generator indices") {
    auto ctx = su2_weil_ctx();
    Derivation L1 = coadjoint_lie(ctx.get(), 0);
    GradedElement th2 = GradedElement::theta(ctx.get(), 1);
    GradedElement th3 = GradedElement::theta(ctx.get(), 2);
    GradedElement om2 = GradedElement::omega(ctx.get(), 1);
    GradedElement om3 = GradedElement::omega(ctx.get(), 2);

    // L_1 th^2 = -f^2_{1c} th^c = th^3 and L_1 th^3 = -th^2.
    CHECK(L1(th2) == th3);
    CHECK(L1(th3) == -th2);
    CHECK(L1(GradedElement::theta(ctx.get(), 0)).is_zero());
    CHECK(L1(om2) == om3);
    CHECK(L1(om3) == -om2);
}

TEST_CASE("derivation algebra bookkeeping") {
    auto ctx = torus_ctx(1, 1);
    Derivation d = exterior_d(ctx.get());

    // [d, d] = 2 d^2 = 0.
    Derivation dd = derivation_commutator(d, d);
    for (const auto& p : probes(ctx.get())) CHECK(dd(p).is_zero());

    // Scaling and addition act pointwise.
    Derivation s = derivation_scale(d, Rational(3));
    Derivation sum = derivation_add(d, s);
    for (const auto& p : probes(ctx.get())) {
        CHECK(s(p) == d(p).scaled(Rational(3)));
        CHECK(sum(p) == d(p).scaled(Rational(4)));
    }

    // Commutator of derivations with mismatched contexts is a usage error.
    auto other = torus_ctx(1, 1);
    CHECK_THROWS_AS(derivation_commutator(d, exterior_d(other.get())), Error);
}

TEST_CASE("formal-backend contraction and Lie derivative") {
    auto ctx = std::make_shared<Context>();
    ctx->lie = LieAlgebra::su2();
    ctx->backend = Backend(ce_backend(ctx->lie));
    Derivation i1 = iota_formal(ctx.get(), 0);
    GradedElement e1 = GradedElement::formal_basis(ctx.get(), 1);
    GradedElement e2 = GradedElement::formal_basis(ctx.get(), 2);
    CHECK(i1(e1) == GradedElement::one(ctx.get()));
    CHECK(i1(e2).is_zero());

    // Cartan formula through the table maps.
    Derivation d = exterior_d(ctx.get());
    Derivation lie = lie_formal(ctx.get(), 0);
    Derivation cartan = derivation_commutator(d, i1);
    GradedElement p = e1 + wedge(e1, e2) + GradedElement::one(ctx.get());
    CHECK(lie(p) == cartan(p));
}
