#include "teq/models.hpp"
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

VectorField unit_field(const Context* ctx, int i) {
    VectorField X;
    X.comp.assign(ctx->torus_n(), TrigPoly(ctx->nvars()));
    X.comp[i] = TrigPoly::constant(ctx->nvars(), 1);
    return X;
}

VectorField zero_field(const Context* ctx) {
    VectorField X;
    X.comp.assign(ctx->torus_n(), TrigPoly(ctx->nvars()));
    return X;
}

// Circle with a trivially acting symmetry and the angular form as datum.
ExtendedAction circle_action(const Context* ctx) {
    ExtendedAction act;
    act.ctx = ctx;
    act.X = {zero_field(ctx)};
    act.xi = {GradedElement::dtheta(ctx, 0)};
    act.H = GradedElement::zero(ctx);
    return act;
}

// Rotation of the circle by its own symmetry, no twisting data.
ExtendedAction rotation_action(const Context* ctx) {
    ExtendedAction act;
    act.ctx = ctx;
    act.X = {unit_field(ctx, 0)};
    act.xi = {GradedElement::zero(ctx)};
    act.H = GradedElement::zero(ctx);
    return act;
}

// Three-torus with two translation symmetries, rotated one-form data and a
// top-degree twisting: the fully generic torus instance.
ExtendedAction t3_action(const Context* ctx) {
    ExtendedAction act;
    act.ctx = ctx;
    act.X = {unit_field(ctx, 0), unit_field(ctx, 1)};
    Mode k3 = {0, 0, 1};
    act.xi = {GradedElement::dtheta(ctx, 1).mul_fn(TrigPoly::sine(3, k3, -1)),
              GradedElement::dtheta(ctx, 0).mul_fn(TrigPoly::sine(3, k3, 1))};
    act.H = wedge(GradedElement::dtheta(ctx, 0),
                  wedge(GradedElement::dtheta(ctx, 1), GradedElement::dtheta(ctx, 2)))
                .mul_fn(TrigPoly::cosine(3, k3, 1));
    return act;
}

}  // namespace

TEST_CASE("equivariant twisting element of the circle datum") {
    auto ctx = torus_ctx(1, 1);
    ExtendedAction act = circle_action(ctx.get());
    GradedElement h = equivariant_twisting(act);
    // H - iota_sign Om^1 xi_1 = Om^1 ^ dt1 for the normative sign.
    GradedElement want = wedge(GradedElement::dtheta(ctx.get(), 0),
                               GradedElement::omega(ctx.get(), 0))
                             .scaled(Rational(-iota_sign));
    CHECK(h == want);
}

TEST_CASE("the equivariant differential contracts the curvature slot") {
    auto ctx = torus_ctx(1, 1);
    ExtendedAction act = rotation_action(ctx.get());
    Derivation dg = cartan_differential(act);
    // d_g(dt1) = iota_sign * Om^1 * iota_{d/dt1} dt1 = iota_sign * Om^1.
    CHECK(dg(GradedElement::dtheta(ctx.get(), 0)) ==
          GradedElement::omega(ctx.get(), 0).scaled(Rational(iota_sign)));
    // Functions see only the manifold differential.
    GradedElement f = GradedElement::from_function(ctx.get(), TrigPoly::sine(1, {1}, 1));
    CHECK(dg(f) == GradedElement::dtheta(ctx.get(), 0)
                       .mul_fn(TrigPoly::cosine(1, {1}, 1)));
    // d_g^2 = -iota_sign Om^a L_a: on an invariant element it vanishes.
    CHECK(dg(dg(GradedElement::dtheta(ctx.get(), 0))).is_zero());
}

TEST_CASE("basic three-form of the generic torus instance") {
    auto ctx = torus_ctx(3, 2);
    ExtendedAction act = t3_action(ctx.get());
    REQUIRE(validate_twisting(act).ok());

    // Frozen expansion, checked term by term: the two independent
    // construction paths below must both produce exactly this element.
    GradedElement want(ctx.get());
    TrigPoly s3 = TrigPoly::sine(3, {0, 0, 1}, 1);
    TrigPoly c3 = TrigPoly::cosine(3, {0, 0, 1}, 1);
    want.add_term(MonoKey{0, 0b01, {0, 1}}, -s3);  // -sin(t3) th1 Om2
    want.add_term(MonoKey{0, 0b10, {1, 0}}, s3);   //  sin(t3) th2 Om1
    want.add_term(MonoKey{1, 0, {0, 1}}, s3);      //  sin(t3) dt1 Om2
    want.add_term(MonoKey{2, 0, {1, 0}}, -s3);     // -sin(t3) dt2 Om1
    want.add_term(MonoKey{4, 0b11, {0, 0}}, c3);   //  cos(t3) dt3 th1 th2
    want.add_term(MonoKey{5, 0b10, {0, 0}}, c3);   //  cos(t3) dt1 dt3 th2
    want.add_term(MonoKey{6, 0b01, {0, 0}}, -c3);  // -cos(t3) dt2 dt3 th1
    want.add_term(MonoKey{7, 0, {0, 0}}, c3);      //  cos(t3) dt1 dt2 dt3

    CHECK(weil_three_form(act) == want);
    CHECK(cartan_map_j(act, equivariant_twisting(act)) == want);
    CHECK(cartan_map_j_reversed(act, equivariant_twisting(act)) == want);

    // Basicness, checked against the operators directly.
    Derivation D = weil_total_d(ctx.get());
    CHECK(D(want).is_zero());
    for (int a = 0; a < 2; ++a) {
        CHECK(total_iota(act, a)(want).is_zero());
        CHECK(total_lie(act, a)(want).is_zero());
    }
}

TEST_CASE("the Cartan map trades contractions for connection factors") {
    auto ctx = torus_ctx(1, 1);
    ExtendedAction act = rotation_action(ctx.get());
    GradedElement dt = GradedElement::dtheta(ctx.get(), 0);
    // j(dt1) = dt1 - th1 iota_{d/dt1} dt1 = dt1 - th1.
    CHECK(cartan_map_j(act, dt) == dt - GradedElement::theta(ctx.get(), 0));
    // j fixes functions and omega polynomials.
    GradedElement om = GradedElement::omega(ctx.get(), 0);
    CHECK(cartan_map_j(act, om) == om);
    // Inputs carrying connection factors are rejected.
    CHECK_THROWS_AS(cartan_map_j(act, GradedElement::theta(ctx.get(), 0)), Error);
}

TEST_CASE("exponential wedge") {
    auto ctx = torus_ctx(2, 1);
    GradedElement B = wedge(GradedElement::dtheta(ctx.get(), 0),
                            GradedElement::dtheta(ctx.get(), 1));
    GradedElement one = GradedElement::one(ctx.get());
    // B^2 = 0 on a two-torus: exp(B) = 1 + B.
    CHECK(exp_wedge(B, one) == one + B);
    // exp(-B) inverts exp(B).
    GradedElement x = one + GradedElement::dtheta(ctx.get(), 0) + B;
    CHECK(exp_wedge(-B, exp_wedge(B, x)) == x);

    // Omega-carrying arguments need the quotient cap; factorials come out exact.
    GradedElement om = GradedElement::omega(ctx.get(), 0);
    GradedElement e = exp_wedge(om, one, 3);
    GradedElement want = one + om + wedge(om, om).scaled(Rational(1, 2)) +
                         wedge(om, wedge(om, om)).scaled(Rational(1, 6));
    CHECK(e == want);
    CHECK_THROWS_AS(exp_wedge(om, one), Error);                       // no cap
    CHECK_THROWS_AS(exp_wedge(GradedElement::dtheta(ctx.get(), 0), one, 3), Error);
}

TEST_CASE("splitting change shifts the data by the contraction of B") {
    auto ctx = torus_ctx(2, 1);
    ExtendedAction act;
    act.ctx = ctx.get();
    act.X = {unit_field(ctx.get(), 0)};
    act.xi = {GradedElement::dtheta(ctx.get(), 1)};
    act.H = GradedElement::zero(ctx.get());
    REQUIRE(validate_twisting(act).ok());

    GradedElement B = wedge(GradedElement::dtheta(ctx.get(), 0),
                            GradedElement::dtheta(ctx.get(), 1))
                          .scaled(Rational(1, 2));
    ExtendedAction moved = transform_action(act, B);
    // xi' = xi + iota_X B = dt2 + 1/2 dt2; H' = H - dB = 0.
    CHECK(moved.xi[0] == GradedElement::dtheta(ctx.get(), 1).scaled(Rational(3, 2)));
    CHECK(moved.H.is_zero());
    CHECK(validate_twisting(moved).ok());

    // The twisting element moves by the exact shift d_g B.
    GradedElement shift = cartan_differential(act).apply(B);
    CHECK(equivariant_twisting(moved) == equivariant_twisting(act) - shift);
}

TEST_CASE("twisted differentials reject broken data") {
    auto ctx = torus_ctx(2, 2);
    ExtendedAction act;
    act.ctx = ctx.get();
    act.X = {zero_field(ctx.get()), zero_field(ctx.get())};
    // dxi != 0 with H = 0 breaks the closedness decomposition.
    act.xi = {GradedElement::dtheta(ctx.get(), 0).mul_fn(TrigPoly::sine(2, {0, 1}, 1)),
              GradedElement::zero(ctx.get())};
    act.H = GradedElement::zero(ctx.get());
    CHECK_THROWS_AS(twisted_cartan_differential(act), Error);
}

TEST_CASE("both differential presentations agree on sample elements") {
    auto ctx = torus_ctx(1, 1);
    ExtendedAction act = circle_action(ctx.get());
    GradedOperator lhs = extended_differential(act);
    GradedOperator rhs = twisted_cartan_differential(act);
    GradedElement om = GradedElement::omega(ctx.get(), 0);
    GradedElement f = GradedElement::from_function(ctx.get(), TrigPoly::cosine(1, {1}, 1));
    for (const GradedElement& x :
         {GradedElement::one(ctx.get()), om, wedge(om, om), f,
          GradedElement::dtheta(ctx.get(), 0), wedge(f, om)}) {
        CHECK(lhs(x) == rhs(x));
    }
}
