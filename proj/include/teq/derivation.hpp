#pragma once

// Graded derivations of the ambient algebra, stored by their action on
// generators: coefficient functions, dθ_i (torus) or the whole manifold basis
// (formal backends, where the table algebra is not free and the map is kept as
// an explicit linear action), θ^a and Ω^a.  Application expands by the graded
// Leibniz rule in the canonical factor order.

#include "teq/element.hpp"

#include <functional>
#include <memory>

namespace teq {

struct Derivation {
    const Context* ctx = nullptr;
    int parity = 0;  // 0 even, 1 odd
    // Image of a coefficient function f (as a graded element); null = zero.
    std::function<GradedElement(const TrigPoly&)> coeff_rule;
    std::vector<GradedElement> dtheta_img;  // torus: image of dθ_i; empty = zero
    std::vector<GradedElement> formal_img;  // formal: image of basis b_j; empty = zero
    std::vector<GradedElement> theta_img;   // image of θ^a; empty = zero
    std::vector<GradedElement> omega_img;   // image of Ω^a; empty = zero

    GradedElement apply(const GradedElement& e) const;
    GradedElement operator()(const GradedElement& e) const { return apply(e); }
};

Derivation zero_derivation(const Context* ctx, int parity);
// Sum of two derivations of equal parity.
Derivation derivation_add(const Derivation& a, const Derivation& b);
Derivation derivation_scale(const Derivation& a, const Rational& c);
// Left multiplication by a central even element (an Ω-polynomial with
// invariant coefficients) preserves the derivation property.
Derivation derivation_mul_central(const GradedElement& z, const Derivation& d);
// Graded commutator [D1, D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1, again a derivation.
Derivation derivation_commutator(const Derivation& d1, const Derivation& d2);

// --- standard derivations -------------------------------------------------

// Exterior differential of the manifold factor (group parameters are inert).
Derivation exterior_d(const Context* ctx);
// Weil differential: θ^a -> Ω^a - 1/2 f^a_{bc} θ^b θ^c, Ω^a -> f^a_{bc} Ω^b θ^c.
Derivation weil_d(const Context* ctx);
// Contraction with the Weil connection generator: ι_a θ^b = δ_ab, ι_a Ω^b = 0.
Derivation weil_iota(const Context* ctx, int a);
// Coadjoint Lie derivative on θ/Ω: θ^b -> -f^b_{ac} θ^c, Ω^b -> -f^b_{ac} Ω^c.
Derivation coadjoint_lie(const Context* ctx, int a);

// Torus vector field X = sum_i comp[i] ∂/∂θ_i (manifold coordinates).
struct VectorField {
    std::vector<TrigPoly> comp;
};

// Contraction and Lie derivative along a torus vector field (manifold factor only).
Derivation iota_vf(const Context* ctx, const VectorField& X);
Derivation lie_vf(const Context* ctx, const VectorField& X);
// Formal-backend contraction / Lie derivative of Lie generator a (manifold factor only).
Derivation iota_formal(const Context* ctx, int a);
Derivation lie_formal(const Context* ctx, int a);

}  // namespace teq
