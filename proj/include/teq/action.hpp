#pragma once

// Extended actions δ(a) = X_a + ξ_a on an exact Courant algebroid background
// (manifold backend, twisting 3-form H): sections, pairing, twisted Courant
// bracket, and validation of the defining conditions.

#include "teq/derivation.hpp"
#include "teq/operators.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace teq {

// A section X + ξ of TM ⊕ T*M.  The vector part is either a torus vector
// field or a coefficient vector in the Lie algebra (formal backends carry the
// fundamental vector fields only through their ι/L matrices).
struct Section {
    std::variant<VectorField, std::vector<Rational>> vec;
    GradedElement xi;
};

struct ExtendedAction {
    const Context* ctx = nullptr;
    // Torus backends: X[a] lists the components of X_a.  Formal backends: the
    // fundamental fields are the backend's ι/L generator slots and X is empty.
    std::vector<VectorField> X;
    std::vector<GradedElement> xi;
    GradedElement H;

    bool torus() const { return ctx->backend.is_torus(); }
    Section section(int a) const;
    // δ applied to a Lie-algebra element with the given coordinates.
    Section section_combination(const std::vector<Rational>& coeff) const;
};

// Contraction / Lie derivative along a section's vector part (manifold factor).
Derivation iota_vec(const Context* ctx, const Section& s);
Derivation lie_vec(const Context* ctx, const Section& s);
// Same for a single action generator.
Derivation iota_x(const ExtendedAction& act, int a);
Derivation lie_x(const ExtendedAction& act, int a);

// ⟨X+ξ, Y+η⟩ = ½(ι_X η + ι_Y ξ), a function (degree-0 element).
GradedElement pairing(const Context* ctx, const Section& s1, const Section& s2);

// H-twisted (antisymmetric) Courant bracket:
// [X+ξ, Y+η]_H = [X,Y] + L_X η − L_Y ξ − ½ d(ι_X η − ι_Y ξ) − ι_X ι_Y H.
Section courant_bracket(const Context* ctx, const Section& s1, const Section& s2,
                        const GradedElement& H);

struct CheckResult {
    std::string name;
    bool ok = true;
    std::string witness;  // human-readable description of the first violation
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
    std::string summary() const;
    const CheckResult* find(const std::string& name) const;
};

// Definition-level checks: dH = 0, isotropy of the image, and the
// algebra-morphism condition [δ(a), δ(b)]_H = δ([a,b]).
ValidationReport validate_extended_action(const ExtendedAction& act);

// Closed-equivariant-3-form checks for 𝓗 = H + Ω^a ξ_a: the closedness
// decomposition (dH = 0, dξ_a − ι_{X_a} H = 0, ι_a ξ_b antisymmetric) and
// invariance (L_{X_b} H = 0, L_{X_b} ξ_a = ξ_{[b,a]}).
ValidationReport validate_twisting(const ExtendedAction& act);

}  // namespace teq
