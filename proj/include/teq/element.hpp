#pragma once

// Elements of the ambient graded commutative algebra
//   C(T^n) ⊗ Λ(dθ) ⊗ Λ(θ^1..θ^m) ⊗ S(Ω^1..Ω^m)      (torus backend)
//   F ⊗ Λ(θ) ⊗ S(Ω)                                   (formal backend)
// stored as a sum of monomials with exact trig-polynomial coefficients.
// Monomials are kept in the canonical factor order
//   [manifold form] ∧ [θ factors ascending] ∧ [Ω factors];
// all products reduce to this order with Koszul signs.

#include "teq/backend.hpp"
#include "teq/trigpoly.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace teq {

struct MonoKey {
    uint32_t mbasis = 0;          // torus: dθ bitmask; formal: basis index
    uint32_t theta = 0;           // bitmask over Weil odd generators θ^a
    std::vector<uint8_t> omega;   // exponents of Ω^a, always sized lie.dim

    friend auto operator<=>(const MonoKey&, const MonoKey&) = default;
};

int omega_total(const MonoKey& k);

class GradedElement {
  public:
    GradedElement() = default;
    explicit GradedElement(const Context* ctx) : ctx_(ctx) {}

    static GradedElement zero(const Context* ctx) { return GradedElement(ctx); }
    static GradedElement one(const Context* ctx);
    static GradedElement from_function(const Context* ctx, const TrigPoly& f);
    static GradedElement monomial(const Context* ctx, const MonoKey& k, const TrigPoly& c);
    static GradedElement monomial(const Context* ctx, const MonoKey& k, const Rational& c);
    // Generators: dθ_i (torus manifold coordinate i), formal basis element,
    // θ^a, Ω^a.
    static GradedElement dtheta(const Context* ctx, int i);
    static GradedElement formal_basis(const Context* ctx, int idx);
    static GradedElement theta(const Context* ctx, int a);
    static GradedElement omega(const Context* ctx, int a);

    const Context* ctx() const { return ctx_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<MonoKey, TrigPoly>& terms() const { return terms_; }

    int degree_of(const MonoKey& k) const;  // total Z-degree of a monomial
    // Degree if homogeneous (zero element: degree 0), nullopt otherwise.
    std::optional<int> homogeneous_degree() const;
    bool is_homogeneous() const { return is_zero() || homogeneous_degree().has_value(); }
    // Splits into (even, odd) Z₂-parts.
    std::pair<GradedElement, GradedElement> parity_split() const;
    int max_omega_total() const;
    int max_abs_mode() const;
    bool has_theta() const;

    // Drops monomials whose total Ω-degree exceeds `cap` (truncation quotient).
    GradedElement truncate_omega(int cap) const;

    void add_term(const MonoKey& k, const TrigPoly& c);

    GradedElement operator-() const;
    GradedElement& operator+=(const GradedElement& o);
    GradedElement& operator-=(const GradedElement& o);
    friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
    friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
    friend bool operator==(const GradedElement& a, const GradedElement& b) {
        return a.terms_ == b.terms_;
    }

    GradedElement scaled(const Rational& c) const;
    GradedElement mul_fn(const TrigPoly& f) const;  // multiply by a function

    friend GradedElement wedge(const GradedElement& a, const GradedElement& b);

    std::string str() const;

  private:
    const Context* ctx_ = nullptr;
    std::map<MonoKey, TrigPoly> terms_;
};

GradedElement wedge(const GradedElement& a, const GradedElement& b);

// Sign (+1/-1) of merging two disjoint ascending bitmask factor lists.
int bitmask_merge_sign(uint32_t a, uint32_t b);

}  // namespace teq
