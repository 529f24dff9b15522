#pragma once

// Manifold backends.  A backend supplies the "coefficient" part of the graded
// algebra: either a torus T^n (trig-polynomial functions, dθ_i generators) or
// a finite-dimensional formal model given by an explicit multiplication table
// with differential / contraction / Lie-derivative matrices.

#include "teq/lie.hpp"
#include "teq/scalar.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace teq {

struct TorusBackend {
    int n = 0;  // number of manifold circle coordinates
};

struct FormalBackend {
    // Sparse linear map on the basis: entry j lists (i, c) with b_j -> sum c b_i.
    using LinMap = std::vector<std::vector<std::pair<int, Rational>>>;

    std::vector<std::string> names;
    std::vector<int> degrees;
    int unit = 0;  // index of the algebra unit
    // product[i][j]: expansion of b_i * b_j in the basis.
    std::vector<std::vector<std::vector<std::pair<int, Rational>>>> product;
    LinMap diff;                 // the differential d (may be all-zero)
    std::vector<LinMap> iota;    // contraction per Lie generator (may be empty)
    std::vector<LinMap> lie_op;  // Lie derivative per Lie generator (may be empty)

    int size() const { return static_cast<int>(names.size()); }

    // Structural validation: degree compatibility, unit, graded commutativity,
    // associativity, Leibniz for d and every ι_a, d² = 0, Cartan formula
    // [d, ι_a] = L_a, and the g-dga relations for ι/L against `g`.
    // Returns a violation message or nullopt.
    std::optional<std::string> validate(const LieAlgebra& g) const;
};

// Chevalley–Eilenberg model Λ(g*) of a compact group frame: generators e^a of
// degree 1 indexed by bitmask, d e^a = -1/2 f^a_{bc} e^b e^c, ι_a e^b = δ_ab.
FormalBackend ce_backend(const LieAlgebra& g, const std::string& prefix = "e");

// Graded tensor product of two formal models; the g-action (if both carry one)
// is the diagonal one.
FormalBackend tensor_backend(const FormalBackend& A, const FormalBackend& B);

// Formal model of S¹ x CP^k: basis x^j (degree 2j, j <= k) and dt·x^j
// (degree 2j+1), zero differential, truncation x^{k+1} = 0.  Carries no group
// action data.
FormalBackend s1xcpk_backend(int k);

// One-point formal model: the unit algebra with zero action data for
// `lie_dim` symmetry generators.
FormalBackend point_backend(int lie_dim);

struct Backend {
    std::variant<TorusBackend, FormalBackend> v;

    Backend() : v(TorusBackend{0}) {}
    Backend(TorusBackend t) : v(std::move(t)) {}
    Backend(FormalBackend f) : v(std::move(f)) {}

    bool is_torus() const { return std::holds_alternative<TorusBackend>(v); }
    const TorusBackend& torus() const { return std::get<TorusBackend>(v); }
    const FormalBackend& formal() const { return std::get<FormalBackend>(v); }

    // Degree of a manifold-basis monomial: bit-mask weight for the torus
    // (dθ factors), table degree for formal models.
    int manifold_degree(uint32_t mbasis) const;
    int manifold_parity(uint32_t mbasis) const { return manifold_degree(mbasis) & 1; }
};

// Shared immutable description of the ambient graded algebra:
// coefficients ⊗ manifold forms ⊗ Λ(θ) ⊗ S(Ω).
struct Context {
    LieAlgebra lie;
    Backend backend;
    // Leading trig variables acting as group parameters: they carry Fourier
    // modes but no dθ generators and are not differentiated by d.
    int group_params = 0;
    std::vector<std::string> coord_names;  // optional, for printing

    int torus_n() const { return backend.is_torus() ? backend.torus().n : 0; }
    // Total trig variables (group parameters + manifold coordinates).
    int nvars() const { return backend.is_torus() ? group_params + backend.torus().n : 0; }
    // Trig-variable index of manifold coordinate i.
    int coord_var(int i) const { return group_params + i; }

    std::string coord_name(int var) const;
};

}  // namespace teq
