#pragma once

// Finite-dimensional real Lie algebras given by structure constants
// [e_a, e_b] = sum_c f[a][b][c] e_c, with exact rational entries.

#include "teq/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace teq {

struct LieAlgebra {
    int dim = 0;
    // f[a][b][c]: coefficient of e_c in [e_a, e_b].  Sized dim x dim x dim.
    std::vector<std::vector<std::vector<Rational>>> f;

    static LieAlgebra abelian(int m);
    static LieAlgebra su2();  // [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2

    const Rational& fc(int a, int b, int c) const { return f[a][b][c]; }

    // Returns a violation message naming the offending index pair/triple, or
    // nullopt if antisymmetry and the Jacobi identity hold.
    std::optional<std::string> validate() const;
};

// Throws teq::Error with the violation message if validation fails.
LieAlgebra make_lie_algebra(int dim,
                            const std::vector<std::vector<std::vector<Rational>>>& f);

}  // namespace teq
