#include "teq/lie.hpp"

#include "teq/error.hpp"

namespace teq {

LieAlgebra LieAlgebra::abelian(int m) {
    LieAlgebra g;
    g.dim = m;
    g.f.assign(m, std::vector<std::vector<Rational>>(m, std::vector<Rational>(m, Rational(0))));
    return g;
}

LieAlgebra LieAlgebra::su2() {
    LieAlgebra g = abelian(3);
    auto set = [&g](int a, int b, int c) {
        g.f[a][b][c] = 1;
        g.f[b][a][c] = -1;
    };
    set(0, 1, 2);
    set(1, 2, 0);
    set(2, 0, 1);
    return g;
}

std::optional<std::string> LieAlgebra::validate() const {
    if (static_cast<int>(f.size()) != dim) return "structure constant table has wrong size";
    for (int a = 0; a < dim; ++a) {
        if (static_cast<int>(f[a].size()) != dim) return "structure constant table has wrong size";
        for (int b = 0; b < dim; ++b)
            if (static_cast<int>(f[a][b].size()) != dim)
                return "structure constant table has wrong size";
    }
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int c = 0; c < dim; ++c)
                if (f[a][b][c] != -f[b][a][c])
                    return "antisymmetry fails at (a,b,c) = (" + std::to_string(a + 1) + "," +
                           std::to_string(b + 1) + "," + std::to_string(c + 1) + ")";
    // Jacobi: sum_e f[b][c][e] f[a][e][d] + cyclic in (a,b,c) = 0 for all d.
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int c = 0; c < dim; ++c)
                for (int d = 0; d < dim; ++d) {
                    Rational s(0);
                    for (int e = 0; e < dim; ++e)
                        s += f[b][c][e] * f[a][e][d] + f[c][a][e] * f[b][e][d] +
                             f[a][b][e] * f[c][e][d];
                    if (s != 0)
                        return "Jacobi identity fails at triple (a,b,c) = (" +
                               std::to_string(a + 1) + "," + std::to_string(b + 1) + "," +
                               std::to_string(c + 1) + ")";
                }
    return std::nullopt;
}

LieAlgebra make_lie_algebra(int dim,
                            const std::vector<std::vector<std::vector<Rational>>>& f) {
    LieAlgebra g;
    g.dim = dim;
    g.f = f;
    if (auto err = g.validate()) throw Error("invalid Lie algebra: " + *err);
    return g;
}

}  // namespace teq
