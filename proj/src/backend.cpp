#include "teq/backend.hpp"

#include "teq/error.hpp"

#include <bit>
#include <map>

namespace teq {

namespace {

// Term lists (basis index -> coefficient) used by the table computations.
using Terms = std::map<int, Rational>;

void add_term(Terms& t, int i, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = t.emplace(i, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t.erase(it);
    }
}

Terms apply_linmap(const FormalBackend::LinMap& M, const Terms& t) {
    Terms r;
    for (const auto& [j, c] : t)
        for (const auto& [i, m] : M[j]) add_term(r, i, c * m);
    return r;
}

Terms multiply(const FormalBackend& F, const Terms& a, const Terms& b) {
    Terms r;
    for (const auto& [i, ca] : a)
        for (const auto& [j, cb] : b)
            for (const auto& [k, m] : F.product[i][j]) add_term(r, k, ca * cb * m);
    return r;
}

// Sign of reordering e^{maskA} ∧ e^{maskB} into ascending order (masks disjoint):
// parity of the number of pairs (i in A, j in B) with i > j.
int merge_sign(uint32_t a, uint32_t b) {
    int inv = 0;
    for (uint32_t bitB = b; bitB; bitB &= bitB - 1) {
        const int j = std::countr_zero(bitB);
        inv += std::popcount(a >> (j + 1));
    }
    return (inv & 1) ? -1 : 1;
}

FormalBackend::LinMap to_linmap(const std::vector<Terms>& cols) {
    FormalBackend::LinMap m(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [i, c] : cols[j]) m[j].emplace_back(i, c);
    return m;
}

FormalBackend::LinMap compose_linmaps(const FormalBackend::LinMap& A,
                                      const FormalBackend::LinMap& B) {
    // (A ∘ B): columns of B pushed through A.
    std::vector<Terms> cols(B.size());
    for (std::size_t j = 0; j < B.size(); ++j) {
        Terms t;
        for (const auto& [i, c] : B[j]) add_term(t, i, c);
        cols[j] = apply_linmap(A, t);
    }
    return to_linmap(cols);
}

FormalBackend::LinMap linmap_combine(const FormalBackend::LinMap& A, const Rational& ca,
                                     const FormalBackend::LinMap& B, const Rational& cb) {
    std::vector<Terms> cols(A.size());
    for (std::size_t j = 0; j < A.size(); ++j) {
        for (const auto& [i, c] : A[j]) add_term(cols[j], i, ca * c);
        for (const auto& [i, c] : B[j]) add_term(cols[j], i, cb * c);
    }
    return to_linmap(cols);
}

bool linmap_equal(const FormalBackend::LinMap& A, const FormalBackend::LinMap& B) {
    if (A.size() != B.size()) return false;
    for (std::size_t j = 0; j < A.size(); ++j) {
        Terms ta, tb;
        for (const auto& [i, c] : A[j]) add_term(ta, i, c);
        for (const auto& [i, c] : B[j]) add_term(tb, i, c);
        if (ta != tb) return false;
    }
    return true;
}

bool linmap_zero(const FormalBackend::LinMap& A) {
    for (const auto& col : A) {
        Terms t;
        for (const auto& [i, c] : col) add_term(t, i, c);
        if (!t.empty()) return false;
    }
    return true;
}

}  // namespace

int Backend::manifold_degree(uint32_t mbasis) const {
    if (is_torus()) return std::popcount(mbasis);
    return formal().degrees[mbasis];
}

std::string Context::coord_name(int var) const {
    if (var < static_cast<int>(coord_names.size())) return coord_names[var];
    if (var < group_params) return "p" + std::to_string(var + 1);
    return "t" + std::to_string(var - group_params + 1);
}

std::optional<std::string> FormalBackend::validate(const LieAlgebra& g) const {
    const int B = size();
    if (static_cast<int>(degrees.size()) != B) return "degree table size mismatch";
    if (static_cast<int>(product.size()) != B) return "product table size mismatch";
    for (const auto& row : product)
        if (static_cast<int>(row.size()) != B) return "product table size mismatch";
    if (static_cast<int>(diff.size()) != B) return "differential size mismatch";
    if (unit < 0 || unit >= B || degrees[unit] != 0) return "unit index invalid";
    const bool has_action = !iota.empty() || !lie_op.empty();
    if (has_action) {
        if (static_cast<int>(iota.size()) != g.dim || static_cast<int>(lie_op.size()) != g.dim)
            return "action matrices must cover every Lie generator";
        for (const auto& m : iota)
            if (static_cast<int>(m.size()) != B) return "contraction matrix size mismatch";
        for (const auto& m : lie_op)
            if (static_cast<int>(m.size()) != B) return "Lie-derivative matrix size mismatch";
    }

    auto unit_term = [&] {
        Terms t;
        t.emplace(unit, Rational(1));
        return t;
    };
    auto basis_term = [](int i) {
        Terms t;
        t.emplace(i, Rational(1));
        return t;
    };

    // Degree compatibility.
    for (int i = 0; i < B; ++i)
        for (int j = 0; j < B; ++j)
            for (const auto& [k, c] : product[i][j]) {
                if (c == 0) continue;
                if (k < 0 || k >= B) return "product entry index out of range";
                if (degrees[k] != degrees[i] + degrees[j])
                    return "product violates degrees at (" + names[i] + ", " + names[j] + ")";
            }
    auto check_map_degree = [&](const LinMap& M, int shift,
                                const std::string& what) -> std::optional<std::string> {
        for (int j = 0; j < B; ++j)
            for (const auto& [i, c] : M[j]) {
                if (c == 0) continue;
                if (i < 0 || i >= B) return what + " entry index out of range";
                if (degrees[i] != degrees[j] + shift)
                    return what + " violates degrees at " + names[j];
            }
        return std::nullopt;
    };
    if (auto e = check_map_degree(diff, +1, "differential")) return e;
    if (has_action)
        for (int a = 0; a < g.dim; ++a) {
            if (auto e = check_map_degree(iota[a], -1, "contraction")) return e;
            if (auto e = check_map_degree(lie_op[a], 0, "Lie derivative")) return e;
        }

    // Unit law.
    for (int j = 0; j < B; ++j) {
        if (multiply(*this, unit_term(), basis_term(j)) != basis_term(j))
            return "unit law fails at " + names[j];
        if (multiply(*this, basis_term(j), unit_term()) != basis_term(j))
            return "unit law fails at " + names[j];
    }

    // Graded commutativity and associativity.
    for (int i = 0; i < B; ++i)
        for (int j = 0; j < B; ++j) {
            Terms ij = multiply(*this, basis_term(i), basis_term(j));
            Terms ji = multiply(*this, basis_term(j), basis_term(i));
            const int sgn = (degrees[i] & 1) && (degrees[j] & 1) ? -1 : 1;
            Terms scaled;
            for (const auto& [k, c] : ji) add_term(scaled, k, Rational(sgn) * c);
            if (ij != scaled)
                return "graded commutativity fails at (" + names[i] + ", " + names[j] + ")";
        }
    for (int i = 0; i < B; ++i)
        for (int j = 0; j < B; ++j)
            for (int k = 0; k < B; ++k) {
                Terms l = multiply(*this, multiply(*this, basis_term(i), basis_term(j)),
                                   basis_term(k));
                Terms r = multiply(*this, basis_term(i),
                                   multiply(*this, basis_term(j), basis_term(k)));
                if (l != r)
                    return "associativity fails at (" + names[i] + ", " + names[j] + ", " +
                           names[k] + ")";
            }

    // Graded Leibniz for a degree ±1 map M.
    auto check_leibniz = [&](const LinMap& M, const std::string& what)
        -> std::optional<std::string> {
        for (int i = 0; i < B; ++i)
            for (int j = 0; j < B; ++j) {
                Terms lhs = apply_linmap(M, multiply(*this, basis_term(i), basis_term(j)));
                Terms rhs = multiply(*this, apply_linmap(M, basis_term(i)), basis_term(j));
                const Rational sgn((degrees[i] & 1) ? -1 : 1);
                for (const auto& [k, c] : multiply(*this, basis_term(i),
                                                   apply_linmap(M, basis_term(j))))
                    add_term(rhs, k, sgn * c);
                if (lhs != rhs)
                    return what + " violates the Leibniz rule at (" + names[i] + ", " +
                           names[j] + ")";
            }
        return std::nullopt;
    };
    if (auto e = check_leibniz(diff, "differential")) return e;
    if (!linmap_zero(compose_linmaps(diff, diff))) return "differential does not square to zero";

    if (has_action) {
        for (int a = 0; a < g.dim; ++a) {
            if (auto e = check_leibniz(iota[a], "contraction " + std::to_string(a + 1))) return e;
            // Cartan formula: d ι_a + ι_a d = L_a.
            LinMap cartan = linmap_combine(compose_linmaps(diff, iota[a]), Rational(1),
                                           compose_linmaps(iota[a], diff), Rational(1));
            if (!linmap_equal(cartan, lie_op[a]))
                return "Cartan formula fails for generator " + std::to_string(a + 1);
            for (int b = 0; b < g.dim; ++b) {
                LinMap anti = linmap_combine(compose_linmaps(iota[a], iota[b]), Rational(1),
                                             compose_linmaps(iota[b], iota[a]), Rational(1));
                if (!linmap_zero(anti))
                    return "contractions fail to anticommute at (" + std::to_string(a + 1) +
                           "," + std::to_string(b + 1) + ")";
                // [L_a, ι_b] = ι_{[a,b]} and [L_a, L_b] = L_{[a,b]}.
                LinMap li = linmap_combine(compose_linmaps(lie_op[a], iota[b]), Rational(1),
                                           compose_linmaps(iota[b], lie_op[a]), Rational(-1));
                LinMap ll = linmap_combine(compose_linmaps(lie_op[a], lie_op[b]), Rational(1),
                                           compose_linmaps(lie_op[b], lie_op[a]), Rational(-1));
                LinMap iexp(B), lexp(B);
                for (int c = 0; c < g.dim; ++c) {
                    if (g.fc(a, b, c) == 0) continue;
                    iexp = linmap_combine(iexp, Rational(1), iota[c], g.fc(a, b, c));
                    lexp = linmap_combine(lexp, Rational(1), lie_op[c], g.fc(a, b, c));
                }
                if (!linmap_equal(li, iexp))
                    return "equivariance [L,ι] fails at (" + std::to_string(a + 1) + "," +
                           std::to_string(b + 1) + ")";
                if (!linmap_equal(ll, lexp))
                    return "[L,L] fails at (" + std::to_string(a + 1) + "," +
                           std::to_string(b + 1) + ")";
            }
        }
    }
    return std::nullopt;
}

FormalBackend ce_backend(const LieAlgebra& g, const std::string& prefix) {
    const int m = g.dim;
    const int B = 1 << m;
    FormalBackend F;
    F.names.resize(B);
    F.degrees.resize(B);
    F.unit = 0;
    for (uint32_t s = 0; s < static_cast<uint32_t>(B); ++s) {
        F.degrees[s] = std::popcount(s);
        if (s == 0) {
            F.names[s] = "1";
            continue;
        }
        std::string n;
        for (int i = 0; i < m; ++i)
            if (s & (1u << i)) {
                if (!n.empty()) n += "^";
                n += prefix + std::to_string(i + 1);
            }
        F.names[s] = n;
    }
    F.product.assign(B, std::vector<std::vector<std::pair<int, Rational>>>(B));
    for (uint32_t a = 0; a < static_cast<uint32_t>(B); ++a)
        for (uint32_t b = 0; b < static_cast<uint32_t>(B); ++b) {
            if (a & b) continue;  // repeated odd generator
            F.product[a][b].emplace_back(static_cast<int>(a | b),
                                         Rational(merge_sign(a, b)));
        }

    // d e^a = -1/2 f^a_{bc} e^b e^c = -sum_{b<c} f^a_{bc} e^b e^c, extended by Leibniz.
    auto wedge_terms = [&F](const Terms& x, const Terms& y) { return multiply(F, x, y); };
    std::vector<Terms> dcols(B);
    std::vector<Terms> dgen(m);  // d of a single generator
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = b + 1; c < m; ++c)
                add_term(dgen[a], static_cast<int>((1u << b) | (1u << c)), -g.fc(b, c, a));
    for (uint32_t s = 1; s < static_cast<uint32_t>(B); ++s) {
        int pos = 0;
        for (int i = 0; i < m; ++i) {
            if (!(s & (1u << i))) continue;
            const uint32_t before = s & ((1u << i) - 1);
            const uint32_t after = s & ~((1u << i) - 1) & ~(1u << i);
            Terms piece = wedge_terms(Terms{{static_cast<int>(before), Rational(1)}},
                                      wedge_terms(dgen[i],
                                                  Terms{{static_cast<int>(after), Rational(1)}}));
            const Rational sgn((pos & 1) ? -1 : 1);
            for (const auto& [k, c] : piece) add_term(dcols[s], k, sgn * c);
            ++pos;
        }
    }
    F.diff = to_linmap(dcols);

    F.iota.resize(m);
    for (int a = 0; a < m; ++a) {
        std::vector<Terms> cols(B);
        for (uint32_t s = 0; s < static_cast<uint32_t>(B); ++s) {
            if (!(s & (1u << a))) continue;
            const int pos = std::popcount(s & ((1u << a) - 1));
            add_term(cols[s], static_cast<int>(s & ~(1u << a)), Rational((pos & 1) ? -1 : 1));
        }
        F.iota[a] = to_linmap(cols);
    }
    F.lie_op.resize(m);
    for (int a = 0; a < m; ++a)
        F.lie_op[a] = linmap_combine(compose_linmaps(F.diff, F.iota[a]), Rational(1),
                                     compose_linmaps(F.iota[a], F.diff), Rational(1));
    return F;
}

FormalBackend tensor_backend(const FormalBackend& A, const FormalBackend& B) {
    const int nA = A.size(), nB = B.size();
    const int N = nA * nB;
    auto idx = [nB](int i, int j) { return i * nB + j; };
    FormalBackend F;
    F.names.resize(N);
    F.degrees.resize(N);
    F.unit = idx(A.unit, B.unit);
    for (int i = 0; i < nA; ++i)
        for (int j = 0; j < nB; ++j) {
            F.degrees[idx(i, j)] = A.degrees[i] + B.degrees[j];
            if (A.names[i] == "1")
                F.names[idx(i, j)] = B.names[j];
            else if (B.names[j] == "1")
                F.names[idx(i, j)] = A.names[i];
            else
                F.names[idx(i, j)] = A.names[i] + "^" + B.names[j];
        }
    F.product.assign(N, std::vector<std::vector<std::pair<int, Rational>>>(N));
    for (int i = 0; i < nA; ++i)
        for (int j = 0; j < nB; ++j)
            for (int p = 0; p < nA; ++p)
                for (int q = 0; q < nB; ++q) {
                    // (a_i ⊗ b_j)(a_p ⊗ b_q) = (-1)^{|b_j||a_p|} a_i a_p ⊗ b_j b_q
                    const int sgn = (B.degrees[j] & 1) && (A.degrees[p] & 1) ? -1 : 1;
                    auto& out = F.product[idx(i, j)][idx(p, q)];
                    for (const auto& [ii, ca] : A.product[i][p])
                        for (const auto& [jj, cb] : B.product[j][q])
                            out.emplace_back(idx(ii, jj), Rational(sgn) * ca * cb);
                }

    auto diag_map = [&](const FormalBackend::LinMap& MA, const FormalBackend::LinMap& MB,
                        bool odd) {
        std::vector<Terms> cols(N);
        for (int i = 0; i < nA; ++i)
            for (int j = 0; j < nB; ++j) {
                for (const auto& [ii, c] : MA[i]) add_term(cols[idx(i, j)], idx(ii, j), c);
                const Rational sgn(odd && (A.degrees[i] & 1) ? -1 : 1);
                for (const auto& [jj, c] : MB[j]) add_term(cols[idx(i, j)], idx(i, jj), sgn * c);
            }
        return to_linmap(cols);
    };
    F.diff = diag_map(A.diff, B.diff, true);
    if (!A.iota.empty() && !B.iota.empty() && A.iota.size() == B.iota.size()) {
        const int m = static_cast<int>(A.iota.size());
        F.iota.resize(m);
        F.lie_op.resize(m);
        for (int a = 0; a < m; ++a) {
            F.iota[a] = diag_map(A.iota[a], B.iota[a], true);
            F.lie_op[a] = diag_map(A.lie_op[a], B.lie_op[a], false);
        }
    }
    return F;
}

FormalBackend s1xcpk_backend(int k) {
    if (k < 0) throw Error("s1xcpk_backend: k must be nonnegative");
    const int N = 2 * (k + 1);
    FormalBackend F;
    F.names.resize(N);
    F.degrees.resize(N);
    F.unit = 0;
    auto xname = [](int j) {
        if (j == 0) return std::string("1");
        if (j == 1) return std::string("x");
        return "x^" + std::to_string(j);
    };
    for (int j = 0; j <= k; ++j) {
        F.names[2 * j] = xname(j);
        F.degrees[2 * j] = 2 * j;
        F.names[2 * j + 1] = j == 0 ? "dt" : "dt*" + xname(j);
        F.degrees[2 * j + 1] = 2 * j + 1;
    }
    F.product.assign(N, std::vector<std::vector<std::pair<int, Rational>>>(N));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const int pi = i / 2, pj = j / 2;      // powers of x
            const bool di = i & 1, dj = j & 1;     // carries dt?
            if (di && dj) continue;                // dt ∧ dt = 0
            if (pi + pj > k) continue;             // x^{k+1} = 0
            F.product[i][j].emplace_back(2 * (pi + pj) + (di || dj ? 1 : 0), Rational(1));
        }
    F.diff.assign(N, {});
    return F;
}

FormalBackend point_backend(int lie_dim) {
    FormalBackend b;
    b.names = {"1"};
    b.degrees = {0};
    b.unit = 0;
    b.product = {{{{0, Rational(1)}}}};
    b.diff = {{}};
    b.iota.assign(lie_dim, FormalBackend::LinMap{{}});
    b.lie_op.assign(lie_dim, FormalBackend::LinMap{{}});
    return b;
}

}  // namespace teq
