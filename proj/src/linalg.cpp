#include "teq/linalg.hpp"

#include "teq/error.hpp"

#include <algorithm>

namespace teq {

void vec_axpy(SparseVec& y, const Rational& c, const SparseVec& x) {
    if (c == 0) return;
    for (const auto& [i, v] : x) {
        auto it = y.find(i);
        if (it == y.end()) {
            y.emplace(i, c * v);
        } else {
            it->second += c * v;
            if (it->second == 0) y.erase(it);
        }
    }
}

SparseVec vec_scaled(const SparseVec& v, const Rational& c) {
    SparseVec out;
    if (c == 0) return out;
    for (const auto& [i, x] : v) out.emplace(i, c * x);
    return out;
}

bool vec_is_zero(const SparseVec& v) { return v.empty(); }

SparseVec RowBasis::reduce(const SparseVec& v) const {
    SparseVec r = v;
    for (size_t i = 0; i < rows.size(); ++i) {
        auto it = r.find(pivots[i]);
        if (it == r.end()) continue;
        Rational c = it->second;
        vec_axpy(r, -c, rows[i]);
    }
    return r;
}

namespace {

// Shared elimination core; `track` carries one companion vector per row that
// undergoes the same row operations (used for solve certificates).
struct Eliminator {
    int ncols = 0;
    std::vector<SparseVec> rows;
    std::vector<int> pivots;
    std::vector<SparseVec> track;

    // Reduces v (and its companion) against the current rows, then inserts it
    // if anything is left.  Keeps the basis fully reduced.
    void insert(SparseVec v, SparseVec tr) {
        for (size_t i = 0; i < rows.size(); ++i) {
            auto it = v.find(pivots[i]);
            if (it == v.end()) continue;
            Rational c = it->second;
            vec_axpy(v, -c, rows[i]);
            vec_axpy(tr, -c, track[i]);
        }
        if (v.empty()) return;
        int p = v.begin()->first;
        Rational lead = v.begin()->second;
        Rational inv = Rational(1) / lead;
        v = vec_scaled(v, inv);
        tr = vec_scaled(tr, inv);
        // back-eliminate the new pivot from the existing rows
        for (size_t i = 0; i < rows.size(); ++i) {
            auto it = rows[i].find(p);
            if (it == rows[i].end()) continue;
            Rational c = it->second;
            vec_axpy(rows[i], -c, v);
            vec_axpy(track[i], -c, tr);
        }
        // keep rows ordered by pivot column
        size_t pos = 0;
        while (pos < pivots.size() && pivots[pos] < p) ++pos;
        rows.insert(rows.begin() + pos, std::move(v));
        pivots.insert(pivots.begin() + pos, p);
        track.insert(track.begin() + pos, std::move(tr));
    }
};

}  // namespace

RowBasis row_basis(const std::vector<SparseVec>& vecs, int ncols) {
    Eliminator e;
    e.ncols = ncols;
    for (const auto& v : vecs) e.insert(v, {});
    RowBasis out;
    out.ncols = ncols;
    out.rows = std::move(e.rows);
    out.pivots = std::move(e.pivots);
    return out;
}

TrackedBasis tracked_row_basis(const std::vector<SparseVec>& vecs, int ncols) {
    Eliminator e;
    e.ncols = ncols;
    for (size_t j = 0; j < vecs.size(); ++j) {
        SparseVec tag;
        tag.emplace(static_cast<int>(j), Rational(1));
        e.insert(vecs[j], std::move(tag));
    }
    TrackedBasis out;
    out.basis.ncols = ncols;
    out.basis.rows = std::move(e.rows);
    out.basis.pivots = std::move(e.pivots);
    out.expr = std::move(e.track);
    return out;
}

std::optional<SparseVec> solve_in_span(const TrackedBasis& tb, const SparseVec& target) {
    SparseVec r = target;
    SparseVec x;
    for (size_t i = 0; i < tb.basis.rows.size(); ++i) {
        auto it = r.find(tb.basis.pivots[i]);
        if (it == r.end()) continue;
        Rational c = it->second;
        vec_axpy(r, -c, tb.basis.rows[i]);
        vec_axpy(x, c, tb.expr[i]);
    }
    if (!r.empty()) return std::nullopt;
    return x;
}

SparseVec SparseMatrix::apply(const SparseVec& x) const {
    SparseVec y;
    for (const auto& [j, c] : x) vec_axpy(y, c, col[j]);
    return y;
}

SparseMatrix SparseMatrix::identity(int n) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.col[i].emplace(i, Rational(1));
    return m;
}

SparseMatrix mat_mul(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows) throw Error("mat_mul: dimension mismatch");
    SparseMatrix out(a.rows, b.cols);
    for (int j = 0; j < b.cols; ++j) out.col[j] = a.apply(b.col[j]);
    return out;
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
    // Row-reduce the equations; free columns parametrize the kernel.
    std::vector<SparseVec> eq(m.rows);
    for (int j = 0; j < m.cols; ++j)
        for (const auto& [i, v] : m.col[j]) eq[i].emplace(j, v);
    RowBasis rb = row_basis(eq, m.cols);

    std::vector<bool> is_pivot(m.cols, false);
    for (int p : rb.pivots) is_pivot[p] = true;

    std::vector<SparseVec> ker;
    for (int j = 0; j < m.cols; ++j) {
        if (is_pivot[j]) continue;
        SparseVec k;
        k.emplace(j, Rational(1));
        for (size_t i = 0; i < rb.rows.size(); ++i) {
            auto it = rb.rows[i].find(j);
            if (it != rb.rows[i].end()) k.emplace(rb.pivots[i], -it->second);
        }
        ker.push_back(std::move(k));
    }
    return ker;
}

RowBasis image_basis(const SparseMatrix& m) { return row_basis(m.col, m.rows); }

std::vector<Rational> minimal_polynomial(const SparseMatrix& m) {
    if (m.rows != m.cols) throw Error("minimal_polynomial: matrix must be square");
    const int n = m.rows;
    if (n == 0) return {Rational(1)};  // minimal polynomial of the empty matrix

    auto flatten = [n](const SparseMatrix& p) {
        SparseVec v;
        for (int j = 0; j < p.cols; ++j)
            for (const auto& [i, c] : p.col[j]) v.emplace(i * n + j, c);
        return v;
    };

    std::vector<SparseVec> powers;  // vectorized I, A, A², ...
    SparseMatrix p = SparseMatrix::identity(n);
    for (int k = 0;; ++k) {
        SparseVec vp = flatten(p);
        TrackedBasis tb = tracked_row_basis(powers, n * n);
        if (auto x = solve_in_span(tb, vp)) {
            // A^k = Σ x_j A^j  →  minimal polynomial x^k - Σ x_j t^j
            std::vector<Rational> poly(k + 1, Rational(0));
            poly[k] = Rational(1);
            for (const auto& [j, c] : *x) poly[j] = -c;
            return poly;
        }
        if (k > n) throw Error("minimal_polynomial: no dependence found");  // unreachable
        powers.push_back(std::move(vp));
        p = mat_mul(m, p);
    }
}

}  // namespace teq
