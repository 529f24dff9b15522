#pragma once

// Exact sparse linear algebra over Q: reduced row-echelon bases, kernels,
// images, span membership with certificates, and minimal polynomials.  Vectors
// are sparse maps from coordinate index to rational value; coordinate 0 is the
// highest-priority pivot position.

#include "teq/scalar.hpp"

#include <map>
#include <optional>
#include <vector>

namespace teq {

using SparseVec = std::map<int, Rational>;

void vec_axpy(SparseVec& y, const Rational& c, const SparseVec& x);  // y += c x
SparseVec vec_scaled(const SparseVec& v, const Rational& c);
bool vec_is_zero(const SparseVec& v);

// Reduced row-echelon basis of a subspace of Q^ncols.  Rows have strictly
// increasing pivot columns, pivot entries 1, and pivot columns eliminated from
// the other rows.
struct RowBasis {
    int ncols = 0;
    std::vector<SparseVec> rows;
    std::vector<int> pivots;  // pivot column of rows[i]

    int rank() const { return static_cast<int>(rows.size()); }
    // Canonical representative of v modulo the subspace: the unique element of
    // v + span with a zero in every pivot column.
    SparseVec reduce(const SparseVec& v) const;
    bool contains(const SparseVec& v) const { return vec_is_zero(reduce(v)); }
};

RowBasis row_basis(const std::vector<SparseVec>& vecs, int ncols);

// Row basis plus the expression of each basis row as a combination of the
// input vectors: basis.rows[i] = Σ_j expr[i][j] · vecs[j].
struct TrackedBasis {
    RowBasis basis;
    std::vector<SparseVec> expr;
};

TrackedBasis tracked_row_basis(const std::vector<SparseVec>& vecs, int ncols);

// Coefficients x with Σ_j x[j] · vecs[j] = target, or nullopt if the target is
// outside the span (vecs are the vectors the tracked basis was built from).
std::optional<SparseVec> solve_in_span(const TrackedBasis& tb, const SparseVec& target);

// Column-major sparse matrix: col[j] holds the image of basis vector j.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<SparseVec> col;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c), col(c) {}

    SparseVec apply(const SparseVec& x) const;
    static SparseMatrix identity(int n);
};

SparseMatrix mat_mul(const SparseMatrix& a, const SparseMatrix& b);

std::vector<SparseVec> kernel_basis(const SparseMatrix& m);
RowBasis image_basis(const SparseMatrix& m);

// Monic minimal polynomial, coefficients from degree 0 upward (last entry 1).
std::vector<Rational> minimal_polynomial(const SparseMatrix& m);

}  // namespace teq
