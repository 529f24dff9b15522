#pragma once

// Group averaging for torus actions.  A compact torus G = T^l acts on the
// manifold torus T^n by translations θ_i ↦ θ_i + Σ_j A[i][j] h_j; forms that
// depend on the group element are modelled on T^{l+n} with the l group
// parameters as the leading trig variables (Context::group_params = l).

#include "teq/element.hpp"

namespace teq {

struct GroupAction {
    int l = 0;                        // rank of the acting torus
    std::vector<std::vector<int>> A;  // n rows, l columns
};

// (λ^s_h)* e: pull back each coefficient along (h, θ) ↦ (h, θ + s·A·h).  The
// dθ masks are untouched: each λ_h is a translation of the manifold torus, the
// group parameter is held fixed.  s = +1 gives λ*, s = -1 gives (λ^{-1})*.
GradedElement pullback_lambda(const GroupAction& g, const GradedElement& e, int s);

// Constant Fourier mode in every group parameter (the exact Haar average).
GradedElement group_average(const GroupAction& g, const GradedElement& e);

// Solves α_h = B − λ_h* B exactly: B = −avg_h (λ_h^{-1})* α_h.  Throws if the
// family α does not split this way (the thrown message carries the residual
// α + λ*B − B).
GradedElement invariant_splitting(const GroupAction& g, const GradedElement& alpha);

}  // namespace teq
