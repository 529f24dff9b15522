#include "teq/averaging.hpp"

#include "teq/error.hpp"

namespace teq {

namespace {

void check_setup(const GroupAction& g, const GradedElement& e) {
    const Context* ctx = e.ctx();
    if (!ctx || !ctx->backend.is_torus())
        throw Error("group averaging requires a torus backend");
    if (ctx->group_params != g.l)
        throw Error("group averaging: context carries " +
                    std::to_string(ctx->group_params) + " group parameters, action has " +
                    std::to_string(g.l));
    const int n = ctx->torus_n();
    if (static_cast<int>(g.A.size()) != n)
        throw Error("group averaging: weight matrix must have one row per manifold "
                    "coordinate");
    for (const auto& row : g.A)
        if (static_cast<int>(row.size()) != g.l)
            throw Error("group averaging: weight matrix must have one column per group "
                        "parameter");
}

}  // namespace

GradedElement pullback_lambda(const GroupAction& g, const GradedElement& e, int s) {
    check_setup(g, e);
    const Context* ctx = e.ctx();
    const int l = g.l;
    const int n = ctx->torus_n();
    const int total = l + n;

    // (h, θ) ↦ P (h, θ) with P = [[I, 0], [sA, I]].
    std::vector<std::vector<int>> P(total, std::vector<int>(total, 0));
    for (int i = 0; i < l; ++i) P[i][i] = 1;
    for (int i = 0; i < n; ++i) {
        P[l + i][l + i] = 1;
        for (int j = 0; j < l; ++j) P[l + i][j] = s * g.A[i][j];
    }

    GradedElement out(ctx);
    for (const auto& [key, c] : e.terms())
        out.add_term(key, c.pullback_linear(P, total));
    return out;
}

GradedElement group_average(const GroupAction& g, const GradedElement& e) {
    check_setup(g, e);
    GradedElement out(e.ctx());
    for (const auto& [key, c] : e.terms()) {
        TrigPoly avg = c;
        for (int j = 0; j < g.l; ++j) avg = avg.average_coordinate(j);
        if (!avg.is_zero()) out.add_term(key, avg);
    }
    return out;
}

GradedElement invariant_splitting(const GroupAction& g, const GradedElement& alpha) {
    check_setup(g, alpha);
    GradedElement B = -group_average(g, pullback_lambda(g, alpha, -1));
    GradedElement residual = alpha + pullback_lambda(g, B, +1) - B;
    if (!residual.is_zero())
        throw Error("invariant_splitting: family does not split as B - lambda*B; "
                    "residual = " + residual.str());
    return B;
}

}  // namespace teq
