#pragma once

// Z₂-graded cohomology of truncated twisted equivariant complexes, towers of
// truncation levels with restriction maps, inverse limits, and the
// uncompleted (polynomial-Ω) variant.

#include "teq/truncation.hpp"

#include <functional>

namespace teq {

struct LevelCohomology {
    int rank_even = 0;
    int rank_odd = 0;
    RowBasis im_even, im_odd;  // boundaries of each parity
    RowBasis h_even, h_odd;    // canonical cocycle representatives (rows)
    std::vector<GradedElement> gens_even, gens_odd;
};

LevelCohomology level_cohomology(const ComplexLevel& lvl);

// Express a cocycle's class in a canonical basis: reduce by the boundary
// basis, then read coefficients off the representative rows.  Throws if the
// vector is not in the span of boundaries and representatives.
SparseVec class_coords(const RowBasis& im, const RowBasis& basis, const SparseVec& cocycle);

struct Tower {
    std::vector<ComplexLevel> levels;        // levels[0] = coarsest truncation
    std::vector<LevelCohomology> cohom;
    std::vector<SparseMatrix> res_even;      // res[i]: H(level i+1) → H(level i)
    std::vector<SparseMatrix> res_odd;
    std::vector<std::shared_ptr<Context>> ctx_pool;  // owners for per-level contexts
};

// Ω-cap tower of the twisted equivariant complex: levels N = 0..max_level,
// restriction = Ω-truncation.  Validates the action and the twisting data.
Tower omega_tower(const ExtendedAction& act, int max_level, int mode_cap);

// Generic tower from prebuilt levels; step[i] maps elements of level i+1 to
// elements of level i.
Tower generic_tower(std::vector<ComplexLevel> levels,
                    const std::vector<std::function<GradedElement(const GradedElement&)>>& step);

struct LimitProfile {
    bool certified = false;           // stabilization was observed
    bool finitely_generated = false;  // certified and per-level stable ranks constant
    int rank_even = 0, rank_odd = 0;  // only meaningful when finitely generated
    std::vector<std::pair<int, int>> level_ranks;   // (even, odd) per level
    std::vector<std::pair<int, int>> stable_ranks;  // stable image ranks per level
    std::vector<GradedElement> gens_even, gens_odd;
    int gens_level = -1;  // index of the level the generators live in
    std::string note;
};

LimitProfile inverse_limit(const Tower& t);

// ---------------------------------------------------------------------------
// Uncompleted variant: Ω-polynomial coefficients, differential mapping the
// Ω-filtration step V_N into V_{N+1}, stage cohomology ker(D|V_N)/D(V_{N-1}).

struct StageCohomology {
    int rank_even = 0;
    int rank_odd = 0;
    RowBasis im_even, im_odd;
    RowBasis h_even, h_odd;
    std::vector<GradedElement> gens_even, gens_odd;
    std::shared_ptr<TruncatedSpace> space;
    InvariantBasis inv;
};

struct UncompletedReport {
    std::vector<StageCohomology> stages;  // N = 0..max_stage
    bool stabilized = false;              // inclusion-induced maps become isos
    int stable_from = -1;
    // Ω-module structure on the stabilized cohomology, transported through the
    // stage isomorphism, and its minimal polynomial per Fourier-mode block.
    SparseMatrix omega_even, omega_odd;
    std::vector<std::pair<int, std::vector<Rational>>> minpoly_even, minpoly_odd;
};

UncompletedReport uncompleted_tower(const ExtendedAction& act, int max_stage, int mode_cap);

// ---------------------------------------------------------------------------
// Comparison of the completed tower against the graded tensor product of the
// point tower with the manifold cohomology (per-level ranks).

struct ProfileComparison {
    std::vector<std::pair<int, int>> completed_ranks;  // per level
    std::vector<std::pair<int, int>> tensored_ranks;
    std::pair<int, int> point_rank_growth;  // point-tower ranks at the last level
    std::pair<int, int> manifold_ranks;     // H(M; d_H) ranks
    bool equal = false;
};

ProfileComparison completed_vs_tensored(const ExtendedAction& act, int max_level,
                                        int mode_cap);

}  // namespace teq
