#include "teq/cohomology.hpp"

#include "teq/error.hpp"

#include <algorithm>

namespace teq {

namespace {

// Cocycles within the span of `basis`: kernel of the coefficient matrix of the
// differential images, mapped back to ambient coordinates.
std::vector<SparseVec> cocycles(const std::vector<SparseVec>& basis,
                                const std::vector<SparseVec>& d_images, int target_dim) {
    SparseMatrix dm(target_dim, static_cast<int>(basis.size()));
    dm.col = d_images;
    std::vector<SparseVec> out;
    for (const auto& c : kernel_basis(dm)) {
        SparseVec z;
        for (const auto& [j, v] : c) vec_axpy(z, v, basis[j]);
        out.push_back(std::move(z));
    }
    return out;
}

RowBasis quotient_reps(const std::vector<SparseVec>& zs, const RowBasis& im, int dim) {
    std::vector<SparseVec> reduced;
    for (const auto& z : zs) reduced.push_back(im.reduce(z));
    return row_basis(reduced, dim);
}

}  // namespace

LevelCohomology level_cohomology(const ComplexLevel& lvl) {
    const int dim = lvl.space->dim();
    LevelCohomology h;
    h.im_even = row_basis(lvl.d_odd, dim);
    h.im_odd = row_basis(lvl.d_even, dim);
    h.h_even = quotient_reps(cocycles(lvl.inv.even, lvl.d_even, dim), h.im_even, dim);
    h.h_odd = quotient_reps(cocycles(lvl.inv.odd, lvl.d_odd, dim), h.im_odd, dim);
    h.rank_even = h.h_even.rank();
    h.rank_odd = h.h_odd.rank();
    for (const auto& r : h.h_even.rows) h.gens_even.push_back(lvl.space->devectorize(r));
    for (const auto& r : h.h_odd.rows) h.gens_odd.push_back(lvl.space->devectorize(r));
    return h;
}

SparseVec class_coords(const RowBasis& im, const RowBasis& basis, const SparseVec& cocycle) {
    SparseVec r = im.reduce(cocycle);
    SparseVec coords;
    for (size_t i = 0; i < basis.rows.size(); ++i) {
        auto it = r.find(basis.pivots[i]);
        if (it == r.end()) continue;
        Rational c = it->second;
        coords[static_cast<int>(i)] = c;
        vec_axpy(r, -c, basis.rows[i]);
    }
    if (!vec_is_zero(r))
        throw Error("class_coords: vector is not a cocycle of this level");
    return coords;
}

namespace {

// Restriction maps between consecutive tower levels, induced by an
// element-level chain map from level i+1 to level i.
void build_restrictions(Tower& t,
                        const std::vector<std::function<GradedElement(const GradedElement&)>>& step) {
    for (size_t i = 0; i + 1 < t.levels.size(); ++i) {
        const LevelCohomology& src = t.cohom[i + 1];
        const LevelCohomology& dst = t.cohom[i];
        const TruncatedSpace& sp = *t.levels[i].space;
        SparseMatrix re(dst.rank_even, src.rank_even);
        SparseMatrix ro(dst.rank_odd, src.rank_odd);
        for (int j = 0; j < src.rank_even; ++j)
            re.col[j] = class_coords(dst.im_even, dst.h_even,
                                     sp.vectorize(step[i](src.gens_even[j])));
        for (int j = 0; j < src.rank_odd; ++j)
            ro.col[j] = class_coords(dst.im_odd, dst.h_odd,
                                     sp.vectorize(step[i](src.gens_odd[j])));
        t.res_even.push_back(std::move(re));
        t.res_odd.push_back(std::move(ro));
    }
}

}  // namespace

Tower omega_tower(const ExtendedAction& act, int max_level, int mode_cap) {
    ValidationReport rep = validate_extended_action(act);
    if (!rep.ok()) throw Error("omega_tower: invalid extended action: " + rep.summary());
    GradedOperator D = twisted_cartan_differential(act);

    Tower t;
    for (int n = 0; n <= max_level; ++n)
        t.levels.push_back(completed_level(act, D, n, mode_cap));
    for (const auto& lvl : t.levels) t.cohom.push_back(level_cohomology(lvl));

    std::vector<std::function<GradedElement(const GradedElement&)>> step;
    for (int n = 0; n < max_level; ++n)
        step.push_back([n](const GradedElement& e) { return e.truncate_omega(n); });
    build_restrictions(t, step);
    return t;
}

Tower generic_tower(std::vector<ComplexLevel> levels,
                    const std::vector<std::function<GradedElement(const GradedElement&)>>& step) {
    Tower t;
    t.levels = std::move(levels);
    for (const auto& lvl : t.levels) t.cohom.push_back(level_cohomology(lvl));
    build_restrictions(t, step);
    return t;
}

namespace {

// Rank of im(H(M) → H(i)) for M = i..L-1 is a decreasing integer sequence;
// it is considered settled when it is constant over its last two entries,
// and the settled value is the stable image rank at level i.
std::vector<int> scan_parity(const Tower& t, const std::vector<SparseMatrix>& res,
                             bool even) {
    const int L = static_cast<int>(t.levels.size());
    std::vector<int> stable;
    for (int i = 0; i < L; ++i) {
        int self = even ? t.cohom[i].rank_even : t.cohom[i].rank_odd;
        std::vector<int> ranks{self};
        SparseMatrix comp;
        for (int m = i + 1; m < L; ++m) {
            comp = (m == i + 1) ? res[i] : mat_mul(comp, res[m - 1]);
            ranks.push_back(image_basis(comp).rank());
        }
        bool settled =
            ranks.size() >= 2 && ranks[ranks.size() - 1] == ranks[ranks.size() - 2];
        stable.push_back(settled ? ranks.back() : -1);
    }
    return stable;
}

}  // namespace

LimitProfile inverse_limit(const Tower& t) {
    LimitProfile p;
    const int L = static_cast<int>(t.levels.size());
    for (int i = 0; i < L; ++i)
        p.level_ranks.emplace_back(t.cohom[i].rank_even, t.cohom[i].rank_odd);
    if (L < 4) {
        p.note = "not enough levels to certify stabilization";
        return p;
    }

    std::vector<int> se = scan_parity(t, t.res_even, true);
    std::vector<int> so = scan_parity(t, t.res_odd, false);

    // levels deep in the tower cannot settle (not enough deeper data); require
    // a window of at least three settled shallow levels
    int certified_upto = -1;
    for (int i = 0; i < L; ++i) {
        if (se[i] < 0 || so[i] < 0) break;
        certified_upto = i;
    }
    for (int i = 0; i <= certified_upto; ++i)
        p.stable_ranks.emplace_back(se[i], so[i]);
    if (certified_upto < 2) {
        p.note = "stable image ranks did not settle within the computed window";
        return p;
    }
    p.certified = true;

    bool constant = true;
    for (int i = 1; i <= certified_upto; ++i)
        if (p.stable_ranks[i] != p.stable_ranks[i - 1]) constant = false;

    if (!constant) {
        p.finitely_generated = false;
        std::string seq;
        for (const auto& [e, o] : p.stable_ranks)
            seq += "(" + std::to_string(e) + "," + std::to_string(o) + ") ";
        p.note = "stable image ranks grow along the tower: " + seq +
                 "- the limit is not finitely generated over the computed window";
        return p;
    }

    p.finitely_generated = true;
    p.rank_even = p.stable_ranks.back().first;
    p.rank_odd = p.stable_ranks.back().second;

    // present generators at the deepest certified level: image of the deepest
    // computed level in it
    const int lvl = certified_upto;
    SparseMatrix ce, co;
    for (int m = lvl + 1; m < L; ++m) {
        ce = (m == lvl + 1) ? t.res_even[lvl] : mat_mul(ce, t.res_even[m - 1]);
        co = (m == lvl + 1) ? t.res_odd[lvl] : mat_mul(co, t.res_odd[m - 1]);
    }
    p.gens_level = lvl;
    auto emit = [&](const SparseMatrix& c, const std::vector<GradedElement>& gens,
                    std::vector<GradedElement>& out) {
        RowBasis ib = image_basis(c);
        for (const auto& r : ib.rows) {
            GradedElement g(t.levels[lvl].space->context());
            for (const auto& [j, v] : r) g += gens[j].scaled(v);
            out.push_back(g);
        }
    };
    emit(ce, t.cohom[lvl].gens_even, p.gens_even);
    emit(co, t.cohom[lvl].gens_odd, p.gens_odd);
    return p;
}

// ---------------------------------------------------------------------------

UncompletedReport uncompleted_tower(const ExtendedAction& act, int max_stage, int mode_cap) {
    ValidationReport rep = validate_extended_action(act);
    if (!rep.ok())
        throw Error("uncompleted_tower: invalid extended action: " + rep.summary());
    GradedOperator D = twisted_cartan_differential(act);
    const Context* ctx = act.ctx;

    // spaces V_0 ⊂ ... ⊂ V_{max_stage+1}; the differential raises the
    // Ω-degree by at most one and is applied without quotienting
    std::vector<std::shared_ptr<TruncatedSpace>> spaces;
    std::vector<InvariantBasis> inv;
    for (int n = 0; n <= max_stage + 1; ++n) {
        spaces.push_back(std::make_shared<TruncatedSpace>(ctx, n, mode_cap));
        inv.push_back(invariant_basis(*spaces[n], act));
    }
    auto d_images = [&](int n, const std::vector<SparseVec>& basis) {
        std::vector<SparseVec> out;
        for (const auto& v : basis)
            out.push_back(spaces[n + 1]->vectorize(D(spaces[n]->devectorize(v))));
        return out;
    };

    UncompletedReport r;
    for (int n = 0; n <= max_stage; ++n) {
        StageCohomology st;
        st.space = spaces[n];
        st.inv = inv[n];
        const int dim = spaces[n]->dim();
        std::vector<SparseVec> de = d_images(n, inv[n].even);
        std::vector<SparseVec> dodd = d_images(n, inv[n].odd);
        // boundaries: D(V_{n-1}) re-expressed in V_n coordinates
        std::vector<SparseVec> be, bo;
        if (n > 0) {
            for (const auto& v : inv[n - 1].odd)
                be.push_back(spaces[n]->vectorize(D(spaces[n - 1]->devectorize(v))));
            for (const auto& v : inv[n - 1].even)
                bo.push_back(spaces[n]->vectorize(D(spaces[n - 1]->devectorize(v))));
        }
        st.im_even = row_basis(be, dim);
        st.im_odd = row_basis(bo, dim);
        st.h_even = quotient_reps(cocycles(inv[n].even, de, spaces[n + 1]->dim()),
                                  st.im_even, dim);
        st.h_odd = quotient_reps(cocycles(inv[n].odd, dodd, spaces[n + 1]->dim()),
                                 st.im_odd, dim);
        st.rank_even = st.h_even.rank();
        st.rank_odd = st.h_odd.rank();
        for (const auto& row : st.h_even.rows)
            st.gens_even.push_back(spaces[n]->devectorize(row));
        for (const auto& row : st.h_odd.rows)
            st.gens_odd.push_back(spaces[n]->devectorize(row));
        r.stages.push_back(std::move(st));
    }

    // inclusion-induced stage maps H(n) → H(n+1); stabilization = isos
    auto stage_map = [&](int n, bool even) {
        const StageCohomology& src = r.stages[n];
        const StageCohomology& dst = r.stages[n + 1];
        const auto& gens = even ? src.gens_even : src.gens_odd;
        SparseMatrix m(even ? dst.rank_even : dst.rank_odd, static_cast<int>(gens.size()));
        for (size_t j = 0; j < gens.size(); ++j)
            m.col[j] = class_coords(even ? dst.im_even : dst.im_odd,
                                    even ? dst.h_even : dst.h_odd,
                                    spaces[n + 1]->vectorize(gens[j]));
        return m;
    };
    r.stable_from = -1;
    for (int n = 0; n + 1 <= max_stage; ++n) {
        bool iso = r.stages[n].rank_even == r.stages[n + 1].rank_even &&
                   r.stages[n].rank_odd == r.stages[n + 1].rank_odd &&
                   image_basis(stage_map(n, true)).rank() == r.stages[n].rank_even &&
                   image_basis(stage_map(n, false)).rank() == r.stages[n].rank_odd;
        if (iso && r.stable_from < 0) r.stable_from = n;
        if (!iso) r.stable_from = -1;
    }
    r.stabilized = r.stable_from >= 0 && r.stable_from + 1 <= max_stage;
    if (!r.stabilized || ctx->lie.dim != 1) return r;

    // Ω-module structure at the first stabilized stage, transported back
    // through the stage isomorphism
    const int s = r.stable_from;
    GradedElement om = GradedElement::omega(ctx, 0);
    auto omega_matrix = [&](bool even) {
        const StageCohomology& src = r.stages[s];
        const StageCohomology& dst = r.stages[s + 1];
        const auto& gens = even ? src.gens_even : src.gens_odd;
        const int rank = static_cast<int>(gens.size());
        SparseMatrix sigma = stage_map(s, even);
        TrackedBasis tb = tracked_row_basis(sigma.col, sigma.rows);
        SparseMatrix m(rank, rank);
        for (int j = 0; j < rank; ++j) {
            SparseVec c = class_coords(even ? dst.im_even : dst.im_odd,
                                       even ? dst.h_even : dst.h_odd,
                                       spaces[s + 1]->vectorize(wedge(om, gens[j])));
            auto x = solve_in_span(tb, c);
            if (!x) throw Error("uncompleted_tower: stage isomorphism failed to transport");
            m.col[j] = *x;
        }
        return m;
    };
    r.omega_even = omega_matrix(true);
    r.omega_odd = omega_matrix(false);

    // minimal polynomials per Fourier-mode block
    auto blocks = [&](const SparseMatrix& m, const std::vector<GradedElement>& gens,
                      std::vector<std::pair<int, std::vector<Rational>>>& out) {
        std::map<int, std::vector<int>> group;
        for (size_t i = 0; i < gens.size(); ++i)
            group[gens[i].max_abs_mode()].push_back(static_cast<int>(i));
        // verify the action preserves the blocks; otherwise report one block
        for (const auto& [mode, idx] : group) {
            (void)mode;
            for (int j : idx)
                for (const auto& [i, v] : m.col[j]) {
                    (void)v;
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) {
                        out.clear();
                        out.emplace_back(-1, minimal_polynomial(m));
                        return;
                    }
                }
        }
        for (const auto& [mode, idx] : group) {
            SparseMatrix sub(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
            std::map<int, int> pos;
            for (size_t a = 0; a < idx.size(); ++a) pos[idx[a]] = static_cast<int>(a);
            for (size_t a = 0; a < idx.size(); ++a)
                for (const auto& [i, v] : m.col[idx[a]]) sub.col[a][pos[i]] = v;
            out.emplace_back(mode, minimal_polynomial(sub));
        }
    };
    blocks(r.omega_even, r.stages[s].gens_even, r.minpoly_even);
    blocks(r.omega_odd, r.stages[s].gens_odd, r.minpoly_odd);
    return r;
}

// ---------------------------------------------------------------------------

namespace {

// Copy a manifold-only element (no θ, no Ω) into a sibling context.
GradedElement recontext(const Context* to, const GradedElement& e) {
    GradedElement out(to);
    for (const auto& [mono, f] : e.terms()) {
        if (mono.theta != 0 || omega_total(mono) != 0)
            throw Error("recontext: element is not a pure manifold form");
        MonoKey k{mono.mbasis, 0u, std::vector<uint8_t>(to->lie.dim, 0)};
        out.add_term(k, f);
    }
    return out;
}

}  // namespace

ProfileComparison completed_vs_tensored(const ExtendedAction& act, int max_level,
                                        int mode_cap) {
    ProfileComparison pc;

    Tower full = omega_tower(act, max_level, mode_cap);
    for (const auto& h : full.cohom) pc.completed_ranks.emplace_back(h.rank_even, h.rank_odd);

    // point side: same symmetry, trivial manifold, zero twist
    Context pctx;
    pctx.lie = act.ctx->lie;
    pctx.backend = Backend(point_backend(act.ctx->lie.dim));
    ExtendedAction pact;
    pact.ctx = &pctx;
    pact.xi.assign(pctx.lie.dim, GradedElement::zero(&pctx));
    pact.H = GradedElement::zero(&pctx);
    Tower pt = omega_tower(pact, max_level, 0);

    // manifold side: no symmetry, the bare twisted de Rham complex
    Context mctx;
    mctx.lie = LieAlgebra::abelian(0);
    mctx.backend = act.ctx->backend;
    ExtendedAction mact;
    mact.ctx = &mctx;
    mact.H = recontext(&mctx, act.H);
    GradedOperator dh = twisted_cartan_differential(mact);
    LevelCohomology mh = level_cohomology(completed_level(mact, dh, 0, mode_cap));
    pc.manifold_ranks = {mh.rank_even, mh.rank_odd};

    for (int n = 0; n <= max_level; ++n) {
        int pe = pt.cohom[n].rank_even, po = pt.cohom[n].rank_odd;
        pc.tensored_ranks.emplace_back(pe * mh.rank_even + po * mh.rank_odd,
                                       pe * mh.rank_odd + po * mh.rank_even);
    }
    pc.point_rank_growth = {pt.cohom.back().rank_even, pt.cohom.back().rank_odd};
    pc.equal = pc.completed_ranks == pc.tensored_ranks;
    return pc;
}

}  // namespace teq
