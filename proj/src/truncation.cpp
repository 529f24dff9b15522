#include "teq/truncation.hpp"

#include "teq/error.hpp"

#include <algorithm>
#include <functional>

namespace teq {

bool ColKey::operator<(const ColKey& o) const {
    int ta = omega_total(mono), tb = omega_total(o.mono);
    if (ta != tb) return ta > tb;  // higher Ω-degree first
    if (mode != o.mode) return mode < o.mode;
    if (sine != o.sine) return !sine;
    return mono < o.mono;
}

namespace {

void enumerate_omega(int dim, int cap, std::vector<std::vector<uint8_t>>& out) {
    std::vector<uint8_t> cur(dim, 0);
    // lexicographic enumeration of exponent vectors with total ≤ cap
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == dim) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[pos] = static_cast<uint8_t>(e);
            rec(pos + 1, left - e);
        }
        cur[pos] = 0;
    };
    rec(0, cap);
}

void enumerate_modes(int nvars, int cap, std::vector<Mode>& out) {
    // all modes with |k_i| ≤ cap; the caller keeps zero and positive reps
    Mode cur(nvars, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == nvars) {
            out.push_back(cur);
            return;
        }
        for (int k = -cap; k <= cap; ++k) {
            cur[pos] = k;
            rec(pos + 1);
        }
        cur[pos] = 0;
    };
    rec(0);
}

}  // namespace

TruncatedSpace::TruncatedSpace(const Context* ctx, int omega_cap, int mode_cap)
    : ctx_(ctx), omega_cap_(omega_cap), mode_cap_(mode_cap) {
    if (ctx->group_params != 0)
        throw Error("TruncatedSpace: group-parametrized contexts cannot be truncated");

    std::vector<std::vector<uint8_t>> omegas;
    enumerate_omega(ctx->lie.dim, omega_cap, omegas);

    std::vector<uint32_t> masks;
    if (ctx->backend.is_torus()) {
        const int n = ctx->torus_n();
        for (uint32_t m = 0; m < (1u << n); ++m) masks.push_back(m);
    } else {
        for (int i = 0; i < ctx->backend.formal().size(); ++i)
            masks.push_back(static_cast<uint32_t>(i));
    }

    std::vector<Mode> modes;
    if (ctx->backend.is_torus()) {
        std::vector<Mode> all;
        enumerate_modes(ctx->nvars(), mode_cap, all);
        for (const auto& k : all)
            if (mode_positive(k) ||
                std::all_of(k.begin(), k.end(), [](int32_t x) { return x == 0; }))
                modes.push_back(k);
    } else {
        modes.push_back(Mode{});
    }

    for (uint32_t m : masks)
        for (const auto& om : omegas)
            for (const auto& k : modes) {
                bool zero_mode = std::all_of(k.begin(), k.end(), [](int32_t x) { return x == 0; });
                MonoKey mono{m, 0u, om};
                keys_.push_back(ColKey{mono, k, false});
                if (!zero_mode) keys_.push_back(ColKey{mono, k, true});
            }
    std::sort(keys_.begin(), keys_.end());
    for (int i = 0; i < static_cast<int>(keys_.size()); ++i) {
        index_.emplace(keys_[i], i);
        parity_.push_back(ctx->backend.manifold_parity(keys_[i].mono.mbasis));
    }
}

int TruncatedSpace::index_of(const ColKey& k) const {
    auto it = index_.find(k);
    return it == index_.end() ? -1 : it->second;
}

SparseVec TruncatedSpace::vectorize(const GradedElement& e) const {
    if (e.ctx() && e.ctx() != ctx_)
        throw Error("vectorize: element belongs to a different context");
    SparseVec out;
    for (const auto& [mono, f] : e.terms()) {
        if (mono.theta != 0)
            throw Error("vectorize: element carries θ factors (not a Cartan-model element)");
        if (omega_total(mono) > omega_cap_)
            throw Error("vectorize: Ω-degree " + std::to_string(omega_total(mono)) +
                        " exceeds the truncation cap " + std::to_string(omega_cap_));
        for (const auto& [k, c] : f.modes()) {
            (void)c;
            if (!mode_positive(k) &&
                !std::all_of(k.begin(), k.end(), [](int32_t x) { return x == 0; }))
                continue;  // conjugate partner of a stored representative
            for (int32_t ki : k)
                if (ki > mode_cap_ || ki < -mode_cap_)
                    throw Error("vectorize: Fourier mode exceeds the mode cap " +
                                std::to_string(mode_cap_));
            auto [a, b] = f.real_pair(k);
            ColKey ck{mono, k, false};
            int i = index_of(ck);
            if (i < 0) throw Error("vectorize: coordinate missing from the truncation");
            if (a != 0) out[i] = a;
            if (b != 0) {
                ck.sine = true;
                int j = index_of(ck);
                if (j < 0) throw Error("vectorize: coordinate missing from the truncation");
                out[j] = b;
            }
        }
    }
    return out;
}

GradedElement TruncatedSpace::devectorize(const SparseVec& v) const {
    GradedElement e(ctx_);
    const int nv = ctx_->nvars();
    for (const auto& [i, c] : v) {
        const ColKey& k = keys_[i];
        bool zero_mode =
            std::all_of(k.mode.begin(), k.mode.end(), [](int32_t x) { return x == 0; });
        TrigPoly f = zero_mode ? TrigPoly::constant(nv, c)
                     : k.sine  ? TrigPoly::sine(nv, k.mode, c)
                               : TrigPoly::cosine(nv, k.mode, c);
        e.add_term(k.mono, f);
    }
    return e;
}

InvariantBasis invariant_basis(const TruncatedSpace& sp, const ExtendedAction& act) {
    const Context* ctx = sp.context();
    const int m = ctx->lie.dim;
    InvariantBasis out;

    auto append_identity = [&](std::vector<SparseVec>& dst, int parity) {
        for (int i = 0; i < sp.dim(); ++i)
            if (sp.parity(i) == parity) dst.push_back(SparseVec{{i, Rational(1)}});
    };
    if (m == 0) {
        append_identity(out.even, 0);
        append_identity(out.odd, 1);
        return out;
    }

    std::vector<Derivation> lie;
    for (int a = 0; a < m; ++a) lie.push_back(total_lie(act, a));

    // Every total Lie derivative preserves the manifold form degree and the
    // total Ω-degree, so the kernel computation splits into small blocks.
    std::map<std::pair<int, int>, std::vector<int>> blocks;
    for (int i = 0; i < sp.dim(); ++i) {
        const ColKey& k = sp.key(i);
        blocks[{ctx->backend.manifold_degree(k.mono.mbasis), omega_total(k.mono)}]
            .push_back(i);
    }

    std::vector<SparseVec> found;
    for (const auto& [bk, idx] : blocks) {
        (void)bk;
        // images can exceed the mode cap (trig-coefficient vector fields), so
        // vectorize them in a mode-enlarged copy of the space
        std::vector<GradedElement> images;
        int needed_cap = sp.mode_cap();
        for (int i : idx)
            for (int a = 0; a < m; ++a) {
                GradedElement li = lie[a](sp.devectorize(SparseVec{{i, Rational(1)}}));
                needed_cap = std::max(needed_cap, li.max_abs_mode());
                images.push_back(std::move(li));
            }
        std::unique_ptr<TruncatedSpace> big;
        const TruncatedSpace* target = &sp;
        if (needed_cap > sp.mode_cap()) {
            big = std::make_unique<TruncatedSpace>(ctx, sp.omega_cap(), needed_cap);
            target = big.get();
        }
        SparseMatrix stacked(m * target->dim(), static_cast<int>(idx.size()));
        for (size_t jj = 0; jj < idx.size(); ++jj)
            for (int a = 0; a < m; ++a) {
                SparseVec w = target->vectorize(images[jj * m + a]);
                for (const auto& [r, val] : w)
                    stacked.col[jj][a * target->dim() + r] = val;
            }
        for (const auto& local : kernel_basis(stacked)) {
            SparseVec global;
            for (const auto& [lj, val] : local) global[idx[lj]] = val;
            found.push_back(std::move(global));
        }
    }
    std::sort(found.begin(), found.end(),
              [](const SparseVec& a, const SparseVec& b) {
                  return a.begin()->first < b.begin()->first;
              });
    for (auto& v : found) {
        int lead = v.begin()->first;
        (sp.parity(lead) == 0 ? out.even : out.odd).push_back(std::move(v));
    }
    return out;
}

ComplexLevel completed_level(const ExtendedAction& act, const GradedOperator& D,
                             int omega_cap, int mode_cap) {
    ComplexLevel lvl;
    lvl.space = std::make_shared<TruncatedSpace>(act.ctx, omega_cap, mode_cap);
    lvl.inv = invariant_basis(*lvl.space, act);

    auto apply_d = [&](const SparseVec& v) {
        GradedElement img = D(lvl.space->devectorize(v)).truncate_omega(omega_cap);
        return lvl.space->vectorize(img);
    };
    for (const auto& v : lvl.inv.even) lvl.d_even.push_back(apply_d(v));
    for (const auto& v : lvl.inv.odd) lvl.d_odd.push_back(apply_d(v));

    // D² = 0 in the truncated quotient (the differential never lowers Ω-degree)
    for (const auto& dv : lvl.d_even)
        if (!vec_is_zero(apply_d(dv)))
            throw Error("completed_level: differential does not square to zero");
    for (const auto& dv : lvl.d_odd)
        if (!vec_is_zero(apply_d(dv)))
            throw Error("completed_level: differential does not square to zero");
    return lvl;
}

}  // namespace teq
