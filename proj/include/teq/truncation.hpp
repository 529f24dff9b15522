#pragma once

// Vectorization of truncated Cartan-model complexes.  A truncation caps the
// total Ω-degree (and, on torus backends, the Fourier modes); the resulting
// finite-dimensional Q-vector space carries the invariant subspace and the
// differential as exact sparse data.

#include "teq/linalg.hpp"
#include "teq/models.hpp"

#include <memory>

namespace teq {

// One coordinate of the vectorized complex: a θ-free monomial key plus a
// Fourier mode (positive representative, empty for formal backends) and the
// cos/sin selector.  Ordered with higher Ω-degree first so that image pivots
// of the differential land at high Ω-degree and canonical quotient
// representatives live at low Ω-degree.
struct ColKey {
    MonoKey mono;
    Mode mode;
    bool sine = false;

    bool operator==(const ColKey&) const = default;
    bool operator<(const ColKey& o) const;
};

class TruncatedSpace {
  public:
    TruncatedSpace(const Context* ctx, int omega_cap, int mode_cap);

    const Context* context() const { return ctx_; }
    int omega_cap() const { return omega_cap_; }
    int mode_cap() const { return mode_cap_; }
    int dim() const { return static_cast<int>(keys_.size()); }
    const ColKey& key(int i) const { return keys_[i]; }
    int parity(int i) const { return parity_[i]; }
    int index_of(const ColKey& k) const;  // -1 if outside the truncation

    // Throws when the element carries θ factors, exceeds the mode cap, or
    // exceeds the Ω cap (truncate first for quotient semantics).
    SparseVec vectorize(const GradedElement& e) const;
    GradedElement devectorize(const SparseVec& v) const;

  private:
    const Context* ctx_;
    int omega_cap_;
    int mode_cap_;
    std::vector<ColKey> keys_;
    std::map<ColKey, int> index_;
    std::vector<int> parity_;
};

// Basis of the G-invariant subspace (kernel of every total Lie derivative),
// split by parity.  Rows are reduced and ordered by leading coordinate.
struct InvariantBasis {
    std::vector<SparseVec> even, odd;
};

InvariantBasis invariant_basis(const TruncatedSpace& sp, const ExtendedAction& act);

// One Ω-truncation level of a twisted equivariant complex: the invariant
// subspace of the truncated space together with the differential of each
// invariant basis vector (Ω-degrees above the cap are quotiented away).
// Construction asserts D² = 0 on the truncated invariant complex.
struct ComplexLevel {
    std::shared_ptr<TruncatedSpace> space;
    InvariantBasis inv;
    std::vector<SparseVec> d_even;  // D(inv.even[i]) — odd-parity vectors
    std::vector<SparseVec> d_odd;   // D(inv.odd[i])  — even-parity vectors
};

ComplexLevel completed_level(const ExtendedAction& act, const GradedOperator& D,
                             int omega_cap, int mode_cap);

}  // namespace teq
