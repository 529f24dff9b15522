#pragma once

// Graded linear operators on the ambient algebra, assembled from derivations
// and left-multiplications.  Identities between operators are always verified
// pointwise on exact probe elements, so a closed functional representation
// with a tracked parity suffices.

#include "teq/derivation.hpp"

#include <functional>
#include <string>

namespace teq {

struct GradedOperator {
    int parity = 0;
    std::string name;
    std::function<GradedElement(const GradedElement&)> fn;

    GradedElement operator()(const GradedElement& e) const { return fn(e); }
};

GradedOperator op_identity(const Context* ctx);
GradedOperator op_from(const Derivation& d, const std::string& name);
// Left multiplication by a homogeneous element.
GradedOperator op_lmul(const GradedElement& z, const std::string& name);
GradedOperator op_add(const GradedOperator& a, const GradedOperator& b);
GradedOperator op_sub(const GradedOperator& a, const GradedOperator& b);
GradedOperator op_scale(const GradedOperator& a, const Rational& c);
GradedOperator op_compose(const GradedOperator& a, const GradedOperator& b);  // a ∘ b
// Graded commutator [a, b] = a b - (-1)^{|a||b|} b a.
GradedOperator op_commutator(const GradedOperator& a, const GradedOperator& b);

}  // namespace teq
