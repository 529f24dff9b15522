#include "teq/operators.hpp"

#include "teq/error.hpp"

#include <memory>

namespace teq {

GradedOperator op_identity(const Context* ctx) {
    (void)ctx;
    return {0, "id", [](const GradedElement& e) { return e; }};
}

GradedOperator op_from(const Derivation& d, const std::string& name) {
    auto p = std::make_shared<Derivation>(d);
    return {d.parity, name, [p](const GradedElement& e) { return p->apply(e); }};
}

GradedOperator op_lmul(const GradedElement& z, const std::string& name) {
    auto deg = z.homogeneous_degree();
    if (!deg) throw Error("op_lmul: multiplier must be homogeneous");
    auto p = std::make_shared<GradedElement>(z);
    return {*deg & 1, name, [p](const GradedElement& e) { return wedge(*p, e); }};
}

GradedOperator op_add(const GradedOperator& a, const GradedOperator& b) {
    if (a.parity != b.parity) throw Error("op_add: parity mismatch");
    auto fa = a.fn, fb = b.fn;
    return {a.parity, "(" + a.name + " + " + b.name + ")",
            [fa, fb](const GradedElement& e) { return fa(e) + fb(e); }};
}

GradedOperator op_sub(const GradedOperator& a, const GradedOperator& b) {
    if (a.parity != b.parity) throw Error("op_sub: parity mismatch");
    auto fa = a.fn, fb = b.fn;
    return {a.parity, "(" + a.name + " - " + b.name + ")",
            [fa, fb](const GradedElement& e) { return fa(e) - fb(e); }};
}

GradedOperator op_scale(const GradedOperator& a, const Rational& c) {
    auto fa = a.fn;
    Rational cc = c;
    return {a.parity, "(" + format_rational(c) + "·" + a.name + ")",
            [fa, cc](const GradedElement& e) { return fa(e).scaled(cc); }};
}

GradedOperator op_compose(const GradedOperator& a, const GradedOperator& b) {
    auto fa = a.fn, fb = b.fn;
    return {(a.parity + b.parity) & 1, a.name + "∘" + b.name,
            [fa, fb](const GradedElement& e) { return fa(fb(e)); }};
}

GradedOperator op_commutator(const GradedOperator& a, const GradedOperator& b) {
    auto fa = a.fn, fb = b.fn;
    const Rational sgn((a.parity & b.parity) ? -1 : 1);
    return {(a.parity + b.parity) & 1, "[" + a.name + ", " + b.name + "]",
            [fa, fb, sgn](const GradedElement& e) { return fa(fb(e)) - fb(fa(e)).scaled(sgn); }};
}

}  // namespace teq
