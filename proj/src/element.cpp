#include "teq/element.hpp"

#include "teq/error.hpp"

#include <bit>

namespace teq {

int omega_total(const MonoKey& k) {
    int t = 0;
    for (uint8_t e : k.omega) t += e;
    return t;
}

int bitmask_merge_sign(uint32_t a, uint32_t b) {
    int inv = 0;
    for (uint32_t bitB = b; bitB; bitB &= bitB - 1) {
        const int j = std::countr_zero(bitB);
        inv += std::popcount(a >> (j + 1));
    }
    return (inv & 1) ? -1 : 1;
}

GradedElement GradedElement::one(const Context* ctx) {
    return from_function(ctx, TrigPoly::constant(ctx->nvars(), Rational(1)));
}

GradedElement GradedElement::from_function(const Context* ctx, const TrigPoly& f) {
    MonoKey k;
    k.mbasis = ctx->backend.is_torus() ? 0u : static_cast<uint32_t>(ctx->backend.formal().unit);
    k.omega.assign(ctx->lie.dim, 0);
    return monomial(ctx, k, f);
}

GradedElement GradedElement::monomial(const Context* ctx, const MonoKey& k, const TrigPoly& c) {
    GradedElement e(ctx);
    e.add_term(k, c);
    return e;
}

GradedElement GradedElement::monomial(const Context* ctx, const MonoKey& k, const Rational& c) {
    return monomial(ctx, k, TrigPoly::constant(ctx->nvars(), c));
}

GradedElement GradedElement::dtheta(const Context* ctx, int i) {
    if (!ctx->backend.is_torus()) throw Error("dtheta: torus backend required");
    if (i < 0 || i >= ctx->backend.torus().n) throw Error("dtheta: coordinate out of range");
    MonoKey k;
    k.mbasis = 1u << i;
    k.omega.assign(ctx->lie.dim, 0);
    return monomial(ctx, k, Rational(1));
}

GradedElement GradedElement::formal_basis(const Context* ctx, int idx) {
    if (ctx->backend.is_torus()) throw Error("formal_basis: formal backend required");
    if (idx < 0 || idx >= ctx->backend.formal().size())
        throw Error("formal_basis: index out of range");
    MonoKey k;
    k.mbasis = static_cast<uint32_t>(idx);
    k.omega.assign(ctx->lie.dim, 0);
    return monomial(ctx, k, Rational(1));
}

GradedElement GradedElement::theta(const Context* ctx, int a) {
    if (a < 0 || a >= ctx->lie.dim) throw Error("theta: generator out of range");
    MonoKey k;
    k.mbasis = ctx->backend.is_torus() ? 0u : static_cast<uint32_t>(ctx->backend.formal().unit);
    k.theta = 1u << a;
    k.omega.assign(ctx->lie.dim, 0);
    return monomial(ctx, k, Rational(1));
}

GradedElement GradedElement::omega(const Context* ctx, int a) {
    if (a < 0 || a >= ctx->lie.dim) throw Error("omega: generator out of range");
    MonoKey k;
    k.mbasis = ctx->backend.is_torus() ? 0u : static_cast<uint32_t>(ctx->backend.formal().unit);
    k.omega.assign(ctx->lie.dim, 0);
    k.omega[a] = 1;
    return monomial(ctx, k, Rational(1));
}

int GradedElement::degree_of(const MonoKey& k) const {
    return ctx_->backend.manifold_degree(k.mbasis) + std::popcount(k.theta) +
           2 * omega_total(k);
}

std::optional<int> GradedElement::homogeneous_degree() const {
    if (terms_.empty()) return 0;
    int deg = degree_of(terms_.begin()->first);
    for (const auto& [k, c] : terms_)
        if (degree_of(k) != deg) return std::nullopt;
    return deg;
}

std::pair<GradedElement, GradedElement> GradedElement::parity_split() const {
    GradedElement even(ctx_), odd(ctx_);
    for (const auto& [k, c] : terms_)
        ((degree_of(k) & 1) ? odd : even).terms_.emplace(k, c);
    return {even, odd};
}

int GradedElement::max_omega_total() const {
    int t = 0;
    for (const auto& [k, c] : terms_) t = std::max(t, omega_total(k));
    return t;
}

int GradedElement::max_abs_mode() const {
    int t = 0;
    for (const auto& [k, c] : terms_) t = std::max(t, c.max_abs_mode());
    return t;
}

bool GradedElement::has_theta() const {
    for (const auto& [k, c] : terms_)
        if (k.theta) return true;
    return false;
}

GradedElement GradedElement::truncate_omega(int cap) const {
    GradedElement r(ctx_);
    for (const auto& [k, c] : terms_)
        if (omega_total(k) <= cap) r.terms_.emplace(k, c);
    return r;
}

void GradedElement::add_term(const MonoKey& k, const TrigPoly& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GradedElement GradedElement::operator-() const {
    GradedElement r(ctx_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

GradedElement& GradedElement::operator+=(const GradedElement& o) {
    if (ctx_ == nullptr) ctx_ = o.ctx_;
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& o) {
    if (ctx_ == nullptr) ctx_ = o.ctx_;
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

GradedElement GradedElement::scaled(const Rational& c) const {
    GradedElement r(ctx_);
    if (c == 0) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v.scaled(c));
    return r;
}

GradedElement GradedElement::mul_fn(const TrigPoly& f) const {
    GradedElement r(ctx_);
    for (const auto& [k, v] : terms_) r.add_term(k, v * f);
    return r;
}

GradedElement wedge(const GradedElement& a, const GradedElement& b) {
    const Context* ctx = a.ctx_ ? a.ctx_ : b.ctx_;
    GradedElement r(ctx);
    if (a.is_zero() || b.is_zero()) return r;
    const bool torus = ctx->backend.is_torus();
    const FormalBackend* F = torus ? nullptr : &ctx->backend.formal();
    for (const auto& [k1, c1] : a.terms_)
        for (const auto& [k2, c2] : b.terms_) {
            // Move the θ block of the first factor past the manifold block of
            // the second: (-1)^{|θ1|·|m2|}.
            int sign = 1;
            if ((std::popcount(k1.theta) & 1) && (ctx->backend.manifold_parity(k2.mbasis) & 1))
                sign = -sign;
            if (k1.theta & k2.theta) continue;  // θ^a ∧ θ^a = 0
            sign *= bitmask_merge_sign(k1.theta, k2.theta);

            MonoKey k;
            k.theta = k1.theta | k2.theta;
            k.omega.resize(k1.omega.size());
            bool overflow = false;
            for (std::size_t i = 0; i < k.omega.size(); ++i) {
                const int s = k1.omega[i] + k2.omega[i];
                if (s > 255) overflow = true;
                k.omega[i] = static_cast<uint8_t>(s);
            }
            if (overflow) throw Error("wedge: omega exponent overflow");

            const TrigPoly coeff = c1 * c2;
            if (torus) {
                if (k1.mbasis & k2.mbasis) continue;  // dθ_i ∧ dθ_i = 0
                const int msign = bitmask_merge_sign(k1.mbasis, k2.mbasis);
                k.mbasis = k1.mbasis | k2.mbasis;
                r.add_term(k, coeff.scaled(Rational(sign * msign)));
            } else {
                for (const auto& [idx, c] : F->product[k1.mbasis][k2.mbasis]) {
                    MonoKey kk = k;
                    kk.mbasis = static_cast<uint32_t>(idx);
                    r.add_term(kk, coeff.scaled(Rational(sign) * c));
                }
            }
        }
    return r;
}

std::string GradedElement::str() const {
    if (terms_.empty()) return "0";
    const bool torus = ctx_->backend.is_torus();
    std::string out;
    for (const auto& [k, c] : terms_) {
        std::string body;
        auto sep = [&body] {
            if (!body.empty()) body += "^";
        };
        if (torus) {
            for (int i = 0; i < ctx_->backend.torus().n; ++i)
                if (k.mbasis & (1u << i)) {
                    sep();
                    body += "d" + ctx_->coord_name(ctx_->coord_var(i));
                }
        } else if (k.mbasis != static_cast<uint32_t>(ctx_->backend.formal().unit)) {
            sep();
            body += ctx_->backend.formal().names[k.mbasis];
        }
        for (int a = 0; a < ctx_->lie.dim; ++a)
            if (k.theta & (1u << a)) {
                sep();
                body += "th" + std::to_string(a + 1);
            }
        for (int a = 0; a < ctx_->lie.dim; ++a)
            if (k.omega[a]) {
                sep();
                body += "Om" + std::to_string(a + 1);
                if (k.omega[a] > 1) body += "^" + std::to_string(static_cast<int>(k.omega[a]));
            }
        std::vector<std::string> names;
        for (int v = 0; v < ctx_->nvars(); ++v) names.push_back(ctx_->coord_name(v));
        std::string cs = c.str(names);
        std::string term;
        if (body.empty())
            term = cs;
        else if (cs == "1")
            term = body;
        else if (cs == "-1")
            term = "-" + body;
        else if (c.modes().size() > 1 || cs.find(' ') != std::string::npos)
            term = "(" + cs + ") " + body;
        else
            term = cs + " " + body;
        if (!out.empty()) out += "  +  ";
        out += term;
    }
    return out;
}

}  // namespace teq
