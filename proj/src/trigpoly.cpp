#include "teq/trigpoly.hpp"

#include "teq/error.hpp"

#include <algorithm>
#include <cstdlib>

namespace teq {

bool mode_positive(const Mode& k) {
    for (int32_t v : k) {
        if (v > 0) return true;
        if (v < 0) return false;
    }
    return false;
}

Mode mode_negate(const Mode& k) {
    Mode r(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) r[i] = -k[i];
    return r;
}

void TrigPoly::insert(const Mode& k, const Gaussian& c) {
    if (c.is_zero()) return;
    auto it = coeffs_.find(k);
    if (it == coeffs_.end()) {
        coeffs_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

TrigPoly TrigPoly::constant(int nvars, const Rational& c) {
    TrigPoly p(nvars);
    p.insert(Mode(nvars, 0), Gaussian(c));
    return p;
}

TrigPoly TrigPoly::cosine(int nvars, const Mode& k, const Rational& c) {
    if (static_cast<int>(k.size()) != nvars) throw Error("cosine: mode size mismatch");
    if (!mode_positive(k)) {
        if (std::all_of(k.begin(), k.end(), [](int32_t v) { return v == 0; }))
            return constant(nvars, c);  // cos(0) = 1
        throw Error("cosine: mode must be a positive representative");
    }
    TrigPoly p(nvars);
    Rational half = c / 2;
    p.insert(k, Gaussian(half));
    p.insert(mode_negate(k), Gaussian(half));
    return p;
}

TrigPoly TrigPoly::sine(int nvars, const Mode& k, const Rational& c) {
    if (static_cast<int>(k.size()) != nvars) throw Error("sine: mode size mismatch");
    if (!mode_positive(k)) {
        if (std::all_of(k.begin(), k.end(), [](int32_t v) { return v == 0; }))
            return TrigPoly(nvars);  // sin(0) = 0
        throw Error("sine: mode must be a positive representative");
    }
    TrigPoly p(nvars);
    Rational half = c / 2;
    p.insert(k, Gaussian(Rational(0), -half));
    p.insert(mode_negate(k), Gaussian(Rational(0), half));
    return p;
}

bool TrigPoly::is_constant() const {
    if (coeffs_.empty()) return true;
    return coeffs_.size() == 1 && !mode_positive(coeffs_.begin()->first) &&
           !mode_positive(mode_negate(coeffs_.begin()->first));
}

Rational TrigPoly::constant_term() const {
    auto it = coeffs_.find(Mode(nvars_, 0));
    return it == coeffs_.end() ? Rational(0) : it->second.re;
}

Gaussian TrigPoly::coeff(const Mode& k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Gaussian() : it->second;
}

void TrigPoly::add_mode_pair(const Mode& k, const Gaussian& c) {
    if (static_cast<int>(k.size()) != nvars_) throw Error("add_mode_pair: mode size mismatch");
    const bool zero_mode = std::all_of(k.begin(), k.end(), [](int32_t v) { return v == 0; });
    if (zero_mode) {
        if (c.im != 0) throw Error("add_mode_pair: zero mode must have a real coefficient");
        insert(k, c);
        return;
    }
    if (!mode_positive(k)) throw Error("add_mode_pair: mode must be a positive representative");
    insert(k, c);
    insert(mode_negate(k), c.conj());
}

std::pair<Rational, Rational> TrigPoly::real_pair(const Mode& k) const {
    const Gaussian c = coeff(k);
    if (!mode_positive(k)) return {c.re, Rational(0)};
    return {2 * c.re, -2 * c.im};
}

int TrigPoly::max_abs_mode() const {
    int best = 0;
    for (const auto& [k, c] : coeffs_)
        for (int32_t v : k) best = std::max(best, static_cast<int>(std::abs(v)));
    return best;
}

TrigPoly TrigPoly::operator-() const {
    TrigPoly r(nvars_);
    for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(k, -c);
    return r;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
    if (nvars_ != o.nvars_) throw Error("TrigPoly +: variable count mismatch");
    for (const auto& [k, c] : o.coeffs_) insert(k, c);
    return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
    if (nvars_ != o.nvars_) throw Error("TrigPoly -: variable count mismatch");
    for (const auto& [k, c] : o.coeffs_) insert(k, -c);
    return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    if (a.nvars_ != b.nvars_) throw Error("TrigPoly *: variable count mismatch");
    TrigPoly r(a.nvars_);
    for (const auto& [k1, c1] : a.coeffs_)
        for (const auto& [k2, c2] : b.coeffs_) {
            Mode k(a.nvars_);
            for (int i = 0; i < a.nvars_; ++i) k[i] = k1[i] + k2[i];
            r.insert(k, c1 * c2);
        }
    return r;
}

TrigPoly TrigPoly::scaled(const Rational& c) const {
    if (c == 0) return TrigPoly(nvars_);
    TrigPoly r(nvars_);
    for (const auto& [k, v] : coeffs_) r.coeffs_.emplace(k, Gaussian(c) * v);
    return r;
}

TrigPoly TrigPoly::derivative(int i) const {
    TrigPoly r(nvars_);
    for (const auto& [k, c] : coeffs_) {
        // multiply by i*k_i
        Rational ki(k[i]);
        r.insert(k, Gaussian(-ki * c.im, ki * c.re));
    }
    return r;
}

TrigPoly TrigPoly::pullback_linear(const std::vector<std::vector<int>>& P, int m) const {
    if (static_cast<int>(P.size()) != nvars_) throw Error("pullback: matrix row count mismatch");
    TrigPoly r(m);
    for (const auto& [k, c] : coeffs_) {
        Mode kk(m, 0);
        for (int row = 0; row < nvars_; ++row) {
            if (static_cast<int>(P[row].size()) != m) throw Error("pullback: matrix column count mismatch");
            for (int col = 0; col < m; ++col) kk[col] += k[row] * P[row][col];
        }
        r.insert(kk, c);
    }
    return r;
}

TrigPoly TrigPoly::average_coordinate(int i) const {
    TrigPoly r(nvars_);
    for (const auto& [k, c] : coeffs_)
        if (k[i] == 0) r.insert(k, c);
    return r;
}

bool TrigPoly::reality_ok() const {
    for (const auto& [k, c] : coeffs_)
        if (!(coeff(mode_negate(k)) == c.conj())) return false;
    return true;
}

std::string format_mode(const Mode& k, const std::vector<std::string>& names) {
    std::string s;
    bool first = true;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] == 0) continue;
        const std::string var =
            i < names.size() ? names[i] : "t" + std::to_string(i + 1);
        if (k[i] > 0 && !first) s += "+";
        if (k[i] == -1)
            s += "-";
        else if (k[i] != 1)
            s += std::to_string(k[i]) + " ";
        s += var;
        first = false;
    }
    return s;
}

std::string TrigPoly::str(const std::vector<std::string>& names) const {
    if (coeffs_.empty()) return "0";
    std::string s;
    auto append = [&s](const Rational& c, const std::string& body) {
        if (c == 0) return;
        std::string mag = format_rational(c < 0 ? Rational(-c) : c);
        if (s.empty())
            s += (c < 0 ? "-" : "");
        else
            s += (c < 0 ? " - " : " + ");
        if (body.empty())
            s += mag;
        else if (mag == "1")
            s += body;
        else
            s += mag + " " + body;
    };
    const Rational c0 = constant_term();
    append(c0, "");
    for (const auto& [k, c] : coeffs_) {
        if (!mode_positive(k)) continue;
        auto [a, b] = real_pair(k);
        append(a, "cos(" + format_mode(k, names) + ")");
        append(b, "sin(" + format_mode(k, names) + ")");
    }
    return s.empty() ? "0" : s;
}

}  // namespace teq
