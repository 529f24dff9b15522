#pragma once

// Exact scalars: arbitrary-precision rationals and Gaussian rationals Q(i).
// All arithmetic in the engine is exact; nothing here ever touches floating point.

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>

namespace teq {

using Rational = boost::multiprecision::mpq_rational;

// Parses "p", "-p", "p/q" with arbitrary-precision integer parts.
// Returns nullopt on malformed input or zero denominator.
std::optional<Rational> parse_rational(const std::string& s);

// Canonical form "p" or "p/q" with q > 0, gcd-reduced (mpq keeps it reduced).
std::string format_rational(const Rational& r);

// An element of Q(i).  Trig-polynomial Fourier coefficients live here.
struct Gaussian {
    Rational re{0};
    Rational im{0};

    Gaussian() = default;
    Gaussian(Rational r) : re(std::move(r)) {}
    Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    Gaussian conj() const { return {re, -im}; }

    Gaussian operator-() const { return {-re, -im}; }
    Gaussian& operator+=(const Gaussian& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Gaussian& operator-=(const Gaussian& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    Gaussian& operator*=(const Gaussian& o) { return *this = *this * o; }
    friend bool operator==(const Gaussian& a, const Gaussian& b) {
        return a.re == b.re && a.im == b.im;
    }
};

std::string format_gaussian(const Gaussian& g);

}  // namespace teq
