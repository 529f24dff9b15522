#pragma once

// Exact trigonometric polynomials on a torus T^n, stored in the complex Fourier
// basis: f = sum_k c_k e^{i k.t} with c_k in Q(i) and the reality constraint
// c_{-k} = conj(c_k).  All operations preserve the constraint, so every
// TrigPoly is a real-valued function with exact rational cos/sin coefficients.

#include "teq/scalar.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace teq {

using Mode = std::vector<int32_t>;  // one integer frequency per torus coordinate

// True if the first nonzero entry is positive (the canonical representative of
// the conjugate pair {k, -k}); the zero mode is not "positive".
bool mode_positive(const Mode& k);
Mode mode_negate(const Mode& k);

class TrigPoly {
  public:
    TrigPoly() : nvars_(0) {}
    explicit TrigPoly(int nvars) : nvars_(nvars) {}

    static TrigPoly constant(int nvars, const Rational& c);
    // c * cos(k.t), c * sin(k.t); k must be a positive representative.
    static TrigPoly cosine(int nvars, const Mode& k, const Rational& c);
    static TrigPoly sine(int nvars, const Mode& k, const Rational& c);

    int nvars() const { return nvars_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;  // coefficient of the zero mode

    // Exact complex Fourier coefficient of e^{i k.t} (zero if absent).
    Gaussian coeff(const Mode& k) const;
    // Adds c.e^{i k.t} + conj(c).e^{-i k.t}; keeps the reality constraint.
    void add_mode_pair(const Mode& k, const Gaussian& c);

    // Real coefficients (a, b) of a.cos(k.t) + b.sin(k.t) for a positive
    // representative k, or (a, 0) for k = 0.
    std::pair<Rational, Rational> real_pair(const Mode& k) const;

    const std::map<Mode, Gaussian>& modes() const { return coeffs_; }
    // Largest |k_i| over all stored modes and coordinates (0 if constant).
    int max_abs_mode() const;

    TrigPoly operator-() const;
    TrigPoly& operator+=(const TrigPoly& o);
    TrigPoly& operator-=(const TrigPoly& o);
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
    TrigPoly& operator*=(const TrigPoly& o) { return *this = *this * o; }
    friend bool operator==(const TrigPoly& a, const TrigPoly& b) {
        return a.nvars_ == b.nvars_ && a.coeffs_ == b.coeffs_;
    }

    TrigPoly scaled(const Rational& c) const;
    // d/dt_i: c_k e^{ik.t} -> (i k_i) c_k e^{ik.t}.
    TrigPoly derivative(int i) const;

    // Pullback along the linear torus map t = P x (P integer, n x m):
    // (f o P)(x) = sum_k c_k e^{i (P^T k).x}, a TrigPoly in m variables.
    // P is given row-major: P[r][c], r < nvars(), c < m.
    TrigPoly pullback_linear(const std::vector<std::vector<int>>& P, int m) const;

    // Drops every mode with a nonzero frequency in coordinate `i` and keeps the
    // rest (the constant Fourier mode in that coordinate, i.e. its average).
    TrigPoly average_coordinate(int i) const;

    // Checks c_{-k} = conj(c_k) for all stored modes (used after JSON loads).
    bool reality_ok() const;

    std::string str(const std::vector<std::string>& names = {}) const;

  private:
    void insert(const Mode& k, const Gaussian& c);  // adds, erasing zeros

    int nvars_;
    std::map<Mode, Gaussian> coeffs_;
};

std::string format_mode(const Mode& k, const std::vector<std::string>& names);

}  // namespace teq
