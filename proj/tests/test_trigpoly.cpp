#include "teq/trigpoly.hpp"

#include <doctest.h>

#include <map>

using namespace teq;

namespace {

// Independent product oracle for one-variable trig polynomials: dense complex
// Fourier convolution over int frequencies.  Shares no code with TrigPoly.
using Dense = std::map<int, Gaussian>;

Dense dense_of(const TrigPoly& f) {
    Dense d;
    for (const auto& [k, c] : f.modes())
        if (!c.is_zero()) d[k[0]] = c;
    return d;
}

Dense dense_mul(const Dense& a, const Dense& b) {
    Dense r;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            Gaussian& slot = r[ka + kb];
            slot += ca * cb;
        }
    for (auto it = r.begin(); it != r.end();)
        it = it->second.is_zero() ? r.erase(it) : std::next(it);
    return r;
}

}  // namespace

TEST_CASE("product angle identities hold exactly") {
    // sin t cos t = 1/2 sin 2t
    TrigPoly p = TrigPoly::sine(1, {1}, 1) * TrigPoly::cosine(1, {1}, 1);
    CHECK(p.real_pair({2}) == std::pair<Rational, Rational>(0, Rational(1, 2)));
    CHECK(p.real_pair({1}) == std::pair<Rational, Rational>(0, 0));
    CHECK(p.constant_term() == 0);

    // cos^2 t = 1/2 + 1/2 cos 2t
    TrigPoly q = TrigPoly::cosine(1, {1}, 1) * TrigPoly::cosine(1, {1}, 1);
    CHECK(q.constant_term() == Rational(1, 2));
    CHECK(q.real_pair({2}) == std::pair<Rational, Rational>(Rational(1, 2), 0));

    // sin^2 + cos^2 = 1
    TrigPoly s2 = TrigPoly::sine(1, {1}, 1) * TrigPoly::sine(1, {1}, 1);
    CHECK(q + s2 == TrigPoly::constant(1, 1));
}

TEST_CASE("product agrees with a dense convolution oracle") {
    // Fixed inputs with mixed modes and fractional coefficients.
    TrigPoly a = TrigPoly::constant(1, Rational(1, 3));
    a += TrigPoly::cosine(1, {1}, Rational(2));
    a += TrigPoly::sine(1, {2}, Rational(-1, 2));
    TrigPoly b = TrigPoly::sine(1, {1}, Rational(5, 7));
    b += TrigPoly::cosine(1, {3}, Rational(-4));

    Dense want = dense_mul(dense_of(a), dense_of(b));
    CHECK(dense_of(a * b) == want);
    CHECK(dense_of(b * a) == want);
    // And the result still satisfies the reality constraint.
    CHECK((a * b).reality_ok());
}

TEST_CASE("derivative acts mode by mode") {
    // d/dt [sin(3t)] = 3 cos(3t)
    TrigPoly f = TrigPoly::sine(1, {3}, 1);
    CHECK(f.derivative(0) == TrigPoly::cosine(1, {3}, 3));
    // d/dt1 [cos(t1)sin(t2)] = -sin(t1)sin(t2); check via the oracle product.
    TrigPoly g = TrigPoly::cosine(2, {1, 0}, 1) * TrigPoly::sine(2, {0, 1}, 1);
    TrigPoly want = TrigPoly::sine(2, {1, 0}, -1) * TrigPoly::sine(2, {0, 1}, 1);
    CHECK(g.derivative(0) == want);
    CHECK(TrigPoly::constant(2, 5).derivative(1).is_zero());
}

TEST_CASE("linear pullback re-indexes frequencies") {
    // t = 2x: cos(t) -> cos(2x)
    TrigPoly f = TrigPoly::cosine(1, {1}, 1);
    CHECK(f.pullback_linear({{2}}, 1) == TrigPoly::cosine(1, {2}, 1));

    // (t1, t2) = (x1, x1 + x2): cos(t1)sin(t2) -> cos(x1)sin(x1+x2)
    //   = 1/2 [sin(2x1+x2) + sin(x2)]
    TrigPoly g = TrigPoly::cosine(2, {1, 0}, 1) * TrigPoly::sine(2, {0, 1}, 1);
    TrigPoly h = g.pullback_linear({{1, 0}, {1, 1}}, 2);
    TrigPoly want = TrigPoly::sine(2, {2, 1}, Rational(1, 2)) +
                    TrigPoly::sine(2, {0, 1}, Rational(1, 2));
    CHECK(h == want);

    // Collapsing map t = 0·x sends everything to its constant mode.
    TrigPoly c = TrigPoly::cosine(1, {1}, 1) + TrigPoly::constant(1, 4);
    CHECK(c.pullback_linear({{0}}, 1) == TrigPoly::constant(1, 5));  // cos(0) = 1
}

TEST_CASE("coordinate averaging keeps the zero-frequency slice") {
    TrigPoly c2 = TrigPoly::cosine(1, {1}, 1) * TrigPoly::cosine(1, {1}, 1);
    CHECK(c2.average_coordinate(0) == TrigPoly::constant(1, Rational(1, 2)));

    TrigPoly mixed = TrigPoly::cosine(2, {1, 0}, 1) * TrigPoly::cosine(2, {0, 1}, 1);
    CHECK(mixed.average_coordinate(0).is_zero());
    // Averaging over t1 keeps t2 dependence.
    TrigPoly keep = TrigPoly::cosine(2, {0, 2}, Rational(3)) + mixed;
    CHECK(keep.average_coordinate(0) == TrigPoly::cosine(2, {0, 2}, Rational(3)));
    CHECK(keep.average_coordinate(1) == TrigPoly(2));
}

TEST_CASE("mode bookkeeping") {
    CHECK(mode_positive({1, -5}));
    CHECK(!mode_positive({0, -1}));
    CHECK(!mode_positive({0, 0}));
    CHECK(mode_negate({1, -2}) == Mode{-1, 2});

    TrigPoly f = TrigPoly::cosine(2, {1, -5}, 1);
    CHECK(f.max_abs_mode() == 5);
    CHECK(TrigPoly::constant(2, 3).max_abs_mode() == 0);
    CHECK(f.reality_ok());

    // coeff() of cos(k.t): c_k = 1/2 at the positive representative.
    CHECK(f.coeff({1, -5}) == Gaussian(Rational(1, 2)));
    CHECK(f.coeff({-1, 5}) == Gaussian(Rational(1, 2)));
    // sin(k.t): c_k = -i/2.
    TrigPoly s = TrigPoly::sine(2, {1, 0}, 1);
    CHECK(s.coeff({1, 0}) == Gaussian(0, Rational(-1, 2)));
    CHECK(s.coeff({-1, 0}) == Gaussian(0, Rational(1, 2)));
}

TEST_CASE("printing uses real cos/sin pairs") {
    TrigPoly f = TrigPoly::constant(2, Rational(1, 2));
    f += TrigPoly::cosine(2, {1, 0}, -1);
    f += TrigPoly::sine(2, {1, 1}, Rational(2, 3));
    CHECK(f.str() == "1/2 - cos(t1) + 2/3 sin(t1+t2)");
    CHECK(f.str({"h", "x"}) == "1/2 - cos(h) + 2/3 sin(h+x)");
    CHECK(TrigPoly(1).str() == "0");
}
