#include "teq/scalar.hpp"

#include <cctype>

namespace teq {

std::optional<Rational> parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    const auto slash = s.find('/');
    const std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "" : s.substr(slash + 1);

    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    if (!valid_int(num)) return std::nullopt;
    if (slash != std::string::npos && !valid_int(den)) return std::nullopt;

    // GMP rejects an explicit leading '+'.
    auto strip_plus = [](const std::string& t) {
        return t[0] == '+' ? t.substr(1) : t;
    };
    try {
        boost::multiprecision::mpz_int p(strip_plus(num));
        boost::multiprecision::mpz_int q(slash == std::string::npos ? "1"
                                                                    : strip_plus(den));
        if (q == 0) return std::nullopt;
        return Rational(p, q);
    } catch (...) {
        return std::nullopt;
    }
}

std::string format_rational(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string format_gaussian(const Gaussian& g) {
    if (g.im == 0) return format_rational(g.re);
    if (g.re == 0) return format_rational(g.im) + "i";
    std::string s = format_rational(g.re);
    s += g.im > 0 ? "+" : "";
    s += format_rational(g.im) + "i";
    return s;
}

}  // namespace teq
