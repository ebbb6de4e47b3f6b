#include "upsets/rational.hpp"

#include <cctype>
#include <charconv>

#include "upsets/errors.hpp"

namespace upsets {

namespace {

Int parse_int(std::string_view s) {
    if (s.empty()) throw MalformedInputError("empty number");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw MalformedInputError("sign without digits");
    Int v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw MalformedInputError("bad digit in number: '" + std::string(s) + "'");
        v = v * 10 + (s[i] - '0');
    }
    return neg ? Int(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw MalformedInputError("empty rational");
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        Int num = parse_int(text.substr(0, slash));
        Int den = parse_int(text.substr(slash + 1));
        if (den == 0) throw MalformedInputError("zero denominator: '" + std::string(text) + "'");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string_view::npos) return Rational(parse_int(text));
    std::string_view head = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.find_first_of("+-") != std::string_view::npos)
        throw MalformedInputError("bad decimal: '" + std::string(text) + "'");
    bool neg = !head.empty() && head[0] == '-';
    Int whole = head.empty() || head == "-" || head == "+" ? Int(0) : parse_int(head);
    if (whole < 0) whole = -whole;
    Int scale = int_pow(10, static_cast<int>(frac.size()));
    Int digits = frac.empty() ? Int(0) : parse_int(frac);
    Rational r = Rational(whole * scale + digits, scale);
    return neg ? Rational(-r) : r;
}

std::string format_rational(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_pow(const Rational& r, int e) {
    if (e < 0) throw PreconditionError("rational_pow wants e >= 0");
    Rational acc = 1, base = r;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

Int int_pow(const Int& base, int e) {
    Int acc = 1, b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

Int binomial(int n, int t) {
    if (t < 0 || t > n) return 0;
    if (t > n - t) t = n - t;
    Int v = 1;
    for (int i = 0; i < t; ++i) {
        v *= n - i;
        v /= i + 1;  // exact: product of j consecutive integers is divisible by j!
    }
    return v;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace upsets
