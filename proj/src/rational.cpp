#include "whitney/rational.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace whitney {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw domain_error("non-finite value cannot be represented");
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

namespace {

bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text, bool exact_mode) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw parse_error("empty number");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_integer_literal(num) || !is_integer_literal(den))
            throw parse_error("malformed rational '" + text + "'");
        return make_rational(Integer(num), Integer(den));
    }
    if (is_integer_literal(s)) return Rational(Integer(s));

    // Decimal or scientific literal.
    if (exact_mode)
        throw mode_error("exact mode rejects float literal '" + text + "' (use p/q or an integer)");
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == nullptr || *end != '\0')
        throw parse_error("malformed number '" + text + "'");
    return rational_from_double(v);
}

std::string format_rational(const Rational& q) { return q.get_str(); }

std::string format_double17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Rational squared_distance(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw dimension_mismatch("points of different dimension");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

bool points_equal(std::span<const Rational> a, std::span<const Rational> b, const Tolerance& tol) {
    Rational d2 = squared_distance(a, b);
    if (tol.exact) return d2 == 0;
    return std::sqrt(to_double(d2)) <= tol.tol;
}

} // namespace whitney
