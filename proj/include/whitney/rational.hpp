#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "whitney/errors.hpp"

namespace whitney {

using Rational = mpq_class;
using Integer = mpz_class;

using Point = std::vector<Rational>;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact value of an IEEE double (every finite double is a dyadic rational).
Rational rational_from_double(double x);

/// Parses "p/q", "p", or (float mode only) a decimal literal like "1.25e-3".
/// Exact mode rejects non-integral decimals so that no rounding ever enters.
Rational parse_rational(const std::string& text, bool exact_mode);

/// Canonical "p" or "p/q" form.
std::string format_rational(const Rational& q);

/// 17 significant digits; round-trips through parse exactly.
std::string format_double17(double x);

/// Comparison policy: exact equality in exact mode, absolute tolerance otherwise.
struct Tolerance {
    bool exact = true;
    double tol = 1e-9;

    static Tolerance exact_mode() { return Tolerance{true, 0.0}; }
    static Tolerance float_mode(double t = 1e-9) { return Tolerance{false, t}; }

    bool value_zero(const Rational& v) const {
        if (exact) return v == 0;
        return std::fabs(to_double(v)) <= tol;
    }
    bool value_equal(const Rational& a, const Rational& b) const {
        if (exact) return a == b;
        return std::fabs(to_double(a - b)) <= tol;
    }
};

/// Squared euclidean distance, exact.
Rational squared_distance(std::span<const Rational> a, std::span<const Rational> b);

inline double distance(std::span<const Rational> a, std::span<const Rational> b) {
    return std::sqrt(to_double(squared_distance(a, b)));
}

/// True when the two points coincide under the policy (exact: identical value,
/// float: euclidean distance at most tol).
bool points_equal(std::span<const Rational> a, std::span<const Rational> b, const Tolerance& tol);

/// Deterministic pseudo-random source. Uses a fixed linear-congruential step so
/// sequences are identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed * 6364136223846793005ULL + 1442695040888963407ULL) {}

    std::uint64_t next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_ ^ (state_ >> 29);
    }
    /// Uniform-ish integer in [lo, hi] (inclusive); bias is irrelevant at our ranges.
    long next_int(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    /// Random rational p/q with |p| <= num_bound, 1 <= q <= den_bound.
    Rational next_rational(long num_bound, long den_bound) {
        return make_rational(Integer(next_int(-num_bound, num_bound)), Integer(next_int(1, den_bound)));
    }

private:
    std::uint64_t state_;
};

} // namespace whitney
