#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tori {

// Arbitrary-precision integers back every exact path: convergents grow
// geometrically in the number of partial quotients, so fixed-width types
// overflow around 15 quotients of moderate size.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Domain error with a stable machine-readable code (surfaced verbatim by the
// CLI's JSON error channel).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Floor division (rounds toward negative infinity, unlike cpp_int's operator/).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Largest s with s*s <= n. Requires n >= 0.
inline Int isqrt(const Int& n) {
    if (n < 0) throw Error("invalid_argument", "isqrt of negative number");
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    Int s = isqrt(n);
    return s * s == n;
}

inline bool fits_int64(const Int& v) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    return v >= lo && v <= hi;
}

inline double to_double(const Int& v) { return v.convert_to<double>(); }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

// log of a positive Int, valid far beyond double range.
inline double log_big(const Int& v) {
    if (v <= 0) throw Error("invalid_argument", "log of non-positive integer");
    const std::size_t bits = boost::multiprecision::msb(v);
    if (bits < 900) return std::log(to_double(v));
    Int shifted(v);
    shifted >>= bits - 52;
    return std::log(to_double(shifted)) +
           static_cast<double>(bits - 52) * std::log(2.0);
}

// Factors n = s^2 * f with f squarefree; returns {f, s}. Trial division is
// enough at the input sizes the surd constructors accept.
inline std::pair<std::int64_t, std::int64_t> squarefree_decompose(std::int64_t n) {
    if (n == 0) return {0, 1};
    std::int64_t sign = n < 0 ? -1 : 1;
    std::int64_t m = n < 0 ? -n : n;
    std::int64_t square_part = 1;
    std::int64_t free_part = 1;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) square_part *= p;
        if (e % 2) free_part *= p;
    }
    free_part *= m;
    return {sign * free_part, square_part};
}

}  // namespace tori
