#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace quartlat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int numer(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denom(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return abs_int(a / gcd_int(a, b) * b);
}

// floor(a / b) for b != 0
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

inline Int mod_floor(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

inline Int floor_rat(const Rat& r) { return floor_div(numer(r), denom(r)); }

// nearest integer, ties rounded toward +infinity
inline Int round_rat(const Rat& r) { return floor_rat(r + Rat(1, 2)); }

inline std::int64_t to_i64(const Int& a) {
    if (a > std::numeric_limits<std::int64_t>::max() || a < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer does not fit in 64 bits: " + a.str());
    return static_cast<std::int64_t>(a);
}

inline std::string to_string(const Int& a) { return a.str(); }

inline std::string to_string(const Rat& r) {
    if (denom(r) == 1) return numer(r).str();
    return numer(r).str() + "/" + denom(r).str();
}

// exact integer square root if a is a perfect square
inline bool exact_isqrt(const Int& a, Int& root) {
    if (a < 0) return false;
    Int s = boost::multiprecision::sqrt(a);
    if (s * s != a) return false;
    root = s;
    return true;
}

inline bool exact_sqrt(const Rat& r, Rat& root) {
    Int n, d;
    if (!exact_isqrt(numer(r), n) || !exact_isqrt(denom(r), d)) return false;
    root = Rat(n, d);
    return true;
}

}  // namespace quartlat
