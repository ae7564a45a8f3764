#pragma once

#include <gmpxx.h>
#include <string>
#include <stdexcept>

namespace oforge {

// Exact scalars. Everything in the engine is a rational number; there is no
// floating point anywhere in the core.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Parses "p", "-p" or "p/q". Throws on malformed input.
inline Rat rat_parse(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("not a rational: '" + s + "'");
    r.canonicalize();
    return r;
}

inline Rat factorial(int n) {
    Rat r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// (-1)^k as a rational
inline Rat sign_pow(long k) { return (k % 2 == 0) ? Rat(1) : Rat(-1); }

} // namespace oforge
