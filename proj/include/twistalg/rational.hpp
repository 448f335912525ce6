#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace twistalg {

// Exact arithmetic throughout the library: arbitrary-precision integers and
// rationals.  Floating point appears only in advisory evaluation helpers.
using Int = mpz_class;
using Rational = mpq_class;

// Parses "p", "-p", or "p/q" (base 10).  Throws on malformed input or a zero
// denominator.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) {
        throw std::invalid_argument("parse_rational: empty string");
    }
    Rational r;
    if (r.set_str(text, 10) != 0) {
        throw std::invalid_argument("parse_rational: malformed rational '" + text + "'");
    }
    if (r.get_den() == 0) {
        throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
    }
    r.canonicalize();
    return r;
}

inline std::string rational_string(const Rational& r) { return r.get_str(); }

// mpz_class has no long long constructor; go through long (LP64 target).
inline Int to_int(long long x) { return Int(static_cast<long>(x)); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// True iff d divides r exactly (r/d is an integer); d must be nonzero.
inline bool divides(const Int& d, const Int& r) {
    if (d == 0) {
        throw std::invalid_argument("divides: zero divisor");
    }
    return mpz_divisible_p(r.get_mpz_t(), d.get_mpz_t()) != 0;
}

}  // namespace twistalg
