#ifndef MDISC_RATIONAL_HPP
#define MDISC_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "errors.hpp"

namespace mdisc {

// GMP keeps mpq_class canonical (positive denominator, reduced) after every
// arithmetic operation; values built from strings go through make_rational.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw PreconditionError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Accepts "p" or "p/q" with optional leading '-'.
inline Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    auto parse_int = [&](std::string_view digits) {
        Integer z;
        const std::string s(digits);
        const bool ok = !s.empty() && z.set_str(s, 10) == 0;
        if (!ok) throw PreconditionError("malformed rational '" + std::string(text) + "'");
        return z;
    };
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline Integer lcm_of(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer gcd_of(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace mdisc

#endif  // MDISC_RATIONAL_HPP
