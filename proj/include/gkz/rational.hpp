#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace gkz
{

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

inline bool is_integer(const Rational &q)
{
    return q.get_den() == 1;
}

inline bool is_negative_integer(const Rational &q)
{
    return q.get_den() == 1 && sgn(q) < 0;
}

inline bool is_nonnegative_integer(const Rational &q)
{
    return q.get_den() == 1 && sgn(q) >= 0;
}

// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational &q)
{
    return q.get_str();
}

inline std::string to_string(const Integer &z)
{
    return z.get_str();
}

// Parses "p", "-p", "p/q" (q != 0) into lowest terms.
inline Rational parse_rational(std::string_view text)
{
    auto begin = text.find_first_not_of(" \t\r\n");
    auto end = text.find_last_not_of(" \t\r\n");
    if (begin == std::string_view::npos) {
        throw InputError("empty rational literal");
    }
    std::string s(text.substr(begin, end - begin + 1));
    auto slash = s.find('/');
    auto valid_int = [](std::string_view part) {
        std::size_t i = 0;
        if (!part.empty() && (part[0] == '-' || part[0] == '+')) {
            i = 1;
        }
        if (i == part.size()) {
            return false;
        }
        for (; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') {
                return false;
            }
        }
        return true;
    };
    Rational q;
    if (slash == std::string::npos) {
        if (!valid_int(s)) {
            throw InputError("malformed rational literal '" + s + "'");
        }
        q = Rational(Integer(s[0] == '+' ? s.substr(1) : s));
        return q;
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
        throw InputError("malformed rational literal '" + s + "'");
    }
    Integer d(den);
    if (d == 0) {
        throw InputError("zero denominator in '" + s + "'");
    }
    q = Rational(Integer(num[0] == '+' ? num.substr(1) : num), d);
    q.canonicalize();
    return q;
}

inline std::int64_t to_int64(const Integer &z)
{
    if (!z.fits_slong_p()) {
        throw ResourceLimit("integer " + z.get_str() + " exceeds 64-bit range");
    }
    return static_cast<std::int64_t>(z.get_si());
}

// Checked a*b + c for lattice-point arithmetic.
inline std::int64_t checked_muladd(std::int64_t a, std::int64_t b, std::int64_t c)
{
    std::int64_t p = 0;
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &p) || __builtin_add_overflow(p, c, &r)) {
        throw ResourceLimit("lattice coordinate overflow");
    }
    return r;
}

} // namespace gkz
