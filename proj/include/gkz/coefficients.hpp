#pragma once

// Scalar coefficient kernels for the logarithmic series constructions.
//
// All functions are pure and exact. Indices `k` follow the convention of the
// shifted product [z]_k:
//
//   [z]_0 = 1
//   [z]_k = 1 / ((z+1)(z+2)...(z+k))     for k > 0
//   [z]_k = z (z-1) ... (z+k+1)           for k < 0
//
// [z]_k is undefined when z is a negative integer and k >= -z.

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace gkz
{

inline bool bracket_defined(const Rational &z, std::int64_t k)
{
    if (k <= 0 || !is_negative_integer(z)) {
        return true;
    }
    // k < -z  <=>  z + k < 0
    return sgn(z + k) < 0;
}

inline Rational bracket(const Rational &z, std::int64_t k)
{
    if (!bracket_defined(z, k)) {
        throw UndefinedBracket("[" + to_string(z) + "]_" + std::to_string(k) + " is undefined");
    }
    Rational r(1);
    if (k > 0) {
        Rational denom(1);
        for (std::int64_t j = 1; j <= k; ++j) {
            denom *= z + j;
        }
        r = 1 / denom;
    } else {
        for (std::int64_t j = 0; j > k; --j) {
            r *= z + j;
        }
    }
    return r;
}

// Product of coordinatewise brackets. On failure the exception carries the
// offending 0-based index.
inline Rational bracket(std::span<const Rational> z, std::span<const std::int64_t> k)
{
    if (z.size() != k.size()) {
        throw DimensionMismatch("bracket: length mismatch");
    }
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!bracket_defined(z[i], k[i])) {
            throw UndefinedBracket("[" + to_string(z[i]) + "]_" + std::to_string(k[i])
                                       + " is undefined at index " + std::to_string(i + 1),
                                   i);
        }
    }
    Rational r(1);
    for (std::size_t i = 0; i < z.size() && sgn(r) != 0; ++i) {
        r *= bracket(z[i], k[i]);
    }
    return r;
}

// s_{i,j}(z): degree-j elementary symmetric polynomial of z, z-1, ..., z-i+1.
// Returns 0 for j < 0 or j > i, which is the value the log-correction formulas need
// at the edges (e.g. s_{1,-1}).
inline Rational elem_sym_shifted(std::int64_t i, std::int64_t j, const Rational &z)
{
    if (i < 0) {
        throw std::invalid_argument("elem_sym_shifted: i must be nonnegative");
    }
    if (j < 0 || j > i) {
        return Rational(0);
    }
    // e[d] accumulates the elementary symmetric polynomials of the arguments seen so far.
    std::vector<Rational> e(static_cast<std::size_t>(j) + 1, Rational(0));
    e[0] = 1;
    for (std::int64_t t = 0; t < i; ++t) {
        const Rational x = z - t;
        for (std::int64_t d = std::min(j, t + 1); d >= 1; --d) {
            e[d] += x * e[d - 1];
        }
    }
    return e[j];
}

// m_{k,i}(z): complete homogeneous symmetric polynomial of degree i evaluated at
// 1/(z+1), ..., 1/(z+k).
inline Rational mono_sum_shifted(std::int64_t k, std::int64_t i, const Rational &z)
{
    if (k < 0 || i < 0) {
        throw std::invalid_argument("mono_sum_shifted: k and i must be nonnegative");
    }
    for (std::int64_t t = 1; t <= k; ++t) {
        if (sgn(z + t) == 0) {
            throw PoleAtShift("m_{" + std::to_string(k) + "," + std::to_string(i) + "}(" + to_string(z)
                              + ") has a pole at shift " + std::to_string(t));
        }
    }
    std::vector<Rational> h(static_cast<std::size_t>(i) + 1, Rational(0));
    h[0] = 1;
    for (std::int64_t t = 1; t <= k; ++t) {
        const Rational x = 1 / (z + t);
        for (std::int64_t d = 1; d <= i; ++d) {
            h[d] += x * h[d - 1];
        }
    }
    return h[i];
}

// Polynomial in log t; coefficient n multiplies log^n t. Trailing zeros trimmed.
class UniLogPoly
{
public:
    UniLogPoly() = default;
    explicit UniLogPoly(std::vector<Rational> coeffs) : m_coeffs(std::move(coeffs))
    {
        trim();
    }

    const std::vector<Rational> &coeffs() const noexcept
    {
        return m_coeffs;
    }
    bool is_zero() const noexcept
    {
        return m_coeffs.empty();
    }
    // -1 for the zero polynomial.
    std::int64_t degree() const noexcept
    {
        return static_cast<std::int64_t>(m_coeffs.size()) - 1;
    }
    Rational operator[](std::size_t n) const
    {
        return n < m_coeffs.size() ? m_coeffs[n] : Rational(0);
    }

    friend bool operator==(const UniLogPoly &, const UniLogPoly &) = default;

    friend std::ostream &operator<<(std::ostream &os, const UniLogPoly &p)
    {
        if (p.is_zero()) {
            return os << "0";
        }
        bool first = true;
        for (std::size_t n = 0; n < p.m_coeffs.size(); ++n) {
            if (sgn(p.m_coeffs[n]) == 0) {
                continue;
            }
            if (!first) {
                os << " + ";
            }
            first = false;
            os << p.m_coeffs[n];
            if (n > 0) {
                os << "*log^" << n;
            }
        }
        return os;
    }

private:
    void trim()
    {
        while (!m_coeffs.empty() && sgn(m_coeffs.back()) == 0) {
            m_coeffs.pop_back();
        }
    }

    std::vector<Rational> m_coeffs;
};

// f_z^{(k)}(t) / t^{z+k} as a polynomial in log t, for the family generated by
// f_z^{(0)}(t) = t^z log^m t with d/dt f^{(k)} = f^{(k-1)} and zero integration
// constants. Only m <= 2 is supported.
inline UniLogPoly f_coeffs(const Rational &z, std::int64_t k, unsigned m)
{
    if (m > 2) {
        throw std::invalid_argument("f_coeffs: log power m must be 0, 1 or 2");
    }
    if (!bracket_defined(z, k)) {
        throw MinimalityViolation("f_z^(k) with z = " + to_string(z) + ", k = " + std::to_string(k)
                                  + " lies outside the minimal-support region");
    }
    std::vector<Rational> c(m + 1, Rational(0));
    if (k == 0) {
        c[m] = 1;
    } else if (k < 0) {
        // sum_{i=0}^{min(-k,m)} s_{-k,-k-i}(z) m(m-1)...(m-i+1) log^{m-i}
        Rational falling(1);
        for (std::int64_t i = 0; i <= std::min<std::int64_t>(-k, m); ++i) {
            c[m - i] = elem_sym_shifted(-k, -k - i, z) * falling;
            falling *= static_cast<long>(m - i);
        }
    } else {
        // [z]_k sum_{i=0}^{m} (-1)^i m(m-1)...(m-i+1) m_{k,i}(z) log^{m-i}
        const Rational b = bracket(z, k);
        Rational falling(1);
        for (std::int64_t i = 0; i <= static_cast<std::int64_t>(m); ++i) {
            Rational term = b * falling * mono_sum_shifted(k, i, z);
            c[m - i] = (i % 2 == 0) ? term : Rational(-term);
            falling *= static_cast<long>(m - i);
        }
    }
    return UniLogPoly(std::move(c));
}

} // namespace gkz
