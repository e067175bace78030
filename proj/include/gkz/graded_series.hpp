#pragma once

// Truncated power series over a pointed lattice cone, graded by an integer
// functional w: a monomial at lattice coordinates x has grade w.x, and every
// product keeps only the terms of grade <= D. Division and exp work grade by
// grade because every nonconstant factor has grade >= 1.

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "rational.hpp"

namespace gkz
{

class GradedSeries
{
public:
    using map_type = std::map<LatticePoint, Rational>;

    GradedSeries() = default;
    GradedSeries(LatticePoint w, std::int64_t max_grade) : m_w(std::move(w)), m_max(max_grade) {}

    static GradedSeries one(LatticePoint w, std::int64_t max_grade)
    {
        GradedSeries s(std::move(w), max_grade);
        s.add(LatticePoint(s.m_w.size(), 0), Rational(1));
        return s;
    }

    const LatticePoint &grading() const noexcept
    {
        return m_w;
    }
    std::int64_t max_grade() const noexcept
    {
        return m_max;
    }
    const map_type &terms() const noexcept
    {
        return m_terms;
    }
    std::size_t size() const noexcept
    {
        return m_terms.size();
    }
    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }

    std::int64_t grade(const LatticePoint &x) const
    {
        if (x.size() != m_w.size()) {
            throw DimensionMismatch("graded series: coordinate vector has wrong length");
        }
        std::int64_t g = 0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            g = checked_muladd(m_w[k], x[k], g);
        }
        return g;
    }

    // Terms above the grade bound are dropped.
    void add(const LatticePoint &x, const Rational &c)
    {
        if (sgn(c) == 0 || grade(x) > m_max) {
            return;
        }
        auto [it, fresh] = m_terms.try_emplace(x, c);
        if (!fresh) {
            it->second += c;
            if (sgn(it->second) == 0) {
                m_terms.erase(it);
            }
        }
    }

    Rational coefficient(const LatticePoint &x) const
    {
        auto it = m_terms.find(x);
        return it == m_terms.end() ? Rational(0) : it->second;
    }

    std::int64_t min_grade() const
    {
        std::int64_t m = m_max + 1;
        for (const auto &[x, c] : m_terms) {
            m = std::min(m, grade(x));
        }
        return m;
    }

    GradedSeries &operator+=(const GradedSeries &o)
    {
        compatible(o);
        for (const auto &[x, c] : o.m_terms) {
            add(x, c);
        }
        return *this;
    }
    GradedSeries &operator-=(const GradedSeries &o)
    {
        compatible(o);
        for (const auto &[x, c] : o.m_terms) {
            add(x, -c);
        }
        return *this;
    }
    friend GradedSeries operator+(GradedSeries a, const GradedSeries &b)
    {
        return a += b;
    }
    friend GradedSeries operator-(GradedSeries a, const GradedSeries &b)
    {
        return a -= b;
    }

    friend GradedSeries operator*(const GradedSeries &a, const GradedSeries &b)
    {
        a.compatible(b);
        GradedSeries out(a.m_w, a.m_max);
        std::vector<std::pair<const LatticePoint *, std::int64_t>> bg;
        bg.reserve(b.m_terms.size());
        for (const auto &[y, d] : b.m_terms) {
            bg.emplace_back(&y, b.grade(y));
        }
        LatticePoint z(a.m_w.size());
        for (const auto &[x, c] : a.m_terms) {
            const std::int64_t gx = a.grade(x);
            std::size_t n = 0;
            for (const auto &[y, d] : b.m_terms) {
                if (gx + bg[n++].second > a.m_max) {
                    continue;
                }
                for (std::size_t k = 0; k < z.size(); ++k) {
                    z[k] = x[k] + y[k];
                }
                out.add(z, c * d);
            }
        }
        return out;
    }

    GradedSeries scaled(const Rational &r) const
    {
        GradedSeries out(m_w, m_max);
        for (const auto &[x, c] : m_terms) {
            out.add(x, c * r);
        }
        return out;
    }

    friend bool operator==(const GradedSeries &a, const GradedSeries &b)
    {
        return a.m_w == b.m_w && a.m_max == b.m_max && a.m_terms == b.m_terms;
    }

private:
    void compatible(const GradedSeries &o) const
    {
        if (m_w != o.m_w || m_max != o.m_max) {
            throw DimensionMismatch("graded series with different gradings or grade bounds");
        }
    }

    LatticePoint m_w;
    std::int64_t m_max = 0;
    map_type m_terms;
};

namespace detail
{

inline void require_positive_grades(const GradedSeries &u, const char *what)
{
    if (!u.is_zero() && u.min_grade() < 1) {
        throw std::invalid_argument(std::string(what) + ": argument has a term of grade < 1");
    }
}

} // namespace detail

// (1 + u)^{-1} = sum_k (-u)^k, exact up to the grade bound.
inline GradedSeries inverse_one_plus(const GradedSeries &u)
{
    detail::require_positive_grades(u, "inverse_one_plus");
    GradedSeries out = GradedSeries::one(u.grading(), u.max_grade());
    GradedSeries power = out;
    const GradedSeries neg = u.scaled(Rational(-1));
    for (std::int64_t k = 1; k <= u.max_grade(); ++k) {
        power = power * neg;
        if (power.is_zero()) {
            break;
        }
        out += power;
    }
    return out;
}

// exp(h) = sum_k h^k / k!
inline GradedSeries exp_series(const GradedSeries &h)
{
    detail::require_positive_grades(h, "exp_series");
    GradedSeries out = GradedSeries::one(h.grading(), h.max_grade());
    GradedSeries term = out;
    for (std::int64_t k = 1; k <= h.max_grade(); ++k) {
        term = (term * h).scaled(Rational(1, static_cast<unsigned long>(k)));
        if (term.is_zero()) {
            break;
        }
        out += term;
    }
    return out;
}

// log(1 + u) = sum_k (-1)^{k+1} u^k / k
inline GradedSeries log_one_plus(const GradedSeries &u)
{
    detail::require_positive_grades(u, "log_one_plus");
    GradedSeries out(u.grading(), u.max_grade());
    GradedSeries power = GradedSeries::one(u.grading(), u.max_grade());
    for (std::int64_t k = 1; k <= u.max_grade(); ++k) {
        power = power * u;
        if (power.is_zero()) {
            break;
        }
        out += power.scaled(Rational(k % 2 ? 1 : -1, static_cast<unsigned long>(k)));
    }
    return out;
}

} // namespace gkz
