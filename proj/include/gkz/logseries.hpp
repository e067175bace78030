#pragma once

// Sparse truncated series  sum c * lambda^e * prod_i log^{d_i}(lambda_i)
// with exact rational exponents and coefficients.
//
// Text form (one term per line, canonical order):
//
//   # gkz-series v1
//   # base (v1,...,vN)
//   # radius R
//   # basis (b11,...,b1N)
//   coeff * lambda^(e1,...,eN) * log^(d1,...,dN)
//
// Rationals print as "p/q", or "p" when integral. Header lines are optional;
// the three metadata lines appear only for series that carry truncation data.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "rational.hpp"

namespace gkz
{

using LogDegree = std::vector<std::int64_t>;

// Where a truncated series came from: base exponent v, its relation lattice and
// the coefficient-box radius used to enumerate it.
struct Truncation {
    RationalVector base;
    RelationLattice lattice;
    std::int64_t radius = 0;

    friend bool operator==(const Truncation &, const Truncation &) = default;
};

struct TermKey {
    RationalVector exponent;
    LogDegree logdeg;

    friend bool operator==(const TermKey &, const TermKey &) = default;
    friend bool operator<(const TermKey &a, const TermKey &b)
    {
        if (a.exponent != b.exponent) {
            return std::lexicographical_compare(a.exponent.begin(), a.exponent.end(), b.exponent.begin(),
                                                b.exponent.end());
        }
        return a.logdeg < b.logdeg;
    }
};

struct LogTerm {
    RationalVector exponent;
    LogDegree logdeg;
    Rational coeff;
};

class LogSeries
{
public:
    using map_type = std::map<TermKey, Rational>;

    LogSeries() = default;
    explicit LogSeries(std::size_t dim, std::optional<Truncation> meta = std::nullopt)
        : m_dim(dim), m_meta(std::move(meta))
    {
        if (m_meta && m_meta->base.size() != dim) {
            throw DimensionMismatch("LogSeries: truncation base has wrong length");
        }
    }

    std::size_t dim() const noexcept
    {
        return m_dim;
    }
    const std::optional<Truncation> &meta() const noexcept
    {
        return m_meta;
    }
    void set_meta(std::optional<Truncation> meta)
    {
        m_meta = std::move(meta);
    }

    std::size_t size() const noexcept
    {
        return m_terms.size();
    }
    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    const map_type &terms() const noexcept
    {
        return m_terms;
    }

    void add_term(RationalVector exponent, LogDegree logdeg, const Rational &coeff)
    {
        if (exponent.size() != m_dim || logdeg.size() != m_dim) {
            throw DimensionMismatch("LogSeries::add_term: expected length " + std::to_string(m_dim));
        }
        if (sgn(coeff) == 0) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(TermKey{std::move(exponent), std::move(logdeg)}, coeff);
        if (!inserted) {
            it->second += coeff;
            if (sgn(it->second) == 0) {
                m_terms.erase(it);
            }
        }
    }

    Rational coefficient(const RationalVector &exponent, const LogDegree &logdeg) const
    {
        auto it = m_terms.find(TermKey{exponent, logdeg});
        return it == m_terms.end() ? Rational(0) : it->second;
    }

    // Coefficient of the log-free monomial lambda^exponent.
    Rational coefficient(const RationalVector &exponent) const
    {
        return coefficient(exponent, LogDegree(m_dim, 0));
    }

    // Part of the series with the given log multidegree, as a log-free series.
    LogSeries log_part(const LogDegree &logdeg) const
    {
        LogSeries out(m_dim, m_meta);
        for (const auto &[k, c] : m_terms) {
            if (k.logdeg == logdeg) {
                out.add_term(k.exponent, LogDegree(m_dim, 0), c);
            }
        }
        return out;
    }

    std::int64_t max_total_logdeg() const
    {
        std::int64_t m = 0;
        for (const auto &[k, c] : m_terms) {
            std::int64_t s = 0;
            for (auto d : k.logdeg) {
                s += d;
            }
            m = std::max(m, s);
        }
        return m;
    }

    LogSeries &operator+=(const LogSeries &o)
    {
        merge_meta(o);
        for (const auto &[k, c] : o.m_terms) {
            add_term(k.exponent, k.logdeg, c);
        }
        return *this;
    }
    LogSeries &operator-=(const LogSeries &o)
    {
        merge_meta(o);
        for (const auto &[k, c] : o.m_terms) {
            add_term(k.exponent, k.logdeg, -c);
        }
        return *this;
    }
    friend LogSeries operator+(LogSeries a, const LogSeries &b)
    {
        a += b;
        return a;
    }
    friend LogSeries operator-(LogSeries a, const LogSeries &b)
    {
        a -= b;
        return a;
    }
    friend LogSeries operator-(LogSeries a)
    {
        for (auto &[k, c] : a.m_terms) {
            c = -c;
        }
        return a;
    }

    // Series equality ignores truncation metadata.
    friend bool operator==(const LogSeries &a, const LogSeries &b)
    {
        return a.m_dim == b.m_dim && a.m_terms == b.m_terms;
    }

private:
    void merge_meta(const LogSeries &o)
    {
        if (o.m_dim != m_dim) {
            throw DimensionMismatch("LogSeries: adding series of dimensions " + std::to_string(m_dim) + " and "
                                    + std::to_string(o.m_dim));
        }
        if (!m_meta) {
            m_meta = o.m_meta;
        } else if (o.m_meta && !(*o.m_meta == *m_meta)) {
            throw DimensionMismatch("LogSeries: combining series with different truncations");
        }
    }

    std::size_t m_dim = 0;
    map_type m_terms;
    std::optional<Truncation> m_meta;
};

inline LogSeries scale(LogSeries s, const Rational &r)
{
    if (sgn(r) == 0) {
        return LogSeries(s.dim(), s.meta());
    }
    LogSeries out(s.dim(), s.meta());
    for (const auto &[k, c] : s.terms()) {
        out.add_term(k.exponent, k.logdeg, c * r);
    }
    return out;
}

// S * sum_i l_i log(lambda_i) = S * log(lambda^l)
inline LogSeries mul_log_linear(const LogSeries &s, std::span<const std::int64_t> l)
{
    if (l.size() != s.dim()) {
        throw DimensionMismatch("mul_log_linear: vector length differs from series dimension");
    }
    LogSeries out(s.dim(), s.meta());
    for (const auto &[k, c] : s.terms()) {
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (l[i] == 0) {
                continue;
            }
            LogDegree d = k.logdeg;
            ++d[i];
            out.add_term(k.exponent, std::move(d), c * static_cast<long>(l[i]));
        }
    }
    return out;
}

// S * log(lambda_i)
inline LogSeries mul_log(const LogSeries &s, std::size_t i)
{
    LatticePoint e(s.dim(), 0);
    e.at(i) = 1;
    return mul_log_linear(s, e);
}

inline LogSeries restrict_to_region(const LogSeries &s, const std::function<bool(const TermKey &)> &keep)
{
    LogSeries out(s.dim(), s.meta());
    for (const auto &[k, c] : s.terms()) {
        if (keep(k)) {
            out.add_term(k.exponent, k.logdeg, c);
        }
    }
    return out;
}

namespace detail
{

template <typename T, typename Fmt>
void write_tuple(std::ostream &os, const std::vector<T> &xs, Fmt fmt)
{
    os << '(';
    for (std::size_t i = 0; i < xs.size(); ++i) {
        os << (i ? "," : "") << fmt(xs[i]);
    }
    os << ')';
}

inline std::vector<std::string> split_tuple(const std::string &text, std::size_t line)
{
    auto open = text.find('(');
    auto close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open) {
        throw InputError("line " + std::to_string(line) + ": expected a parenthesized tuple in '" + text + "'");
    }
    std::vector<std::string> parts;
    std::string inner = text.substr(open + 1, close - open - 1);
    if (inner.find_first_not_of(" \t") == std::string::npos) {
        return parts;
    }
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
        parts.push_back(item);
    }
    return parts;
}

inline std::string trim(const std::string &s)
{
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

inline std::int64_t parse_int(const std::string &text, std::size_t line)
{
    const std::string t = trim(text);
    std::int64_t x = 0;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (ec != std::errc() || end != t.data() + t.size() || t.empty()) {
        throw InputError("line " + std::to_string(line) + ": expected an integer, got '" + t + "'");
    }
    return x;
}

} // namespace detail

inline void write_series(std::ostream &os, const LogSeries &s)
{
    os << "# gkz-series v1\n";
    os << "# dim " << s.dim() << '\n';
    if (const auto &m = s.meta()) {
        os << "# base ";
        detail::write_tuple(os, m->base, [](const Rational &q) { return to_string(q); });
        os << "\n# radius " << m->radius << '\n';
        for (std::size_t k = 0; k < m->lattice.rank(); ++k) {
            os << "# basis ";
            detail::write_tuple(os, m->lattice.basis_vector(k), [](std::int64_t x) { return std::to_string(x); });
            os << '\n';
        }
    }
    for (const auto &[k, c] : s.terms()) {
        os << to_string(c) << " * lambda^";
        detail::write_tuple(os, k.exponent, [](const Rational &q) { return to_string(q); });
        os << " * log^";
        detail::write_tuple(os, k.logdeg, [](std::int64_t x) { return std::to_string(x); });
        os << '\n';
    }
}

inline std::string to_text(const LogSeries &s)
{
    std::ostringstream os;
    write_series(os, s);
    return os.str();
}

inline LogSeries read_series(std::istream &is)
{
    std::optional<std::size_t> dim;
    std::optional<RationalVector> base;
    std::optional<std::int64_t> radius;
    std::vector<LatticePoint> basis;
    std::vector<LogTerm> terms;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty()) {
            continue;
        }
        if (t[0] == '#') {
            std::string body = detail::trim(t.substr(1));
            if (body.rfind("dim ", 0) == 0) {
                dim = static_cast<std::size_t>(detail::parse_int(body.substr(4), lineno));
            } else if (body.rfind("base ", 0) == 0) {
                RationalVector b;
                for (const auto &p : detail::split_tuple(body, lineno)) {
                    b.push_back(parse_rational(p));
                }
                base = std::move(b);
            } else if (body.rfind("radius ", 0) == 0) {
                radius = detail::parse_int(body.substr(7), lineno);
            } else if (body.rfind("basis ", 0) == 0) {
                LatticePoint b;
                for (const auto &p : detail::split_tuple(body, lineno)) {
                    b.push_back(detail::parse_int(p, lineno));
                }
                basis.push_back(std::move(b));
            }
            continue;
        }
        auto lam = t.find("* lambda^");
        auto lg = t.find("* log^");
        if (lam == std::string::npos || lg == std::string::npos || lg < lam) {
            throw InputError("line " + std::to_string(lineno) + ": malformed term '" + t + "'");
        }
        LogTerm term;
        term.coeff = parse_rational(t.substr(0, lam));
        for (const auto &p : detail::split_tuple(t.substr(lam, lg - lam), lineno)) {
            term.exponent.push_back(parse_rational(p));
        }
        for (const auto &p : detail::split_tuple(t.substr(lg), lineno)) {
            term.logdeg.push_back(detail::parse_int(p, lineno));
        }
        terms.push_back(std::move(term));
    }
    std::size_t n = dim ? *dim : (terms.empty() ? 0 : terms.front().exponent.size());
    std::optional<Truncation> meta;
    if (base && radius) {
        IntMatrix b(basis.size(), n);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (basis[k].size() != n) {
                throw InputError("basis vector length differs from series dimension");
            }
            for (std::size_t j = 0; j < n; ++j) {
                b(k, j) = static_cast<long>(basis[k][j]);
            }
        }
        meta = Truncation{*base, RelationLattice::from_basis(n, b), *radius};
    }
    LogSeries s(n, std::move(meta));
    for (auto &t : terms) {
        s.add_term(std::move(t.exponent), std::move(t.logdeg), t.coeff);
    }
    return s;
}

inline LogSeries from_text(const std::string &text)
{
    std::istringstream is(text);
    return read_series(is);
}

} // namespace gkz
