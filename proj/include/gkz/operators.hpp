#pragma once

// Symbolic application of the box operators
//   box_l = prod_{l_i>0} d_i^{l_i} - prod_{l_i<0} d_i^{-l_i}     (l in L)
// and the Euler operators
//   Z_i = sum_j a_ij lambda_j d_j - beta_i
// to LogSeries, and exact vanishing checks on the region where a truncated
// series determines the operator image completely.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "logseries.hpp"
#include "parallel.hpp"
#include "rational.hpp"

namespace gkz
{

inline LogSeries differentiate(const LogSeries &s, std::size_t j)
{
    if (j >= s.dim()) {
        throw DimensionMismatch("differentiate: index out of range");
    }
    LogSeries out(s.dim(), s.meta());
    for (const auto &[k, c] : s.terms()) {
        RationalVector e = k.exponent;
        e[j] -= 1;
        if (sgn(k.exponent[j]) != 0) {
            out.add_term(e, k.logdeg, c * k.exponent[j]);
        }
        if (k.logdeg[j] > 0) {
            LogDegree d = k.logdeg;
            --d[j];
            out.add_term(std::move(e), std::move(d), c * static_cast<long>(k.logdeg[j]));
        }
    }
    return out;
}

class BoxOp
{
public:
    explicit BoxOp(LatticePoint l) : m_l(std::move(l))
    {
        m_plus.resize(m_l.size());
        m_minus.resize(m_l.size());
        for (std::size_t i = 0; i < m_l.size(); ++i) {
            m_plus[i] = std::max<std::int64_t>(m_l[i], 0);
            m_minus[i] = std::max<std::int64_t>(-m_l[i], 0);
        }
    }
    // Checks A l = 0.
    BoxOp(LatticePoint l, const IntMatrix &a) : BoxOp(std::move(l))
    {
        for (const auto &x : a.apply(std::span<const std::int64_t>(m_l))) {
            if (sgn(x) != 0) {
                throw InputError("box operator vector is not a relation of A");
            }
        }
    }

    const LatticePoint &relation() const noexcept
    {
        return m_l;
    }
    const LatticePoint &plus() const noexcept
    {
        return m_plus;
    }
    const LatticePoint &minus() const noexcept
    {
        return m_minus;
    }

private:
    LatticePoint m_l, m_plus, m_minus;
};

inline LogSeries apply_derivatives(LogSeries s, std::span<const std::int64_t> powers)
{
    for (std::size_t j = 0; j < powers.size(); ++j) {
        for (std::int64_t t = 0; t < powers[j]; ++t) {
            s = differentiate(s, j);
        }
    }
    return s;
}

inline LogSeries apply_box(const LogSeries &s, const BoxOp &op)
{
    if (op.relation().size() != s.dim()) {
        throw DimensionMismatch("apply_box: operator and series dimensions differ");
    }
    return apply_derivatives(s, op.plus()) - apply_derivatives(s, op.minus());
}

// Z_i applied to S, for row i of A and beta_i.
inline LogSeries apply_euler(const LogSeries &s, const IntMatrix &a, std::size_t row, const Rational &beta_i)
{
    if (a.cols() != s.dim() || row >= a.rows()) {
        throw DimensionMismatch("apply_euler: matrix does not match series");
    }
    LogSeries out(s.dim(), s.meta());
    for (const auto &[k, c] : s.terms()) {
        Rational weight = -beta_i;
        for (std::size_t j = 0; j < s.dim(); ++j) {
            if (sgn(a(row, j)) != 0) {
                weight += Rational(a(row, j)) * k.exponent[j];
            }
        }
        out.add_term(k.exponent, k.logdeg, c * weight);
        for (std::size_t j = 0; j < s.dim(); ++j) {
            if (k.logdeg[j] > 0 && sgn(a(row, j)) != 0) {
                LogDegree d = k.logdeg;
                --d[j];
                out.add_term(k.exponent, std::move(d), c * Rational(a(row, j)) * static_cast<long>(k.logdeg[j]));
            }
        }
    }
    return out;
}

struct Violation {
    std::string op;
    RationalVector exponent;
    LogDegree logdeg;
    Rational coeff;
};

struct CertifiedReport {
    std::size_t checked_term_count = 0;
    std::size_t uncertified_term_count = 0;
    std::vector<Violation> violations;

    bool pass() const noexcept
    {
        return violations.empty();
    }

    CertifiedReport &operator+=(const CertifiedReport &o)
    {
        checked_term_count += o.checked_term_count;
        uncertified_term_count += o.uncertified_term_count;
        violations.insert(violations.end(), o.violations.begin(), o.violations.end());
        return *this;
    }
};

inline std::string op_label(const std::string &name, std::span<const std::int64_t> v)
{
    std::string s = name + "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s + ")";
}

inline void write_report(std::ostream &os, const CertifiedReport &r)
{
    os << "status " << (r.pass() ? "PASS" : "FAIL") << '\n';
    os << "checked " << r.checked_term_count << '\n';
    os << "uncertified " << r.uncertified_term_count << '\n';
    os << "violations " << r.violations.size() << '\n';
    for (const auto &v : r.violations) {
        os << v.op << " | " << to_string(v.coeff) << " * lambda^";
        detail::write_tuple(os, v.exponent, [](const Rational &q) { return to_string(q); });
        os << " * log^";
        detail::write_tuple(os, v.logdeg, [](std::int64_t x) { return std::to_string(x); });
        os << '\n';
    }
}

namespace detail
{

// Is lambda^u's lattice offset from the base inside the truncation box?
inline bool source_in_box(const Truncation &t, const RationalVector &u)
{
    RationalVector offset(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        offset[j] = u[j] - t.base[j];
    }
    auto coords = t.lattice.coordinates(std::span<const Rational>(offset));
    if (!coords) {
        throw NonLatticeExponent("exponent offset does not lie in the relation lattice; the series was not "
                                 "built from its recorded base exponent");
    }
    return in_box(*coords, t.radius);
}

inline RationalVector add(const RationalVector &u, std::span<const std::int64_t> d)
{
    RationalVector out = u;
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] += static_cast<long>(d[j]);
    }
    return out;
}

} // namespace detail

// Applies box_l and checks that the image vanishes at every exponent u whose two
// source exponents u + l+ and u + l- lie in the truncation box; only there is the
// truncated image equal to the image of the full series.
inline CertifiedReport verify_box_annihilation(const LogSeries &s, const BoxOp &op, unsigned threads = 1)
{
    CertifiedReport rep;
    if (s.is_zero()) {
        return rep;
    }
    if (!s.meta()) {
        throw InputError("verify_box_annihilation: series carries no truncation metadata");
    }
    const Truncation &t = *s.meta();
    const LogSeries image = apply_box(s, op);

    std::set<RationalVector> candidates;
    for (const auto &[k, c] : s.terms()) {
        RationalVector u1 = k.exponent, u2 = k.exponent;
        for (std::size_t j = 0; j < u1.size(); ++j) {
            u1[j] -= static_cast<long>(op.plus()[j]);
            u2[j] -= static_cast<long>(op.minus()[j]);
        }
        candidates.insert(std::move(u1));
        candidates.insert(std::move(u2));
    }
    std::vector<RationalVector> cand(candidates.begin(), candidates.end());
    std::vector<char> certified(cand.size(), 0);
    parallel_for(cand.size(), threads, [&](std::size_t n) {
        certified[n] = detail::source_in_box(t, detail::add(cand[n], op.plus()))
                       && detail::source_in_box(t, detail::add(cand[n], op.minus()));
    });
    std::set<RationalVector> certified_set;
    for (std::size_t n = 0; n < cand.size(); ++n) {
        if (certified[n]) {
            ++rep.checked_term_count;
            certified_set.insert(cand[n]);
        } else {
            ++rep.uncertified_term_count;
        }
    }
    const std::string label = op_label("box", op.relation());
    for (const auto &[k, c] : image.terms()) {
        if (certified_set.count(k.exponent)) {
            rep.violations.push_back({label, k.exponent, k.logdeg, c});
        }
    }
    return rep;
}

// Every Euler operator must annihilate S exactly (no truncation margin needed
// since Z_i preserves exponents).
inline CertifiedReport verify_euler_annihilation(const LogSeries &s, const IntMatrix &a,
                                                 std::span<const Rational> beta)
{
    if (beta.size() != a.rows()) {
        throw DimensionMismatch("verify_euler_annihilation: beta length differs from row count");
    }
    CertifiedReport rep;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        rep.checked_term_count += s.size();
        const LogSeries image = apply_euler(s, a, i, beta[i]);
        for (const auto &[k, c] : image.terms()) {
            rep.violations.push_back({"euler(" + std::to_string(i + 1) + ")", k.exponent, k.logdeg, c});
        }
    }
    return rep;
}

// Box operators for each basis vector b_k and each b_k +/- b_m (k < m).
inline std::vector<BoxOp> standard_box_ops(const RelationLattice &lat)
{
    std::vector<BoxOp> ops;
    const std::size_t r = lat.rank();
    for (std::size_t k = 0; k < r; ++k) {
        ops.emplace_back(lat.basis_vector(k));
    }
    for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t m = k + 1; m < r; ++m) {
            for (int sign : {1, -1}) {
                LatticePoint c(r, 0);
                c[k] = 1;
                c[m] = sign;
                ops.emplace_back(lat.point(c));
            }
        }
    }
    return ops;
}

inline CertifiedReport verify_box_all(const LogSeries &s, const std::vector<BoxOp> &ops, unsigned threads = 1)
{
    CertifiedReport rep;
    for (const auto &op : ops) {
        rep += verify_box_annihilation(s, op, threads);
    }
    return rep;
}

} // namespace gkz
