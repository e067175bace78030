#pragma once

// Constructive builders for the logarithm-free series F, the first-order
// corrections G_i, the second-order corrections H_ij, and the combinations that
// turn complete sets of quasisolutions into solutions.
//
// Every builder sums over the lattice points of a support set inside the
// coefficient box of radius R, so the outputs are exact truncations: each
// coefficient at a lattice point of the box equals the coefficient of the
// infinite series.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coefficients.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "logseries.hpp"
#include "parallel.hpp"
#include "support.hpp"

namespace gkz
{

namespace detail
{

inline void require_bracket(const Rational &z, std::int64_t k, std::size_t index)
{
    if (!bracket_defined(z, k)) {
        throw MinimalityViolation("coefficient [" + to_string(z) + "]_" + std::to_string(k) + " at index "
                                  + std::to_string(index + 1)
                                  + " is undefined; the minimal negative support hypothesis does not hold");
    }
}

// prod_{j not in skip} [v_j]_{l_j}
inline Rational bracket_except(std::span<const Rational> v, std::span<const std::int64_t> l,
                               std::initializer_list<std::size_t> skip)
{
    Rational r(1);
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (std::find(skip.begin(), skip.end(), j) != skip.end()) {
            continue;
        }
        require_bracket(v[j], l[j], j);
        r *= bracket(v[j], l[j]);
    }
    return r;
}

inline RationalVector shifted_exponent(std::span<const Rational> v, std::span<const std::int64_t> l)
{
    RationalVector e(v.begin(), v.end());
    for (std::size_t j = 0; j < e.size(); ++j) {
        e[j] += static_cast<long>(l[j]);
    }
    return e;
}

template <typename Coefficient>
LogSeries build_over(std::span<const Rational> v, const RelationLattice &lat, std::int64_t radius,
                     const IndexSet &excluded, unsigned threads, Coefficient coefficient)
{
    if (v.size() != lat.ambient_dim()) {
        throw DimensionMismatch("builder: v has length " + std::to_string(v.size()) + ", lattice is in Z^"
                                + std::to_string(lat.ambient_dim()));
    }
    auto pts = support_set(v, lat, radius, excluded);
    std::vector<Rational> coeffs(pts.size());
    parallel_for(pts.size(), threads, [&](std::size_t n) { coeffs[n] = coefficient(pts[n].point); });
    const std::size_t dim = v.size();
    LogSeries s(dim, Truncation{RationalVector(v.begin(), v.end()), lat, radius});
    for (std::size_t n = 0; n < pts.size(); ++n) {
        s.add_term(shifted_exponent(v, pts[n].point), LogDegree(dim, 0), coeffs[n]);
    }
    return s;
}

} // namespace detail

// Case factor of the first-order correction for the coordinate being logged:
//   0                        if k = 0
//   -[z]_k m_{k,1}(z)        if k > 0
//   s_{-k,-k-1}(z)           if k < 0
inline Rational first_order_factor(const Rational &z, std::int64_t k)
{
    if (k == 0) {
        return Rational(0);
    }
    if (k > 0) {
        if (!bracket_defined(z, k)) {
            throw MinimalityViolation("first-order factor undefined at z = " + to_string(z) + ", k = "
                                      + std::to_string(k));
        }
        return -bracket(z, k) * mono_sum_shifted(k, 1, z);
    }
    return elem_sym_shifted(-k, -k - 1, z);
}

// Case factor of the second-order diagonal correction:
//   0                        if k = 0 or k = -1
//   2 [z]_k m_{k,2}(z)       if k > 0
//   2 s_{-k,-k-2}(z)         if k <= -2
inline Rational second_order_factor(const Rational &z, std::int64_t k)
{
    if (k == 0 || k == -1) {
        return Rational(0);
    }
    if (k > 0) {
        if (!bracket_defined(z, k)) {
            throw MinimalityViolation("second-order factor undefined at z = " + to_string(z) + ", k = "
                                      + std::to_string(k));
        }
        return 2 * bracket(z, k) * mono_sum_shifted(k, 2, z);
    }
    return 2 * elem_sym_shifted(-k, -k - 2, z);
}

// F = sum_{l in L_v} [v]_l lambda^{v+l}
inline LogSeries build_F(std::span<const Rational> v, const RelationLattice &lat, std::int64_t radius,
                         unsigned threads = 1)
{
    return detail::build_over(v, lat, radius, {}, threads,
                              [&](const LatticePoint &l) { return detail::bracket_except(v, l, {}); });
}

// G_i over L_{v,i^}; F log(lambda_i) + G_i is a quasisolution.
inline LogSeries build_G(std::span<const Rational> v, std::size_t i, const RelationLattice &lat,
                         std::int64_t radius, unsigned threads = 1)
{
    return detail::build_over(v, lat, radius, IndexSet{i}, threads, [&](const LatticePoint &l) {
        Rational f = first_order_factor(v[i], l[i]);
        return sgn(f) == 0 ? f : Rational(f * detail::bracket_except(v, l, {i}));
    });
}

// H_ii over L_{v,i^}; F log^2(lambda_i) + 2 G_i log(lambda_i) + H_ii is a
// second-order quasisolution.
inline LogSeries build_H_diag(std::span<const Rational> v, std::size_t i, const RelationLattice &lat,
                              std::int64_t radius, unsigned threads = 1)
{
    return detail::build_over(v, lat, radius, IndexSet{i}, threads, [&](const LatticePoint &l) {
        Rational f = second_order_factor(v[i], l[i]);
        return sgn(f) == 0 ? f : Rational(f * detail::bracket_except(v, l, {i}));
    });
}

// H_ij (i != j) over L_{v,i^j^}.
inline LogSeries build_H_off(std::span<const Rational> v, std::size_t i, std::size_t j, const RelationLattice &lat,
                             std::int64_t radius, unsigned threads = 1)
{
    if (i == j) {
        return build_H_diag(v, i, lat, radius, threads);
    }
    IndexSet ex = i < j ? IndexSet{i, j} : IndexSet{j, i};
    return detail::build_over(v, lat, radius, ex, threads, [&](const LatticePoint &l) {
        Rational fi = first_order_factor(v[i], l[i]);
        if (sgn(fi) == 0) {
            return fi;
        }
        Rational fj = first_order_factor(v[j], l[j]);
        if (sgn(fj) == 0) {
            return fj;
        }
        return Rational(fi * fj * detail::bracket_except(v, l, {i, j}));
    });
}

// F log(lambda_i) + G_i
inline LogSeries first_order_quasisolution(const LogSeries &F, const LogSeries &Gi, std::size_t i)
{
    return mul_log(F, i) + Gi;
}

// F log(lambda_i) log(lambda_j) + G_i log(lambda_j) + G_j log(lambda_i) + H_ij
inline LogSeries second_order_quasisolution(const LogSeries &F, const LogSeries &Gi, const LogSeries &Gj,
                                            const LogSeries &Hij, std::size_t i, std::size_t j)
{
    return mul_log(mul_log(F, i), j) + mul_log(Gi, j) + mul_log(Gj, i) + Hij;
}

// Symmetric table of H_ij; only the entries a combination actually needs have to
// be present.
class HTable
{
public:
    explicit HTable(std::size_t dim) : m_dim(dim) {}

    std::size_t dim() const noexcept
    {
        return m_dim;
    }

    void set(std::size_t i, std::size_t j, LogSeries h)
    {
        check(i, j);
        m_entries.insert_or_assign({i, j}, std::move(h));
    }

    bool contains(std::size_t i, std::size_t j) const
    {
        return m_entries.count({i, j}) || m_entries.count({j, i});
    }

    // Throws AsymmetricTable when both (i,j) and (j,i) are stored and differ.
    const LogSeries &at(std::size_t i, std::size_t j) const
    {
        check(i, j);
        auto a = m_entries.find({i, j});
        auto b = m_entries.find({j, i});
        if (a != m_entries.end() && b != m_entries.end() && !(a->second == b->second)) {
            throw AsymmetricTable("H_" + std::to_string(i + 1) + std::to_string(j + 1) + " != H_"
                                  + std::to_string(j + 1) + std::to_string(i + 1));
        }
        if (a != m_entries.end()) {
            return a->second;
        }
        if (b != m_entries.end()) {
            return b->second;
        }
        throw std::out_of_range("HTable: no entry for (" + std::to_string(i + 1) + "," + std::to_string(j + 1)
                                + ")");
    }

    void require_symmetric() const
    {
        for (const auto &[key, h] : m_entries) {
            (void)at(key.first, key.second);
        }
    }

private:
    void check(std::size_t i, std::size_t j) const
    {
        if (i >= m_dim || j >= m_dim) {
            throw DimensionMismatch("HTable: index out of range");
        }
    }

    std::size_t m_dim;
    std::map<std::pair<std::size_t, std::size_t>, LogSeries> m_entries;
};

// Builds every H_ij with l_i l'_j != 0 (both orders share one series).
inline HTable build_H_table(std::span<const Rational> v, const RelationLattice &lat, std::int64_t radius,
                            std::span<const std::int64_t> l, std::span<const std::int64_t> lp, unsigned threads = 1)
{
    HTable t(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (l[i] == 0 || lp[j] == 0 || t.contains(i, j)) {
                continue;
            }
            t.set(std::min(i, j), std::max(i, j), build_H_off(v, std::min(i, j), std::max(i, j), lat, radius, threads));
        }
    }
    return t;
}

// F log(lambda^l) + sum_i l_i G_i
inline LogSeries combine_first_order(const LogSeries &F, const std::vector<LogSeries> &G,
                                     std::span<const std::int64_t> l)
{
    if (G.size() != F.dim() || l.size() != F.dim()) {
        throw DimensionMismatch("combine_first_order: need one G_i and one l_i per coordinate");
    }
    LogSeries out = mul_log_linear(F, l);
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (l[i] != 0) {
            out += scale(G[i], static_cast<long>(l[i]));
        }
    }
    return out;
}

// F log(lambda^l) log(lambda^l') + (sum l_i G_i) log(lambda^l') + (sum l'_j G_j) log(lambda^l)
//   + sum_{i,j} l_i l'_j H_ij
inline LogSeries combine_second_order(const LogSeries &F, const std::vector<LogSeries> &G, const HTable &H,
                                      std::span<const std::int64_t> l, std::span<const std::int64_t> lp)
{
    const std::size_t n = F.dim();
    if (G.size() != n || l.size() != n || lp.size() != n || H.dim() != n) {
        throw DimensionMismatch("combine_second_order: dimension mismatch");
    }
    H.require_symmetric();
    LogSeries out = mul_log_linear(mul_log_linear(F, l), lp);
    LogSeries gl(n, F.meta());
    LogSeries glp(n, F.meta());
    for (std::size_t i = 0; i < n; ++i) {
        if (l[i] != 0) {
            gl += scale(G[i], static_cast<long>(l[i]));
        }
        if (lp[i] != 0) {
            glp += scale(G[i], static_cast<long>(lp[i]));
        }
    }
    out += mul_log_linear(gl, lp);
    out += mul_log_linear(glp, l);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (l[i] != 0 && lp[j] != 0) {
                out += scale(H.at(i, j), Rational(static_cast<long>(l[i])) * static_cast<long>(lp[j]));
            }
        }
    }
    return out;
}

} // namespace gkz
