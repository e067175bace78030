#pragma once

// Integer relation lattices L = ker_Z(A) and bounded enumeration of their points.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace gkz
{

using LatticePoint = std::vector<std::int64_t>;

class IntMatrix
{
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : m_rows(rows), m_cols(cols), m_data(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    {
        m_rows = rows.size();
        m_cols = m_rows ? rows.begin()->size() : 0;
        m_data.reserve(m_rows * m_cols);
        for (const auto &r : rows) {
            if (r.size() != m_cols) {
                throw DimensionMismatch("IntMatrix: ragged initializer");
            }
            for (long x : r) {
                m_data.emplace_back(x);
            }
        }
    }
    static IntMatrix from_rows(const std::vector<std::vector<Integer>> &rows)
    {
        IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.m_cols) {
                throw DimensionMismatch("IntMatrix: ragged rows");
            }
            for (std::size_t j = 0; j < m.m_cols; ++j) {
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }
    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    std::size_t rows() const noexcept
    {
        return m_rows;
    }
    std::size_t cols() const noexcept
    {
        return m_cols;
    }
    Integer &operator()(std::size_t i, std::size_t j)
    {
        return m_data[i * m_cols + j];
    }
    const Integer &operator()(std::size_t i, std::size_t j) const
    {
        return m_data[i * m_cols + j];
    }

    IntMatrix transposed() const
    {
        IntMatrix t(m_cols, m_rows);
        for (std::size_t i = 0; i < m_rows; ++i) {
            for (std::size_t j = 0; j < m_cols; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    // A * x for a rational column vector.
    RationalVector apply(std::span<const Rational> x) const
    {
        if (x.size() != m_cols) {
            throw DimensionMismatch("IntMatrix::apply: expected length " + std::to_string(m_cols));
        }
        RationalVector y(m_rows, Rational(0));
        for (std::size_t i = 0; i < m_rows; ++i) {
            for (std::size_t j = 0; j < m_cols; ++j) {
                if (sgn((*this)(i, j)) != 0) {
                    y[i] += Rational((*this)(i, j)) * x[j];
                }
            }
        }
        return y;
    }

    std::vector<Integer> apply(std::span<const std::int64_t> x) const
    {
        if (x.size() != m_cols) {
            throw DimensionMismatch("IntMatrix::apply: expected length " + std::to_string(m_cols));
        }
        std::vector<Integer> y(m_rows, Integer(0));
        for (std::size_t i = 0; i < m_rows; ++i) {
            for (std::size_t j = 0; j < m_cols; ++j) {
                y[i] += (*this)(i, j) * static_cast<long>(x[j]);
            }
        }
        return y;
    }

    friend bool operator==(const IntMatrix &, const IntMatrix &) = default;

    friend std::ostream &operator<<(std::ostream &os, const IntMatrix &m)
    {
        for (std::size_t i = 0; i < m.m_rows; ++i) {
            for (std::size_t j = 0; j < m.m_cols; ++j) {
                os << (j ? " " : "") << m(i, j);
            }
            os << '\n';
        }
        return os;
    }

private:
    std::size_t m_rows = 0;
    std::size_t m_cols = 0;
    std::vector<Integer> m_data;
};

namespace detail
{

inline Integer floor_div(const Integer &a, const Integer &b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline void col_axpy(IntMatrix &m, std::size_t dst, const Integer &factor, std::size_t src)
{
    for (std::size_t r = 0; r < m.rows(); ++r) {
        m(r, dst) += factor * m(r, src);
    }
}

inline void col_swap(IntMatrix &m, std::size_t a, std::size_t b)
{
    for (std::size_t r = 0; r < m.rows(); ++r) {
        swap(m(r, a), m(r, b));
    }
}

inline void col_negate(IntMatrix &m, std::size_t c)
{
    for (std::size_t r = 0; r < m.rows(); ++r) {
        m(r, c) = -m(r, c);
    }
}

// (p, c) <- (x p + y c, -(b/g) p + (a/g) c), a unimodular step clearing entry c.
inline void col_gcd_step(IntMatrix &h, IntMatrix &v, std::size_t p, std::size_t c, std::size_t row)
{
    Integer a = h(row, p);
    Integer b = h(row, c);
    Integer g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer ag = a / g;
    Integer bg = b / g;
    for (IntMatrix *m : {&h, &v}) {
        for (std::size_t r = 0; r < m->rows(); ++r) {
            Integer mp = (*m)(r, p);
            Integer mc = (*m)(r, c);
            (*m)(r, p) = x * mp + y * mc;
            (*m)(r, c) = -bg * mp + ag * mc;
        }
    }
}

} // namespace detail

struct ColumnHermite {
    IntMatrix form;       // M * transform, column echelon with positive reduced pivots
    IntMatrix transform;  // unimodular
    std::size_t rank = 0; // number of pivot columns (the leading ones)
};

// Column-style Hermite normal form by unimodular column operations.
inline ColumnHermite column_hermite(const IntMatrix &m)
{
    IntMatrix h = m;
    IntMatrix v = IntMatrix::identity(m.cols());
    std::size_t pc = 0;
    for (std::size_t row = 0; row < h.rows() && pc < h.cols(); ++row) {
        for (std::size_t c = pc + 1; c < h.cols(); ++c) {
            if (sgn(h(row, c)) == 0) {
                continue;
            }
            if (sgn(h(row, pc)) == 0) {
                detail::col_swap(h, pc, c);
                detail::col_swap(v, pc, c);
                continue;
            }
            detail::col_gcd_step(h, v, pc, c, row);
        }
        if (sgn(h(row, pc)) == 0) {
            continue;
        }
        if (sgn(h(row, pc)) < 0) {
            detail::col_negate(h, pc);
            detail::col_negate(v, pc);
        }
        for (std::size_t c = 0; c < pc; ++c) {
            Integer q = detail::floor_div(h(row, c), h(row, pc));
            if (sgn(q) != 0) {
                detail::col_axpy(h, c, -q, pc);
                detail::col_axpy(v, c, -q, pc);
            }
        }
        ++pc;
    }
    return {std::move(h), std::move(v), pc};
}

// Row-style Hermite normal form: pivots positive, strictly increasing pivot
// columns, entries above each pivot reduced into [0, pivot).
inline IntMatrix row_hermite(const IntMatrix &m)
{
    auto ch = column_hermite(m.transposed());
    IntMatrix t = ch.form.transposed();
    IntMatrix out(ch.rank, m.cols());
    for (std::size_t i = 0; i < ch.rank; ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(i, j) = t(i, j);
        }
    }
    return out;
}

// A saturated basis of ker_Z(A), stored in row Hermite normal form so that the
// choice of basis (and hence all lattice coordinates) is canonical.
class RelationLattice
{
public:
    RelationLattice() = default;

    // Wraps an already-saturated basis (rows). Used when deserializing; the basis is
    // re-normalized to Hermite form.
    static RelationLattice from_basis(std::size_t ambient_dim, const IntMatrix &basis)
    {
        if (basis.rows() > 0 && basis.cols() != ambient_dim) {
            throw DimensionMismatch("RelationLattice: basis width differs from ambient dimension");
        }
        RelationLattice lat;
        lat.m_ambient = ambient_dim;
        lat.m_basis = basis.rows() ? row_hermite(basis) : IntMatrix(0, ambient_dim);
        if (lat.m_basis.rows() != basis.rows()) {
            throw InputError("RelationLattice: basis vectors are linearly dependent");
        }
        lat.build_lift();
        return lat;
    }

    std::size_t ambient_dim() const noexcept
    {
        return m_ambient;
    }
    std::size_t rank() const noexcept
    {
        return m_basis.rows();
    }
    const IntMatrix &basis() const noexcept
    {
        return m_basis;
    }
    // N x r integer matrix with basis() * lift() = identity.
    const IntMatrix &lift() const noexcept
    {
        return m_lift;
    }

    LatticePoint basis_vector(std::size_t k) const
    {
        LatticePoint b(m_ambient);
        for (std::size_t j = 0; j < m_ambient; ++j) {
            b[j] = to_int64(m_basis(k, j));
        }
        return b;
    }

    LatticePoint point(std::span<const std::int64_t> coords) const
    {
        if (coords.size() != rank()) {
            throw DimensionMismatch("RelationLattice::point: wrong coordinate count");
        }
        LatticePoint l(m_ambient, 0);
        for (std::size_t k = 0; k < coords.size(); ++k) {
            if (coords[k] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < m_ambient; ++j) {
                l[j] = checked_muladd(coords[k], to_int64(m_basis(k, j)), l[j]);
            }
        }
        return l;
    }

    // Coordinates of x in the basis when x lies in the rational span of L,
    // otherwise nullopt. Integral coordinates <=> x in L.
    std::optional<RationalVector> rational_coordinates(std::span<const Rational> x) const
    {
        if (x.size() != m_ambient) {
            throw DimensionMismatch("RelationLattice::coordinates: wrong length");
        }
        RationalVector y(rank(), Rational(0));
        for (std::size_t k = 0; k < rank(); ++k) {
            for (std::size_t j = 0; j < m_ambient; ++j) {
                if (sgn(m_lift(j, k)) != 0) {
                    y[k] += Rational(m_lift(j, k)) * x[j];
                }
            }
        }
        for (std::size_t j = 0; j < m_ambient; ++j) {
            Rational s(0);
            for (std::size_t k = 0; k < rank(); ++k) {
                s += Rational(m_basis(k, j)) * y[k];
            }
            if (s != x[j]) {
                return std::nullopt;
            }
        }
        return y;
    }

    // Integer coordinates of x, or nullopt when x is not in L.
    std::optional<LatticePoint> coordinates(std::span<const Rational> x) const
    {
        auto y = rational_coordinates(x);
        if (!y) {
            return std::nullopt;
        }
        LatticePoint c(rank());
        for (std::size_t k = 0; k < rank(); ++k) {
            if (!is_integer((*y)[k])) {
                return std::nullopt;
            }
            c[k] = to_int64((*y)[k].get_num());
        }
        return c;
    }

    std::optional<LatticePoint> coordinates(std::span<const std::int64_t> x) const
    {
        RationalVector q(x.begin(), x.end());
        for (std::size_t j = 0; j < x.size(); ++j) {
            q[j] = Rational(static_cast<long>(x[j]));
        }
        return coordinates(std::span<const Rational>(q));
    }

    friend bool operator==(const RelationLattice &a, const RelationLattice &b)
    {
        return a.m_ambient == b.m_ambient && a.m_basis == b.m_basis;
    }

private:
    friend RelationLattice kernel_basis(const IntMatrix &a);

    void build_lift()
    {
        if (rank() == 0) {
            m_lift = IntMatrix(m_ambient, 0);
            return;
        }
        // basis * V = [I | 0] for a saturated basis.
        auto ch = column_hermite(m_basis);
        for (std::size_t i = 0; i < rank(); ++i) {
            if (ch.form(i, i) != 1) {
                throw InputError("RelationLattice: basis does not span a saturated lattice");
            }
        }
        m_lift = IntMatrix(m_ambient, rank());
        for (std::size_t j = 0; j < m_ambient; ++j) {
            for (std::size_t k = 0; k < rank(); ++k) {
                m_lift(j, k) = ch.transform(j, k);
            }
        }
    }

    std::size_t m_ambient = 0;
    IntMatrix m_basis;
    IntMatrix m_lift;
};

// Saturated basis of ker_Z(A), from the trailing columns of the unimodular
// transform of the column Hermite form of A, then put in row Hermite form.
inline RelationLattice kernel_basis(const IntMatrix &a)
{
    auto ch = column_hermite(a);
    const std::size_t n = a.cols();
    const std::size_t r = n - ch.rank;
    IntMatrix k(r, n);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            k(i, j) = ch.transform(j, ch.rank + i);
        }
    }
    RelationLattice lat;
    lat.m_ambient = n;
    lat.m_basis = r ? row_hermite(k) : IntMatrix(0, n);
    lat.build_lift();
    return lat;
}

struct BoxPoint {
    LatticePoint coords; // basis coordinates, each in [-R, R]
    LatticePoint point;  // sum_k coords[k] * basis[k]
};

inline constexpr std::size_t default_max_box_points = 20'000'000;

inline std::size_t box_point_count(std::size_t rank, std::int64_t radius, std::size_t cap)
{
    std::size_t count = 1;
    const std::size_t side = static_cast<std::size_t>(2 * radius + 1);
    for (std::size_t k = 0; k < rank; ++k) {
        if (count > cap / side) {
            throw ResourceLimit("coefficient box of radius " + std::to_string(radius) + " in rank "
                                + std::to_string(rank) + " exceeds the configured cap of "
                                + std::to_string(cap) + " points");
        }
        count *= side;
    }
    if (count > cap) {
        throw ResourceLimit("coefficient box exceeds the configured cap of " + std::to_string(cap) + " points");
    }
    return count;
}

// All lattice points whose basis coordinates lie in [-R, R]^rank, in
// lexicographic order of the coordinates.
inline std::vector<BoxPoint> enumerate_box(const RelationLattice &lat, std::int64_t radius,
                                           std::size_t cap = default_max_box_points)
{
    if (radius < 0) {
        throw std::invalid_argument("enumerate_box: negative radius");
    }
    const std::size_t r = lat.rank();
    const std::size_t count = box_point_count(r, radius, cap);
    std::vector<BoxPoint> out;
    out.reserve(count);
    LatticePoint c(r, -radius);
    for (std::size_t n = 0; n < count; ++n) {
        out.push_back({c, lat.point(c)});
        for (std::size_t k = r; k-- > 0;) {
            if (c[k] < radius) {
                ++c[k];
                break;
            }
            c[k] = -radius;
        }
    }
    return out;
}

inline bool in_box(std::span<const std::int64_t> coords, std::int64_t radius)
{
    for (auto c : coords) {
        if (c < -radius || c > radius) {
            return false;
        }
    }
    return true;
}

// Bareiss fraction-free elimination.
inline Integer determinant(IntMatrix m)
{
    const std::size_t n = m.rows();
    if (n != m.cols()) {
        throw DimensionMismatch("determinant of a non-square matrix");
    }
    if (n == 0) {
        return Integer(1);
    }
    Integer prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(m(p, k)) == 0) {
                ++p;
            }
            if (p == n) {
                return Integer(0);
            }
            for (std::size_t j = 0; j < n; ++j) {
                swap(m(k, j), m(p, j));
            }
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

// Generalized cross product of n-1 vectors in Z^n: the vector of signed maximal
// minors, orthogonal to every row. Zero iff the rows are dependent.
inline std::vector<Integer> cofactor_normal(const IntMatrix &rows)
{
    const std::size_t n = rows.cols();
    if (rows.rows() + 1 != n) {
        throw DimensionMismatch("cofactor_normal needs n-1 rows in Z^n");
    }
    std::vector<Integer> out(n);
    for (std::size_t drop = 0; drop < n; ++drop) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = 0, c = 0; j < n; ++j) {
                if (j != drop) {
                    minor(i, c++) = rows(i, j);
                }
            }
        }
        Integer d = determinant(std::move(minor));
        out[drop] = ((n - 1 + drop) % 2 == 0) ? d : Integer(-d);
    }
    return out;
}

// Divides out the content; the zero vector is returned unchanged.
inline std::vector<Integer> primitive(std::vector<Integer> v)
{
    Integer g(0);
    for (const auto &x : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    if (g > 1) {
        for (auto &x : v) {
            x /= g;
        }
    }
    return v;
}

} // namespace gkz
