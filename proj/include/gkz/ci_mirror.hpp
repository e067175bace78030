#pragma once

// Hypergeometric systems attached to families of complete intersections in the
// torus: the lifted matrix, the canonical parameter and starting exponent, the
// support cones of the first-order corrections, and mirror maps
//   q_j^(i) / lambda_j^(i) = exp(G_j^(i) / F)
// computed as graded series in lattice coordinates.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "builders.hpp"
#include "errors.hpp"
#include "graded_series.hpp"
#include "lattice.hpp"
#include "logseries.hpp"
#include "polytope.hpp"
#include "rational.hpp"
#include "support.hpp"

namespace gkz
{

// The first point of every set is the distinguished one.
struct CISpec {
    std::vector<PointSet> sets;

    std::size_t ambient_dim() const
    {
        return sets.empty() ? 0 : sets.front().dim();
    }
};

struct CISystem {
    IntMatrix a;
    RationalVector beta;
    RationalVector v;
    IntPoint delta;
    std::vector<std::size_t> set_offset; // first column of each set

    std::size_t column(std::size_t set, std::size_t index) const
    {
        if (set >= set_offset.size()) {
            throw std::out_of_range("CI system: set index out of range");
        }
        const std::size_t end = set + 1 < set_offset.size() ? set_offset[set + 1] : a.cols();
        if (set_offset[set] + index >= end) {
            throw std::out_of_range("CI system: point index out of range in set " + std::to_string(set + 1));
        }
        return set_offset[set] + index;
    }
};

inline void validate(const CISpec &spec)
{
    if (spec.sets.empty()) {
        throw InputError("complete-intersection data needs at least one point set");
    }
    const std::size_t n = spec.ambient_dim();
    for (const auto &s : spec.sets) {
        if (s.points.empty()) {
            throw InputError("empty point set");
        }
        for (const auto &p : s.points) {
            if (p.size() != n) {
                throw DimensionMismatch("point sets live in different dimensions");
            }
        }
    }
}

// Columns (a_j^(i); e_i), set by set. beta = (-delta; -1, ..., -1); v is -1 on
// the distinguished columns and 0 elsewhere.
inline CISystem build_system(const CISpec &spec)
{
    validate(spec);
    const std::size_t n = spec.ambient_dim();
    const std::size_t m = spec.sets.size();
    std::size_t total = 0;
    CISystem sys;
    for (const auto &s : spec.sets) {
        sys.set_offset.push_back(total);
        total += s.points.size();
    }
    sys.a = IntMatrix(n + m, total);
    sys.v.assign(total, Rational(0));
    sys.delta.assign(n, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const auto &pts = spec.sets[i].points;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            const std::size_t col = sys.set_offset[i] + j;
            for (std::size_t k = 0; k < n; ++k) {
                sys.a(k, col) = Integer(static_cast<long>(pts[j][k]));
            }
            sys.a(n + i, col) = 1;
        }
        sys.v[sys.set_offset[i]] = -1;
        for (std::size_t k = 0; k < n; ++k) {
            sys.delta[k] += pts.front()[k];
        }
    }
    sys.beta.assign(n + m, Rational(-1));
    for (std::size_t k = 0; k < n; ++k) {
        sys.beta[k] = -static_cast<long>(sys.delta[k]);
    }
    if (sys.a.apply(std::span<const Rational>(sys.v)) != sys.beta) {
        throw std::logic_error("lifted system: A v != beta");
    }
    return sys;
}

inline bool hypothesis_holds(const CISpec &spec)
{
    validate(spec);
    return has_unique_interior_point(spec.sets, build_system(spec).delta);
}

// Extreme rays (in lattice coordinates, primitive, sorted) of the real cone
// containing L_{v, excluded}: l_t <= 0 where v_t = -1 and l_t >= 0 where v_t = 0,
// for every t other than the excluded column. Throws NoPositiveFunctional when
// the cone is not pointed.
inline std::vector<LatticePoint> support_cone_rays(const CISystem &sys, const RelationLattice &lat,
                                                   std::optional<std::size_t> excluded)
{
    const std::size_t r = lat.rank();
    std::vector<std::vector<Integer>> rows;
    for (std::size_t t = 0; t < sys.v.size(); ++t) {
        if (excluded && *excluded == t) {
            continue;
        }
        const long s = sgn(sys.v[t]) < 0 ? -1 : 1;
        std::vector<Integer> row(r);
        bool nonzero = false;
        for (std::size_t k = 0; k < r; ++k) {
            row[k] = s * lat.basis()(k, t);
            nonzero = nonzero || sgn(row[k]) != 0;
        }
        if (nonzero) {
            rows.push_back(std::move(row));
        }
    }
    if (r == 0) {
        return {};
    }
    if (rows.empty() || row_hermite(IntMatrix::from_rows(rows)).rows() < r) {
        throw NoPositiveFunctional("support cone is not pointed");
    }
    auto eval = [&](const std::vector<Integer> &d, int &lo, int &hi) {
        lo = 1;
        hi = -1;
        for (const auto &row : rows) {
            Integer s(0);
            for (std::size_t k = 0; k < r; ++k) {
                s += row[k] * d[k];
            }
            lo = std::min(lo, sgn(s));
            hi = std::max(hi, sgn(s));
        }
    };
    std::set<LatticePoint> rays;
    std::vector<std::size_t> pick(r - 1);
    for (std::size_t k = 0; k + 1 < r; ++k) {
        pick[k] = k;
    }
    if (rows.size() + 1 < r) {
        return {};
    }
    while (true) {
        IntMatrix sub(r - 1, r);
        for (std::size_t i = 0; i + 1 < r; ++i) {
            for (std::size_t k = 0; k < r; ++k) {
                sub(i, k) = rows[pick[i]][k];
            }
        }
        auto d = primitive(cofactor_normal(sub));
        if (std::any_of(d.begin(), d.end(), [](const Integer &x) { return sgn(x) != 0; })) {
            int lo = 0, hi = 0;
            eval(d, lo, hi);
            if (lo >= 0 || hi <= 0) {
                LatticePoint ray(r);
                for (std::size_t k = 0; k < r; ++k) {
                    ray[k] = to_int64(lo >= 0 ? d[k] : Integer(-d[k]));
                }
                rays.insert(std::move(ray));
            }
        }
        std::size_t k = r - 1;
        while (k > 0 && pick[k - 1] == rows.size() - (r - 1) + k - 1) {
            --k;
        }
        if (k == 0) {
            break;
        }
        ++pick[k - 1];
        for (std::size_t j = k; j + 1 < r; ++j) {
            pick[j] = pick[j - 1] + 1;
        }
    }
    return {rays.begin(), rays.end()};
}

inline constexpr std::int64_t default_grading_bound = 8;

// Smallest w in [-bound, bound]^r (by L1 norm, then lexicographically) with
// w.x >= 1 for every nonzero x.
inline LatticePoint positive_functional(const std::vector<LatticePoint> &points, std::size_t rank,
                                        std::int64_t bound = default_grading_bound)
{
    for (const auto &x : points) {
        if (x.size() != rank) {
            throw DimensionMismatch("positive_functional: point has wrong length");
        }
    }
    std::vector<const LatticePoint *> nz;
    for (const auto &x : points) {
        if (std::any_of(x.begin(), x.end(), [](std::int64_t c) { return c != 0; })) {
            nz.push_back(&x);
        }
    }
    std::optional<LatticePoint> best;
    std::int64_t best_norm = 0;
    LatticePoint w(rank, -bound);
    while (true) {
        std::int64_t norm = 0;
        for (auto c : w) {
            norm += c < 0 ? -c : c;
        }
        if (!best || norm < best_norm) {
            bool ok = true;
            for (const auto *x : nz) {
                std::int64_t s = 0;
                for (std::size_t k = 0; k < rank; ++k) {
                    s = checked_muladd(w[k], (*x)[k], s);
                }
                if (s < 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                best = w;
                best_norm = norm;
            }
        }
        std::size_t k = rank;
        while (k > 0 && w[k - 1] == bound) {
            w[k - 1] = -bound;
            --k;
        }
        if (k == 0) {
            break;
        }
        ++w[k - 1];
    }
    if (!best) {
        throw NoPositiveFunctional("no integer functional with coordinates in [-" + std::to_string(bound) + ", "
                                   + std::to_string(bound) + "] is positive on the support");
    }
    return *best;
}

struct Grading {
    LatticePoint w; // on lattice coordinates
    LatticePoint c; // on ambient relations: c.l = w.x when l has coordinates x
};

inline Grading lift_grading(const RelationLattice &lat, LatticePoint w)
{
    Grading g{std::move(w), LatticePoint(lat.ambient_dim(), 0)};
    for (std::size_t t = 0; t < lat.ambient_dim(); ++t) {
        Integer s(0);
        for (std::size_t k = 0; k < lat.rank(); ++k) {
            s += lat.lift()(t, k) * static_cast<long>(g.w[k]);
        }
        g.c[t] = to_int64(s);
    }
    return g;
}

// Grading positive on a list of ambient lattice points.
inline Grading positive_grading(const RelationLattice &lat, const std::vector<LatticePoint> &support,
                                std::int64_t bound = default_grading_bound)
{
    std::vector<LatticePoint> coords;
    for (const auto &l : support) {
        auto x = lat.coordinates(std::span<const std::int64_t>(l));
        if (!x) {
            throw NonLatticeExponent("support point is not in the relation lattice");
        }
        coords.push_back(std::move(*x));
    }
    return lift_grading(lat, positive_functional(coords, lat.rank(), bound));
}

// One grading for the whole system: positive on the cones of every G_j^(i).
inline Grading system_grading(const CISystem &sys, const RelationLattice &lat,
                              std::int64_t bound = default_grading_bound)
{
    std::set<LatticePoint> gens;
    for (std::size_t t = 0; t < sys.v.size(); ++t) {
        for (auto &ray : support_cone_rays(sys, lat, t)) {
            gens.insert(std::move(ray));
        }
    }
    return lift_grading(lat, positive_functional({gens.begin(), gens.end()}, lat.rank(), bound));
}

// Every point of the cone with grade <= D has sup-norm <= this bound.
inline std::int64_t radius_for_grade(const std::vector<LatticePoint> &rays, const LatticePoint &w,
                                     std::int64_t max_grade)
{
    Rational worst(0);
    for (const auto &ray : rays) {
        std::int64_t g = 0, sup = 0;
        for (std::size_t k = 0; k < ray.size(); ++k) {
            g = checked_muladd(w[k], ray[k], g);
            sup = std::max(sup, ray[k] < 0 ? -ray[k] : ray[k]);
        }
        if (g < 1) {
            throw NoPositiveFunctional("grading is not positive on a cone generator");
        }
        Rational ratio(sup, g);
        ratio.canonicalize();
        worst = std::max(worst, ratio);
    }
    Rational r = worst * max_grade;
    return to_int64(Integer(r.get_num() / r.get_den()));
}

struct MinimalityRow {
    std::size_t set = 0;
    std::size_t index = 0;
    SupportVerdict verdict;
};

// check_minimal for every column's excluded-index negative support.
inline std::vector<MinimalityRow> minimality_sweep(const CISpec &spec, const CISystem &sys,
                                                   const RelationLattice &lat, std::int64_t radius)
{
    std::vector<MinimalityRow> out;
    for (std::size_t i = 0; i < spec.sets.size(); ++i) {
        for (std::size_t j = 0; j < spec.sets[i].points.size(); ++j) {
            const std::size_t col = sys.column(i, j);
            out.push_back({i, j, check_minimal(sys.v, lat, radius, IndexSet{col})});
        }
    }
    return out;
}

struct MirrorMap {
    std::size_t set = 0;
    std::size_t index = 0;
    Grading grading;
    std::int64_t max_grade = 0;
    std::int64_t radius = 0; // box radius actually used
    RelationLattice lattice;
    GradedSeries series; // q / lambda_j^(i), keyed by lattice coordinates
};

inline constexpr std::int64_t default_radius_cap = 4096;

namespace detail
{

inline GradedSeries to_graded(const LogSeries &s, const RationalVector &v, const RelationLattice &lat,
                              const LatticePoint &w, std::int64_t max_grade)
{
    GradedSeries out(w, max_grade);
    for (const auto &[k, c] : s.terms()) {
        RationalVector l(v.size());
        for (std::size_t t = 0; t < v.size(); ++t) {
            l[t] = k.exponent[t] - v[t];
        }
        auto x = lat.coordinates(std::span<const Rational>(l));
        if (!x) {
            throw NonLatticeExponent("series term off the lattice coset of its base exponent");
        }
        out.add(*x, c);
    }
    return out;
}

} // namespace detail

// q_j^(i) / lambda_j^(i) up to grade D. The box radius starts at `radius` and
// is doubled until it encloses every cone point of grade <= D.
inline MirrorMap mirror_map(const CISpec &spec, std::size_t set, std::size_t index, std::int64_t max_grade,
                            std::int64_t radius, unsigned threads = 1,
                            std::int64_t radius_cap = default_radius_cap)
{
    if (max_grade < 0) {
        throw std::invalid_argument("mirror_map: negative grade bound");
    }
    const CISystem sys = build_system(spec);
    const RelationLattice lat = kernel_basis(sys.a);
    const std::size_t col = sys.column(set, index);
    MirrorMap q;
    q.set = set;
    q.index = index;
    q.max_grade = max_grade;
    q.grading = system_grading(sys, lat);
    q.lattice = lat;

    const auto rays = support_cone_rays(sys, lat, col);
    const std::int64_t needed = radius_for_grade(rays, q.grading.w, max_grade);
    std::int64_t r = std::max<std::int64_t>(radius, 0);
    while (r < needed) {
        r = r == 0 ? 1 : 2 * r;
        if (r > radius_cap) {
            throw InsufficientRadius("grade " + std::to_string(max_grade) + " needs box radius "
                                     + std::to_string(needed) + ", above the cap "
                                     + std::to_string(radius_cap));
        }
    }
    q.radius = r;

    const LogSeries F = build_F(sys.v, lat, r, threads);
    const LogSeries G = build_G(sys.v, col, lat, r, threads);
    const LatticePoint zero(lat.rank(), 0);
    GradedSeries f = detail::to_graded(F, sys.v, lat, q.grading.w, max_grade);
    GradedSeries g = detail::to_graded(G, sys.v, lat, q.grading.w, max_grade);
    if (f.coefficient(zero) != 1 || sgn(g.coefficient(zero)) != 0) {
        throw std::logic_error("mirror_map: unexpected constant terms of F or G");
    }
    f.add(zero, Rational(-1));
    q.series = exp_series(g * inverse_one_plus(f));
    return q;
}

struct IntegralityViolation {
    std::int64_t grade = 0;
    LatticePoint coords;
    LatticePoint point;
    Rational coeff;
};

// Non-integer coefficients, by grade then coordinates.
inline std::vector<IntegralityViolation> integrality_report(const MirrorMap &q)
{
    std::vector<IntegralityViolation> out;
    for (const auto &[x, c] : q.series.terms()) {
        if (!is_integer(c)) {
            out.push_back({q.series.grade(x), x, q.lattice.point(x), c});
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto &a, const auto &b) { return a.grade < b.grade; });
    return out;
}

inline std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string canonical_text(const CISpec &spec)
{
    std::ostringstream os;
    for (const auto &s : spec.sets) {
        os << "set";
        for (const auto &p : s.points) {
            os << ' ';
            detail::write_tuple(os, p, [](std::int64_t x) { return std::to_string(x); });
        }
        os << '\n';
    }
    return os.str();
}

inline std::string hex64(std::uint64_t h)
{
    static const char *digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int k = 15; k >= 0; --k, h >>= 4) {
        s[static_cast<std::size_t>(k)] = digits[h & 0xf];
    }
    return s;
}

inline void write_integrality_report(std::ostream &os, const CISpec &spec, const MirrorMap &q)
{
    const auto tuple = [&](const LatticePoint &x) {
        std::ostringstream t;
        detail::write_tuple(t, x, [](std::int64_t c) { return std::to_string(c); });
        return t.str();
    };
    os << "# gkz-integrality v1\n";
    os << "# spec " << hex64(fnv1a64(canonical_text(spec))) << '\n';
    os << "# index " << q.set + 1 << ' ' << q.index << '\n';
    os << "# grading " << tuple(q.grading.c) << " coords " << tuple(q.grading.w) << '\n';
    os << "# grade " << q.max_grade << '\n';
    os << "# radius " << q.radius << '\n';
    const auto bad = integrality_report(q);
    if (bad.empty()) {
        os << "OK\n";
        return;
    }
    for (const auto &b : bad) {
        os << b.grade << " | " << tuple(b.point) << " | " << to_string(b.coeff) << '\n';
    }
}

// q / lambda as a plain listing: grade | lattice point | coefficient.
inline void write_mirror_series(std::ostream &os, const MirrorMap &q)
{
    std::vector<std::pair<std::int64_t, const LatticePoint *>> order;
    for (const auto &[x, c] : q.series.terms()) {
        order.emplace_back(q.series.grade(x), &x);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto &a, const auto &b) { return a.first < b.first; });
    os << "# gkz-mirror v1\n";
    os << "# index " << q.set + 1 << ' ' << q.index << '\n';
    os << "# grade " << q.max_grade << '\n';
    for (const auto &[g, x] : order) {
        os << g << " | ";
        detail::write_tuple(os, q.lattice.point(*x), [](std::int64_t c) { return std::to_string(c); });
        os << " | " << to_string(q.series.coefficient(*x)) << '\n';
    }
}

} // namespace gkz
