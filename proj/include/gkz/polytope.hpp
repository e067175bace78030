#pragma once

// Minkowski sums of lattice point sets and their interior lattice points.
// Sizes here are tiny (a handful of points per set, dimension <= 5), so the
// hull is found by brute force over n-subsets of the candidate sums, exactly.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "rational.hpp"

namespace gkz
{

using IntPoint = std::vector<std::int64_t>;

struct PointSet {
    std::vector<IntPoint> points;

    std::size_t dim() const
    {
        return points.empty() ? 0 : points.front().size();
    }
};

// normal . x <= offset on the polytope; normal is primitive.
struct Facet {
    std::vector<Integer> normal;
    Integer offset;

    friend bool operator==(const Facet &, const Facet &) = default;
    friend bool operator<(const Facet &a, const Facet &b)
    {
        return std::tie(a.normal, a.offset) < std::tie(b.normal, b.offset);
    }
};

struct Polytope {
    std::size_t dim = 0;
    std::vector<IntPoint> vertices; // lexicographic
    std::vector<Facet> facets;      // sorted

    friend bool operator==(const Polytope &, const Polytope &) = default;
};

namespace detail
{

inline Integer dot(const std::vector<Integer> &a, const IntPoint &p)
{
    Integer s(0);
    for (std::size_t k = 0; k < p.size(); ++k) {
        s += a[k] * static_cast<long>(p[k]);
    }
    return s;
}

inline std::size_t affine_rank(const std::vector<IntPoint> &pts)
{
    if (pts.size() < 2) {
        return 0;
    }
    const std::size_t n = pts.front().size();
    IntMatrix d(pts.size() - 1, n);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            d(i - 1, k) = Integer(static_cast<long>(pts[i][k] - pts[0][k]));
        }
    }
    return row_hermite(d).rows();
}

inline std::vector<IntPoint> minkowski_candidates(const std::vector<PointSet> &sets)
{
    if (sets.empty()) {
        throw std::invalid_argument("minkowski_hull: no point sets");
    }
    const std::size_t n = sets.front().dim();
    for (const auto &s : sets) {
        if (s.points.empty()) {
            throw std::invalid_argument("minkowski_hull: empty point set");
        }
        for (const auto &p : s.points) {
            if (p.size() != n) {
                throw DimensionMismatch("minkowski_hull: point sets live in different dimensions");
            }
        }
    }
    std::set<IntPoint> sums{IntPoint(n, 0)};
    for (const auto &s : sets) {
        std::set<IntPoint> next;
        for (const auto &a : sums) {
            for (const auto &b : s.points) {
                IntPoint c(n);
                for (std::size_t k = 0; k < n; ++k) {
                    c[k] = a[k] + b[k];
                }
                next.insert(std::move(c));
            }
        }
        sums = std::move(next);
    }
    return {sums.begin(), sums.end()};
}

} // namespace detail

inline Polytope minkowski_hull(const std::vector<PointSet> &sets)
{
    const auto pts = detail::minkowski_candidates(sets);
    const std::size_t n = pts.front().size();
    if (n == 0 || detail::affine_rank(pts) < n) {
        throw DegenerateHull("Minkowski sum is not full-dimensional in Z^" + std::to_string(n));
    }

    std::set<Facet> facets;
    std::vector<std::size_t> pick(n);
    for (std::size_t k = 0; k < n; ++k) {
        pick[k] = k;
    }
    IntMatrix rows(n - 1, n);
    while (true) {
        for (std::size_t i = 1; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                rows(i - 1, k) = Integer(static_cast<long>(pts[pick[i]][k] - pts[pick[0]][k]));
            }
        }
        auto normal = primitive(cofactor_normal(rows));
        if (std::any_of(normal.begin(), normal.end(), [](const Integer &x) { return sgn(x) != 0; })) {
            Integer offset = detail::dot(normal, pts[pick[0]]);
            bool below = true, above = true;
            for (const auto &p : pts) {
                int c = cmp(detail::dot(normal, p), offset);
                below = below && c <= 0;
                above = above && c >= 0;
            }
            if (above && !below) {
                for (auto &x : normal) {
                    x = -x;
                }
                offset = -offset;
                below = true;
            }
            if (below) {
                facets.insert({std::move(normal), std::move(offset)});
            }
        }
        // next n-subset in lexicographic order
        std::size_t k = n;
        while (k > 0 && pick[k - 1] == pts.size() - n + k - 1) {
            --k;
        }
        if (k == 0) {
            break;
        }
        ++pick[k - 1];
        for (std::size_t j = k; j < n; ++j) {
            pick[j] = pick[j - 1] + 1;
        }
    }

    Polytope poly;
    poly.dim = n;
    poly.facets.assign(facets.begin(), facets.end());
    for (const auto &p : pts) {
        std::vector<std::vector<Integer>> tight;
        for (const auto &f : poly.facets) {
            if (detail::dot(f.normal, p) == f.offset) {
                tight.push_back(f.normal);
            }
        }
        if (tight.size() < n) {
            continue;
        }
        if (row_hermite(IntMatrix::from_rows(tight)).rows() == n) {
            poly.vertices.push_back(p);
        }
    }
    return poly;
}

inline bool strictly_inside(const Polytope &poly, const IntPoint &p)
{
    return std::all_of(poly.facets.begin(), poly.facets.end(),
                       [&](const Facet &f) { return detail::dot(f.normal, p) < f.offset; });
}

inline std::vector<IntPoint> interior_lattice_points(const Polytope &poly, std::size_t cap = default_max_box_points)
{
    if (poly.vertices.empty()) {
        return {};
    }
    const std::size_t n = poly.dim;
    IntPoint lo = poly.vertices.front(), hi = lo;
    for (const auto &v : poly.vertices) {
        for (std::size_t k = 0; k < n; ++k) {
            lo[k] = std::min(lo[k], v[k]);
            hi[k] = std::max(hi[k], v[k]);
        }
    }
    std::size_t count = 1;
    for (std::size_t k = 0; k < n; ++k) {
        const auto side = static_cast<std::size_t>(hi[k] - lo[k] + 1);
        if (count > cap / side) {
            throw ResourceLimit("bounding box of the polytope exceeds " + std::to_string(cap) + " points");
        }
        count *= side;
    }
    std::vector<IntPoint> out;
    IntPoint p = lo;
    for (std::size_t c = 0; c < count; ++c) {
        if (strictly_inside(poly, p)) {
            out.push_back(p);
        }
        for (std::size_t k = n; k-- > 0;) {
            if (p[k] < hi[k]) {
                ++p[k];
                break;
            }
            p[k] = lo[k];
        }
    }
    return out;
}

// delta is the unique interior lattice point of the Minkowski sum of the hulls.
inline bool has_unique_interior_point(const std::vector<PointSet> &sets, const IntPoint &delta)
{
    const auto interior = interior_lattice_points(minkowski_hull(sets));
    return interior.size() == 1 && interior.front() == delta;
}

} // namespace gkz
