#pragma once

// Negative-support combinatorics and radius-qualified minimality checks.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "rational.hpp"

namespace gkz
{

using IndexSet = std::vector<std::size_t>; // sorted, 0-based

inline IndexSet make_excluded(std::initializer_list<std::size_t> idx)
{
    IndexSet s(idx);
    std::sort(s.begin(), s.end());
    return s;
}

inline void validate_excluded(const IndexSet &excluded, std::size_t n)
{
    if (excluded.size() > 2) {
        throw std::invalid_argument("at most two excluded indices are supported");
    }
    for (std::size_t k = 0; k < excluded.size(); ++k) {
        if (excluded[k] >= n) {
            throw std::invalid_argument("excluded index " + std::to_string(excluded[k] + 1) + " out of range");
        }
        if (k > 0 && excluded[k] <= excluded[k - 1]) {
            throw std::invalid_argument("excluded indices must be distinct and sorted");
        }
    }
}

// { i not in excluded | z_i is a negative integer }
inline IndexSet nsupp(std::span<const Rational> z, const IndexSet &excluded = {})
{
    IndexSet out;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (std::binary_search(excluded.begin(), excluded.end(), i)) {
            continue;
        }
        if (is_negative_integer(z[i])) {
            out.push_back(i);
        }
    }
    return out;
}

// nsupp(v + l, excluded)
inline IndexSet nsupp_shifted(std::span<const Rational> v, std::span<const std::int64_t> l,
                              const IndexSet &excluded = {})
{
    IndexSet out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::binary_search(excluded.begin(), excluded.end(), i)) {
            continue;
        }
        if (v[i].get_den() == 1 && v[i].get_num() + static_cast<long>(l[i]) < 0) {
            out.push_back(i);
        }
    }
    return out;
}

inline bool is_proper_subset(const IndexSet &a, const IndexSet &b)
{
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

class SupportVerdict
{
public:
    static SupportVerdict minimal_within(std::int64_t radius)
    {
        SupportVerdict s;
        s.m_radius = radius;
        return s;
    }
    static SupportVerdict counterexample(std::int64_t radius, LatticePoint l)
    {
        SupportVerdict s;
        s.m_radius = radius;
        s.m_counterexample = std::move(l);
        return s;
    }

    bool is_minimal() const noexcept
    {
        return !m_counterexample.has_value();
    }
    std::int64_t radius() const noexcept
    {
        return m_radius;
    }
    const std::optional<LatticePoint> &counterexample() const noexcept
    {
        return m_counterexample;
    }

private:
    std::int64_t m_radius = 0;
    std::optional<LatticePoint> m_counterexample;
};

// Scans the coefficient box of radius R and reports the first l (in enumeration
// order) whose excluded-index negative support of v+l is a proper subset of that of v.
inline SupportVerdict check_minimal(std::span<const Rational> v, const RelationLattice &lat, std::int64_t radius,
                                    const IndexSet &excluded = {}, std::size_t cap = default_max_box_points)
{
    if (v.size() != lat.ambient_dim()) {
        throw DimensionMismatch("check_minimal: v has length " + std::to_string(v.size()) + ", lattice is in Z^"
                                + std::to_string(lat.ambient_dim()));
    }
    validate_excluded(excluded, v.size());
    const IndexSet base = nsupp(v, excluded);
    if (base.empty()) {
        return SupportVerdict::minimal_within(radius);
    }
    for (const auto &bp : enumerate_box(lat, radius, cap)) {
        if (is_proper_subset(nsupp_shifted(v, bp.point, excluded), base)) {
            return SupportVerdict::counterexample(radius, bp.point);
        }
    }
    return SupportVerdict::minimal_within(radius);
}

// Lattice points l in the box with nsupp(v + l, excluded) = nsupp(v, excluded).
inline std::vector<BoxPoint> support_set(std::span<const Rational> v, const RelationLattice &lat,
                                         std::int64_t radius, const IndexSet &excluded = {},
                                         std::size_t cap = default_max_box_points)
{
    if (v.size() != lat.ambient_dim()) {
        throw DimensionMismatch("support_set: v has wrong length");
    }
    validate_excluded(excluded, v.size());
    const IndexSet base = nsupp(v, excluded);
    std::vector<BoxPoint> out;
    for (auto &bp : enumerate_box(lat, radius, cap)) {
        if (nsupp_shifted(v, bp.point, excluded) == base) {
            out.push_back(std::move(bp));
        }
    }
    return out;
}

} // namespace gkz
