#pragma once

// Problem files: one JSON object per problem. Integers may be JSON numbers or
// strings; rationals are strings "p" or "p/q".
//
//   {
//     "name":    "gauss",
//     "matrix":  [[1,0,0,1],[0,1,0,1],[0,0,1,-1]],
//     "beta":    ["-1/2","-1/3","0"],
//     "v":       ["-1/2","-1/3","0","0"],
//     "radius":  10,            optional, default 6
//     "grade":   8,             optional, default 6
//     "order":   1,             optional, default 1
//     "exclude": [5],           optional, 1-based
//     "l":       [-1,-1,1,1],   optional
//     "lp":      [...],         optional
//     "ci":      {"sets": [[[0,0],[1,1],[-1,0],[1,-1],[1,0]]]}
//   }
//
// With "ci" present, matrix, beta and v are derived from the point sets (the
// first point of each set is the distinguished one); if they are also given
// they must agree.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ci_mirror.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "rational.hpp"
#include "support.hpp"

namespace gkz
{

struct Problem {
    std::string name;
    IntMatrix a;
    RationalVector beta;
    RationalVector v;
    std::optional<CISpec> ci;
    std::int64_t radius = 6;
    std::int64_t grade = 6;
    int order = 1;
    IndexSet exclude;
    std::optional<LatticePoint> l;
    std::optional<LatticePoint> lp;
    std::string canonical; // compact re-serialization, hashed into reports

    std::uint64_t hash() const
    {
        return fnv1a64(canonical);
    }
};

namespace detail
{

using json = nlohmann::json;

inline Rational json_rational(const json &j, const std::string &where)
{
    if (j.is_number_integer()) {
        return Rational(Integer(std::to_string(j.get<std::int64_t>())));
    }
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::exception &e) {
            throw InputError(where + ": " + e.what());
        }
    }
    throw InputError(where + ": expected an integer or a rational string");
}

inline std::int64_t json_int(const json &j, const std::string &where)
{
    Rational q = json_rational(j, where);
    if (!is_integer(q)) {
        throw InputError(where + ": expected an integer, got " + to_string(q));
    }
    try {
        return to_int64(q.get_num());
    } catch (const ResourceLimit &) {
        throw InputError(where + ": integer out of 64-bit range");
    }
}

inline const json &require_array(const json &j, const std::string &where)
{
    if (!j.is_array()) {
        throw InputError(where + ": expected an array");
    }
    return j;
}

inline RationalVector json_rational_vector(const json &j, const std::string &where)
{
    RationalVector out;
    std::size_t k = 0;
    for (const auto &x : require_array(j, where)) {
        out.push_back(json_rational(x, where + "[" + std::to_string(k++) + "]"));
    }
    return out;
}

inline LatticePoint json_int_vector(const json &j, const std::string &where)
{
    LatticePoint out;
    std::size_t k = 0;
    for (const auto &x : require_array(j, where)) {
        out.push_back(json_int(x, where + "[" + std::to_string(k++) + "]"));
    }
    return out;
}

inline std::string line_column(const std::string &text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace detail

inline Problem parse_problem(const std::string &text)
{
    using detail::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw InputError("JSON parse error at " + detail::line_column(text, e.byte) + ": " + e.what());
    }
    if (!j.is_object()) {
        throw InputError("problem file must hold a JSON object");
    }
    static const std::vector<std::string> known = {"name", "matrix", "beta", "v",  "radius", "grade",
                                                   "order", "exclude", "l",  "lp", "ci"};
    for (const auto &[key, val] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw InputError("unknown field \"" + key + "\"");
        }
    }

    Problem p;
    p.canonical = j.dump();
    p.name = j.value("name", std::string("problem"));

    if (j.contains("ci")) {
        const json &ci = j["ci"];
        if (!ci.is_object() || !ci.contains("sets")) {
            throw InputError("ci: expected an object with \"sets\"");
        }
        CISpec spec;
        std::size_t si = 0;
        for (const auto &set : detail::require_array(ci["sets"], "ci.sets")) {
            PointSet ps;
            std::size_t pi = 0;
            for (const auto &pt : detail::require_array(set, "ci.sets[" + std::to_string(si) + "]")) {
                ps.points.push_back(detail::json_int_vector(
                    pt, "ci.sets[" + std::to_string(si) + "][" + std::to_string(pi++) + "]"));
            }
            spec.sets.push_back(std::move(ps));
            ++si;
        }
        validate(spec);
        const CISystem sys = build_system(spec);
        p.a = sys.a;
        p.beta = sys.beta;
        p.v = sys.v;
        p.ci = std::move(spec);
    }

    if (j.contains("matrix")) {
        std::vector<std::vector<Integer>> rows;
        std::size_t r = 0;
        for (const auto &row : detail::require_array(j["matrix"], "matrix")) {
            std::vector<Integer> out;
            for (auto x : detail::json_int_vector(row, "matrix[" + std::to_string(r) + "]")) {
                out.emplace_back(static_cast<long>(x));
            }
            if (!rows.empty() && out.size() != rows.front().size()) {
                throw InputError("matrix: row " + std::to_string(r) + " has a different length");
            }
            rows.push_back(std::move(out));
            ++r;
        }
        if (rows.empty() || rows.front().empty()) {
            throw InputError("matrix: empty");
        }
        IntMatrix a = IntMatrix::from_rows(rows);
        if (p.ci && !(a == p.a)) {
            throw InputError("matrix disagrees with the matrix derived from ci.sets");
        }
        p.a = std::move(a);
    } else if (!p.ci) {
        throw InputError("problem needs \"matrix\" or \"ci\"");
    }
    if (j.contains("beta")) {
        auto beta = detail::json_rational_vector(j["beta"], "beta");
        if (p.ci && beta != p.beta) {
            throw InputError("beta disagrees with the value derived from ci.sets");
        }
        p.beta = std::move(beta);
    }
    if (j.contains("v")) {
        auto v = detail::json_rational_vector(j["v"], "v");
        if (p.ci && v != p.v) {
            throw InputError("v disagrees with the value derived from ci.sets");
        }
        p.v = std::move(v);
    }
    if (p.beta.size() != p.a.rows()) {
        throw InputError("beta has length " + std::to_string(p.beta.size()) + ", matrix has "
                         + std::to_string(p.a.rows()) + " rows");
    }
    if (p.v.size() != p.a.cols()) {
        throw InputError("v has length " + std::to_string(p.v.size()) + ", matrix has "
                         + std::to_string(p.a.cols()) + " columns");
    }
    if (p.a.apply(std::span<const Rational>(p.v)) != p.beta) {
        throw InputError("A v != beta");
    }

    if (j.contains("radius")) {
        p.radius = detail::json_int(j["radius"], "radius");
    }
    if (j.contains("grade")) {
        p.grade = detail::json_int(j["grade"], "grade");
    }
    if (j.contains("order")) {
        p.order = static_cast<int>(detail::json_int(j["order"], "order"));
    }
    if (p.radius < 0 || p.grade < 0 || p.order < 0 || p.order > 2) {
        throw InputError("radius and grade must be >= 0 and order in {0,1,2}");
    }
    if (j.contains("exclude")) {
        for (auto i : detail::json_int_vector(j["exclude"], "exclude")) {
            if (i < 1 || static_cast<std::size_t>(i) > p.v.size()) {
                throw InputError("exclude: index " + std::to_string(i) + " out of range 1.."
                                 + std::to_string(p.v.size()));
            }
            p.exclude.push_back(static_cast<std::size_t>(i - 1));
        }
        std::sort(p.exclude.begin(), p.exclude.end());
        try {
            validate_excluded(p.exclude, p.v.size());
        } catch (const std::invalid_argument &e) {
            throw InputError(std::string("exclude: ") + e.what());
        }
    }
    for (const char *key : {"l", "lp"}) {
        if (j.contains(key)) {
            auto l = detail::json_int_vector(j[key], key);
            if (l.size() != p.v.size()) {
                throw InputError(std::string(key) + ": wrong length");
            }
            (std::string(key) == "l" ? p.l : p.lp) = std::move(l);
        }
    }
    return p;
}

inline Problem load_problem(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open problem file " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

} // namespace gkz
