// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <gkz/gkz.hpp>

#include "closed_forms.hpp"
#include "systems.hpp"

namespace fs = std::filesystem;
using namespace gkz;
using oracle::q;

namespace
{

struct Check {
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void operator()(bool ok, const std::string &what)
    {
        if (!ok) {
            failures.push_back(what);
        }
    }
    void same(const std::string &mismatch, const std::string &what)
    {
        if (!mismatch.empty()) {
            failures.push_back(what + ": " + mismatch);
        }
    }
};

bool criterion(int n, const std::string &title, double limit_s, const std::function<void(Check &)> &body)
{
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception &e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_s > 0 && secs >= limit_s) {
        std::ostringstream os;
        os << "runtime " << secs << " s over the " << limit_s << " s limit";
        c.failures.push_back(os.str());
    }
    const bool ok = c.failures.empty();
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << n << ": " << title << " (" << std::fixed
              << std::setprecision(2) << secs << " s";
    for (const auto &note : c.notes) {
        std::cout << "; " << note;
    }
    std::cout << ")\n";
    for (const auto &f : c.failures) {
        std::cout << "    " << f << '\n';
    }
    return ok;
}

bool certified_clean(const CertifiedReport &r)
{
    return r.pass() && r.checked_term_count > 0;
}

LogSeries monomial(const RationalVector &e, const LogDegree &d, const std::optional<Truncation> &meta)
{
    LogSeries s(e.size(), meta);
    s.add_term(e, d, Rational(1));
    return s;
}

std::set<LatticePoint> points_of(const std::vector<BoxPoint> &pts)
{
    std::set<LatticePoint> out;
    for (const auto &p : pts) {
        out.insert(p.point);
    }
    return out;
}

// Lattice points of a two-parameter family whose coordinates fit in the box.
std::set<LatticePoint> family_in_box(const RelationLattice &lat, std::int64_t R, const closed::PointFn &point,
                                     const std::function<bool(std::int64_t, std::int64_t)> &keep, std::int64_t span)
{
    std::set<LatticePoint> out;
    for (std::int64_t x = -span; x <= span; ++x) {
        for (std::int64_t y = -span; y <= span; ++y) {
            if (!keep(x, y)) {
                continue;
            }
            const auto p = point(x, y);
            const auto c = lat.coordinates(std::span<const std::int64_t>(p));
            if (c && std::all_of(c->begin(), c->end(), [&](std::int64_t t) { return std::abs(t) <= R; })) {
                out.insert(p);
            }
        }
    }
    return out;
}

std::int64_t radius_covering(const RelationLattice &lat, const closed::Window &w, const closed::PointFn &point)
{
    std::int64_t R = 0;
    for (std::int64_t x = w.lo1; x <= w.hi1; ++x) {
        for (std::int64_t y = w.lo2; y <= w.hi2; ++y) {
            if (w.inside(x, y)) {
                const auto p = point(x, y);
                const auto coords = lat.coordinates(std::span<const std::int64_t>(p));
                for (auto c : coords.value()) {
                    R = std::max(R, std::abs(c));
                }
            }
        }
    }
    return R;
}

std::size_t mutation_misses(const LogSeries &s, const std::vector<BoxOp> &ops, std::size_t &exempt)
{
    std::size_t missed = 0;
    for (const auto &[k, c] : s.terms()) {
        const auto bump = monomial(k.exponent, k.logdeg, s.meta());
        bool annihilated = true;
        for (const auto &op : ops) {
            annihilated = annihilated && apply_box(bump, op).is_zero();
        }
        if (annihilated) {
            ++exempt;
            continue;
        }
        if (verify_box_all(s + bump, ops).pass()) {
            ++missed;
        }
    }
    return missed;
}

int run_cli(const std::string &args, const fs::path &out)
{
    const std::string cmd = std::string(GKZ_BINARY) + " " + args + " --out " + out.string() + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const closed::Window gauss_window{-10, 10, 0, 0, [](std::int64_t, std::int64_t) { return true; }};

LatticePoint gauss_point(std::int64_t k, std::int64_t)
{
    return {-k, -k, k, k};
}

void gauss(Check &check)
{
    const auto A = fixtures::gauss_matrix();
    const auto lat = kernel_basis(A);
    const auto ops = standard_box_ops(lat);
    const LatticePoint l{-1, -1, 1, 1};
    for (auto [a, b] : {std::pair{q(1, 2), q(1, 3)}, std::pair{q(2, 5), q(7, 3)}}) {
        const std::string tag = "(a,b)=(" + to_string(a) + "," + to_string(b) + ")";
        const auto v = fixtures::gauss_v(a, b);
        const auto beta = A.apply(std::span<const Rational>(v));
        const auto F = build_F(v, lat, 10);
        check.same(closed::compare(F, v, gauss_window, gauss_point,
                                   [&](std::int64_t k, std::int64_t) {
                                       return k < 0 ? Rational(0) : closed::gauss_F(a, b, k);
                                   }),
                   "F " + tag);
        std::vector<LogSeries> G;
        for (std::size_t i = 0; i < 4; ++i) {
            G.push_back(build_G(v, i, lat, 10));
        }
        const auto sol = combine_first_order(F, G, l);
        check.same(closed::compare(sol.log_part(LogDegree(4, 0)), v, gauss_window, gauss_point,
                                   [&](std::int64_t k, std::int64_t) {
                                       return k < 0 ? Rational(0) : closed::gauss_log_free(a, b, k);
                                   }),
                   "log-free part " + tag);
        for (std::size_t i = 0; i < 4; ++i) {
            LogDegree d(4, 0);
            d[i] = 1;
            check(sol.log_part(d) == scale(F, static_cast<long>(l[i])), "log coefficient " + std::to_string(i + 1));
        }
        check(certified_clean(verify_box_all(F, ops)), "box on F " + tag);
        check(certified_clean(verify_box_all(sol, ops)), "box on solution " + tag);
        check(verify_euler_annihilation(F, A, beta).pass(), "euler on F " + tag);
        check(verify_euler_annihilation(sol, A, beta).pass(), "euler on solution " + tag);
    }
}

void sst(Check &check)
{
    const auto A = fixtures::sst_matrix();
    const auto lat = kernel_basis(A);
    const auto v = fixtures::sst_v();
    const auto beta = fixtures::sst_beta();
    const auto ops = standard_box_ops(lat);
    const std::int64_t R = 6;

    const auto F = build_F(v, lat, R);
    LogSeries lambda5(5);
    lambda5.add_term(v, LogDegree(5, 0), Rational(1));
    check(F == lambda5, "F is lambda_5");
    std::vector<LogSeries> G;
    for (std::size_t i = 0; i < 5; ++i) {
        G.push_back(build_G(v, i, lat, R));
    }
    for (std::size_t i = 0; i < 4; ++i) {
        check(G[i].is_zero(), "G_" + std::to_string(i + 1) + " vanishes");
    }
    const closed::Window upper{0, 6, 0, 6, [](std::int64_t a, std::int64_t b) { return a + b <= 6; }};
    const closed::Window left{-6, 0, 0, 6, [](std::int64_t a, std::int64_t b) { return -a + b <= 6; }};
    const closed::Window lower{0, 6, -6, 0, [](std::int64_t a, std::int64_t b) { return a - b <= 6; }};
    check.same(closed::compare(G[4], v, upper, closed::sst_point, closed::sst_G5), "G_5");
    const auto H55 = build_H_diag(v, 4, lat, R);
    check.same(closed::compare(H55, v, upper, closed::sst_point, closed::sst_H55), "H_55");
    std::vector<LogSeries> Hi5;
    for (std::size_t i = 0; i < 4; ++i) {
        Hi5.push_back(build_H_off(v, i, 4, lat, R));
        check.same(closed::compare(Hi5[i], v, upper, closed::sst_point, i % 2 == 0 ? closed::sst_H15 : closed::sst_H25),
                   "H_" + std::to_string(i + 1) + "5");
    }
    check.same(closed::compare(build_H_off(v, 0, 2, lat, R), v, left, closed::sst_point, closed::sst_H13), "H_13");
    check.same(closed::compare(build_H_off(v, 1, 3, lat, R), v, lower, closed::sst_point, closed::sst_H24), "H_24");

    const LatticePoint l{-1, 0, -1, 0, 2}, lp{0, 1, 0, 1, -2};
    const auto sol = combine_second_order(F, G, build_H_table(v, lat, R, l, lp), l, lp);
    LogSeries tail = scale(H55, Rational(-4));
    for (const auto &h : Hi5) {
        tail += scale(h, Rational(2));
    }
    check(sol.log_part(LogDegree(5, 0)) == tail, "log-free tail is -4 H_55 + 2 sum H_i5");
    check(certified_clean(verify_box_all(sol, ops)), "box on the second-order solution");
    check(verify_euler_annihilation(sol, A, beta).pass(), "euler on the second-order solution");
    for (const auto &rel : {l, lp}) {
        const auto first = combine_first_order(F, G, rel);
        check(certified_clean(verify_box_all(first, ops)), "box on a first-order solution");
        check(verify_euler_annihilation(first, A, beta).pass(), "euler on a first-order solution");
    }
}

void supports(Check &check)
{
    const std::int64_t R = 6;
    {
        const auto lat = kernel_basis(fixtures::gauss_matrix());
        const auto v = fixtures::gauss_v(q(1, 2), q(1, 3));
        std::set<LatticePoint> half_line;
        for (std::int64_t k = 0; k <= R; ++k) {
            half_line.insert(gauss_point(k, 0));
        }
        check(check_minimal(v, lat, R).is_minimal(), "gauss minimal");
        check(points_of(support_set(v, lat, R)) == half_line, "gauss L_v");
        for (std::size_t i = 0; i < 4; ++i) {
            check(check_minimal(v, lat, R, {i}).is_minimal(), "gauss minimal, one excluded");
            check(points_of(support_set(v, lat, R, {i})) == half_line, "gauss L_v,i");
        }
    }
    {
        const auto lat = kernel_basis(fixtures::sst_matrix());
        const auto v = fixtures::sst_v();
        auto region = [&](std::function<bool(std::int64_t, std::int64_t)> keep) {
            return family_in_box(lat, R, closed::sst_point, std::move(keep), R);
        };
        const std::set<LatticePoint> zero{closed::sst_point(0, 0)};
        check(points_of(support_set(v, lat, R)) == zero, "sst L_v");
        for (std::size_t i = 0; i < 5; ++i) {
            check(check_minimal(v, lat, R, {i}).is_minimal(), "sst minimal, one excluded");
            for (std::size_t j = i + 1; j < 5; ++j) {
                check(check_minimal(v, lat, R, {i, j}).is_minimal(), "sst minimal, two excluded");
            }
        }
        for (std::size_t i = 0; i < 4; ++i) {
            check(points_of(support_set(v, lat, R, {i})) == zero, "sst L_v,i for i <= 4");
        }
        check(points_of(support_set(v, lat, R, {4})) ==
                  region([](std::int64_t a, std::int64_t b) { return a >= 0 && b >= 0; }),
              "sst L_v,5");
        check(points_of(support_set(v, lat, R, {0, 2})) ==
                  region([](std::int64_t a, std::int64_t b) { return -a >= b && b >= 0; }),
              "sst L_v,13");
        check(points_of(support_set(v, lat, R, {1, 3})) ==
                  region([](std::int64_t a, std::int64_t b) { return -b >= a && a >= 0; }),
              "sst L_v,24");
        for (auto ex : {IndexSet{0, 1}, IndexSet{0, 3}, IndexSet{1, 2}, IndexSet{2, 3}}) {
            check(points_of(support_set(v, lat, R, ex)) == zero, "sst mixed pair gives {0}");
        }
    }
    auto nonneg = [](std::int64_t l, std::int64_t m) { return l >= 0 && m >= 0; };
    {
        const auto sys = build_system(fixtures::ci_example1());
        const auto lat = kernel_basis(sys.a);
        const auto lv = family_in_box(lat, R, closed::ci1_point, nonneg, 4 * R);
        check(points_of(support_set(sys.v, lat, R)) == lv, "example 1 L_v");
        for (std::size_t j = 0; j < 7; ++j) {
            check(check_minimal(sys.v, lat, R, {j}).is_minimal(), "example 1 minimal");
            check(points_of(support_set(sys.v, lat, R, {j})) == lv, "example 1 L_v,j = L_v");
        }
    }
    {
        const auto sys = build_system(fixtures::ci_example2());
        const auto lat = kernel_basis(sys.a);
        const auto lv = family_in_box(lat, R, closed::ci2_point, nonneg, 4 * R);
        check(points_of(support_set(sys.v, lat, R)) == lv, "example 2 L_v");
        for (std::size_t j = 0; j < 5; ++j) {
            check(check_minimal(sys.v, lat, R, {j}).is_minimal(), "example 2 minimal");
        }
        for (std::size_t j = 0; j < 4; ++j) {
            check(points_of(support_set(sys.v, lat, R, {j})) == lv, "example 2 L_v,j = L_v");
        }
        const auto l4 = family_in_box(
            lat, R, closed::ci2_point, [](std::int64_t l, std::int64_t m) { return l >= 0 && 2 * l + m >= 0; }, 4 * R);
        check(points_of(support_set(sys.v, lat, R, {4})) == l4, "example 2 L_v,4");
    }
}

void negative_control(Check &check)
{
    const auto lat = kernel_basis(fixtures::sst_matrix());
    const auto v = fixtures::sst_v();
    const std::int64_t R = 6;
    const auto F = build_F(v, lat, R);
    std::vector<LogSeries> G;
    for (std::size_t i = 0; i < 5; ++i) {
        G.push_back(build_G(v, i, lat, R));
    }
    const LatticePoint l{-1, 0, -1, 0, 2};
    const auto sol = combine_second_order(F, G, build_H_table(v, lat, R, l, l), l, l);
    std::set<LatticePoint> support;
    for (const auto &[k, c] : sol.terms()) {
        LatticePoint p(5);
        for (std::size_t t = 0; t < 5; ++t) {
            p[t] = to_int64(Integer(Rational(k.exponent[t] - v[t]).get_num()));
        }
        support.insert(p);
    }
    const auto in5 = points_of(support_set(v, lat, R, {4}));
    const auto in13 = points_of(support_set(v, lat, R, {0, 2}));
    bool hits5 = false, hits13 = false;
    for (const auto &p : support) {
        hits5 = hits5 || (p != LatticePoint(5, 0) && in5.contains(p));
        hits13 = hits13 || (p != LatticePoint(5, 0) && in13.contains(p));
    }
    check(hits5, "support meets L_v,5 away from 0");
    check(hits13, "support meets L_v,13 away from 0");
    bool raised = false;
    try {
        positive_grading(lat, {support.begin(), support.end()});
    } catch (const NoPositiveFunctional &) {
        raised = true;
    }
    check(raised, "positive_grading raises NoPositiveFunctional");
}

template <typename GFn>
void ci_closed_forms(Check &check, const CISpec &spec, std::size_t columns, const closed::Window &w,
                     const closed::PointFn &point, const closed::ValueFn &F_form, GFn G_form, const std::string &tag)
{
    const auto sys = build_system(spec);
    const auto lat = kernel_basis(sys.a);
    const std::int64_t R = radius_covering(lat, w, point);
    const auto F = build_F(sys.v, lat, R);
    check.same(closed::compare(F, sys.v, w, point, F_form, 3 * R), tag + " F");
    for (std::size_t j = 0; j < columns; ++j) {
        const auto G = build_G(sys.v, j, lat, R);
        check.same(closed::compare(G, sys.v, w, point, [&](std::int64_t l, std::int64_t m) { return G_form(j, l, m); },
                                   3 * R),
                   tag + " G_" + std::to_string(j));
    }
}

void example1(Check &check)
{
    const auto spec = fixtures::ci_example1();
    const auto sys = build_system(spec);
    const IntMatrix displayed{{0, 1, 0, -1, 0, 0, 0},
                              {0, 0, 1, -1, 0, 0, 0},
                              {0, 0, 0, 0, 1, 0, -1},
                              {0, 0, 0, 0, 0, 1, -1},
                              {1, 1, 1, 1, 1, 1, 1}};
    check(sys.a == displayed, "lifted matrix");
    check(hypothesis_holds(spec), "unique interior point check");
    check(interior_lattice_points(minkowski_hull(spec.sets)) == std::vector<IntPoint>{{0, 0, 0, 0}},
          "interior point is the origin");
    const closed::Window w{-1, 7, -1, 7, [](std::int64_t l, std::int64_t m) { return l + m <= 6; }};
    ci_closed_forms(check, spec, 7, w, closed::ci1_point, closed::ci1_F, closed::ci1_G, "example 1");
    std::size_t bad = 0;
    for (std::size_t j = 0; j < 7; ++j) {
        const auto qm = mirror_map(spec, 0, j, 8, 1);
        bad += integrality_report(qm).size();
        if (j == 0) {
            const auto x = *qm.lattice.coordinates(std::span<const std::int64_t>(closed::ci1_point(1, 0)));
            check(qm.series.coefficient(x) == 11, "q_0 grade-1 coefficient");
        }
    }
    check(bad == 0, "q_0..q_6 integral to grade 8");
}

void example2(Check &check, const fs::path &archive)
{
    const auto spec = fixtures::ci_example2();
    check(hypothesis_holds(spec), "unique interior point check");
    const closed::Window w{-1, 6, -14, 9, [](std::int64_t l, std::int64_t m) {
                               return 3 * l + m <= 6 && 2 * l + m >= -1;
                           }};
    ci_closed_forms(check, spec, 5, w, closed::ci2_point, closed::ci2_F, closed::ci2_G, "example 2");
    for (std::size_t j = 0; j < 4; ++j) {
        check(integrality_report(mirror_map(spec, 0, j, 6, 1)).empty(), "q_" + std::to_string(j) + " integral");
    }
    const auto q4 = mirror_map(spec, 0, 4, 6, 1);
    fs::create_directories(archive);
    const auto path = archive / "integrality_1_4.txt";
    {
        std::ofstream f(path, std::ios::binary);
        write_integrality_report(f, spec, q4);
    }
    const std::string text = slurp(path);
    check(text.starts_with("# gkz-integrality v1\n") && text.find("# index 1 4\n") != std::string::npos,
          "j=4 report archived");
    const auto n = integrality_report(q4).size();
    check.notes.push_back("j=4 report at " + path.string() + ": " + std::to_string(n) + " non-integral of "
                          + std::to_string(q4.series.size()));
}

void properties(Check &check)
{
    for (const Rational &z : {Rational(0), Rational(1), q(-5, 2), q(1, 3)}) {
        for (unsigned m = 0; m <= 2; ++m) {
            for (std::int64_t k = -6; k <= 6; ++k) {
                if (!bracket_defined(z, k) || !bracket_defined(z, k - 1)) {
                    continue;
                }
                const auto p = f_coeffs(z, k, m);
                const auto below = f_coeffs(z, k - 1, m);
                bool ok = true;
                for (std::size_t n = 0; n <= m; ++n) {
                    ok = ok && (z + k) * p[n] + Rational(static_cast<long>(n + 1)) * p[n + 1] == below[n];
                }
                check(ok, "derivative chain at z=" + to_string(z) + " k=" + std::to_string(k));
            }
        }
        for (std::int64_t k = -6; k <= 6; ++k) {
            if (bracket_defined(z, k)) {
                check(bracket(z, k) == oracle::bracket(z, k), "bracket oracle");
            }
        }
        for (std::int64_t i = 0; i <= 6; ++i) {
            const auto fall = oracle::falling_args(z, i);
            for (std::int64_t j = 0; j <= i; ++j) {
                check(elem_sym_shifted(i, j, z) == oracle::elementary(fall, j), "elementary symmetric oracle");
            }
            check(elem_sym_shifted(i, i, z) == bracket(z, -i), "top elementary symmetric is a bracket");
        }
    }

    std::mt19937 rng(2024);
    std::uniform_int_distribution<long> small(-4, 4), den(1, 5), deg(0, 2);
    std::uniform_int_distribution<std::size_t> var(0, 3);
    std::size_t differing = 0;
    for (int trial = 0; trial < 100; ++trial) {
        LogSeries s(4);
        while (s.size() < 10) {
            RationalVector e(4);
            LogDegree d(4);
            for (std::size_t k = 0; k < 4; ++k) {
                e[k] = q(small(rng), den(rng));
                d[k] = deg(rng);
            }
            s.add_term(e, d, q(small(rng) == 0 ? 1 : small(rng), den(rng)));
        }
        const std::size_t j = var(rng), k = var(rng);
        differing += differentiate(differentiate(s, j), k) == differentiate(differentiate(s, k), j) ? 0 : 1;
    }
    check(differing == 0, "mixed partials commute on 100 random series");

    std::size_t total = 0, exempt = 0, missed = 0;
    auto mutate = [&](const LogSeries &s, const RelationLattice &lat) {
        const auto ops = standard_box_ops(lat);
        check(verify_box_all(s, ops).pass(), "unperturbed quasisolution verifies");
        total += s.size();
        missed += mutation_misses(s, ops, exempt);
    };
    {
        const auto lat = kernel_basis(fixtures::gauss_matrix());
        const auto v = fixtures::gauss_v(q(2, 5), q(7, 3));
        const auto F = build_F(v, lat, 6);
        mutate(F, lat);
        for (std::size_t i = 0; i < 4; ++i) {
            mutate(first_order_quasisolution(F, build_G(v, i, lat, 6), i), lat);
        }
    }
    {
        const auto lat = kernel_basis(fixtures::sst_matrix());
        const auto v = fixtures::sst_v();
        const auto F = build_F(v, lat, 4);
        const auto G1 = build_G(v, 0, lat, 4), G3 = build_G(v, 2, lat, 4), G5 = build_G(v, 4, lat, 4);
        mutate(first_order_quasisolution(F, G5, 4), lat);
        mutate(second_order_quasisolution(F, G1, G3, build_H_off(v, 0, 2, lat, 4), 0, 2), lat);
        mutate(second_order_quasisolution(F, G5, G5, build_H_diag(v, 4, lat, 4), 4, 4), lat);
    }
    {
        const auto sys = build_system(fixtures::ci_example2());
        const auto lat = kernel_basis(sys.a);
        const auto F = build_F(sys.v, lat, 3);
        mutate(first_order_quasisolution(F, build_G(sys.v, 4, lat, 3), 4), lat);
    }
    check(missed == 0, std::to_string(missed) + " perturbations went undetected");
    check.notes.push_back(std::to_string(total - exempt) + " perturbations caught, " + std::to_string(exempt)
                          + " monomials annihilated by every box operator");
}

void determinism(Check &check, const fs::path &work)
{
    const fs::path dir{GKZ_PROBLEM_DIR};
    const std::vector<std::string> commands{
        "lattice " + (dir / "gauss.json").string(),
        "support " + (dir / "gauss.json").string(),
        "solve " + (dir / "gauss.json").string(),
        "combine " + (dir / "gauss.json").string(),
        "lattice " + (dir / "sst.json").string(),
        "support " + (dir / "sst.json").string() + " --exclude 1,3",
        "solve " + (dir / "sst.json").string(),
        "combine " + (dir / "sst.json").string(),
        "ci " + (dir / "ci_example1.json").string(),
        "mirror " + (dir / "ci_example1.json").string(),
        "ci " + (dir / "ci_example2.json").string(),
        "mirror " + (dir / "ci_example2.json").string() + " --index 4",
    };
    fs::remove_all(work);
    std::size_t files = 0;
    for (std::size_t k = 0; k < commands.size(); ++k) {
        const auto a = work / ("a" + std::to_string(k)), b = work / ("b" + std::to_string(k));
        const int ca = run_cli(commands[k] + " --threads 1", a);
        const int cb = run_cli(commands[k] + " --threads 4", b);
        check(ca == 0 && cb == 0, commands[k] + ": exit codes " + std::to_string(ca) + ", " + std::to_string(cb));
        std::set<std::string> na, nb;
        for (const auto &e : fs::directory_iterator(a)) {
            na.insert(e.path().filename().string());
        }
        for (const auto &e : fs::directory_iterator(b)) {
            nb.insert(e.path().filename().string());
        }
        check(na == nb, commands[k] + ": artifact sets differ");
        for (const auto &name : na) {
            ++files;
            check(slurp(a / name) == slurp(b / name), commands[k] + ": " + name + " differs");
        }
    }
    fs::remove_all(work);
    check.notes.push_back(std::to_string(files) + " artifacts compared");
}

} // namespace

int main()
{
    const fs::path archive = fs::current_path() / "acceptance-artifacts";
    bool ok = true;
    ok &= criterion(1, "Gauss F and l=(-1,-1,1,1) solution", 5, gauss);
    ok &= criterion(2, "SST closed forms and second-order solution", 10, sst);
    ok &= criterion(3, "minimality verdicts and support sets", 0, supports);
    ok &= criterion(4, "l=l' solution has no pointed cone", 0, negative_control);
    ok &= criterion(5, "complete intersection example 1", 60, example1);
    ok &= criterion(6, "complete intersection example 2", 60, [&](Check &c) { example2(c, archive); });
    ok &= criterion(7, "property suites and mutation testing", 0, properties);
    ok &= criterion(8, "byte-identical artifacts", 0,
                    [&](Check &c) { determinism(c, fs::temp_directory_path() / "gkz_acceptance_runs"); });
    return ok ? 0 : 1;
}
