#pragma once

// Batch front end. Every command reads one problem file, writes its artifacts
// and a report.json into the output directory, and returns
//   0 all verifications passed, 1 a verification failed,
//   2 bad input, 3 a resource limit was hit.
// Timing goes to the error stream only, so artifacts are reproducible byte for
// byte.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "builders.hpp"
#include "ci_mirror.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "logseries.hpp"
#include "operators.hpp"
#include "parallel.hpp"
#include "polytope.hpp"
#include "problem.hpp"
#include "support.hpp"

namespace gkz::cli
{

enum ExitCode : int { Pass = 0, VerificationFailed = 1, BadInput = 2, OverLimit = 3 };

struct Options {
    std::string command;
    std::string file;
    std::optional<std::int64_t> radius;
    std::optional<std::int64_t> grade;
    std::optional<int> order;
    std::string exclude;
    std::string out_dir = "gkz-out";
    std::optional<unsigned> threads;
    std::size_t max_terms = default_max_box_points;
    std::string l;
    std::string lp;
    std::size_t set = 1;
    std::size_t index = 0;
};

namespace detail
{

using ojson = nlohmann::ordered_json;

inline std::vector<std::int64_t> parse_int_list(const std::string &text, const std::string &flag)
{
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            throw InputError(flag + ": \"" + item + "\" is not an integer");
        }
    }
    return out;
}

template <typename T>
std::string tuple(const std::vector<T> &xs)
{
    std::ostringstream os;
    gkz::detail::write_tuple(os, xs, [](const T &x) {
        if constexpr (std::is_same_v<T, Rational>) {
            return to_string(x);
        } else {
            return std::to_string(x);
        }
    });
    return os.str();
}

inline ojson summary(const CertifiedReport &r)
{
    ojson j;
    j["pass"] = r.pass();
    j["checked"] = r.checked_term_count;
    j["uncertified"] = r.uncertified_term_count;
    j["violations"] = r.violations.size();
    return j;
}

class Run
{
public:
    Run(const Options &opt, std::ostream &out) : m_opt(opt), m_out(out)
    {
        m_report["command"] = opt.command;
        m_report["problem"] = std::filesystem::path(opt.file).filename().string();
    }

    void set_problem(const Problem &p)
    {
        m_report["name"] = p.name;
        m_report["problem_hash"] = hex64(p.hash());
    }

    void write(const std::string &name, const std::string &content)
    {
        std::filesystem::create_directories(m_opt.out_dir);
        std::ofstream f(std::filesystem::path(m_opt.out_dir) / name, std::ios::binary);
        f << content;
        if (!f) {
            throw std::runtime_error("cannot write " + name);
        }
        m_report["artifacts"].push_back(name);
    }

    ojson &report()
    {
        return m_report;
    }
    std::ostream &out()
    {
        return m_out;
    }

    void fail()
    {
        m_pass = false;
    }
    bool passed() const
    {
        return m_pass;
    }

    void finish(const std::string &status, const std::string &error = {})
    {
        m_report["status"] = status;
        if (!error.empty()) {
            m_report["error"] = error;
        }
        std::filesystem::create_directories(m_opt.out_dir);
        std::ofstream f(std::filesystem::path(m_opt.out_dir) / "report.json", std::ios::binary);
        f << m_report.dump(2) << '\n';
    }

private:
    const Options &m_opt;
    std::ostream &m_out;
    ojson m_report;
    bool m_pass = true;
};

inline unsigned threads(const Options &o)
{
    return o.threads ? std::max(1u, *o.threads) : default_thread_count();
}

inline IndexSet excluded(const Options &o, const Problem &p)
{
    if (o.exclude.empty()) {
        return p.exclude;
    }
    IndexSet out;
    for (auto i : parse_int_list(o.exclude, "--exclude")) {
        if (i < 1 || static_cast<std::size_t>(i) > p.v.size()) {
            throw InputError("--exclude: index " + std::to_string(i) + " out of range 1.."
                             + std::to_string(p.v.size()));
        }
        out.push_back(static_cast<std::size_t>(i - 1));
    }
    std::sort(out.begin(), out.end());
    try {
        validate_excluded(out, p.v.size());
    } catch (const std::invalid_argument &e) {
        throw InputError(std::string("--exclude: ") + e.what());
    }
    return out;
}

inline std::optional<LatticePoint> relation(const std::string &flag_value, const std::optional<LatticePoint> &fallback,
                                            const Problem &p, const std::string &flag)
{
    std::optional<LatticePoint> l = fallback;
    if (!flag_value.empty()) {
        l = parse_int_list(flag_value, flag);
    }
    if (!l) {
        return l;
    }
    if (l->size() != p.a.cols()) {
        throw InputError(flag + ": expected " + std::to_string(p.a.cols()) + " entries");
    }
    for (const auto &x : p.a.apply(std::span<const std::int64_t>(*l))) {
        if (sgn(x) != 0) {
            throw InputError(flag + ": " + tuple(*l) + " is not a relation of the matrix");
        }
    }
    return l;
}

inline CertifiedReport verify_box(const LogSeries &s, const RelationLattice &lat, unsigned th)
{
    return verify_box_all(s, standard_box_ops(lat), th);
}

inline std::string report_text(const std::string &label, const CertifiedReport &r)
{
    std::ostringstream os;
    os << "## " << label << '\n';
    write_report(os, r);
    return os.str();
}

inline void cmd_lattice(Run &run, const Problem &p)
{
    const auto lat = kernel_basis(p.a);
    std::ostringstream os;
    os << "# rank " << lat.rank() << '\n';
    for (std::size_t k = 0; k < lat.rank(); ++k) {
        os << tuple(lat.basis_vector(k)) << '\n';
    }
    run.out() << os.str();
    run.write("lattice.txt", os.str());
    for (std::size_t k = 0; k < lat.rank(); ++k) {
        run.report()["basis"].push_back(lat.basis_vector(k));
    }
}

inline std::string one_based(const IndexSet &s)
{
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) {
        out += (k ? "," : "") + std::to_string(s[k] + 1);
    }
    return out + "}";
}

inline void cmd_support(Run &run, const Options &o, const Problem &p)
{
    const auto lat = kernel_basis(p.a);
    const std::int64_t r = o.radius.value_or(p.radius);
    const IndexSet ex = excluded(o, p);
    box_point_count(lat.rank(), r, o.max_terms);
    const auto verdict = check_minimal(p.v, lat, r, ex, o.max_terms);
    const auto pts = support_set(p.v, lat, r, ex, o.max_terms);
    std::ostringstream os;
    os << "# excluded " << one_based(ex) << '\n';
    os << "# radius " << r << '\n';
    os << "# nsupp " << one_based(nsupp(p.v, ex)) << '\n';
    if (verdict.is_minimal()) {
        os << "# minimal within radius " << r << '\n';
    } else {
        os << "# not minimal: counterexample " << tuple(*verdict.counterexample()) << '\n';
        run.fail();
    }
    os << "# points " << pts.size() << '\n';
    for (const auto &bp : pts) {
        os << tuple(bp.coords) << " | " << tuple(bp.point) << '\n';
    }
    run.out() << os.str();
    run.write("support.txt", os.str());
    run.report()["excluded"] = one_based(ex);
    run.report()["radius"] = r;
    run.report()["minimal"] = verdict.is_minimal();
    if (!verdict.is_minimal()) {
        run.report()["counterexample"] = *verdict.counterexample();
    }
    run.report()["support_points"] = pts.size();
}

inline void cmd_solve(Run &run, const Options &o, const Problem &p)
{
    const auto lat = kernel_basis(p.a);
    const std::int64_t r = o.radius.value_or(p.radius);
    const int order = o.order.value_or(p.order);
    if (order < 0 || order > 2) {
        throw InputError("--order must be 0, 1 or 2");
    }
    const unsigned th = threads(o);
    box_point_count(lat.rank(), r, o.max_terms);
    const IndexSet ex = excluded(o, p);
    const std::size_t n = p.v.size();
    run.report()["order"] = order;
    run.report()["radius"] = r;

    std::string verify;
    auto record = [&](const std::string &file, const LogSeries &s) {
        const auto rep = verify_box(s, lat, th);
        run.write(file, to_text(s));
        verify += report_text(file, rep);
        ojson entry;
        entry["file"] = file;
        entry["terms"] = s.size();
        entry["box"] = summary(rep);
        run.report()["series"].push_back(entry);
        if (!rep.pass()) {
            run.fail();
        }
        run.out() << file << ": " << (rep.pass() ? "PASS" : "FAIL") << " (" << rep.checked_term_count
                  << " certified positions)\n";
    };

    const LogSeries F = build_F(p.v, lat, r, th);
    if (order == 0) {
        record("F.series", F);
    } else if (order == 1) {
        IndexSet idx = ex;
        if (idx.empty()) {
            for (std::size_t i = 0; i < n; ++i) {
                idx.push_back(i);
            }
        }
        for (auto i : idx) {
            const LogSeries G = build_G(p.v, i, lat, r, th);
            record("q1_" + std::to_string(i + 1) + ".series", first_order_quasisolution(F, G, i));
        }
    } else {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        if (ex.size() == 2) {
            pairs.emplace_back(ex[0], ex[1]);
        } else if (ex.size() == 1) {
            pairs.emplace_back(ex[0], ex[0]);
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i; j < n; ++j) {
                    pairs.emplace_back(i, j);
                }
            }
        }
        std::map<std::size_t, LogSeries> G;
        auto g = [&](std::size_t i) -> const LogSeries & {
            auto it = G.find(i);
            if (it == G.end()) {
                it = G.emplace(i, build_G(p.v, i, lat, r, th)).first;
            }
            return it->second;
        };
        for (auto [i, j] : pairs) {
            const LogSeries H = build_H_off(p.v, i, j, lat, r, th);
            record("q2_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + ".series",
                   second_order_quasisolution(F, g(i), g(j), H, i, j));
        }
    }
    run.write("verify.txt", verify);
}

inline void cmd_combine(Run &run, const Options &o, const Problem &p)
{
    const auto lat = kernel_basis(p.a);
    const std::int64_t r = o.radius.value_or(p.radius);
    const unsigned th = threads(o);
    box_point_count(lat.rank(), r, o.max_terms);
    const auto l = relation(o.l, p.l, p, "--l");
    const auto lp = relation(o.lp, p.lp, p, "--lp");
    if (!l) {
        throw InputError("combine needs a relation l (--l or \"l\" in the problem file)");
    }
    const std::size_t n = p.v.size();
    run.report()["radius"] = r;
    run.report()["l"] = *l;
    if (lp) {
        run.report()["lp"] = *lp;
    }

    const LogSeries F = build_F(p.v, lat, r, th);
    std::vector<LogSeries> G(n, LogSeries(n, F.meta()));
    for (std::size_t i = 0; i < n; ++i) {
        if ((*l)[i] != 0 || (lp && (*lp)[i] != 0)) {
            G[i] = build_G(p.v, i, lat, r, th);
        }
    }
    LogSeries sol = lp ? combine_second_order(F, G, build_H_table(p.v, lat, r, *l, *lp, th), *l, *lp)
                       : combine_first_order(F, G, *l);
    if (!sol.meta()) {
        sol.set_meta(F.meta());
    }
    const auto box = verify_box(sol, lat, th);
    const auto euler = verify_euler_annihilation(sol, p.a, p.beta);
    run.write("solution.series", to_text(sol));
    run.write("verify.txt", report_text("box", box) + report_text("euler", euler));
    run.report()["terms"] = sol.size();
    run.report()["box"] = summary(box);
    run.report()["euler"] = summary(euler);
    if (!box.pass() || !euler.pass()) {
        run.fail();
    }
    run.out() << "solution.series: box " << (box.pass() ? "PASS" : "FAIL") << ", euler "
              << (euler.pass() ? "PASS" : "FAIL") << '\n';
}

inline const CISpec &require_ci(const Problem &p)
{
    if (!p.ci) {
        throw InputError("this command needs a \"ci\" section in the problem file");
    }
    return *p.ci;
}

inline void cmd_ci(Run &run, const Options &o, const Problem &p)
{
    const CISpec &spec = require_ci(p);
    const auto sys = build_system(spec);
    const auto lat = kernel_basis(sys.a);
    const std::int64_t r = o.radius.value_or(p.radius);
    box_point_count(lat.rank(), r, o.max_terms);

    bool hypothesis = false;
    std::string hull_note;
    try {
        hypothesis = has_unique_interior_point(spec.sets, sys.delta);
    } catch (const DegenerateHull &e) {
        hull_note = e.what();
    }
    std::ostringstream os;
    os << "# matrix\n" << sys.a;
    os << "# beta " << tuple(sys.beta) << '\n';
    os << "# v " << tuple(sys.v) << '\n';
    os << "# delta " << tuple(sys.delta) << '\n';
    os << "# unique interior point " << (hypothesis ? "yes" : "no") << '\n';
    if (!hull_note.empty()) {
        os << "# " << hull_note << '\n';
    }
    os << "# minimality within radius " << r << '\n';
    bool all_minimal = true;
    for (const auto &row : minimality_sweep(spec, sys, lat, r)) {
        os << row.set + 1 << ' ' << row.index << " | ";
        if (row.verdict.is_minimal()) {
            os << "minimal\n";
        } else {
            all_minimal = false;
            os << "counterexample " << tuple(*row.verdict.counterexample()) << '\n';
        }
    }
    run.out() << os.str();
    run.write("ci.txt", os.str());
    run.report()["radius"] = r;
    run.report()["unique_interior_point"] = hypothesis;
    run.report()["all_minimal"] = all_minimal;
    if (!hypothesis || !all_minimal) {
        run.fail();
    }
}

inline void cmd_mirror(Run &run, const Options &o, const Problem &p)
{
    const CISpec &spec = require_ci(p);
    if (o.set < 1 || o.set > spec.sets.size()) {
        throw InputError("--set out of range 1.." + std::to_string(spec.sets.size()));
    }
    if (o.index >= spec.sets[o.set - 1].points.size()) {
        throw InputError("--index out of range 0.." + std::to_string(spec.sets[o.set - 1].points.size() - 1));
    }
    const std::int64_t d = o.grade.value_or(p.grade);
    const std::int64_t r = o.radius.value_or(p.radius);
    const auto q = mirror_map(spec, o.set - 1, o.index, d, r, threads(o));
    std::ostringstream series, report;
    write_mirror_series(series, q);
    write_integrality_report(report, spec, q);
    const std::string tag = std::to_string(o.set) + "_" + std::to_string(o.index);
    run.write("mirror_" + tag + ".txt", series.str());
    run.write("integrality_" + tag + ".txt", report.str());
    run.out() << report.str();
    const auto bad = integrality_report(q);
    run.report()["set"] = o.set;
    run.report()["index"] = o.index;
    run.report()["grade"] = d;
    run.report()["radius"] = q.radius;
    run.report()["grading"] = q.grading.c;
    run.report()["terms"] = q.series.size();
    run.report()["non_integral"] = bad.size();
    if (!bad.empty()) {
        run.fail();
    }
}

} // namespace detail

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    Options o;
    CLI::App app{"Logarithmic solutions of A-hypergeometric systems and mirror maps", "gkz"};
    app.require_subcommand(1);
    auto common = [&](CLI::App *c) {
        c->add_option("problem", o.file, "problem file (JSON)")->required();
        c->add_option("--radius", o.radius, "coefficient box radius");
        c->add_option("--out", o.out_dir, "output directory");
        c->add_option("--threads", o.threads, "worker threads (default: GKZ_THREADS or 1)");
        c->add_option("--max-terms", o.max_terms, "cap on enumerated lattice points");
    };
    auto *lattice = app.add_subcommand("lattice", "print a basis of the relation lattice");
    auto *support = app.add_subcommand("support", "minimality verdict and support set");
    auto *solve = app.add_subcommand("solve", "build and box-verify (quasi)solutions");
    auto *combine = app.add_subcommand("combine", "combine quasisolutions into a solution and verify it");
    auto *ci = app.add_subcommand("ci", "lifted system, interior-point check and minimality sweep");
    auto *mirror = app.add_subcommand("mirror", "mirror map and integrality report");
    for (auto *c : {lattice, support, solve, combine, ci, mirror}) {
        common(c);
    }
    for (auto *c : {support, solve}) {
        c->add_option("--exclude", o.exclude, "excluded indices i[,j], 1-based");
    }
    solve->add_option("--order", o.order, "0, 1 or 2");
    combine->add_option("--l", o.l, "relation l, comma separated");
    combine->add_option("--lp", o.lp, "second relation l' for the quadratic combination");
    mirror->add_option("--grade", o.grade, "grade bound D");
    mirror->add_option("--set", o.set, "equation index i, 1-based");
    mirror->add_option("--index", o.index, "point index j within the set, 0-based");

    std::vector<std::string> args;
    for (int k = argc - 1; k > 0; --k) {
        args.emplace_back(argv[k]);
    }
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return Pass;
    } catch (const CLI::ParseError &e) {
        err << "gkz: " << e.what() << '\n';
        return BadInput;
    }
    o.command = app.get_subcommands().front()->get_name();

    const auto start = std::chrono::steady_clock::now();
    detail::Run runner(o, out);
    int code = Pass;
    try {
        const Problem p = load_problem(o.file);
        runner.set_problem(p);
        if (o.command == "lattice") {
            detail::cmd_lattice(runner, p);
        } else if (o.command == "support") {
            detail::cmd_support(runner, o, p);
        } else if (o.command == "solve") {
            detail::cmd_solve(runner, o, p);
        } else if (o.command == "combine") {
            detail::cmd_combine(runner, o, p);
        } else if (o.command == "ci") {
            detail::cmd_ci(runner, o, p);
        } else {
            detail::cmd_mirror(runner, o, p);
        }
        code = runner.passed() ? Pass : VerificationFailed;
        runner.finish(runner.passed() ? "pass" : "fail");
    } catch (const InputError &e) {
        code = BadInput;
        err << "gkz: input error: " << e.what() << '\n';
        runner.finish("input-error", e.what());
    } catch (const DimensionMismatch &e) {
        code = BadInput;
        err << "gkz: input error: " << e.what() << '\n';
        runner.finish("input-error", e.what());
    } catch (const std::invalid_argument &e) {
        code = BadInput;
        err << "gkz: input error: " << e.what() << '\n';
        runner.finish("input-error", e.what());
    } catch (const std::out_of_range &e) {
        code = BadInput;
        err << "gkz: input error: " << e.what() << '\n';
        runner.finish("input-error", e.what());
    } catch (const ResourceLimit &e) {
        code = OverLimit;
        err << "gkz: resource limit: " << e.what() << '\n';
        runner.finish("resource-limit", e.what());
    } catch (const InsufficientRadius &e) {
        code = OverLimit;
        err << "gkz: resource limit: " << e.what() << '\n';
        runner.finish("resource-limit", e.what());
    } catch (const Error &e) {
        code = VerificationFailed;
        err << "gkz: " << e.what() << '\n';
        runner.finish("fail", e.what());
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    err << "gkz " << o.command << ": " << ms << " ms, exit " << code << '\n';
    return code;
}

} // namespace gkz::cli
