#pragma once

// Command-line front end. run() is the whole program minus main so tests can
// drive it with string streams.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <functional>
#include <iomanip>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stop_token>
#include <string>
#include <thread>
#include <vector>

#include "mdisc/critical_values.hpp"
#include "mdisc/elimination.hpp"
#include "mdisc/numeric.hpp"
#include "mdisc/parser.hpp"

namespace mdisc::cli {

enum ExitCode : int {
    ok = 0,
    usage = 1,
    parse_error = 2,
    variable_absent = 3,
    degenerate = 4,
    containment_violation = 5,
    selftest_failed = 6,
    timed_out = 7,
};

using json = nlohmann::ordered_json;

struct RunConfig {
    std::string command;
    std::string input;
    std::string var;
    std::vector<std::string> order;
    bool squarefree = false;
    std::string format = "text";
    std::string value_var = "v";
    OracleConfig oracle;
    double timeout_seconds = 0;  // 0: no limit
};

namespace detail {

inline std::string fmt_double(double x) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
    return os.str();
}

inline json root_json(const IsolatedRoot& r) {
    json j;
    if (r.is_exact()) {
        j["kind"] = "exact";
        j["value"] = r.value.str();
    } else {
        j["kind"] = "interval";
        j["bounds"] = json::array({r.lower.str(), r.upper.str()});
        j["approx"] = fmt_double(r.approx());
    }
    j["multiplicity"] = r.multiplicity;
    return j;
}

inline std::string root_text(const IsolatedRoot& r) {
    std::string s = r.is_exact() ? r.value.str() + "  (exact"
                                 : "~" + fmt_double(r.approx()) + " in (" + r.lower.str() + ", " + r.upper.str() +
                                       ")  (interval";
    return s + ", multiplicity " + std::to_string(r.multiplicity) + ")";
}

inline json point_json(const NumericCriticalPoint& p) {
    json coords = json::array();
    for (double c : p.coordinates) coords.push_back(fmt_double(c));
    return json{{"coordinates", coords}, {"value", fmt_double(p.value)}, {"residual", fmt_double(p.residual)}};
}

inline std::string point_text(const NumericCriticalPoint& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.coordinates.size(); ++i) {
        if (i != 0) s += ", ";
        s += fmt_double(p.coordinates[i]);
    }
    return s + ") value " + fmt_double(p.value);
}

inline std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
    return s;
}

/// Requests stop on the returned source once the timeout elapses.
class Deadline {
public:
    explicit Deadline(double seconds) {
        if (seconds <= 0) return;
        const auto dur = std::chrono::duration<double>(seconds);
        timer_ = std::jthread([this, dur](std::stop_token st) {
            std::mutex m;
            std::condition_variable_any cv;
            std::unique_lock lock(m);
            cv.wait_for(lock, st, dur, [] { return false; });
            if (!st.stop_requested()) source_.request_stop();
        });
    }
    std::stop_token token() const { return source_.get_token(); }

private:
    std::stop_source source_;
    std::jthread timer_;
};

struct Pipeline {
    CriticalValueProblem prob;
    CriticalValuePolynomial F;
    RootIsolation iso;
};

inline Pipeline run_pipeline(const RunConfig& cfg, std::stop_token stop) {
    Pipeline p;
    p.prob.f = parse_poly(cfg.input);
    p.prob.v_name = cfg.value_var;
    if (!cfg.order.empty()) p.prob.order = cfg.order;
    p.prob.squarefree = cfg.squarefree;
    p.F = critical_value_polynomial(p.prob, std::move(stop));
    if (cfg.squarefree)
        p.F.warnings.push_back("squarefree mode: each stage yields lc*D, so F may have extra (spurious) roots");
    p.iso = isolate_real_roots(p.F);
    return p;
}

inline void print_critvals(const RunConfig& cfg, const Pipeline& p, json& j, std::ostream& out) {
    if (cfg.format == "json") {
        j["F"] = format_poly(p.F.F);
        j["roots"] = json::array();
        for (const auto& r : p.iso.roots) j["roots"].push_back(root_json(r));
        j["nonreal_count"] = p.iso.nonreal_count;
        j["warnings"] = p.F.warnings;
        j["order"] = p.F.order;
        return;
    }
    out << "F = " << format_poly(p.F.F) << "\n";
    out << "order: " << join(p.F.order, ", ") << "\n";
    out << "real roots: " << p.iso.roots.size() << "\n";
    for (const auto& r : p.iso.roots) out << "  " << root_text(r) << "\n";
    out << "nonreal roots: " << p.iso.nonreal_count << "\n";
    for (const auto& w : p.F.warnings) out << "warning: " << w << "\n";
}

inline int cmd_disc(const RunConfig& cfg, std::ostream& out) {
    const MultiPoly p = parse_poly(cfg.input);
    const auto idx = p.ring()->index_of(cfg.var);
    if (!idx) throw VariableAbsent("variable absent: '" + cfg.var + "' does not occur in the input");
    const MultiPoly d = discriminant_wrt(p, *idx);
    if (cfg.format == "json") {
        out << json{{"D", format_poly(d)}, {"variable", cfg.var}}.dump(2) << "\n";
    } else {
        out << format_poly(d) << "\n";
    }
    return ok;
}

inline int cmd_multidisc(const RunConfig& cfg, std::ostream& out, std::stop_token stop) {
    const MultiPoly p = parse_poly(cfg.input);
    const std::vector<std::string> order = cfg.order.empty() ? p.ring()->names() : cfg.order;
    std::vector<std::size_t> idx;
    for (const auto& name : order) {
        const auto i = p.ring()->index_of(name);
        if (!i) throw VariableAbsent("variable absent: '" + name + "' does not occur in the input");
        idx.push_back(*i);
    }
    MultiDiscOptions opts;
    opts.squarefree_each_stage = cfg.squarefree;
    const auto res = multiple_discriminant(p, idx, opts, std::move(stop));
    if (cfg.format == "json") {
        out << json{{"D", format_poly(res.value)}, {"order", order}, {"warnings", res.warnings}}.dump(2) << "\n";
    } else {
        out << format_poly(res.value) << "\n";
        for (const auto& w : res.warnings) out << "warning: " << w << "\n";
    }
    return ok;
}

inline int cmd_critvals(const RunConfig& cfg, std::ostream& out, std::stop_token stop) {
    const Pipeline p = run_pipeline(cfg, std::move(stop));
    json j = json::object();
    print_critvals(cfg, p, j, out);
    if (cfg.format == "json") out << j.dump(2) << "\n";
    return ok;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::stop_token stop) {
    const Pipeline p = run_pipeline(cfg, std::move(stop));
    const ContainmentReport rep = verify_containment(p.prob, p.F, p.iso.roots, cfg.oracle);
    json j = json::object();
    print_critvals(cfg, p, j, out);
    if (cfg.format == "json") {
        json r;
        r["matched"] = json::array();
        for (const auto& [pt, root] : rep.matched)
            r["matched"].push_back(json{{"point", point_json(pt)}, {"root", root_json(root)}});
        r["unmatched_points"] = json::array();
        for (const auto& pt : rep.unmatched_points) r["unmatched_points"].push_back(point_json(pt));
        r["spurious_roots"] = json::array();
        for (const auto& root : rep.spurious_roots) r["spurious_roots"].push_back(root_json(root));
        r["starts"] = rep.starts;
        r["diverged"] = rep.diverged;
        r["caveat"] = rep.caveat;
        j["report"] = r;
        out << j.dump(2) << "\n";
    } else {
        out << "critical points: " << rep.matched.size() + rep.unmatched_points.size() << " found from "
            << rep.starts << " starts (" << rep.diverged << " did not converge)\n";
        out << "matched: " << rep.matched.size() << "\n";
        for (const auto& [pt, root] : rep.matched) out << "  " << point_text(pt) << " -> " << root_text(root) << "\n";
        out << "violations: " << rep.unmatched_points.size() << "\n";
        for (const auto& pt : rep.unmatched_points) out << "  " << point_text(pt) << "\n";
        out << "spurious roots: " << rep.spurious_roots.size() << "\n";
        for (const auto& root : rep.spurious_roots) out << "  " << root_text(root) << "\n";
        out << "note: " << rep.caveat << "\n";
    }
    return rep.ok() ? ok : containment_violation;
}

struct SelfCheck {
    std::string name;
    std::function<bool()> body;
};

inline std::vector<Rat> exact_roots(const std::string& f, bool squarefree = false) {
    CriticalValueProblem prob;
    prob.f = parse_poly(f);
    prob.squarefree = squarefree;
    std::vector<Rat> out;
    for (const auto& r : isolate_real_roots(critical_value_polynomial(prob)).roots) {
        if (!r.is_exact()) return {};
        out.push_back(r.value);
    }
    return out;
}

inline std::vector<SelfCheck> self_checks() {
    auto disc_text = [](const std::string& p, const std::string& var) {
        const MultiPoly q = parse_poly(p);
        return format_poly(discriminant_wrt(q, *q.ring()->index_of(var)));
    };
    // At least `matched` numeric points, all matched.
    auto verify_ok = [](const std::string& f, bool squarefree, std::size_t matched) {
        CriticalValueProblem prob;
        prob.f = parse_poly(f);
        prob.squarefree = squarefree;
        const auto F = critical_value_polynomial(prob);
        const auto rep = verify_containment(prob, F, isolate_real_roots(F).roots);
        return rep.ok() && rep.matched.size() >= matched;
    };
    return {
        {"disc x^2 + b*x + c = b^2 - 4*c", [=] { return disc_text("x^2 + b*x + c", "x") == "b^2 - 4*c"; }},
        {"disc x^3 + p*x + q = -4*p^3 - 27*q^2",
         [=] { return disc_text("x^3 + p*x + q", "x") == "-4*p^3 - 27*q^2"; }},
        {"critvals x^3 - 3*x: F = -27*v^2 + 108",
         [] {
             CriticalValueProblem prob;
             prob.f = parse_poly("x^3 - 3*x");
             return format_poly(critical_value_polynomial(prob).F) == "-27*v^2 + 108";
         }},
        {"critvals x^3 - 3*x: roots {-2, 2}",
         [] { return exact_roots("x^3 - 3*x") == std::vector<Rat>{Rat{-2}, Rat{2}}; }},
        {"critvals x^2 + y^2: roots {0}", [] { return exact_roots("x^2 + y^2") == std::vector<Rat>{Rat{0}}; }},
        {"critvals x^2 - y^2: roots {0}", [] { return exact_roots("x^2 - y^2") == std::vector<Rat>{Rat{0}}; }},
        {"critvals x^2*y^2 is degenerate",
         [] {
             try {
                 exact_roots("x^2*y^2");
             } catch (const DegenerateDiscriminant&) {
                 return true;
             }
             return false;
         }},
        {"critvals x^2*y^2 --squarefree contains 0",
         [] {
             const auto r = exact_roots("x^2*y^2", true);
             return std::find(r.begin(), r.end(), Rat{0}) != r.end();
         }},
        {"verify x^3 - 3*x", [=] { return verify_ok("x^3 - 3*x", false, 2); }},
        {"verify x^2 - y^2", [=] { return verify_ok("x^2 - y^2", false, 1); }},
        {"verify x^2*y^2 --squarefree", [=] { return verify_ok("x^2*y^2", true, 1); }},
        {"delta D of (x-1)^2 along x-1 is 0",
         [] {
             const MultiPoly p = parse_poly("x^2 - 2*x + 1");
             return delta_discriminant(VariationPair(p, parse_poly("x - 1", p.ring()))).is_zero();
         }},
        {"numeric disc x^2 - 1 = 4",
         [] { return std::abs(numeric_discriminant_via_roots(parse_poly("x^2 - 1")) - 4.0) < 1e-9; }},
    };
}

inline int cmd_selftest(const RunConfig& cfg, std::ostream& out) {
    int failed = 0;
    json results = json::array();
    for (const auto& check : self_checks()) {
        bool pass = false;
        std::string why;
        try {
            pass = check.body();
        } catch (const std::exception& e) {
            why = e.what();
        }
        if (!pass) ++failed;
        if (cfg.format == "json") {
            results.push_back(json{{"name", check.name}, {"pass", pass}});
        } else {
            out << (pass ? "PASS " : "FAIL ") << check.name << (why.empty() ? "" : ": " + why) << "\n";
        }
    }
    if (cfg.format == "json") out << json{{"checks", results}, {"failed", failed}}.dump(2) << "\n";
    else out << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << "\n";
    return failed == 0 ? ok : selftest_failed;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"multiple discriminants and critical values of polynomials", "mdisc"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto add_pipeline = [&](CLI::App* sub) {
        sub->add_option("--order", cfg.order, "elimination order, outermost first (x,y eliminates y first)")
            ->delimiter(',');
        sub->add_flag("--squarefree", cfg.squarefree, "take the squarefree part before each stage");
        sub->add_option("--timeout", cfg.timeout_seconds, "give up after this many seconds");
    };

    auto* disc = app.add_subcommand("disc", "discriminant with respect to one variable");
    disc->add_option("poly", cfg.input, "polynomial")->required();
    disc->add_option("--var", cfg.var, "variable")->required();
    add_format(disc);

    auto* multidisc = app.add_subcommand("multidisc", "iterated discriminant over an order");
    multidisc->add_option("poly", cfg.input, "polynomial")->required();
    add_pipeline(multidisc);
    add_format(multidisc);

    auto* critvals = app.add_subcommand("critvals", "critical-value polynomial F(v) and its real roots");
    critvals->add_option("poly", cfg.input, "polynomial f")->required();
    critvals->add_option("--value-var", cfg.value_var, "name of the value variable");
    add_pipeline(critvals);
    add_format(critvals);

    auto* verify = app.add_subcommand("verify", "critvals plus a numeric check of the critical values");
    verify->add_option("poly", cfg.input, "polynomial f")->required();
    verify->add_option("--value-var", cfg.value_var, "name of the value variable");
    verify->add_option("--box", cfg.oracle.box_radius, "search box radius")->check(CLI::PositiveNumber);
    verify->add_option("--grid", cfg.oracle.grid_per_axis, "Newton starts per axis")->check(CLI::PositiveNumber);
    verify->add_option("--tol", cfg.oracle.newton_tol, "gradient residual tolerance")->check(CLI::PositiveNumber);
    add_pipeline(verify);
    add_format(verify);

    auto* selftest = app.add_subcommand("selftest", "run the built-in worked examples");
    add_format(selftest);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    detail::Deadline deadline(cfg.timeout_seconds);
    try {
        if (cfg.command == "disc") return detail::cmd_disc(cfg, out);
        if (cfg.command == "multidisc") return detail::cmd_multidisc(cfg, out, deadline.token());
        if (cfg.command == "critvals") return detail::cmd_critvals(cfg, out, deadline.token());
        if (cfg.command == "verify") return detail::cmd_verify(cfg, out, deadline.token());
        return detail::cmd_selftest(cfg, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_error;
    } catch (const VariableAbsent& e) {
        err << "error: " << e.what() << "\n";
        return variable_absent;
    } catch (const DegenerateDiscriminant& e) {
        err << "error: " << e.what() << "; rerun with --squarefree\n";
        return degenerate;
    } catch (const Cancelled&) {
        err << "error: timed out after " << cfg.timeout_seconds << " s\n";
        return timed_out;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace mdisc::cli
