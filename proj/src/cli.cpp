#include "gptdyn/cli.hpp"

#include <ostream>
#include <stdexcept>

#include <CLI11/CLI11.hpp>

#include "gptdyn/config.hpp"
#include "gptdyn/errors.hpp"
#include "gptdyn/report.hpp"

namespace gptdyn {

namespace {

struct Options {
    std::string builtin;
    std::string theory;
    std::string branch;
    std::string transform;
    std::vector<std::string> labels;
    std::string format = "text";
};

TheorySpec resolve_theory(const Options &o) {
    if (!o.builtin.empty() && !o.theory.empty()) {
        throw ArgumentError("give either --builtin or --theory, not both");
    }
    if (!o.theory.empty()) {
        return load_theory_file(o.theory);
    }
    if (!o.builtin.empty()) {
        return make_builtin(o.builtin);
    }
    throw ArgumentError("missing --builtin NAME or --theory FILE");
}

std::vector<size_t> resolve_branches(const TheorySpec &t, const Options &o) {
    if (!o.branch.empty()) {
        return {t.parse_branch(o.branch)};
    }
    std::vector<size_t> all;
    for (size_t b = 0; b < t.N(); b++) {
        all.push_back(b);
    }
    return all;
}

int cmd_analyze(const Options &o, Format f, std::ostream &out) {
    auto t = resolve_theory(o);
    auto r = classify_restriction(t);
    if (f == Format::Json) {
        out << dump_report(restriction_json(r, t));
        return 0;
    }
    out << restriction_text(r, t);
    std::vector<std::string> all;
    for (const auto &m : t.measurements()) {
        all.push_back(m.label);
    }
    auto u = check_quantum_like_uncertainty(t, all);
    out << "quantum-like uncertainty over all measurements: " << (u.holds ? "holds" : "fails");
    if (u.witness) {
        out << " (state certain in Z, " << u.measurement << " not uniform)";
    }
    out << "\n";
    return 0;
}

int cmd_solve(const Options &o, Format f, std::ostream &out) {
    auto t = resolve_theory(o);
    std::vector<AllowedTransformSet> sets;
    for (size_t b : resolve_branches(t, o)) {
        sets.push_back(allowed_transform_set(t, b));
    }
    if (f == Format::Text) {
        out << solver_text(sets, t);
    } else if (!o.branch.empty()) {
        out << dump_report(solver_json(sets.front(), t));
    } else {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &a : sets) {
            arr.push_back(solver_json(a, t));
        }
        out << dump_report(arr);
    }
    return 0;
}

int cmd_verify(const Options &o, Format f, std::ostream &out) {
    auto t = resolve_theory(o);
    if (o.branch.empty()) {
        throw ArgumentError("verify needs --branch");
    }
    if (o.transform.empty()) {
        throw ArgumentError("verify needs --transform FILE");
    }
    size_t b = t.parse_branch(o.branch);
    auto r = verify_transformation(t, load_transformation_file(o.transform), b);
    out << (f == Format::Json ? dump_report(verification_json(r, b, t)) : verification_text(r, b, t));
    return 0;
}

int cmd_mub(const Options &o, Format f, std::ostream &out) {
    auto t = resolve_theory(o);
    std::vector<std::string> labels = o.labels;
    if (labels.empty()) {
        for (const auto &m : t.measurements()) {
            labels.push_back(m.label);
        }
    }
    auto r = is_mutually_unbiased(t, labels);
    out << (f == Format::Json ? dump_report(mub_json(r)) : mub_text(r));
    return 0;
}

int cmd_theorem(const Options &o, Format f, std::ostream &out) {
    auto t = resolve_theory(o);
    auto r = verify_main_theorem(t);
    out << (f == Format::Json ? dump_report(theorem_json(r, t)) : theorem_text(r, t));
    return r.holds() ? 0 : 1;
}

int cmd_demo(Format f, std::ostream &out) {
    bool ok = true;
    nlohmann::json theories = nlohmann::json::array();
    for (const auto &name : builtin_names()) {
        auto t = make_builtin(name);
        auto r = verify_main_theorem(t);
        ok = ok && r.holds();
        if (f == Format::Json) {
            theories.push_back(theorem_json(r, t));
            continue;
        }
        out << "== " << name;
        if (name == "octahedron") {
            out << " (constructed contrast theory, not a literature model)";
        }
        out << "\n" << theorem_text(r, t) << "\n";
    }
    auto square = make_gbit();
    auto octa = make_octahedron();
    auto m = compare_monotonicity(square, octa);
    ok = ok && m.holds() && m.strict;
    if (f == Format::Json) {
        out << dump_report({{"theories", theories},
                            {"monotonicity", monotonicity_json(m, square, octa)},
                            {"all_hold", ok}});
    } else {
        out << "== gbit square vs octahedron\n" << monotonicity_text(m, square, octa) << "\n";
        out << (ok ? "all theorem assertions hold" : "theorem assertions FAILED") << "\n";
    }
    return ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Exact branch-locality analysis of single-system probabilistic theories", "gptdyn"};
    app.require_subcommand(1, 1);
    Options o;
    auto common = [&](CLI::App *sub, bool with_theory) {
        if (with_theory) {
            sub->add_option("--builtin", o.builtin, "built-in theory: gbit, cube, qubit, classical2, octahedron");
            sub->add_option("--theory", o.theory, "theory config file (JSON)");
        }
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto *analyze = app.add_subcommand("analyze", "restriction class and per-branch freedom");
    auto *solve = app.add_subcommand("solve", "allowed transformations per acting branch");
    auto *verify = app.add_subcommand("verify", "check one transformation against a branch");
    auto *mub = app.add_subcommand("mub", "mutual unbiasedness of a measurement set");
    auto *theorem = app.add_subcommand("theorem", "check the branch-locality theorem on one theory");
    auto *demo = app.add_subcommand("demo", "run every built-in theory");
    for (auto *sub : {analyze, solve, verify, mub, theorem}) {
        common(sub, true);
    }
    common(demo, false);
    solve->add_option("--branch", o.branch, "acting branch (up/low or outcome index)");
    verify->add_option("--branch", o.branch, "acting branch (up/low or outcome index)")->required();
    verify->add_option("--transform", o.transform, "transformation file {\"rows\": [...]}")->required();
    mub->add_option("--labels", o.labels, "measurement labels (default: all)")->delimiter(',');

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        // Prints help for --help, otherwise the error and a usage hint.
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    const Format f = o.format == "json" ? Format::Json : Format::Text;
    try {
        if (analyze->parsed()) {
            return cmd_analyze(o, f, out);
        }
        if (solve->parsed()) {
            return cmd_solve(o, f, out);
        }
        if (verify->parsed()) {
            return cmd_verify(o, f, out);
        }
        if (mub->parsed()) {
            return cmd_mub(o, f, out);
        }
        if (theorem->parsed()) {
            return cmd_theorem(o, f, out);
        }
        return cmd_demo(f, out);
    } catch (const ArgumentError &e) {
        err << "gptdyn: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error &e) {
        err << "gptdyn: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace gptdyn
