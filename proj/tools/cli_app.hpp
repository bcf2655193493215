#pragma once

// Subcommands of the `aaa` tool. Kept in a header so the test suite can drive
// the exact same code path in-process.
//
// Exit codes: 0 converged (or success), 2 degree_cap, 3 data_exhausted,
// 4 budget variant without derivatives, 1 usage and every other error.

#include <aaa/aaa.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace aaa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitDegreeCap = 2;
inline constexpr int kExitDataExhausted = 3;
inline constexpr int kExitNoDerivatives = 4;

inline int exit_code(RunStatus s) {
    switch (s) {
        case RunStatus::converged: return kExitOk;
        case RunStatus::degree_cap: return kExitDegreeCap;
        case RunStatus::data_exhausted: return kExitDataExhausted;
    }
    return kExitError;
}

inline Window parse_window(const std::string& s) {
    const auto f = io::split(s);
    if (f.size() != 4) throw std::invalid_argument("--window expects re0,re1,im0,im1");
    Window w{io::parse_double(f[0]), io::parse_double(f[1]), io::parse_double(f[2]), io::parse_double(f[3])};
    if (!(w.re0 < w.re1) || !(w.im0 < w.im1)) throw std::invalid_argument("--window must have re0 < re1 and im0 < im1");
    return w;
}

// Writes to `path`, or to `out` when no path was given.
inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        io::write_file(path, text);
    }
}

struct ApproxArgs {
    std::string problem;
    std::string input;
    std::string variant = "aaa";
    std::optional<double> tol;
    std::optional<std::size_t> max_degree;
    double kappa = 1.5;
    bool check_support_errors = false;
    std::string out_model, out_trace, out_poles;
};

inline int cmd_approx(const ApproxArgs& a, std::ostream& out, std::ostream& err) {
    const Variant v = parse_variant(a.variant);
    SampleSet samples;
    EngineOptions opt;
    if (!a.problem.empty()) {
        const ProblemInstance p = problem(a.problem);
        samples = p.samples();
        opt = p.options(v);
    } else {
        samples = io::read_samples(io::read_file(a.input));
        opt.variant = v;
    }
    if (a.tol) opt.tol = *a.tol;
    if (a.max_degree) opt.max_degree = *a.max_degree;
    opt.kappa = a.kappa;
    opt.check_support_errors = a.check_support_errors;

    if (v == Variant::budget && !samples.has_derivatives()) {
        err << "error: --variant budget requires a derivative (\"df\") for every sample";
        if (!a.input.empty()) err << " in --input " << a.input;
        err << "\n";
        return kExitNoDerivatives;
    }

    const EngineResult res = run(std::move(samples), opt);
    if (!a.out_model.empty()) io::write_file(a.out_model, io::write_model(res.model));
    if (!a.out_trace.empty()) io::write_file(a.out_trace, io::write_trace(res.trace));
    if (!a.out_poles.empty()) {
        io::write_file(a.out_poles, io::write_pole_rows(io::pole_rows(analyze(res.model, opt.froissart))));
    }
    for (const auto& w : res.trace.warnings) {
        err << "warning: iter=" << w.iter << " zero-weight support point " << w.point_index
            << " has error " << io::format_double(w.error) << "\n";
    }
    out << "N=" << res.model.size() << " max_err=" << io::format_double(res.trace.records.back().max_err)
        << " status=" << to_string(res.trace.status) << "\n";
    return exit_code(res.trace.status);
}

inline std::vector<Variant> parse_variants(const std::vector<std::string>& names) {
    std::vector<Variant> vs;
    for (const auto& n : names) vs.push_back(parse_variant(n));
    if (vs.empty()) vs = {Variant::aaa, Variant::smooth, Variant::budget};
    return vs;
}

inline std::string sweep_function_name(const std::string& s) {
    if (s == "sqrt121" || s == "sqrt121_even") return "sqrt121";
    if (s == "mix" || s == "mix_even") return "mix";
    throw std::invalid_argument("sweep-even: --problem must be sqrt121 or mix");
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Barycentric rational approximation: AAA, AAAsmooth and AAAbudget", "aaa"};
    app.require_subcommand(1);

    ApproxArgs ax;
    auto* approx = app.add_subcommand("approx", "Fit one variant to a registry problem or a sample file");
    auto* src_p = approx->add_option("--problem", ax.problem, "Registry problem name");
    auto* src_i = approx->add_option("--input", ax.input, "Sample file (JSON)");
    src_p->excludes(src_i);
    approx->add_option("--variant", ax.variant, "aaa|smooth|budget")->check(CLI::IsMember({"aaa", "smooth", "budget"}));
    approx->add_option("--tol", ax.tol, "Stopping tolerance on the sample points");
    approx->add_option("--max-degree", ax.max_degree, "Maximum number of support points");
    approx->add_option("--kappa", ax.kappa, "Exponent of the smooth-variant blend");
    approx->add_flag("--check-support-errors", ax.check_support_errors, "Report errors at zero-weight nodes");
    approx->add_option("--out-model", ax.out_model, "Model JSON output");
    approx->add_option("--out-trace", ax.out_trace, "Convergence trace CSV output");
    approx->add_option("--out-poles", ax.out_poles, "Pole/zero table CSV output");

    std::string model_path, out_path, problem_name, window_s = "-1,1,-1,1";
    std::size_t res = 100, reps = 5;
    std::vector<std::string> variants;
    double froissart_res = FroissartThresholds{}.residue_rel;
    double froissart_dist = FroissartThresholds{}.distance_rel;

    auto* poles_cmd = app.add_subcommand("poles", "Pole, zero, residue and doublet table of a model");
    poles_cmd->add_option("--model", model_path, "Model JSON")->required();
    poles_cmd->add_option("--out", out_path, "Output CSV (default: stdout)");
    poles_cmd->add_option("--residue-rel", froissart_res, "Doublet residue threshold, relative to max |residue|");
    poles_cmd->add_option("--distance-rel", froissart_dist, "Doublet distance threshold, relative to support diameter");

    auto* grid_cmd = app.add_subcommand("grid-error", "log10 |r - f| on a rectangular lattice");
    grid_cmd->add_option("--model", model_path, "Model JSON")->required();
    grid_cmd->add_option("--problem", problem_name, "Registry problem supplying f")->required();
    grid_cmd->add_option("--window", window_s, "re0,re1,im0,im1");
    grid_cmd->add_option("--res", res, "Lattice points per side")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    grid_cmd->add_option("--out-grid,--out", out_path, "Output CSV (default: stdout)");

    auto* sweep_cmd = app.add_subcommand("sweep-even", "Even-grid sweep over n = 8, 12, ..., 200");
    sweep_cmd->add_option("--problem", problem_name, "sqrt121|mix")->required();
    sweep_cmd->add_option("--variant", variants, "Variants to run (repeatable; default all)");
    sweep_cmd->add_option("--out", out_path, "Output CSV (default: stdout)");

    auto* bench_cmd = app.add_subcommand("bench", "Median wall-clock time per variant");
    bench_cmd->add_option("--problem", problem_name, "Registry problem")->required();
    bench_cmd->add_option("--variant", variants, "Variants to run (repeatable; default all)");
    bench_cmd->add_option("--reps", reps, "Repetitions (>= 3)")->check(CLI::Range(std::size_t{3}, std::size_t{100000}));
    bench_cmd->add_option("--out", out_path, "Output CSV (default: stdout)");

    auto* list_cmd = app.add_subcommand("list-problems", "Registry problem names and descriptions");

    auto* export_cmd = app.add_subcommand("export-samples", "Write a registry problem as a sample file");
    export_cmd->add_option("--problem", problem_name, "Registry problem")->required();
    export_cmd->add_option("--out", out_path, "Output JSON (default: stdout)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }

    try {
        if (approx->parsed()) {
            if (ax.problem.empty() && ax.input.empty()) {
                err << "error: approx needs --problem or --input\n";
                return kExitError;
            }
            return cmd_approx(ax, out, err);
        }
        if (poles_cmd->parsed()) {
            const BarycentricModel m = io::read_model(io::read_file(model_path));
            const auto rep = analyze(m, FroissartThresholds{froissart_res, froissart_dist});
            emit(out_path, io::write_pole_rows(io::pole_rows(rep)), out);
            return kExitOk;
        }
        if (grid_cmd->parsed()) {
            const BarycentricModel m = io::read_model(io::read_file(model_path));
            const ProblemInstance p = problem(problem_name);
            emit(out_path, io::write_grid(grid_error(m, p.f, parse_window(window_s), res)), out);
            return kExitOk;
        }
        if (sweep_cmd->parsed()) {
            const auto vs = parse_variants(variants);
            emit(out_path, io::write_sweep(sweep_even(sweep_function_name(problem_name), vs)), out);
            return kExitOk;
        }
        if (bench_cmd->parsed()) {
            const auto vs = parse_variants(variants);
            const ProblemInstance p = problem(problem_name);
            for (Variant v : vs) {
                if (v == Variant::budget && !p.derivatives) {
                    err << "error: --variant budget requires derivatives, which problem " << problem_name
                        << " does not provide\n";
                    return kExitNoDerivatives;
                }
            }
            emit(out_path, io::write_bench(bench(p, vs, reps)), out);
            return kExitOk;
        }
        if (list_cmd->parsed()) {
            for (const auto& n : problem_names()) out << n << "\t" << problem(n).description << "\n";
            return kExitOk;
        }
        if (export_cmd->parsed()) {
            const ProblemInstance p = problem(problem_name);
            std::optional<std::span<const cplx>> df;
            if (p.derivatives) df = std::span<const cplx>(*p.derivatives);
            emit(out_path, io::write_samples(p.grid, p.values, df), out);
            return kExitOk;
        }
    } catch (const MissingDerivatives& e) {
        err << "error: " << e.what() << " (--variant budget)\n";
        return kExitNoDerivatives;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

}  // namespace aaa::cli
