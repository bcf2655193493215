#pragma once

// Experiment drivers behind the command-line tool: error lattices, the
// even-grid sweep and variant timings.

#include <aaa/barycentric.hpp>
#include <aaa/engine.hpp>
#include <aaa/io.hpp>
#include <aaa/problems.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace aaa {

struct Window {
    double re0 = 0.0, re1 = 1.0, im0 = 0.0, im1 = 1.0;
};

/// |r(z) - f(z)|, +inf when r has a pole there or evaluates to a non-finite value.
inline double abs_error(const BarycentricModel& model, const ComplexFn& f, cplx z) {
    try {
        const cplx r = evaluate(model, z);
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) return std::numeric_limits<double>::infinity();
        return std::abs(r - f(z));
    } catch (const EvaluatedAtPole&) {
        return std::numeric_limits<double>::infinity();
    }
}

inline double max_error(const BarycentricModel& model, const ComplexFn& f, std::span<const cplx> grid) {
    double m = 0.0;
    for (const auto& z : grid) m = std::max(m, abs_error(model, f, z));
    return m;
}

/// log10 |r - f| on a res x res lattice over the window; imaginary part is the
/// outer loop, real part the inner one.
inline std::vector<io::GridCell> grid_error(const BarycentricModel& model, const ComplexFn& f, const Window& w,
                                            std::size_t res) {
    if (res < 2) throw std::invalid_argument("grid_error: resolution must be at least 2");
    std::vector<io::GridCell> cells;
    cells.reserve(res * res);
    const double dre = (w.re1 - w.re0) / static_cast<double>(res - 1);
    const double dim = (w.im1 - w.im0) / static_cast<double>(res - 1);
    for (std::size_t i = 0; i < res; ++i) {
        const double im = i + 1 == res ? w.im1 : w.im0 + static_cast<double>(i) * dim;
        for (std::size_t k = 0; k < res; ++k) {
            const double re = k + 1 == res ? w.re1 : w.re0 + static_cast<double>(k) * dre;
            cells.push_back({re, im, std::log10(abs_error(model, f, cplx(re, im)))});
        }
    }
    return cells;
}

inline constexpr double kRealPoleImTol = 1e-12;

inline std::vector<std::size_t> sweep_sizes() {
    std::vector<std::size_t> ns;
    for (std::size_t n = 8; n <= 200; n += 4) ns.push_back(n);
    return ns;
}

inline io::SweepRow sweep_point(const std::string& which, std::size_t n, Variant v, double tol = 1e-13) {
    const ProblemInstance p = even_grid_problem(which, n);
    EngineOptions opt = p.options(v);
    opt.tol = tol;
    const EngineResult res = run(p.samples(), opt);

    io::SweepRow row;
    row.n = n;
    row.variant = v;
    row.terminal_n = res.model.size();
    row.status = res.trace.status;
    row.coarse_max_err = res.trace.records.back().max_err;
    row.fine_max_err = max_error(res.model, p.f, p.aux_grids.at("fine"));
    row.min_abs_im = std::numeric_limits<double>::infinity();
    for (const auto& t : poles(res.model)) {
        if (t.real() < -1.0 || t.real() > 1.0) continue;
        const double ai = std::abs(t.imag());
        if (ai < kRealPoleImTol) ++row.real_poles;
        row.min_abs_im = std::min(row.min_abs_im, ai);
    }
    row.ref_n = v == Variant::budget ? 2 * n : n;
    return row;
}

/// One row per (n, variant), ordered by n and then by the given variant order.
inline std::vector<io::SweepRow> sweep_even(const std::string& which, std::span<const Variant> variants,
                                            std::span<const std::size_t> ns) {
    std::vector<io::SweepRow> rows;
    for (std::size_t n : ns)
        for (Variant v : variants) rows.push_back(sweep_point(which, n, v));
    return rows;
}

inline std::vector<io::SweepRow> sweep_even(const std::string& which, std::span<const Variant> variants) {
    const auto ns = sweep_sizes();
    return sweep_even(which, variants, ns);
}

inline double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of empty sequence");
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// Median wall-clock time of complete engine runs, per variant.
inline io::BenchTable bench(const ProblemInstance& p, std::span<const Variant> variants, std::size_t reps) {
    if (reps < 3) throw std::invalid_argument("bench: repetitions must be at least 3");
    io::BenchTable t;
    std::optional<double> aaa_t, budget_t;
    for (Variant v : variants) {
        std::vector<double> times;
        std::size_t terminal = 0;
        const EngineOptions opt = p.options(v);
        for (std::size_t r = 0; r < reps; ++r) {
            SampleSet s = p.samples();
            const auto t0 = std::chrono::steady_clock::now();
            const EngineResult res = run(std::move(s), opt);
            times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
            terminal = res.model.size();
        }
        const double med = median(times);
        t.rows.push_back({v, reps, terminal, med});
        if (v == Variant::aaa) aaa_t = med;
        if (v == Variant::budget) budget_t = med;
    }
    if (aaa_t && budget_t) t.budget_over_aaa = *budget_t / *aaa_t;
    return t;
}

}  // namespace aaa
