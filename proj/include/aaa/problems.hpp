#pragma once

// Registry of target functions and sample grids used by the experiments.

#include <aaa/engine.hpp>
#include <aaa/special_functions.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aaa {

struct GridSpec {
    enum class Kind { equispaced, circle, geometric, two_segments };
    Kind kind = Kind::equispaced;
    cplx a{-1.0, 0.0};
    cplx b{1.0, 0.0};
    std::size_t n = 2;

    /// n points from a to b inclusive (a, b may be complex).
    static GridSpec equispaced(cplx a, cplx b, std::size_t n) { return {Kind::equispaced, a, b, n}; }
    /// exp(2 pi i k / n), k = 0..n-1.
    static GridSpec circle(std::size_t n) { return {Kind::circle, 0.0, 0.0, n}; }
    /// Real geometric progression from a to b inclusive.
    static GridSpec geometric(double a, double b, std::size_t n) { return {Kind::geometric, a, b, n}; }
    /// n points on each of the segments -1+0.01i..1+0.01i and -1-0.01i..1-0.01i.
    static GridSpec two_segments(std::size_t n) { return {Kind::two_segments, 0.0, 0.0, n}; }
};

namespace detail {

// linspace: a + k*step, last point pinned to b.
inline std::vector<cplx> linspace(cplx a, cplx b, std::size_t n) {
    std::vector<cplx> out(n);
    const cplx step = (b - a) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) out[k] = a + static_cast<double>(k) * step;
    out.back() = b;
    return out;
}

}  // namespace detail

inline std::vector<cplx> make_grid(const GridSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("make_grid: need at least 2 points");
    switch (spec.kind) {
        case GridSpec::Kind::equispaced:
            if (spec.a == spec.b) throw std::invalid_argument("make_grid: empty segment");
            return detail::linspace(spec.a, spec.b, spec.n);
        case GridSpec::Kind::circle: {
            std::vector<cplx> out(spec.n);
            for (std::size_t k = 0; k < spec.n; ++k) {
                const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(spec.n);
                out[k] = cplx(std::cos(theta), std::sin(theta));
            }
            return out;
        }
        case GridSpec::Kind::geometric: {
            const double a = spec.a.real();
            const double b = spec.b.real();
            if (a == b) throw std::invalid_argument("make_grid: empty segment");
            if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("make_grid: geometric grid needs positive ends");
            std::vector<cplx> out(spec.n);
            const double la = std::log(a);
            const double step = (std::log(b) - la) / static_cast<double>(spec.n - 1);
            for (std::size_t k = 0; k < spec.n; ++k) out[k] = std::exp(la + static_cast<double>(k) * step);
            out.front() = a;
            out.back() = b;
            return out;
        }
        case GridSpec::Kind::two_segments: {
            auto top = detail::linspace(cplx(-1.0, 0.01), cplx(1.0, 0.01), spec.n);
            auto bottom = detail::linspace(cplx(-1.0, -0.01), cplx(1.0, -0.01), spec.n);
            top.insert(top.end(), bottom.begin(), bottom.end());
            return top;
        }
    }
    return {};
}

using ComplexFn = std::function<cplx(cplx)>;

struct ProblemInstance {
    std::string name;
    std::string description;
    std::vector<cplx> grid;
    std::vector<cplx> values;
    std::optional<std::vector<cplx>> derivatives;
    ComplexFn f;
    ComplexFn df;  // empty when no analytic derivative is provided
    double tol = 1e-13;
    std::size_t max_degree = 150;
    // Extra evaluation grids on which errors are reported (name -> points).
    std::map<std::string, std::vector<cplx>> aux_grids;
    // Outcomes reported for this experiment, keyed by short identifiers.
    std::map<std::string, std::string> reference_facts;

    SampleSet samples() const { return SampleSet(grid, values, derivatives); }

    EngineOptions options(Variant v) const {
        EngineOptions o;
        o.variant = v;
        o.tol = tol;
        o.max_degree = max_degree;
        return o;
    }
};

class UnknownProblem : public std::invalid_argument {
public:
    explicit UnknownProblem(const std::string& name) : std::invalid_argument("unknown problem '" + name + "'") {}
};

namespace functions {

using std::numbers::pi;
inline const cplx I(0.0, 1.0);

inline cplx sign_re(cplx z) { return z.real() > 0.0 ? 1.0 : (z.real() < 0.0 ? -1.0 : 0.0); }

inline cplx ramp(cplx z) { return z.real() > 0.0 ? z : cplx(0.0, 0.0); }
inline cplx ramp_d(cplx z) { return z.real() > 0.0 ? 1.0 : 0.0; }

// |x| continued analytically from each half line.
inline cplx absx(cplx z) { return z.real() >= 0.0 ? z : -z; }
inline cplx absx_d(cplx z) { return z.real() >= 0.0 ? 1.0 : -1.0; }

inline cplx exp_essential(cplx z) { return z == cplx(0.0, 0.0) ? cplx(0.0, 0.0) : std::exp(-1.0 / (z * z)); }
inline cplx exp_essential_d(cplx z) {
    return z == cplx(0.0, 0.0) ? cplx(0.0, 0.0) : 2.0 / (z * z * z) * std::exp(-1.0 / (z * z));
}

inline ComplexFn tan_scaled(double c) { return [c](cplx z) { return std::tan(c * z); }; }
inline ComplexFn tan_scaled_d(double c) {
    return [c](cplx z) {
        const cplx t = std::tan(c * z);
        return c * (1.0 + t * t);
    };
}

inline cplx sin40(cplx z) { return std::sin(40.0 * z); }
inline cplx sin40_d(cplx z) { return 40.0 * std::cos(40.0 * z); }

inline cplx sinh_bump(cplx z) {
    const cplx u = 10.0 * pi * (z * z - 0.36);
    if (std::abs(u) < 1e-4) return 1.0 - u * u / 6.0 + 7.0 * u * u * u * u / 360.0;
    return u / std::sinh(u);
}
inline cplx sinh_bump_d(cplx z) {
    const cplx u = 10.0 * pi * (z * z - 0.36);
    const cplx du = 20.0 * pi * z;
    if (std::abs(u) < 1e-4) return du * (-u / 3.0 + 7.0 * u * u * u / 90.0);
    const cplx s = std::sinh(u);
    return du * (s - u * std::cosh(u)) / (s * s);
}

inline cplx log_branch4(cplx z) {
    const cplx z4 = z * z * z * z;
    return std::log(2.0 + z4) / (1.0 - 16.0 * z4);
}
inline cplx log_branch4_d(cplx z) {
    const cplx z3 = z * z * z;
    const cplx z4 = z3 * z;
    const cplx den = 1.0 - 16.0 * z4;
    return (4.0 * z3 / (2.0 + z4) * den + 64.0 * z3 * std::log(2.0 + z4)) / (den * den);
}

inline cplx sqrt_eps(cplx z) { return std::sqrt(0.01 + z * z); }
inline cplx sqrt_eps_d(cplx z) { return z / std::sqrt(0.01 + z * z); }

inline cplx sqrt121(cplx z) { return std::sqrt(1.21 - z * z); }
inline cplx sqrt121_d(cplx z) { return -z / std::sqrt(1.21 - z * z); }

inline cplx mix(cplx z) { return sqrt_eps(z) + std::tanh(5.0 * z) + sin40(z) + exp_essential(z); }
inline cplx mix_d(cplx z) {
    const cplx t = std::tanh(5.0 * z);
    return sqrt_eps_d(z) + 5.0 * (1.0 - t * t) + sin40_d(z) + exp_essential_d(z);
}

inline cplx gamma_d(cplx z) { return special::gamma(z) * special::digamma(z); }

}  // namespace functions

namespace detail {

inline ProblemInstance make_problem(std::string name, std::string description, std::vector<cplx> grid,
                                    ComplexFn f, ComplexFn df) {
    ProblemInstance p;
    p.name = std::move(name);
    p.description = std::move(description);
    p.grid = std::move(grid);
    p.f = std::move(f);
    p.df = std::move(df);
    p.values.resize(p.grid.size());
    for (std::size_t i = 0; i < p.grid.size(); ++i) p.values[i] = p.f(p.grid[i]);
    if (p.df) {
        std::vector<cplx> d(p.grid.size());
        for (std::size_t i = 0; i < p.grid.size(); ++i) d[i] = p.df(p.grid[i]);
        p.derivatives = std::move(d);
    }
    return p;
}

inline std::vector<cplx> concat(std::vector<cplx> a, const std::vector<cplx>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// Perimeter of the square with side 2 centred at -1.5, n points at equal arc
// length, counter-clockwise from the midpoint of the right edge (the same
// starting direction as the circle grid).
inline std::vector<cplx> square_perimeter(std::size_t n) {
    const cplx corners[4] = {{-2.5, -1.0}, {-0.5, -1.0}, {-0.5, 1.0}, {-2.5, 1.0}};
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = std::fmod(8.0 * static_cast<double>(k) / static_cast<double>(n) + 3.0, 8.0);
        const auto side = static_cast<std::size_t>(t / 2.0);
        const double frac = (t - 2.0 * static_cast<double>(side)) / 2.0;
        out[k] = corners[side] + frac * (corners[(side + 1) % 4] - corners[side]);
    }
    return out;
}

inline std::vector<cplx> real_line(double a, double b, std::size_t n) {
    return make_grid(GridSpec::equispaced(a, b, n));
}

}  // namespace detail

/// Even-grid problems: `which` is "sqrt121" or "mix", n points on [-1, 1].
inline ProblemInstance even_grid_problem(const std::string& which, std::size_t n) {
    using namespace functions;
    ProblemInstance p;
    if (which == "sqrt121") {
        p = detail::make_problem("sqrt121_even", "sqrt(1.21 - x^2) on an even grid", detail::real_line(-1, 1, n),
                                 sqrt121, sqrt121_d);
    } else if (which == "mix") {
        p = detail::make_problem("mix_even", "sqrt(0.01 + x^2) + tanh(5x) + sin(40x) + exp(-1/x^2) on an even grid",
                                 detail::real_line(-1, 1, n), mix, mix_d);
    } else {
        throw UnknownProblem(which + "_even");
    }
    p.aux_grids["fine"] = detail::real_line(-1.0, 1.0, 1000);
    return p;
}

inline const std::vector<std::string>& problem_names() {
    static const std::vector<std::string> names = {
        "gamma",     "square2circ",    "exp_essential", "tan256",       "ramp",
        "absx_shift", "absx_200k",     "tan64",         "sin40_coarse", "zeta_line",
        "sqrt_zolotarev", "sinh_bump", "log_branch4",   "sqrt_eps",     "sqrt_eps_complex",
        "log_disk",  "sqrt121_even",   "mix_even",      "sin40_n20"};
    return names;
}

inline ProblemInstance problem(const std::string& name) {
    using namespace functions;
    using detail::make_problem;
    using detail::real_line;

    if (name == "gamma") {
        auto p = make_problem(name, "Gamma(x), 100 points on [-1.5, 1.5]", real_line(-1.5, 1.5, 100),
                              [](cplx z) { return special::gamma(z); }, gamma_d);
        p.reference_facts = {{"terminal_N_aaa", "12"}, {"terminal_N_smooth", "12"}};
        return p;
    }
    if (name == "square2circ") {
        const auto grid = detail::concat(detail::square_perimeter(1000), [] {
            auto c = make_grid(GridSpec::circle(1000));
            for (auto& z : c) z += 1.5;
            return c;
        }());
        auto p = make_problem(name, "-1 on a square, +1 on a circle", grid, sign_re,
                              [](cplx) { return cplx(0.0, 0.0); });
        p.reference_facts = {{"terminal_N_aaa", "47"}, {"budget_speedup", "40"}};
        return p;
    }
    if (name == "exp_essential") {
        auto p = make_problem(name, "exp(-1/x^2), 800 points on [-1, 1]", real_line(-1, 1, 800), exp_essential,
                              exp_essential_d);
        p.tol = 1e-14;
        p.reference_facts = {{"terminal_N_aaa", "35"}, {"terminal_N_smooth", "31"}, {"terminal_N_budget", "36"}};
        return p;
    }
    if (name == "tan256" || name == "tan64") {
        const double c = name == "tan256" ? 256.0 : 64.0;
        auto grid = detail::concat(make_grid(GridSpec::circle(1000)), make_grid(GridSpec::two_segments(1000)));
        auto p = make_problem(name, "tan(cz) on the unit circle and two chords", std::move(grid),
                              tan_scaled(c), tan_scaled_d(c));
        if (name == "tan256") {
            p.max_degree = 210;
            p.reference_facts = {{"status", "degree_cap"}, {"max_degree", "210"}};
        }
        return p;
    }
    if (name == "ramp") {
        return make_problem(name, "max(0, x), 200 points on [-1, 1]", real_line(-1, 1, 200), ramp, ramp_d);
    }
    if (name == "absx_shift") {
        auto p = make_problem(name, "|x|, 1001 points on [-1, 2]", real_line(-1, 2, 1001), absx, absx_d);
        p.aux_grids["fine"] = real_line(-0.01, 0.01, 1000);
        return p;
    }
    if (name == "absx_200k") {
        auto p = make_problem(name, "|x|, 200000 points on [-1, 1]", real_line(-1, 1, 200000), absx, absx_d);
        p.max_degree = 27;
        return p;
    }
    if (name == "sin40_coarse") {
        auto p = make_problem(name, "sin(40x), 90 points on [-1, 1]", real_line(-1, 1, 90), sin40, sin40_d);
        p.aux_grids["fine"] = real_line(-1, 1, 2000);
        return p;
    }
    if (name == "sin40_n20") {
        return make_problem(name, "sin(40x), 20 points on [-1, 1]", real_line(-1, 1, 20), sin40, sin40_d);
    }
    if (name == "zeta_line") {
        auto p = make_problem(name, "zeta(z), 100 points from 4-40i to 4+40i",
                              make_grid(GridSpec::equispaced(cplx(4, -40), cplx(4, 40), 100)),
                              [](cplx z) { return special::zeta(z); },
                              [](cplx z) { return special::zeta_derivative(z); });
        p.reference_facts = {{"max_abs_one_minus_zeta", "0.082"}};
        return p;
    }
    if (name == "sqrt_zolotarev") {
        return make_problem(name, "sqrt(x), 2000 geometric points on [0.01, 100]",
                            make_grid(GridSpec::geometric(0.01, 100.0, 2000)),
                            [](cplx z) { return std::sqrt(z); }, [](cplx z) { return 0.5 / std::sqrt(z); });
    }
    if (name == "sinh_bump") {
        return make_problem(name, "u / sinh(u), u = 10 pi (x^2 - 0.36), 160 points on [-1, 1]",
                            real_line(-1, 1, 160), sinh_bump, sinh_bump_d);
    }
    if (name == "log_branch4") {
        return make_problem(name, "log(2 + z^4) / (1 - 16 z^4), 1000 points on the unit circle",
                            make_grid(GridSpec::circle(1000)), log_branch4, log_branch4_d);
    }
    if (name == "sqrt_eps") {
        return make_problem(name, "sqrt(0.01 + x^2), 80 points on [-1, 1]", real_line(-1, 1, 80), sqrt_eps,
                            sqrt_eps_d);
    }
    if (name == "sqrt_eps_complex") {
        return make_problem(
            name, "sqrt(0.01 + x^2) + i exp(x), 80 points on [-1, 1]", real_line(-1, 1, 80),
            [](cplx z) { return sqrt_eps(z) + I * std::exp(z); },
            [](cplx z) { return sqrt_eps_d(z) + I * std::exp(z); });
    }
    if (name == "log_disk") {
        return make_problem(name, "log(1.1 - z), 256 points on the unit circle", make_grid(GridSpec::circle(256)),
                            [](cplx z) { return std::log(1.1 - z); }, [](cplx z) { return -1.0 / (1.1 - z); });
    }
    if (name == "sqrt121_even") return even_grid_problem("sqrt121", 40);
    if (name == "mix_even") return even_grid_problem("mix", 40);
    throw UnknownProblem(name);
}

}  // namespace aaa
