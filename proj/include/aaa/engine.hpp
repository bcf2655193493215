#pragma once

// The adaptive loop shared by standard AAA and its two variants.
//
//   aaa     weights = last right singular vector of the Loewner matrix
//   smooth  weights = V_N + (sigma_N / sigma_{N-1})^kappa * i * V_{N-1}
//   budget  weights = last right singular vector of the square matrix with
//           divided differences off the diagonal and f'(z_i) on it
//
// Initialization and greedy node selection use function values only, for
// every variant.

#include <aaa/barycentric.hpp>
#include <aaa/kernels.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aaa {

class MissingDerivatives : public std::invalid_argument {
public:
    MissingDerivatives() : std::invalid_argument("budget variant requires derivatives") {}
};

class DataExhausted : public std::runtime_error {
public:
    DataExhausted() : std::runtime_error("data exhausted: no sample points remain") {}
};

/// Data points with their support/sample partition. Support points are kept
/// in selection order; everything else is a sample point.
class SampleSet {
public:
    SampleSet() = default;

    SampleSet(std::vector<cplx> points, std::vector<cplx> values,
              std::optional<std::vector<cplx>> derivatives = std::nullopt)
        : points_(std::move(points)),
          values_(std::move(values)),
          derivatives_(std::move(derivatives)),
          mask_(points_.size(), false) {
        if (values_.size() != points_.size()) {
            throw std::invalid_argument("SampleSet: points and values must align");
        }
        if (derivatives_ && derivatives_->size() != points_.size()) {
            throw std::invalid_argument("SampleSet: derivatives must align with points");
        }
        check_distinct();
    }

    std::size_t size() const noexcept { return points_.size(); }
    std::span<const cplx> points() const noexcept { return points_; }
    std::span<const cplx> values() const noexcept { return values_; }
    bool has_derivatives() const noexcept { return derivatives_.has_value(); }
    std::span<const cplx> derivatives() const {
        if (!derivatives_) throw MissingDerivatives();
        return *derivatives_;
    }

    std::span<const std::size_t> support() const noexcept { return support_; }
    bool is_support(std::size_t i) const { return mask_.at(i); }
    std::size_t support_count() const noexcept { return support_.size(); }
    std::size_t sample_count() const noexcept { return points_.size() - support_.size(); }

    /// Non-support indices in ascending order.
    std::vector<std::size_t> sample_indices() const {
        std::vector<std::size_t> out;
        out.reserve(sample_count());
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (!mask_[i]) out.push_back(i);
        return out;
    }

    void promote(std::size_t i) {
        if (i >= points_.size()) throw std::out_of_range("SampleSet::promote: index out of range");
        if (mask_[i]) throw std::invalid_argument("SampleSet::promote: already a support point");
        mask_[i] = true;
        support_.push_back(i);
    }

private:
    void check_distinct() const {
        std::vector<std::size_t> order(points_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        auto less = [this](std::size_t a, std::size_t b) {
            const cplx& x = points_[a];
            const cplx& y = points_[b];
            if (x.real() != y.real()) return x.real() < y.real();
            return x.imag() < y.imag();
        };
        std::sort(order.begin(), order.end(), less);
        for (std::size_t k = 1; k < order.size(); ++k)
            if (points_[order[k]] == points_[order[k - 1]])
                throw std::invalid_argument("SampleSet: duplicate points");
    }

    std::vector<cplx> points_;
    std::vector<cplx> values_;
    std::optional<std::vector<cplx>> derivatives_;
    std::vector<bool> mask_;
    std::vector<std::size_t> support_;
};

struct EngineOptions {
    Variant variant = Variant::aaa;
    double tol = 1e-13;
    std::size_t max_degree = 150;
    double kappa = 1.5;
    FroissartThresholds froissart{};
    bool check_support_errors = false;

    void validate() const {
        if (!(tol > 0.0)) throw std::invalid_argument("EngineOptions: tol must be positive");
        if (max_degree < 2) throw std::invalid_argument("EngineOptions: max_degree must be >= 2");
        if (!std::isfinite(kappa)) throw std::invalid_argument("EngineOptions: kappa must be finite");
    }
};

struct WeightSolve {
    std::vector<cplx> weights;
    double sigma_last = 0.0;
    double sigma_penultimate = 0.0;
    bool used_full_svd = false;
    std::vector<std::size_t> zero_weight_indices;
    std::optional<SmoothParts> smooth;
};

enum class RunStatus { converged, degree_cap, data_exhausted };

inline std::string to_string(RunStatus s) {
    switch (s) {
        case RunStatus::converged: return "converged";
        case RunStatus::degree_cap: return "degree_cap";
        case RunStatus::data_exhausted: return "data_exhausted";
    }
    return "converged";
}

inline RunStatus parse_status(const std::string& s) {
    if (s == "converged") return RunStatus::converged;
    if (s == "degree_cap") return RunStatus::degree_cap;
    if (s == "data_exhausted") return RunStatus::data_exhausted;
    throw std::invalid_argument("unknown run status '" + s + "'");
}

struct IterationRecord {
    std::size_t iter = 0;
    std::size_t n = 0;
    double max_err = 0.0;
    cplx argmax{0.0, 0.0};
    double sigma_last = 0.0;
    double sigma_penultimate = 0.0;
    std::size_t zero_weights = 0;
    double elapsed_s = 0.0;
    // |r(z_k) - f_k| at zero-weight support nodes; filled only when
    // EngineOptions::check_support_errors is set.
    std::vector<std::pair<std::size_t, double>> support_errors;

    double sigma_ratio() const noexcept { return sigma_penultimate / sigma_last; }
};

/// A zero-weight support node whose error exceeded the tolerance.
struct SupportWarning {
    std::size_t iter = 0;
    std::size_t point_index = 0;
    double error = 0.0;
};

struct ConvergenceTrace {
    std::vector<IterationRecord> records;
    std::vector<SupportWarning> warnings;
    RunStatus status = RunStatus::converged;
};

struct EngineResult {
    BarycentricModel model;
    ConvergenceTrace trace;
    std::vector<std::size_t> support;  // point indices in selection order
};

namespace detail {

inline std::size_t argmax_abs(std::span<const double> v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

// |r(z) - f|, with a pole hit or non-finite value counted as +inf.
inline double pointwise_error(const BarycentricModel& model, cplx z, cplx f) {
    try {
        const double e = std::abs(evaluate(model, z) - f);
        return std::isnan(e) ? std::numeric_limits<double>::infinity() : e;
    } catch (const EvaluatedAtPole&) {
        return std::numeric_limits<double>::infinity();
    }
}

}  // namespace detail

/// First node: largest |F_i - mean(F)|; second: largest |F_i - F_first|.
inline std::pair<std::size_t, std::size_t> initialize_support(const SampleSet& samples) {
    if (samples.size() < 3) throw std::invalid_argument("initialize_support: need at least 3 points");
    if (samples.support_count() != 0) {
        throw std::invalid_argument("initialize_support: support set must be empty");
    }
    const auto f = samples.values();
    cplx mean(0.0, 0.0);
    for (const auto& v : f) mean += v;
    mean /= static_cast<double>(f.size());

    std::vector<double> dev(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) dev[i] = std::abs(f[i] - mean);
    const std::size_t first = detail::argmax_abs(dev);

    std::size_t second = first == 0 ? 1 : 0;
    double best = -1.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i == first) continue;
        const double d = std::abs(f[i] - f[first]);
        if (d > best) {
            best = d;
            second = i;
        }
    }
    return {first, second};
}

/// M x N Loewner matrix (F_i - f_j) / (Z_i - z_j), assembled in Cauchy form; rows are sample points in
/// ascending index order, columns are support points in selection order.
inline ComplexMatrix build_loewner(const SampleSet& samples) {
    const auto rows = samples.sample_indices();
    const auto cols = samples.support();
    if (cols.empty()) throw std::invalid_argument("build_loewner: no support points");
    if (rows.empty()) throw std::invalid_argument("build_loewner: no sample points");
    const auto z = samples.points();
    const auto f = samples.values();
    ComplexMatrix a(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const cplx zi = z[rows[i]];
        const cplx fi = f[rows[i]];
        for (std::size_t j = 0; j < cols.size(); ++j) {
            // Cauchy form F_i c_ij - c_ij f_j with c_ij = 1 / (Z_i - z_j).
            const cplx c = 1.0 / (zi - z[cols[j]]);
            a(i, j) = fi * c - c * f[cols[j]];
        }
    }
    return a;
}

/// N x N matrix with divided differences off the diagonal and f'(z_i) on it.
inline ComplexMatrix build_budget_matrix(const SampleSet& samples) {
    if (!samples.has_derivatives()) throw MissingDerivatives();
    const auto sup = samples.support();
    if (sup.size() < 2) throw std::invalid_argument("build_budget_matrix: need at least 2 support points");
    const auto z = samples.points();
    const auto f = samples.values();
    const auto df = samples.derivatives();
    ComplexMatrix b(sup.size(), sup.size());
    for (std::size_t i = 0; i < sup.size(); ++i) {
        for (std::size_t j = 0; j < sup.size(); ++j) {
            b(i, j) = i == j ? df[sup[i]] : (f[sup[i]] - f[sup[j]]) / (z[sup[i]] - z[sup[j]]);
        }
    }
    return b;
}

inline WeightSolve solve_weights(const ComplexMatrix& matrix, const EngineOptions& options) {
    const std::size_t n = matrix.cols();
    if (n == 0) throw std::invalid_argument("solve_weights: matrix has no columns");
    WeightSolve out;

    const bool wide = matrix.rows() < n;
    if (options.variant == Variant::smooth && n < 2) {
        throw std::invalid_argument("solve_weights: smooth variant requires at least 2 columns");
    }

    const SvdResult svd = wide ? kernels::svd_full(matrix) : kernels::svd_reduced(matrix);
    out.used_full_svd = wide;
    out.sigma_last = svd.singular_values[n - 1];
    out.sigma_penultimate = n >= 2 ? svd.singular_values[n - 2] : svd.singular_values[n - 1];
    std::vector<cplx> v_last = svd.right_vector(n - 1);

    if (options.variant == Variant::smooth) {
        std::vector<cplx> v_pen = svd.right_vector(n - 2);
        // A wide matrix has an exact nullspace of dimension N - M, so the padded
        // singular values are zero there; the blend then uses the two smallest
        // computed ones, which keeps the weights complex.
        const std::size_t k = wide ? matrix.rows() : n;
        const double s_last = svd.singular_values[k - 1];
        const double s_pen = k >= 2 ? svd.singular_values[k - 2] : 0.0;
        double blend = 0.0;
        if (s_pen > 0.0) blend = std::pow(s_last / s_pen, options.kappa);
        std::vector<cplx> w(n);
        for (std::size_t j = 0; j < n; ++j) w[j] = v_last[j] + blend * cplx(0.0, 1.0) * v_pen[j];
        const double nrm = norm2(w);
        for (auto& x : w) x /= nrm;
        out.weights = std::move(w);
        out.smooth = SmoothParts{std::move(v_last), std::move(v_pen), blend, options.kappa};
    } else {
        out.weights = std::move(v_last);
    }

    for (std::size_t j = 0; j < n; ++j)
        if (out.weights[j] == cplx(0.0, 0.0)) out.zero_weight_indices.push_back(j);
    return out;
}

/// Model built from the current support set and a weight solve.
inline BarycentricModel assemble_model(const SampleSet& samples, const WeightSolve& ws, Variant variant) {
    const auto sup = samples.support();
    std::vector<cplx> nodes(sup.size()), vals(sup.size());
    for (std::size_t j = 0; j < sup.size(); ++j) {
        nodes[j] = samples.points()[sup[j]];
        vals[j] = samples.values()[sup[j]];
    }
    return BarycentricModel(std::move(nodes), std::move(vals), ws.weights, ws.smooth, variant);
}

/// Sample point with the largest |r(Z_i) - F_i|; ties go to the lowest index.
inline std::size_t greedy_next(const SampleSet& samples, const BarycentricModel& model) {
    const auto idx = samples.sample_indices();
    if (idx.empty()) throw DataExhausted();
    std::size_t best = idx.front();
    double best_err = -1.0;
    for (std::size_t i : idx) {
        const double e = detail::pointwise_error(model, samples.points()[i], samples.values()[i]);
        if (e > best_err) {
            best_err = e;
            best = i;
        }
    }
    return best;
}

/// Weight solve for the current support set of `samples`.
inline WeightSolve solve_step(const SampleSet& samples, const EngineOptions& options) {
    if (options.variant == Variant::budget) return solve_weights(build_budget_matrix(samples), options);
    return solve_weights(build_loewner(samples), options);
}

inline EngineResult run(SampleSet samples, const EngineOptions& options) {
    options.validate();
    if (options.variant == Variant::budget && !samples.has_derivatives()) throw MissingDerivatives();

    using clock = std::chrono::steady_clock;
    const auto start = clock::now();

    const auto [first, second] = initialize_support(samples);
    samples.promote(first);
    samples.promote(second);

    ConvergenceTrace trace;
    std::optional<BarycentricModel> model;
    std::size_t next = 0;
    for (std::size_t iter = 1;; ++iter) {
        const WeightSolve ws = solve_step(samples, options);
        model = assemble_model(samples, ws, options.variant);

        IterationRecord rec;
        rec.iter = iter;
        rec.n = samples.support_count();
        rec.sigma_last = ws.sigma_last;
        rec.sigma_penultimate = ws.sigma_penultimate;
        rec.zero_weights = ws.zero_weight_indices.size();

        const auto idx = samples.sample_indices();
        double max_err = 0.0;
        std::size_t arg = idx.front();
        for (std::size_t i : idx) {
            const double e = detail::pointwise_error(*model, samples.points()[i], samples.values()[i]);
            if (e > max_err) {
                max_err = e;
                arg = i;
            }
        }
        rec.max_err = max_err;
        rec.argmax = samples.points()[arg];
        next = arg;  // same choice greedy_next would make

        if (options.check_support_errors) {
            for (std::size_t j : ws.zero_weight_indices) {
                const std::size_t pi = samples.support()[j];
                const double e = detail::pointwise_error(*model, samples.points()[pi], samples.values()[pi]);
                rec.support_errors.emplace_back(pi, e);
                if (e > options.tol) trace.warnings.push_back({iter, pi, e});
            }
        }
        rec.elapsed_s = std::chrono::duration<double>(clock::now() - start).count();
        trace.records.push_back(std::move(rec));

        if (max_err < options.tol) {
            trace.status = RunStatus::converged;
            break;
        }
        if (samples.support_count() >= options.max_degree) {
            trace.status = RunStatus::degree_cap;
            break;
        }
        // Promoting the last sample would leave nothing to measure the fit on.
        if (samples.sample_count() <= 1) {
            trace.status = RunStatus::data_exhausted;
            break;
        }
        samples.promote(next);
    }
    std::vector<std::size_t> sup(samples.support().begin(), samples.support().end());
    return EngineResult{std::move(*model), std::move(trace), std::move(sup)};
}

/// Weights for a prescribed support set, bypassing the greedy loop.
inline BarycentricModel fit_with_support(SampleSet samples, std::span<const std::size_t> support,
                                         const EngineOptions& options) {
    for (std::size_t i : support) samples.promote(i);
    const WeightSolve ws = solve_step(samples, options);
    return assemble_model(samples, ws, options.variant);
}

}  // namespace aaa
