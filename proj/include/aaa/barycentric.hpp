#pragma once

// Barycentric rational functions
//
//            sum_j w_j f_j / (z - z_j)
//     r(z) = -------------------------
//              sum_j w_j / (z - z_j)
//
// together with the analyses the AAA drivers need: node derivatives,
// polynomial weights, the real-part form of a smooth-variant model, and
// poles/zeros/residues with Froissart-doublet flagging.

#include <aaa/kernels.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aaa {

enum class Variant { aaa, smooth, budget };

inline std::string to_string(Variant v) {
    switch (v) {
        case Variant::aaa: return "aaa";
        case Variant::smooth: return "smooth";
        case Variant::budget: return "budget";
    }
    return "aaa";
}

inline Variant parse_variant(const std::string& s) {
    if (s == "aaa") return Variant::aaa;
    if (s == "smooth") return Variant::smooth;
    if (s == "budget") return Variant::budget;
    throw std::invalid_argument("unknown variant '" + s + "' (expected aaa|smooth|budget)");
}

/// Thrown when the denominator sum is exactly zero away from every active node.
class EvaluatedAtPole : public std::domain_error {
public:
    explicit EvaluatedAtPole(cplx z)
        : std::domain_error(describe(z)), z_(z) {}
    cplx where() const noexcept { return z_; }

private:
    static std::string describe(cplx z) {
        std::ostringstream os;
        os.precision(17);
        os << "evaluated at pole z=(" << z.real() << "," << z.imag() << ")";
        return os.str();
    }
    cplx z_;
};

/// The two right singular vectors and blend factor behind a smooth-variant
/// model; the owning model's weights are normalize(v_last + blend * i * v_penultimate).
struct SmoothParts {
    std::vector<cplx> v_last;
    std::vector<cplx> v_penultimate;
    double blend = 0.0;
    double kappa = 1.5;

    friend bool operator==(const SmoothParts&, const SmoothParts&) = default;
};

class BarycentricModel {
public:
    BarycentricModel() = default;

    BarycentricModel(std::vector<cplx> nodes, std::vector<cplx> values, std::vector<cplx> weights,
                     std::optional<SmoothParts> smooth = std::nullopt,
                     Variant variant = Variant::aaa)
        : nodes_(std::move(nodes)),
          values_(std::move(values)),
          weights_(std::move(weights)),
          smooth_(std::move(smooth)),
          variant_(variant) {
        validate();
    }

    std::size_t size() const noexcept { return nodes_.size(); }
    std::span<const cplx> nodes() const noexcept { return nodes_; }
    std::span<const cplx> values() const noexcept { return values_; }
    std::span<const cplx> weights() const noexcept { return weights_; }
    const std::optional<SmoothParts>& smooth_parts() const noexcept { return smooth_; }
    Variant variant() const noexcept { return variant_; }

    std::vector<std::size_t> zero_weight_indices() const {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < weights_.size(); ++j)
            if (weights_[j] == cplx(0.0, 0.0)) out.push_back(j);
        return out;
    }

    /// Largest distance between two nodes.
    double support_diameter() const noexcept {
        double d = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            for (std::size_t j = i + 1; j < nodes_.size(); ++j)
                d = std::max(d, std::abs(nodes_[i] - nodes_[j]));
        return d;
    }

    bool has_real_data() const noexcept {
        auto real = [](const cplx& v) { return v.imag() == 0.0; };
        return std::all_of(nodes_.begin(), nodes_.end(), real) &&
               std::all_of(values_.begin(), values_.end(), real);
    }

    friend bool operator==(const BarycentricModel&, const BarycentricModel&) = default;

private:
    void validate() const {
        const std::size_t n = nodes_.size();
        if (n == 0) throw std::invalid_argument("BarycentricModel: at least one node required");
        if (values_.size() != n || weights_.size() != n) {
            throw std::invalid_argument("BarycentricModel: nodes/values/weights length mismatch");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (nodes_[i] == nodes_[j])
                    throw std::invalid_argument("BarycentricModel: duplicate node");
        if (std::all_of(weights_.begin(), weights_.end(),
                        [](const cplx& w) { return w == cplx(0.0, 0.0); })) {
            throw std::invalid_argument("BarycentricModel: all weights are zero");
        }
        if (smooth_) {
            if (smooth_->v_last.size() != n || smooth_->v_penultimate.size() != n) {
                throw std::invalid_argument("BarycentricModel: smooth parts length mismatch");
            }
            if (!(smooth_->blend >= 0.0)) {
                throw std::invalid_argument("BarycentricModel: smooth blend must be nonnegative");
            }
        }
    }

    std::vector<cplx> nodes_;
    std::vector<cplx> values_;
    std::vector<cplx> weights_;
    std::optional<SmoothParts> smooth_;
    Variant variant_ = Variant::aaa;
};

/// r(z). Exact node hits with a nonzero weight return the data value; nodes
/// with zero weight drop out of both sums.
inline cplx evaluate(const BarycentricModel& model, cplx z) {
    const auto nodes = model.nodes();
    const auto values = model.values();
    const auto weights = model.weights();
    cplx num(0.0, 0.0);
    cplx den(0.0, 0.0);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (weights[j] == cplx(0.0, 0.0)) continue;
        if (z == nodes[j]) return values[j];
        const cplx c = weights[j] / (z - nodes[j]);
        num += c * values[j];
        den += c;
    }
    if (den == cplx(0.0, 0.0)) throw EvaluatedAtPole(z);
    return num / den;
}

inline std::vector<cplx> evaluate(const BarycentricModel& model, std::span<const cplx> zs) {
    std::vector<cplx> out(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) out[i] = evaluate(model, zs[i]);
    return out;
}

/// r'(z_i) = (-1/w_i) sum_{j != i} w_j (f_i - f_j) / (z_i - z_j).
inline cplx derivative_at_node(const BarycentricModel& model, std::size_t i) {
    const auto nodes = model.nodes();
    const auto values = model.values();
    const auto weights = model.weights();
    if (i >= nodes.size()) throw std::out_of_range("derivative_at_node: index out of range");
    if (weights[i] == cplx(0.0, 0.0)) {
        throw std::domain_error("derivative undefined at zero-weight node");
    }
    cplx s(0.0, 0.0);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (j == i || weights[j] == cplx(0.0, 0.0)) continue;
        s += weights[j] * (values[i] - values[j]) / (nodes[i] - nodes[j]);
    }
    return -s / weights[i];
}

/// Weights w_j = prod_{k != j} 1 / (z_j - z_k) of the polynomial interpolant.
inline std::vector<cplx> polynomial_weights(std::span<const cplx> nodes) {
    if (nodes.empty()) throw std::invalid_argument("polynomial_weights: no nodes");
    std::vector<cplx> w(nodes.size(), cplx(1.0, 0.0));
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            if (k == j) continue;
            const cplx diff = nodes[j] - nodes[k];
            if (diff == cplx(0.0, 0.0)) throw std::invalid_argument("polynomial_weights: duplicate nodes");
            w[j] /= diff;
        }
    }
    return w;
}

/// Real part of a smooth-variant model on the real line, written as a real
/// rational function of x built from the two singular vectors:
///
///   Re r(x) = (a b + beta^2 c e) / (b^2 + beta^2 e^2)
///
/// with a = sum f_j V_j/(x-z_j), b = sum V_j/(x-z_j) for the last vector and
/// c, e the same sums for the penultimate one. For complex V the cross terms
/// Re(a conj b) etc. are used, which collapse to the formula above when V is real.
inline double real_part_eval(const BarycentricModel& model, double x) {
    const auto& sp = model.smooth_parts();
    if (!sp) throw std::invalid_argument("real_part_eval: model has no smooth parts");
    if (!model.has_real_data()) {
        throw std::invalid_argument("real_part_eval: nodes and values must be real");
    }
    const auto nodes = model.nodes();
    const auto values = model.values();
    const auto weights = model.weights();
    const cplx xz(x, 0.0);
    cplx a(0.0, 0.0), b(0.0, 0.0), c(0.0, 0.0), e(0.0, 0.0);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (weights[j] == cplx(0.0, 0.0)) continue;
        if (xz == nodes[j]) return values[j].real();
        const double inv = 1.0 / (x - nodes[j].real());
        const double f = values[j].real();
        a += f * sp->v_last[j] * inv;
        b += sp->v_last[j] * inv;
        c += f * sp->v_penultimate[j] * inv;
        e += sp->v_penultimate[j] * inv;
    }
    const double beta = sp->blend;
    const double beta2 = beta * beta;
    const double num = (a * std::conj(b)).real() + beta * (a * std::conj(e)).imag() -
                       beta * (c * std::conj(b)).imag() + beta2 * (c * std::conj(e)).real();
    const double den = std::norm(b) + beta2 * std::norm(e) + 2.0 * beta * (b * std::conj(e)).imag();
    if (den == 0.0) throw std::domain_error("real pole of real-part form");
    return num / den;
}

namespace detail {

// Eigenvalues of the arrowhead pencil ([0 c^T; 1 diag(z)], diag(0, 1, ..., 1)),
// which are the roots of sum_j c_j / (lambda - z_j). Nodes whose weight is
// zero are left out so they cannot masquerade as roots.
inline std::vector<cplx> arrowhead_roots(const BarycentricModel& model, std::span<const cplx> coef) {
    const auto nodes = model.nodes();
    const auto weights = model.weights();
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < nodes.size(); ++j)
        if (weights[j] != cplx(0.0, 0.0)) active.push_back(j);
    const std::size_t n = active.size();
    ComplexMatrix e(n + 1, n + 1);
    ComplexMatrix b(n + 1, n + 1);
    for (std::size_t k = 0; k < n; ++k) {
        e(0, k + 1) = coef[active[k]];
        e(k + 1, 0) = 1.0;
        e(k + 1, k + 1) = nodes[active[k]];
        b(k + 1, k + 1) = 1.0;
    }
    return kernels::generalized_eigenvalues(e, b);
}

}  // namespace detail

inline std::vector<cplx> poles(const BarycentricModel& model) {
    return detail::arrowhead_roots(model, model.weights());
}

inline std::vector<cplx> zeros(const BarycentricModel& model) {
    std::vector<cplx> wf(model.size());
    for (std::size_t j = 0; j < model.size(); ++j) wf[j] = model.weights()[j] * model.values()[j];
    return detail::arrowhead_roots(model, wf);
}

inline constexpr double kHigherOrderPoleFloor = 1e-300;

/// Residue n(t)/d'(t) at each simple pole t. A vanishing d'(t) marks a
/// higher-order pole and yields NaN.
inline std::vector<cplx> residues(const BarycentricModel& model, std::span<const cplx> pole_list) {
    const auto nodes = model.nodes();
    const auto values = model.values();
    const auto weights = model.weights();
    std::vector<cplx> out;
    out.reserve(pole_list.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const cplx& t : pole_list) {
        cplx num(0.0, 0.0), dprime(0.0, 0.0);
        bool at_node = false;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (weights[j] == cplx(0.0, 0.0)) continue;
            if (t == nodes[j]) {
                at_node = true;
                break;
            }
            const cplx inv = 1.0 / (t - nodes[j]);
            num += weights[j] * values[j] * inv;
            dprime -= weights[j] * inv * inv;
        }
        if (at_node) throw std::invalid_argument("residues: pole coincides with a node");
        if (std::abs(dprime) < kHigherOrderPoleFloor) {
            out.emplace_back(nan, nan);
        } else {
            out.push_back(num / dprime);
        }
    }
    return out;
}

struct FroissartThresholds {
    double residue_rel = 1e-10;   // relative to the largest |residue|
    double distance_rel = 1e-10;  // relative to the support diameter
};

struct PoleZeroReport {
    std::vector<cplx> poles;
    std::vector<cplx> zeros;
    std::vector<cplx> residues;
    std::vector<std::pair<std::size_t, std::size_t>> doublets;  // (pole index, zero index)
};

/// Poles whose residue is tiny relative to the largest one and that sit within
/// a tiny radius of a zero. Each flagged pole is paired with its nearest zero.
inline std::vector<std::pair<std::size_t, std::size_t>> detect_froissart(
    const PoleZeroReport& report, double support_diameter, const FroissartThresholds& thr = {}) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (report.zeros.empty()) return out;
    double max_res = 0.0;
    for (const auto& r : report.residues)
        if (std::isfinite(r.real()) && std::isfinite(r.imag())) max_res = std::max(max_res, std::abs(r));
    const double res_cut = thr.residue_rel * max_res;
    const double dist_cut = thr.distance_rel * support_diameter;
    for (std::size_t i = 0; i < report.poles.size(); ++i) {
        const double res = std::abs(report.residues[i]);
        if (!(res < res_cut)) continue;
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < report.zeros.size(); ++k) {
            const double d = std::abs(report.poles[i] - report.zeros[k]);
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        if (best_d < dist_cut) out.emplace_back(i, best);
    }
    return out;
}

inline PoleZeroReport analyze(const BarycentricModel& model, const FroissartThresholds& thr = {}) {
    PoleZeroReport rep;
    rep.poles = poles(model);
    rep.zeros = zeros(model);
    rep.residues = residues(model, rep.poles);
    rep.doublets = detect_froissart(rep, model.support_diameter(), thr);
    return rep;
}

}  // namespace aaa
