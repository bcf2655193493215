#pragma once

// Complex Gamma, digamma and Riemann zeta at the accuracy the experiments
// need (about 1e-14 relative).

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace aaa::special {

using cplx = std::complex<double>;

namespace detail {

// Lanczos approximation, g = 7, nine terms.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

// Bernoulli numbers B_2, B_4, ..., B_24.
inline constexpr std::array<double, 12> kBernoulli = {
    1.0 / 6.0,          -1.0 / 30.0,        1.0 / 42.0,          -1.0 / 30.0,
    5.0 / 66.0,         -691.0 / 2730.0,    7.0 / 6.0,           -3617.0 / 510.0,
    43867.0 / 798.0,    -174611.0 / 330.0,  854513.0 / 138.0,    -236364091.0 / 2730.0};

}  // namespace detail

inline cplx gamma(cplx z) {
    using std::numbers::pi;
    if (detail::is_nonpositive_integer(z)) throw std::domain_error("gamma: pole at nonpositive integer");
    // The C library's real tgamma is accurate to a few ulps, several times
    // better than the Lanczos sum below.
    if (z.imag() == 0.0) return std::tgamma(z.real());
    if (z.real() < 0.5) {
        return pi / (std::sin(pi * z) * gamma(1.0 - z));
    }
    z -= 1.0;
    cplx x = detail::kLanczos[0];
    for (std::size_t k = 1; k < detail::kLanczos.size(); ++k) {
        x += detail::kLanczos[k] / (z + static_cast<double>(k));
    }
    const cplx t = z + detail::kLanczosG + 0.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

inline cplx digamma(cplx z) {
    using std::numbers::pi;
    if (detail::is_nonpositive_integer(z)) throw std::domain_error("digamma: pole at nonpositive integer");
    if (z.real() < 0.5) {
        return digamma(1.0 - z) - pi / std::tan(pi * z);
    }
    cplx shift = 0.0;
    while (std::abs(z) < 12.0) {
        shift -= 1.0 / z;
        z += 1.0;
    }
    const cplx inv2 = 1.0 / (z * z);
    // psi(z) ~ ln z - 1/(2z) - sum B_{2k} / (2k z^{2k})
    cplx series = 0.0;
    cplx p = inv2;
    for (std::size_t k = 0; k < 7; ++k) {
        const double twok = 2.0 * static_cast<double>(k + 1);
        series += detail::kBernoulli[k] / twok * p;
        p *= inv2;
    }
    return shift + std::log(z) - 0.5 / z - series;
}

namespace detail {

struct ZetaParts {
    cplx value;
    cplx derivative;
};

// Euler-Maclaurin: sum_{n<N} n^-s + N^{1-s}/(s-1) + N^-s/2
//                  + sum_k B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
inline ZetaParts zeta_em(cplx s) {
    const int n_terms = std::max(50, static_cast<int>(std::ceil(std::abs(s))) + 10);
    const double big_n = static_cast<double>(n_terms);
    const double ln_n = std::log(big_n);

    cplx val = 0.0;
    cplx der = 0.0;
    for (int n = 1; n < n_terms; ++n) {
        const double ln = std::log(static_cast<double>(n));
        const cplx term = std::exp(-s * ln);
        val += term;
        der -= ln * term;
    }
    const cplx n_pow = std::exp(-s * ln_n);  // N^-s
    const cplx tail0 = big_n * n_pow / (s - 1.0);
    val += tail0 + 0.5 * n_pow;
    der += -ln_n * tail0 - tail0 / (s - 1.0) - 0.5 * ln_n * n_pow;

    // poly = s(s+1)...(s+2k-2), dpoly its derivative in s.
    cplx poly = s;
    cplx dpoly = 1.0;
    cplx n_pow_k = n_pow / big_n;  // N^{-s-1}
    double fact = 2.0;             // (2k)!
    for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
        const cplx term = kBernoulli[k - 1] / fact * poly * n_pow_k;
        val += term;
        der += kBernoulli[k - 1] / fact * (dpoly - ln_n * poly) * n_pow_k;
        const double a = 2.0 * static_cast<double>(k) - 1.0;
        const double b = 2.0 * static_cast<double>(k);
        dpoly = dpoly * (s + a) * (s + b) + poly * ((s + b) + (s + a));
        poly = poly * (s + a) * (s + b);
        n_pow_k /= big_n * big_n;
        fact *= (b + 1.0) * (b + 2.0);
    }
    return {val, der};
}

}  // namespace detail

/// Riemann zeta for Re z >= 2.
inline cplx zeta(cplx z) {
    if (!(z.real() >= 2.0)) throw std::domain_error("zeta: requires Re z >= 2");
    return detail::zeta_em(z).value;
}

/// zeta'(z) = -sum ln(n) n^-z for Re z >= 2.
inline cplx zeta_derivative(cplx z) {
    if (!(z.real() >= 2.0)) throw std::domain_error("zeta_derivative: requires Re z >= 2");
    return detail::zeta_em(z).derivative;
}

}  // namespace aaa::special
