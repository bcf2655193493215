#pragma once

// Dense complex linear algebra used by the AAA drivers: SVD with a fixed
// phase convention on the right singular vectors, and finite generalized
// eigenvalues of a square pencil. Both route to LAPACK; real-valued input
// takes the real (d*) routines so real problems stay exactly real.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef lapack_complex_float
#define lapack_complex_float std::complex<float>
#endif
#ifndef lapack_complex_double
#define lapack_complex_double std::complex<double>
#endif
#include <lapacke.h>

namespace aaa {

using cplx = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, cplx(0.0, 0.0)) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_) {
            throw std::invalid_argument("ComplexMatrix: entry count does not match rows*cols");
        }
        if (!all_finite()) {
            throw std::invalid_argument("ComplexMatrix: non-finite entry");
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const cplx> d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<const cplx> entries() const noexcept { return entries_; }
    std::span<cplx> entries() noexcept { return entries_; }

    std::vector<cplx> column(std::size_t j) const {
        std::vector<cplx> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    bool all_finite() const noexcept {
        return std::all_of(entries_.begin(), entries_.end(), [](const cplx& v) {
            return std::isfinite(v.real()) && std::isfinite(v.imag());
        });
    }

    bool is_real() const noexcept {
        return std::all_of(entries_.begin(), entries_.end(),
                           [](const cplx& v) { return v.imag() == 0.0; });
    }

    double frobenius_norm() const noexcept {
        double s = 0.0;
        for (const auto& v : entries_) s += std::norm(v);
        return std::sqrt(s);
    }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

inline std::vector<cplx> operator*(const ComplexMatrix& a, std::span<const cplx> x) {
    if (x.size() != a.cols()) throw std::invalid_argument("matrix-vector: dimension mismatch");
    std::vector<cplx> y(a.rows(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

inline double norm2(std::span<const cplx> x) noexcept {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return std::sqrt(s);
}

/// Singular values (descending) and right singular vectors, one per column of
/// `right_vectors`. Left vectors are not retained.
struct SvdResult {
    std::vector<double> singular_values;
    ComplexMatrix right_vectors;

    std::vector<cplx> right_vector(std::size_t k) const { return right_vectors.column(k); }
    std::size_t size() const noexcept { return singular_values.size(); }
};

namespace kernels {

class LapackError : public std::runtime_error {
public:
    LapackError(const std::string& routine, long info)
        : std::runtime_error(routine + " failed with info=" + std::to_string(info)) {}
};

namespace detail {

// Entries within this relative distance of the largest modulus count as tied.
inline constexpr double kPhaseTieRelTol = 64.0 * std::numeric_limits<double>::epsilon();

inline std::size_t phase_pivot(std::span<const cplx> v) {
    double largest = 0.0;
    for (const auto& x : v) largest = std::max(largest, std::abs(x));
    const double cutoff = largest * (1.0 - kPhaseTieRelTol);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) >= cutoff) return i;
    }
    return 0;
}

// Rotates column j of `v` so its pivot entry is real and positive.
inline void normalize_phase_column(ComplexMatrix& v, std::size_t j, bool real_data) {
    const std::size_t n = v.rows();
    std::vector<cplx> col = v.column(j);
    const std::size_t p = phase_pivot(col);
    const double mag = std::abs(col[p]);
    if (mag == 0.0) return;
    if (real_data) {
        if (col[p].real() < 0.0) {
            for (std::size_t i = 0; i < n; ++i) v(i, j) = cplx(-v(i, j).real(), 0.0);
        }
        return;
    }
    const cplx rot = std::conj(col[p]) / mag;
    for (std::size_t i = 0; i < n; ++i) v(i, j) *= rot;
    v(p, j) = cplx(mag, 0.0);
}

inline void check_finite(const ComplexMatrix& a, const char* what) {
    if (!a.all_finite()) throw std::invalid_argument(std::string(what) + ": non-finite input");
}

// jobz = 'O' (economy, rows >= cols) or 'A' (full). Returns singular values
// padded with zeros to `cols` and all `cols` right vectors, phase-normalized.
inline SvdResult gesdd(const ComplexMatrix& a, char jobz) {
    const auto m = static_cast<lapack_int>(a.rows());
    const auto n = static_cast<lapack_int>(a.cols());
    const auto k = std::min(m, n);
    const bool real_data = a.is_real();

    SvdResult out;
    out.singular_values.assign(static_cast<std::size_t>(n), 0.0);
    out.right_vectors = ComplexMatrix(a.cols(), a.cols());
    std::vector<double> s(static_cast<std::size_t>(k));
    lapack_int info = 0;

    if (real_data) {
        std::vector<double> buf(a.rows() * a.cols());
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t i = 0; i < a.rows(); ++i) buf[i + j * a.rows()] = a(i, j).real();
        std::vector<double> vt(a.cols() * a.cols());
        std::vector<double> u(jobz == 'A' ? a.rows() * a.rows() : 1);
        info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, jobz, m, n, buf.data(), std::max<lapack_int>(1, m),
                              s.data(), u.data(), std::max<lapack_int>(1, m), vt.data(), n);
        if (info != 0) throw LapackError("dgesdd", info);
        for (std::size_t r = 0; r < a.cols(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c)
                out.right_vectors(c, r) = cplx(vt[r + c * a.cols()], 0.0);
    } else {
        std::vector<cplx> buf(a.rows() * a.cols());
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t i = 0; i < a.rows(); ++i) buf[i + j * a.rows()] = a(i, j);
        std::vector<cplx> vt(a.cols() * a.cols());
        std::vector<cplx> u(jobz == 'A' ? a.rows() * a.rows() : 1);
        info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, jobz, m, n, buf.data(), std::max<lapack_int>(1, m),
                              s.data(), u.data(), std::max<lapack_int>(1, m), vt.data(), n);
        if (info != 0) throw LapackError("zgesdd", info);
        for (std::size_t r = 0; r < a.cols(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c)
                out.right_vectors(c, r) = std::conj(vt[r + c * a.cols()]);
    }
    std::copy(s.begin(), s.end(), out.singular_values.begin());
    for (std::size_t j = 0; j < a.cols(); ++j) normalize_phase_column(out.right_vectors, j, real_data);
    return out;
}

}  // namespace detail

/// Reduced SVD of a matrix with rows >= cols >= 1.
inline SvdResult svd_reduced(const ComplexMatrix& a) {
    if (a.cols() == 0 || a.rows() < a.cols()) {
        throw std::invalid_argument("svd_reduced: requires rows >= cols >= 1");
    }
    detail::check_finite(a, "svd_reduced");
    return detail::gesdd(a, 'O');
}

/// Full SVD for any shape with cols >= 1. Singular values beyond min(rows, cols)
/// are reported as exact zeros so the result always has `cols` entries.
inline SvdResult svd_full(const ComplexMatrix& a) {
    if (a.cols() == 0 || a.rows() == 0) throw std::invalid_argument("svd_full: empty matrix");
    detail::check_finite(a, "svd_full");
    if (a.rows() >= a.cols()) return detail::gesdd(a, 'O');
    const bool all_zero = std::all_of(a.entries().begin(), a.entries().end(),
                                      [](const cplx& v) { return v == cplx(0.0, 0.0); });
    if (all_zero) {
        SvdResult out;
        out.singular_values.assign(a.cols(), 0.0);
        out.right_vectors = ComplexMatrix::identity(a.cols());
        return out;
    }
    return detail::gesdd(a, 'A');
}

/// Right singular vector of the smallest singular value of a wide matrix.
inline std::vector<cplx> nullspace_vector(const ComplexMatrix& a) {
    if (a.rows() >= a.cols()) throw std::invalid_argument("nullspace_vector: requires rows < cols");
    SvdResult svd = svd_full(a);
    return svd.right_vector(a.cols() - 1);
}

inline constexpr double kInfiniteBetaRelTol = 1e-13;
inline constexpr double kInfiniteMagnitudeGuard = 1e13;

/// Finite eigenvalues λ of det(a − λ b) = 0, sorted by real then imaginary part.
inline std::vector<cplx> generalized_eigenvalues(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw std::invalid_argument("generalized_eigenvalues: matrices must be square and equal size");
    }
    detail::check_finite(a, "generalized_eigenvalues");
    detail::check_finite(b, "generalized_eigenvalues");
    const auto n = static_cast<lapack_int>(a.rows());
    std::vector<cplx> out;
    if (n == 0) return out;

    const double scale_a = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());
    const double scale_b = std::max(b.frobenius_norm(), std::numeric_limits<double>::min());
    const double beta_floor = kInfiniteBetaRelTol * scale_b;
    const double magnitude_cap = kInfiniteMagnitudeGuard * scale_a / scale_b;

    auto accept = [&](double beta_abs, cplx lambda) {
        if (beta_abs < beta_floor) return;
        if (!(std::abs(lambda) <= magnitude_cap)) return;
        out.push_back(lambda);
    };

    const std::size_t nn = a.rows();
    if (a.is_real() && b.is_real()) {
        std::vector<double> ar(nn * nn), br(nn * nn);
        for (std::size_t j = 0; j < nn; ++j)
            for (std::size_t i = 0; i < nn; ++i) {
                ar[i + j * nn] = a(i, j).real();
                br[i + j * nn] = b(i, j).real();
            }
        std::vector<double> alphar(nn), alphai(nn), beta(nn);
        double dummy = 0.0;
        lapack_int info = LAPACKE_dggev(LAPACK_COL_MAJOR, 'N', 'N', n, ar.data(), n, br.data(), n,
                                        alphar.data(), alphai.data(), beta.data(), &dummy, 1,
                                        &dummy, 1);
        if (info != 0) throw LapackError("dggev", info);
        for (std::size_t i = 0; i < nn; ++i) {
            const cplx alpha(alphar[i], alphai[i]);
            const double bab = std::abs(beta[i]);
            if (bab == 0.0) continue;
            accept(bab, alpha / beta[i]);
        }
    } else {
        std::vector<cplx> ac(nn * nn), bc(nn * nn);
        for (std::size_t j = 0; j < nn; ++j)
            for (std::size_t i = 0; i < nn; ++i) {
                ac[i + j * nn] = a(i, j);
                bc[i + j * nn] = b(i, j);
            }
        std::vector<cplx> alpha(nn), beta(nn);
        cplx dummy = 0.0;
        lapack_int info = LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'N', n, ac.data(), n, bc.data(), n,
                                        alpha.data(), beta.data(), &dummy, 1, &dummy, 1);
        if (info != 0) throw LapackError("zggev", info);
        for (std::size_t i = 0; i < nn; ++i) {
            const double bab = std::abs(beta[i]);
            if (bab == 0.0) continue;
            accept(bab, alpha[i] / beta[i]);
        }
    }
    std::sort(out.begin(), out.end(), [](const cplx& x, const cplx& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return out;
}

}  // namespace kernels
}  // namespace aaa
