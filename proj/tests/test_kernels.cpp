#include <aaa/kernels.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

#include <cmath>
#include <limits>

using aaa::ComplexMatrix;
using aaa::cplx;
namespace kernels = aaa::kernels;

namespace {

ComplexMatrix from_real(std::size_t r, std::size_t c, std::initializer_list<double> xs) {
    std::vector<cplx> e;
    for (double x : xs) e.emplace_back(x, 0.0);
    return ComplexMatrix(r, c, std::move(e));
}

ComplexMatrix random_matrix(std::size_t r, std::size_t c, unsigned seed, bool real = false) {
    return ComplexMatrix(r, c, oracle::random_complex(r * c, seed, real));
}

ComplexMatrix abs_budget_matrix() {
    return from_real(4, 4, {-1, -1, -0.5, 0, -1, -1, 0, 0.5, -0.5, 0, 1, 1, 0, 0.5, 1, 1});
}

// Largest-modulus entry (lowest index on ties) is real and positive.
void expect_phase_convention(const std::vector<cplx>& v) {
    std::size_t p = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[p]) * (1.0 + 1e-12)) p = i;
    EXPECT_GT(v[p].real(), 0.0);
    EXPECT_EQ(v[p].imag(), 0.0);
}

double inner_abs(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return std::abs(s);
}

}  // namespace

TEST(ComplexMatrix, RejectsBadShapeAndNonFinite) {
    EXPECT_THROW(ComplexMatrix(2, 2, std::vector<cplx>(3)), std::invalid_argument);
    std::vector<cplx> e(4, 1.0);
    e[2] = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    EXPECT_THROW(ComplexMatrix(2, 2, e), std::invalid_argument);
    e[2] = cplx(0.0, std::numeric_limits<double>::infinity());
    EXPECT_THROW(ComplexMatrix(2, 2, e), std::invalid_argument);
}

TEST(SvdReduced, Identity) {
    const auto s = kernels::svd_reduced(ComplexMatrix::identity(2));
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.singular_values[0], 1.0);
    EXPECT_EQ(s.singular_values[1], 1.0);
    EXPECT_EQ(s.right_vector(0), (std::vector<cplx>{1.0, 0.0}));
    EXPECT_EQ(s.right_vector(1), (std::vector<cplx>{0.0, 1.0}));
}

TEST(SvdReduced, DiagonalWithZero) {
    const auto s = kernels::svd_reduced(from_real(2, 2, {3, 0, 0, 0}));
    EXPECT_DOUBLE_EQ(s.singular_values[0], 3.0);
    EXPECT_EQ(s.singular_values[1], 0.0);
    EXPECT_EQ(s.right_vector(0), (std::vector<cplx>{1.0, 0.0}));
    EXPECT_EQ(s.right_vector(1), (std::vector<cplx>{0.0, 1.0}));
}

TEST(SvdReduced, BudgetMatrixOfAbsMatchesCharacteristicPolynomial) {
    // The matrix is real symmetric, so its singular values are |eigenvalues|.
    const ComplexMatrix b = abs_budget_matrix();
    oracle::Mat m(4, std::vector<long double>(4, 0.0L));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m[i][j] = static_cast<long double>(b(i, j).real());
    const auto c = oracle::char_poly(m);
    auto roots = oracle::real_roots(c, -20.0L, 20.0L);
    ASSERT_EQ(roots.size(), 4u);
    for (auto& r : roots) r = std::abs(r);
    std::sort(roots.begin(), roots.end(), std::greater<>());

    const auto s = kernels::svd_reduced(b);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(s.singular_values[k], static_cast<double>(roots[k]), 1e-10) << "k=" << k;
    }
}

TEST(SvdReduced, RejectsWideAndEmpty) {
    EXPECT_THROW(kernels::svd_reduced(random_matrix(2, 3, 1)), std::invalid_argument);
    EXPECT_THROW(kernels::svd_reduced(ComplexMatrix(0, 0)), std::invalid_argument);
}

TEST(SvdReduced, InvariantsOnRandomMatrices) {
    for (unsigned seed = 1; seed <= 12; ++seed) {
        const std::size_t cols = 1 + seed % 4, rows = cols + seed % 7;
        const bool real = seed % 3 == 0;
        const ComplexMatrix a = random_matrix(rows, cols, seed, real);
        const auto s = kernels::svd_reduced(a);
        ASSERT_EQ(s.size(), cols);

        for (std::size_t k = 0; k + 1 < cols; ++k) EXPECT_GE(s.singular_values[k], s.singular_values[k + 1]);
        for (double x : s.singular_values) EXPECT_GE(x, 0.0);

        for (std::size_t i = 0; i < cols; ++i) {
            const auto vi = s.right_vector(i);
            expect_phase_convention(vi);
            if (real) {
                for (const auto& x : vi) EXPECT_EQ(x.imag(), 0.0);
            }
            EXPECT_NEAR(aaa::norm2(vi), 1.0, 1e-12);
            for (std::size_t j = i + 1; j < cols; ++j) EXPECT_LT(inner_abs(vi, s.right_vector(j)), 1e-12);
        }

        // ||A^H A - V S^2 V^H||_F <= 1e-10 ||A||_F^2 and the per-vector residual.
        const double fro2 = std::pow(a.frobenius_norm(), 2);
        double resid = 0.0;
        for (std::size_t i = 0; i < cols; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                cplx aha = 0.0, vsv = 0.0;
                for (std::size_t r = 0; r < rows; ++r) aha += std::conj(a(r, i)) * a(r, j);
                for (std::size_t k = 0; k < cols; ++k)
                    vsv += s.right_vectors(i, k) * std::pow(s.singular_values[k], 2) * std::conj(s.right_vectors(j, k));
                resid += std::norm(aha - vsv);
            }
        }
        EXPECT_LE(std::sqrt(resid), 1e-10 * fro2);

        for (std::size_t k = 0; k < cols; ++k) {
            const auto v = s.right_vector(k);
            const auto av = a * v;
            std::vector<cplx> ahav(cols, 0.0);
            for (std::size_t j = 0; j < cols; ++j)
                for (std::size_t r = 0; r < rows; ++r) ahav[j] += std::conj(a(r, j)) * av[r];
            for (std::size_t j = 0; j < cols; ++j) ahav[j] -= std::pow(s.singular_values[k], 2) * v[j];
            EXPECT_LE(aaa::norm2(ahav), 1e-10 * std::pow(s.singular_values[0], 2));
        }
    }
}

TEST(SvdReduced, BitwiseDeterministic) {
    const ComplexMatrix a = random_matrix(9, 5, 77);
    const auto s1 = kernels::svd_reduced(a);
    const auto s2 = kernels::svd_reduced(a);
    EXPECT_EQ(s1.singular_values, s2.singular_values);
    EXPECT_EQ(s1.right_vectors, s2.right_vectors);
}

TEST(NullspaceVector, OneByTwo) {
    const auto v = kernels::nullspace_vector(from_real(1, 2, {1, 1}));
    ASSERT_EQ(v.size(), 2u);
    EXPECT_NEAR(v[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(v[1].real(), -1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(v[0].imag(), 0.0);
    EXPECT_EQ(v[1].imag(), 0.0);
}

TEST(NullspaceVector, ZeroMatrixReturnsLastBasisVector) {
    EXPECT_EQ(kernels::nullspace_vector(ComplexMatrix(1, 2)), (std::vector<cplx>{0.0, 1.0}));
}

TEST(NullspaceVector, CoordinateNullspace) {
    EXPECT_EQ(kernels::nullspace_vector(from_real(2, 3, {1, 0, 0, 0, 1, 0})), (std::vector<cplx>{0.0, 0.0, 1.0}));
}

TEST(NullspaceVector, ResidualOnRandomWideMatrices) {
    for (unsigned seed = 20; seed < 30; ++seed) {
        const std::size_t rows = 1 + seed % 4, cols = rows + 1 + seed % 3;
        const ComplexMatrix a = random_matrix(rows, cols, seed);
        const auto v = kernels::nullspace_vector(a);
        EXPECT_NEAR(aaa::norm2(v), 1.0, 1e-14);
        expect_phase_convention(v);
        const auto full = kernels::svd_full(a);
        EXPECT_LE(aaa::norm2(a * v), 1e-12 * (full.singular_values[0] + 1.0));
    }
    EXPECT_THROW(kernels::nullspace_vector(random_matrix(3, 3, 1)), std::invalid_argument);
}

TEST(GeneralizedEigenvalues, StandardProblem) {
    const auto ev = kernels::generalized_eigenvalues(from_real(2, 2, {1, 0, 0, 2}), ComplexMatrix::identity(2));
    ASSERT_EQ(ev.size(), 2u);
    EXPECT_NEAR(std::abs(ev[0] - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(ev[1] - 2.0), 0.0, 1e-14);
}

TEST(GeneralizedEigenvalues, SingularBFiltersInfinite) {
    const auto ev = kernels::generalized_eigenvalues(from_real(2, 2, {1, 0, 0, 2}), from_real(2, 2, {1, 0, 0, 0}));
    ASSERT_EQ(ev.size(), 1u);
    EXPECT_NEAR(std::abs(ev[0] - 1.0), 0.0, 1e-14);
}

TEST(GeneralizedEigenvalues, ArrowheadPencilOfSimplePole) {
    // d(z) = 2/z - 1/(z-1) for nodes {0, 1}, weights {2, -1}.
    ComplexMatrix e = from_real(3, 3, {0, 2, -1, 1, 0, 0, 1, 0, 1});
    ComplexMatrix b = from_real(3, 3, {0, 0, 0, 0, 1, 0, 0, 0, 1});
    const auto ev = kernels::generalized_eigenvalues(e, b);
    const double root = oracle::bisect([](double x) { return 2.0 / x - 1.0 / (x - 1.0); }, 1.5, 3.0);
    ASSERT_EQ(ev.size(), 1u);
    EXPECT_NEAR(std::abs(ev[0] - root), 0.0, 1e-10);
}

TEST(GeneralizedEigenvalues, MatchesQuadraticFormulaWithIdentity) {
    const cplx cases[][4] = {{{1, 2}, {3, -1}, {0.5, 0}, {-2, 1}},
                             {{4, 0}, {1, 0}, {2, 0}, {3, 0}},
                             {{0, 1}, {1, 1}, {-1, 0}, {2, -3}}};
    for (const auto& m : cases) {
        const ComplexMatrix a(2, 2, {m[0], m[1], m[2], m[3]});
        const cplx tr = m[0] + m[3], det = m[0] * m[3] - m[1] * m[2];
        const cplx disc = std::sqrt(tr * tr - 4.0 * det);
        std::vector<cplx> want = {(tr + disc) / 2.0, (tr - disc) / 2.0};
        auto ev = kernels::generalized_eigenvalues(a, ComplexMatrix::identity(2));
        ASSERT_EQ(ev.size(), 2u);
        for (const auto& w : want) {
            const double best = std::min(std::abs(ev[0] - w), std::abs(ev[1] - w));
            EXPECT_LT(best, 1e-12 * std::max(1.0, std::abs(w)));
        }
        EXPECT_TRUE(ev[0].real() < ev[1].real() || (ev[0].real() == ev[1].real() && ev[0].imag() <= ev[1].imag()));
    }
}

TEST(GeneralizedEigenvalues, RejectsMismatchedShapes) {
    EXPECT_THROW(kernels::generalized_eigenvalues(ComplexMatrix::identity(2), ComplexMatrix::identity(3)),
                 std::invalid_argument);
    EXPECT_THROW(kernels::generalized_eigenvalues(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), std::invalid_argument);
}
