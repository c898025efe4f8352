#include "delaystab/charfun.hpp"
#include "delaystab/errors.hpp"
#include "delaystab/linalg.hpp"
#include "delaystab/presets.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace delaystab;

namespace {

cplx random_cplx(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng)};
}

ComplexPoly random_poly(std::mt19937_64& rng, int degree) {
    std::vector<cplx> c;
    for (int m = 0; m <= degree; ++m) c.push_back(random_cplx(rng, 1.0));
    return ComplexPoly(c);
}

}  // namespace

TEST(ComplexPoly, ArithmeticAndDerivative) {
    const ComplexPoly p{cplx{1.0}, cplx{2.0}, cplx{0.0, 3.0}};
    const ComplexPoly q{cplx{-1.0}, cplx{1.0}};
    const cplx x{0.7, -0.2};
    EXPECT_LT(std::abs((p * q)(x) - p(x) * q(x)), 1e-14);
    EXPECT_LT(std::abs((p + q)(x) - (p(x) + q(x))), 1e-14);
    EXPECT_LT(std::abs(p.derivative()(x) - (cplx{2.0} + 2.0 * cplx{0.0, 3.0} * x)), 1e-14);
    EXPECT_EQ((p - p).degree(), -1);
    EXPECT_TRUE((p - p).is_zero());
}

TEST(Linalg, EigenvaluesOfCompanionMatchRoots) {
    // (x − 1)(x + 2)(x − i)
    const std::vector<cplx> c{cplx{0.0, 2.0}, cplx{-2.0, -1.0}, cplx{1.0, -1.0}, cplx{1.0}};
    auto roots = polynomial_roots(c);
    ASSERT_EQ(roots.size(), 3u);
    for (cplx expected : {cplx{1.0}, cplx{-2.0}, cplx{0.0, 1.0}}) {
        const auto it = std::min_element(roots.begin(), roots.end(),
                                         [&](cplx a, cplx b) { return std::abs(a - expected) < std::abs(b - expected); });
        EXPECT_LT(std::abs(*it - expected), 1e-12);
    }
}

TEST(Linalg, EigenvaluesTraceAndDeterminant) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 30);
        CMatrix a(n, n);
        std::vector<std::vector<cplx>> copy(n, std::vector<cplx>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) copy[i][j] = a(i, j) = random_cplx(rng, 1.0);
        const auto ev = eigenvalues(a);
        cplx sum = 0.0, prod = 1.0;
        for (cplx e : ev) {
            sum += e;
            prod *= e;
        }
        EXPECT_LT(std::abs(sum - a.trace()), 1e-10 * static_cast<double>(n));
        const cplx det = oracle::det_gauss(copy);
        EXPECT_LT(std::abs(prod - det), 1e-9 * std::max(1.0, std::abs(det)));
        EXPECT_LT(std::abs(determinant(a) - det), 1e-10 * std::max(1.0, std::abs(det)));
    }
}

TEST(CharFun, ScalarDiscreteDelayForm) {
    const CharFun F = presets::example1();
    for (cplx lambda : {cplx{0.0, 1.0}, cplx{2.0, -1.0}}) {
        for (cplx L : {cplx{0.5, 0.5}, cplx{-3.0, 0.0}}) {
            const cplx expected = lambda - 1.0 - L * std::exp(-lambda / 2.0);
            EXPECT_LT(std::abs(F.eval(lambda, L) - expected), 1e-14);
        }
    }
}

TEST(CharFun, GainInsideAndOutsideTheKernelTerm) {
    const CharFun F = presets::example2();
    const cplx lambda{0.4, 2.0}, L{-0.3, 0.8};
    const cplx expected = lambda - cplx{0.1, 0.1} - L * (std::exp(-lambda) - 1.0);
    EXPECT_LT(std::abs(F.eval(lambda, L) - expected), 1e-14);
}

TEST(CharFun, DelayedProportionalDerivativeForm) {
    const double a = 1.0, b = 1.0, k1 = 1.0, k2 = 1.1, T = 0.3;
    const CharFun F = presets::mas(a, b, k1, k2, T);
    EXPECT_EQ(F.q(), 2);
    const cplx lambda{0.2, 1.5}, L{-2.0, 0.5};
    const cplx expected = lambda * lambda - a * lambda - b - (k1 + k2 * lambda) * L / (1.0 + lambda * T);
    EXPECT_LT(std::abs(F.eval(lambda, L) - expected), 1e-13);
}

TEST(CharFun, MatchesDirectDeterminantOnRandomSystems) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t q = 1 + static_cast<std::size_t>(trial % 3);
        MatrixFun Q(q), B(q);
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = 0; j < q; ++j) {
                Q(i, j) = random_poly(rng, 2);
                B(i, j) = random_poly(rng, 1);
            }
        const DelayKernel k = trial % 2 ? DelayKernel{Gamma{2, 0.7}} : DelayKernel{Dirac{0.4}};
        const CharFun F = build_charfun(Q, B, k);
        for (int s = 0; s < 5; ++s) {
            const cplx lambda{std::abs(random_cplx(rng, 2.0).real()), random_cplx(rng, 5.0).imag()};
            const cplx L = random_cplx(rng, 2.0);
            const cplx h = laplace(k, lambda);
            std::vector<std::vector<cplx>> m(q, std::vector<cplx>(q));
            for (std::size_t i = 0; i < q; ++i)
                for (std::size_t j = 0; j < q; ++j) m[i][j] = (i == j ? lambda : 0.0) - Q(i, j)(L) - B(i, j)(L) * h;
            const cplx det = oracle::det_gauss(m);
            EXPECT_LT(std::abs(F.eval(lambda, L) - det), 1e-10 * std::max(1.0, std::abs(det)));
        }
    }
}

TEST(CharFun, PartialDerivativesMatchFiniteDifferences) {
    const double h = 1e-6;
    for (const CharFun& F : {presets::example1(), presets::example2(), presets::mas(1, 1, 1, 1.1, 0.2),
                             presets::scalar_gamma(1.0, 3, 0.8)}) {
        for (cplx lambda : {cplx{0.0, 1.3}, cplx{0.7, -2.0}}) {
            for (cplx L : {cplx{-1.5, 0.2}, cplx{0.3, 2.0}}) {
                constexpr Domain c = Domain::continuation;
                const cplx dl = (F.eval(lambda + h, L, c) - F.eval(lambda - h, L, c)) / (2 * h);
                const cplx dL = (F.eval(lambda, L + h, c) - F.eval(lambda, L - h, c)) / (2 * h);
                EXPECT_LE(std::abs(dl - F.d_lambda(lambda, L)), 1e-6 * std::max(1.0, std::abs(dl)));
                EXPECT_LE(std::abs(dL - F.d_L(lambda, L)), 1e-6 * std::max(1.0, std::abs(dL)));
            }
        }
    }
}

TEST(CharFun, TermTableValidation) {
    // A λ^q ĥ term would make the system neutral.
    EXPECT_THROW((void)CharFun::from_terms(1, Dirac{1.0}, {{1, 1, ComplexPoly::identity()}}), InvalidInput);
    EXPECT_THROW((void)CharFun::from_terms(2, Dirac{1.0}, {{1, 2, ComplexPoly::identity()}}), InvalidInput);
    EXPECT_THROW((void)CharFun::from_terms(1, Dirac{1.0},
                                           {{0, 1, ComplexPoly::identity()}, {0, 1, ComplexPoly::identity()}}),
                 InvalidInput);
    const CharFun F = CharFun::from_terms(1, Dirac{1.0}, {{0, 1, ComplexPoly{}}, {0, 0, ComplexPoly::constant(2.0)}});
    EXPECT_EQ(F.terms().size(), 1u);
}

TEST(CharFun, RadiusBoundExcludesLargeRoots) {
    std::mt19937_64 rng(5);
    for (const CharFun& F : {presets::example1(), presets::example2(), presets::mas(1, 1, 1, 1.1, 0.2)}) {
        const cplx center{-1.0, 0.5};
        const double radius = 3.0;
        const double R = radius_bound(F, center, radius);
        std::uniform_real_distribution<double> ang(-std::numbers::pi / 2, std::numbers::pi / 2), scale(1.0, 5.0),
            u(0.0, 1.0);
        for (int i = 0; i < 500; ++i) {
            const cplx lambda = std::polar(R * scale(rng), ang(rng));
            const cplx L = center + std::polar(radius * u(rng), 2 * std::numbers::pi * u(rng));
            EXPECT_GE(std::abs(F.eval(lambda, L)), 0.5 * std::pow(std::abs(lambda), F.q()) * (1 - 1e-12));
        }
    }
}

TEST(CharFun, PolynomialCountAgreesWithDenseWinding) {
    std::mt19937_64 rng(19);
    for (const CharFun& F : {presets::scalar_gamma(1.0, 1, 0.5), presets::scalar_gamma(1.0, 2, 2.0),
                             presets::mas(1, 1, 1, 1.1, 0.3)}) {
        for (int i = 0; i < 15; ++i) {
            const cplx L = random_cplx(rng, 4.0);
            const double R = radius_bound(F, L, 0.0);
            const int dense = oracle::winding_dense([&](cplx lam) { return F.eval(lam, L); }, R, 20000);
            EXPECT_EQ(nu_polynomial(F, L), dense) << "L = " << L;
        }
    }
}
