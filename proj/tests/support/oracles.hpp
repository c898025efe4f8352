#pragma once

// Reference computations written independently of the library: plain
// bisection, Gaussian elimination, dense argument-principle sampling,
// long-double closed forms and a direct-convolution integrator.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// Root of a sign-changing f on [lo, hi] by 200 bisection steps.
double bisect(const std::function<double(double)>& f, double lo, double hi);

/// Determinant by Gaussian elimination with partial pivoting.
cplx det_gauss(std::vector<std::vector<cplx>> m);

/// Zeros of an analytic f inside the right half-disk of radius R, counted by
/// summing principal-value phase increments over `samples` points per side.
int winding_dense(const std::function<cplx(cplx)>& f, double R, int samples);

/// Ring consensus bound for mode l = 1, evaluated in long double.
long double ring_Tc(int n, int N, long double alpha);

/// ż = a z + L ∫ z(t − s) (1/T) e^{−s/T} ds with z ≡ z0 on t ≤ 0, by
/// Heun steps with trapezoidal quadrature of the full convolution history.
/// Returns z at t = 0, dt, 2dt, ...
std::vector<cplx> exponential_convolution(double a, cplx L, double T, cplx z0, double dt, double horizon);

/// Exact rational number with 64-bit numerator and denominator.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
};

}  // namespace oracle
