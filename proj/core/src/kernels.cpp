#include "delaystab/kernels.hpp"

#include "delaystab/errors.hpp"

#include <cmath>
#include <sstream>

namespace delaystab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

cplx ipow(cplx base, int n) {
    cplx result{1.0, 0.0};
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

void check_domain(cplx lambda, Domain domain) {
    if (domain == Domain::continuation) return;
    const double slack = 1e-12 * std::max(1.0, std::abs(lambda));
    if (lambda.real() < -slack) {
        throw InvalidInput("laplace: Re(lambda) < 0 requires Domain::continuation");
    }
}

// 1 + λT/n, the Gamma base; zero only at the pole.
cplx gamma_base(const Gamma& g, cplx lambda) {
    const cplx base = 1.0 + lambda * (g.T / g.n);
    if (std::abs(base) < 1e-14) {
        throw KernelPole("Gamma kernel pole at lambda = -n/T");
    }
    return base;
}

// g(x) = (1 - e^{-x}) / x with the removable singularity at 0.
cplx uniform_shape(cplx x) {
    if (std::abs(x) < uniform_series_switch) {
        return 1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0;
    }
    return (1.0 - std::exp(-x)) / x;
}

// g'(x); the closed form loses ~eps/|x|^2, so the series covers a wider disk.
cplx uniform_shape_derivative(cplx x) {
    if (std::abs(x) < 0.05) {
        cplx sum{0.0, 0.0};
        cplx power{1.0, 0.0};
        double factorial = 1.0;  // (k+1)!
        for (int k = 1; k <= 10; ++k) {
            factorial *= (k + 1);
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            sum += sign * k * power / factorial;
            power *= x;
        }
        return sum;
    }
    const cplx e = std::exp(-x);
    return (e * (1.0 + x) - 1.0) / (x * x);
}

cplx gamma_laplace(const Gamma& g, cplx lambda) {
    return 1.0 / ipow(gamma_base(g, lambda), g.n);
}

cplx gamma_laplace_derivative(const Gamma& g, cplx lambda) {
    return -g.T / ipow(gamma_base(g, lambda), g.n + 1);
}

}  // namespace

void validate(const DelayKernel& kernel) {
    std::visit(overloaded{
                   [](const Dirac& d) {
                       if (!(d.tau >= 0.0) || !std::isfinite(d.tau))
                           throw InvalidInput("dirac: tau must be finite and >= 0");
                   },
                   [](const Uniform& u) {
                       if (!(u.a >= 0.0) || !std::isfinite(u.a))
                           throw InvalidInput("uniform: a must be finite and >= 0");
                       if (!(u.A > 0.0) || !std::isfinite(u.A))
                           throw InvalidInput("uniform: A must be finite and > 0");
                   },
                   [](const Gamma& g) {
                       if (g.n < 1) throw InvalidInput("gamma: n must be >= 1");
                       if (!(g.T > 0.0) || !std::isfinite(g.T))
                           throw InvalidInput("gamma: T must be finite and > 0");
                   },
                   [](const Exponential& e) {
                       if (!(e.T > 0.0) || !std::isfinite(e.T))
                           throw InvalidInput("exponential: T must be finite and > 0");
                   },
               },
               kernel);
}

cplx laplace(const DelayKernel& kernel, cplx lambda, Domain domain) {
    check_domain(lambda, domain);
    return std::visit(
        overloaded{
            [&](const Dirac& d) { return std::exp(-lambda * d.tau); },
            [&](const Uniform& u) {
                return std::exp(-lambda * u.a) * uniform_shape(lambda * u.A);
            },
            [&](const Gamma& g) { return gamma_laplace(g, lambda); },
            [&](const Exponential& e) { return gamma_laplace(Gamma{1, e.T}, lambda); },
        },
        kernel);
}

cplx laplace_derivative(const DelayKernel& kernel, cplx lambda, Domain domain) {
    check_domain(lambda, domain);
    return std::visit(
        overloaded{
            [&](const Dirac& d) { return -d.tau * std::exp(-lambda * d.tau); },
            [&](const Uniform& u) {
                const cplx shift = std::exp(-lambda * u.a);
                const cplx x = lambda * u.A;
                return shift * (u.A * uniform_shape_derivative(x) - u.a * uniform_shape(x));
            },
            [&](const Gamma& g) { return gamma_laplace_derivative(g, lambda); },
            [&](const Exponential& e) {
                return gamma_laplace_derivative(Gamma{1, e.T}, lambda);
            },
        },
        kernel);
}

double mean_delay(const DelayKernel& kernel) {
    return std::visit(overloaded{
                          [](const Dirac& d) { return d.tau; },
                          [](const Uniform& u) { return u.a + 0.5 * u.A; },
                          [](const Gamma& g) { return g.T; },
                          [](const Exponential& e) { return e.T; },
                      },
                      kernel);
}

bool rational_form(const DelayKernel& kernel, RationalForm& out) {
    if (const auto* g = std::get_if<Gamma>(&kernel)) {
        out = {g->n, g->T};
        return true;
    }
    if (const auto* e = std::get_if<Exponential>(&kernel)) {
        out = {1, e->T};
        return true;
    }
    if (const auto* d = std::get_if<Dirac>(&kernel); d && d->tau == 0.0) {
        out = {0, 0.0};
        return true;
    }
    return false;
}

std::string describe(const DelayKernel& kernel) {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const Dirac& d) { os << "dirac(tau=" << d.tau << ")"; },
                   [&](const Uniform& u) { os << "uniform(a=" << u.a << ", A=" << u.A << ")"; },
                   [&](const Gamma& g) { os << "gamma(n=" << g.n << ", T=" << g.T << ")"; },
                   [&](const Exponential& e) { os << "exponential(T=" << e.T << ")"; },
               },
               kernel);
    return os.str();
}

}  // namespace delaystab
