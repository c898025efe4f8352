#pragma once

// Delay distributions h(τ) and their Laplace transforms
//
//   ĥ(λ) = ∫₀^∞ e^{−λτ} h(τ) dτ
//
// Only the four families with closed-form transforms are supported:
//
//   Dirac{τ'}        ĥ = e^{−λτ'}
//   Uniform{a, A}    ĥ = (e^{−aλ} − e^{−(a+A)λ}) / (Aλ)
//   Gamma{n, T}      ĥ = (1 + λT/n)^{−n}        (T is the mean delay)
//   Exponential{T}   ĥ = Gamma{1, T}
//
// Every kernel has unit mass, so ĥ(0) = 1 and |ĥ(λ)| ≤ 1 on Re λ ≥ 0.

#include <complex>
#include <string>
#include <variant>

namespace delaystab {

using cplx = std::complex<double>;

struct Dirac {
    double tau = 0.0;
};

struct Uniform {
    double a = 0.0;  ///< start of the support
    double A = 1.0;  ///< width of the support
};

struct Gamma {
    int n = 1;
    double T = 1.0;
};

struct Exponential {
    double T = 1.0;
};

using DelayKernel = std::variant<Dirac, Uniform, Gamma, Exponential>;

/// Whether evaluation is allowed to leave the closed right half-plane.
/// Dirac and Uniform are entire; Gamma is meromorphic with a pole at −n/T.
enum class Domain { right_half_plane, continuation };

/// Throws InvalidInput if the kernel parameters are out of range.
void validate(const DelayKernel& kernel);

[[nodiscard]] cplx laplace(const DelayKernel& kernel, cplx lambda,
                           Domain domain = Domain::right_half_plane);

[[nodiscard]] cplx laplace_derivative(const DelayKernel& kernel, cplx lambda,
                                      Domain domain = Domain::right_half_plane);

/// Mean delay ∫ τ h(τ) dτ.
[[nodiscard]] double mean_delay(const DelayKernel& kernel);

/// Gamma-family view of the kernel when it has a rational transform
/// (Exponential maps to n = 1; Dirac{0} maps to n = 0, i.e. ĥ ≡ 1).
struct RationalForm {
    int n = 0;
    double T = 0.0;
};
[[nodiscard]] bool rational_form(const DelayKernel& kernel, RationalForm& out);

[[nodiscard]] std::string describe(const DelayKernel& kernel);

/// |λ|A below this uses the Taylor series of (1 − e^{−x})/x.
inline constexpr double uniform_series_switch = 1e-4;

}  // namespace delaystab
