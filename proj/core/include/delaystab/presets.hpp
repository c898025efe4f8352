#pragma once

// Characteristic functions of the worked systems.

#include "delaystab/charfun.hpp"

namespace delaystab::presets {

/// ż = q0 z + L ∫z(t−τ)h(τ)dτ, i.e. F = λ − q0 − L ĥ(λ).
[[nodiscard]] CharFun scalar(cplx q0, const DelayKernel& kernel);

/// F = λ − 1 − L e^{−λ/2}.
[[nodiscard]] CharFun example1();

/// F = λ − 0.1(1+i) − L(e^{−λ} − 1).
[[nodiscard]] CharFun example2();

/// ż = (a + id)z + L z(t−τ).
[[nodiscard]] CharFun scalar_discrete(double a, double d, double tau);

/// ż = a z + L ∫z(t−τ)h(τ)dτ with a Gamma{n, T} kernel.
[[nodiscard]] CharFun scalar_gamma(double a, int n, double T);

/// Transverse mode of the car-following network: F = λ − L ĥ(λ), Gamma{n, T}.
[[nodiscard]] CharFun carfollowing(int n, double T);

/// Kernel of the delayed-PD protocol: Exponential{T}, or no delay at T = 0.
[[nodiscard]] DelayKernel mas_kernel(double T);

/// Double integrator with delayed PD feedback, one network mode:
/// Q = [[0, 1], [b, a]], B = [[0, 0], [k1 L, k2 L]].
[[nodiscard]] CharFun mas(double a, double b, double k1, double k2, double T);

/// Linearised order-parameter equation: F = λ − (K/2 − 1 + id) − L ĥ(λ).
[[nodiscard]] CharFun kuramoto_linear(double K, double d, const DelayKernel& kernel);

}  // namespace delaystab::presets
