#pragma once

// Time-domain integration with classical RK4. Discrete delays use the
// method of steps with cubic Hermite history interpolation; Gamma and
// Exponential kernels are realised exactly by the linear chain trick.

#include "delaystab/kernels.hpp"
#include "delaystab/linalg.hpp"
#include "delaystab/networks.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace delaystab {

struct HistorySpec {
    enum class Kind { constant, random_uniform };
    Kind kind = Kind::constant;
    cplx value{0.1, 0.0};    ///< constant history
    double amplitude = 1.0;  ///< random_uniform: each component uniform on [−amplitude, amplitude]
    std::uint64_t seed = 0;
};

struct SimConfig {
    double dt = 0.01;
    double horizon = 50.0;
    HistorySpec history;
    double rate_window_fraction = 0.5;
    double rate_tol = 0.01;
    double blowup = 1e12;
    bool store_states = true;
    int record_every = 1;

    void validate() const;
};

struct Trajectory {
    std::size_t dim = 0;       ///< components per stored state
    std::vector<double> times;
    std::vector<double> norms;  ///< Euclidean norm of the observed components
    std::vector<cplx> states;   ///< times.size() × dim, empty unless stored
    std::optional<double> blowup_time;
    double dt = 0.0;  ///< step actually used

    [[nodiscard]] std::span<const cplx> state(std::size_t k) const { return {states.data() + k * dim, dim}; }
};

enum class Verdict { converging, diverging, inconclusive };

struct RateEstimate {
    double rate = 0.0;
    double r_squared = 0.0;
    Verdict verdict = Verdict::inconclusive;
    bool already_consensus = false;
};

[[nodiscard]] const char* to_string(Verdict v);

/// Least-squares slope of log‖state‖ over the trailing window. Blow-up
/// gives +∞ (diverging); an all-zero tail gives −∞ (converging). Needs at
/// least 100 samples in the window.
[[nodiscard]] RateEstimate estimate_rate(const Trajectory& traj, const SimConfig& cfg);
[[nodiscard]] RateEstimate estimate_rate(std::span<const double> times, std::span<const double> norms,
                                         std::optional<double> blowup_time, const SimConfig& cfg);

/// Right-hand side f(t, x, x(t − τ)) → dx.
using DdeRhs = std::function<void(double t, std::span<const cplx> x, std::span<const cplx> delayed,
                                  std::span<cplx> dx)>;

/// Generic RK4 for x′ = f(t, x, x(t−τ)) with constant history x0 on t ≤ 0.
/// tau = 0 means no delayed argument. dt is reduced so that it divides τ.
/// Norms are taken over the first `observed` components.
[[nodiscard]] Trajectory integrate_dde(std::vector<cplx> x0, double tau, const DdeRhs& rhs, const SimConfig& cfg,
                                       std::size_t observed);

/// ż = (a + id)z + L z(t − τ).
[[nodiscard]] Trajectory simulate_scalar_discrete(double a, double d, cplx L, double tau, const SimConfig& cfg);

/// ż = az + L ∫z(t−τ)h(τ)dτ with a Gamma kernel, by n chain stages.
[[nodiscard]] Trajectory simulate_scalar_gamma(double a, cplx L, const Gamma& kernel, const SimConfig& cfg);

struct CarFollowingResult {
    Trajectory velocities;  ///< observed part: the N velocities
    std::vector<double> gap_times;
    std::vector<double> gaps;  ///< max_i x_i − min_i x_i
    RateEstimate sync;
};

/// ẋ_i = α ∫h(τ)[x_{i+1}(t−τ) − x_i(t−τ)]dτ for a Ring or Chain network.
/// History: per-agent constants uniform on [−amplitude, amplitude] unless
/// the config asks for a constant.
[[nodiscard]] CarFollowingResult simulate_carfollowing(const NetworkSpec& net, const Gamma& kernel,
                                                       const SimConfig& cfg);

struct MasResult {
    bool stabilized = false;
    double initial_norm = 0.0;
    double tail_max_norm = 0.0;
    Trajectory trajectory;
};

/// ẋ_i = v_i, v̇_i = a v_i + b x_i + u_i with
/// u = k1 J ∫h x(t−τ) + k2 J ∫h v(t−τ), h Exponential{T} (T = 0: undelayed).
/// Stabilized when the largest state norm over the final 10% of the horizon
/// is below 1e−3 times the initial norm. J must be real.
[[nodiscard]] MasResult simulate_mas(double a, double b, double k1, double k2, double T, const CMatrix& J,
                                     const SimConfig& cfg);

struct OaOptions {
    double control_on = 0.0;  ///< L is applied for t ≥ control_on
    cplx r0{0.3, 0.0};
};

/// Reduced order-parameter equation
/// ṙ = (K/2 − 1 + id)r + Lη − (K/2)|r|²r − conj(L) r² conj(η), η = ∫r(t−τ)h(τ)dτ,
/// for Dirac and Exponential kernels. The stored state is r (dim 1).
[[nodiscard]] Trajectory simulate_oa(double K, double d, cplx L, const DelayKernel& kernel, const SimConfig& cfg,
                                     const OaOptions& options = {});

/// CSV: t, then re_i, im_i per stored component.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace delaystab
