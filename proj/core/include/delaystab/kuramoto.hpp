#pragma once

// Microscopic Kuramoto ensemble with delayed mean-field control
//
//   θ̇_i = ω_i + K Im[r e^{−iθ_i}] + u_i
//   u_i = (1/N) Im[(C + iS) e^{−iθ_i} Σ_{j≠i} e^{iθ_j(t − τ_ij)}]
//
// with r = (1/N) Σ e^{iθ_j} and ω_i Cauchy(d, 1). Pairwise delays are
// quantized to whole steps (at least one). Phases are frozen at θ_i(0) for
// delayed lookups before t = 0.

#include "delaystab/kernels.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace delaystab {

struct KuramotoDelay {
    enum class Kind { constant, exponential };
    Kind kind = Kind::constant;
    double tau = 0.5;  ///< constant delay, or the mean of the exponential law
};

struct KuramotoConfig {
    int N = 200;
    double K = 4.0;
    double C = 0.0;
    double S = 0.0;
    double d = 0.0;
    KuramotoDelay delay;
    double dt = 0.01;
    double horizon = 20.0;
    double control_on = 10.0;
    double frequency_cutoff = 50.0;  ///< |ω − d| beyond this is resampled
    double phase_offset = 0.0;       ///< added to every initial phase
    /// Initial phases are wrapped-Cauchy with this mean resultant length
    /// (0: uniform), which places the ensemble on the reduced manifold.
    double initial_coherence = 0.0;
    std::uint64_t seed = 0;
    int snapshot_every = 0;  ///< store all phases every k steps (0: never)

    void validate() const;
};

struct KuramotoResult {
    double dt = 0.0;
    std::vector<double> times;
    std::vector<cplx> r;
    std::vector<double> snapshot_times;
    std::vector<std::vector<double>> snapshots;
    std::vector<double> final_phases;
    std::size_t truncated_frequencies = 0;
    std::size_t resampled_delays = 0;
    std::size_t max_delay_steps = 0;
};

[[nodiscard]] KuramotoResult simulate_kuramoto(const KuramotoConfig& cfg);

/// Mean of |r(t)| over samples with t0 ≤ t ≤ t1.
[[nodiscard]] double mean_abs_r(const std::vector<double>& times, const std::vector<cplx>& r, double t0, double t1);

/// CSV: t, abs_r, arg_r.
void write_kuramoto_csv(std::ostream& out, const KuramotoResult& result);

/// CSV: t, then theta_i per oscillator, one row per snapshot.
void write_phase_snapshots_csv(std::ostream& out, const KuramotoResult& result);

}  // namespace delaystab
