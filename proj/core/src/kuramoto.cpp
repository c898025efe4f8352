#include "delaystab/kuramoto.hpp"

#include "delaystab/csv.hpp"
#include "delaystab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

namespace delaystab {

void KuramotoConfig::validate() const {
    if (N < 2) throw InvalidInput("kuramoto: N must be >= 2");
    if (!(dt > 0.0) || !(horizon > 0.0) || dt > horizon) throw InvalidInput("kuramoto: need 0 < dt <= horizon");
    if (!std::isfinite(K) || !std::isfinite(C) || !std::isfinite(S) || !std::isfinite(d))
        throw InvalidInput("kuramoto: K, C, S, d must be finite");
    if (delay.kind == KuramotoDelay::Kind::constant && !(delay.tau >= 0.0))
        throw InvalidInput("kuramoto: constant delay must be >= 0");
    if (delay.kind == KuramotoDelay::Kind::exponential && !(delay.tau > 0.0))
        throw InvalidInput("kuramoto: exponential delay mean must be > 0");
    if (!(frequency_cutoff > 0.0)) throw InvalidInput("kuramoto: frequency_cutoff must be > 0");
    if (!(initial_coherence >= 0.0 && initial_coherence < 1.0))
        throw InvalidInput("kuramoto: initial_coherence must be in [0, 1)");
    if (snapshot_every < 0) throw InvalidInput("kuramoto: snapshot_every must be >= 0");
}

namespace {

std::size_t steps_for(double tau, double dt) {
    return static_cast<std::size_t>(std::max(1.0, std::round(tau / dt)));
}

}  // namespace

KuramotoResult simulate_kuramoto(const KuramotoConfig& cfg) {
    cfg.validate();
    const auto N = static_cast<std::size_t>(cfg.N);
    const double dt = cfg.dt;
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(cfg.horizon / dt)));
    KuramotoResult out;
    out.dt = dt;

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> theta(N), omega(N);
    const double rho = cfg.initial_coherence;
    for (auto& th : theta) {
        const double u = unit(rng);
        if (rho == 0.0) {
            th = 2.0 * std::numbers::pi * u + cfg.phase_offset;
        } else {
            th = 2.0 * std::atan((1.0 - rho) / (1.0 + rho) * std::tan(std::numbers::pi * (u - 0.5))) + cfg.phase_offset;
        }
    }
    for (auto& w : omega) {
        for (;;) {
            const double dev = std::tan(std::numbers::pi * (unit(rng) - 0.5));
            if (std::abs(dev) <= cfg.frequency_cutoff) {
                w = cfg.d + dev;
                break;
            }
            ++out.truncated_frequencies;
        }
    }

    const bool uniform_delay = cfg.delay.kind == KuramotoDelay::Kind::constant;
    std::vector<std::uint32_t> lag;
    std::size_t max_lag = 0;
    if (uniform_delay) {
        max_lag = steps_for(cfg.delay.tau, dt);
    } else {
        lag.resize(N * N);
        const double cap = cfg.delay.tau * std::log(1000.0);
        std::exponential_distribution<double> expo(1.0 / cfg.delay.tau);
        for (auto& m : lag) {
            double tau = expo(rng);
            while (tau > cap) {
                ++out.resampled_delays;
                tau = expo(rng);
            }
            const std::size_t s = steps_for(tau, dt);
            m = static_cast<std::uint32_t>(s);
            max_lag = std::max(max_lag, s);
        }
    }
    out.max_delay_steps = max_lag;

    // Ring buffer of e^{iθ_j} at step indices k − len + 1 .. k; index < 0
    // resolves to the frozen initial row.
    const std::size_t len = max_lag + 2;
    std::vector<cplx> ring(len * N), initial(N);
    std::vector<cplx> totals(len);
    cplx init_sum{0.0, 0.0};
    for (std::size_t j = 0; j < N; ++j) {
        initial[j] = std::polar(1.0, theta[j]);
        init_sum += initial[j];
    }
    std::copy(initial.begin(), initial.end(), ring.begin());
    totals[0] = init_sum;

    auto row_of = [&](long idx) -> const cplx* {
        if (idx < 0) return initial.data();
        return ring.data() + (static_cast<std::size_t>(idx) % len) * N;
    };
    auto total_of = [&](long idx) { return idx < 0 ? init_sum : totals[static_cast<std::size_t>(idx) % len]; };

    // D_i(s) = Σ_{j≠i} e^{iθ_j(s·dt − τ_ij)}
    auto delayed_sum = [&](long s, std::vector<cplx>& D) {
        if (uniform_delay) {
            const long idx = s - static_cast<long>(max_lag);
            const cplx* row = row_of(idx);
            const cplx tot = total_of(idx);
            for (std::size_t i = 0; i < N; ++i) D[i] = tot - row[i];
            return;
        }
        for (std::size_t i = 0; i < N; ++i) {
            const std::uint32_t* li = lag.data() + i * N;
            cplx acc{0.0, 0.0};
            for (std::size_t j = 0; j < N; ++j) {
                if (j == i) continue;
                acc += row_of(s - static_cast<long>(li[j]))[j];
            }
            D[i] = acc;
        }
    };

    const cplx gain{cfg.C, cfg.S};
    const double invN = 1.0 / static_cast<double>(N);
    auto rhs = [&](double t, const std::vector<double>& th, const std::vector<cplx>& D, std::vector<double>& dth) {
        cplx z{0.0, 0.0};
        for (std::size_t j = 0; j < N; ++j) z += std::polar(1.0, th[j]);
        z *= invN;
        const bool control = t >= cfg.control_on;
        for (std::size_t i = 0; i < N; ++i) {
            const cplx e = std::polar(1.0, -th[i]);
            double v = omega[i] + cfg.K * (z * e).imag();
            if (control) v += invN * (gain * e * D[i]).imag();
            dth[i] = v;
        }
    };

    auto record = [&](std::size_t k, const std::vector<cplx>& row) {
        cplx z{0.0, 0.0};
        for (const cplx& c : row) z += c;
        out.times.push_back(static_cast<double>(k) * dt);
        out.r.push_back(z * invN);
        if (cfg.snapshot_every > 0 && k % static_cast<std::size_t>(cfg.snapshot_every) == 0) {
            out.snapshot_times.push_back(static_cast<double>(k) * dt);
            out.snapshots.push_back(theta);
        }
    };
    record(0, initial);

    std::vector<cplx> D0(N), D1(N), Dm(N);
    std::vector<double> k1(N), k2(N), k3(N), k4(N), tmp(N);
    std::vector<cplx> fresh(N);
    delayed_sum(0, D0);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        delayed_sum(static_cast<long>(k) + 1, D1);
        for (std::size_t i = 0; i < N; ++i) Dm[i] = 0.5 * (D0[i] + D1[i]);
        rhs(t, theta, D0, k1);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = theta[i] + 0.5 * dt * k1[i];
        rhs(t + 0.5 * dt, tmp, Dm, k2);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = theta[i] + 0.5 * dt * k2[i];
        rhs(t + 0.5 * dt, tmp, Dm, k3);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = theta[i] + dt * k3[i];
        rhs(t + dt, tmp, D1, k4);
        for (std::size_t i = 0; i < N; ++i) theta[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        const std::size_t slot = (k + 1) % len;
        cplx sum{0.0, 0.0};
        for (std::size_t j = 0; j < N; ++j) {
            fresh[j] = std::polar(1.0, theta[j]);
            sum += fresh[j];
        }
        std::copy(fresh.begin(), fresh.end(), ring.begin() + static_cast<long>(slot * N));
        totals[slot] = sum;
        record(k + 1, fresh);
        std::swap(D0, D1);
    }
    out.final_phases = theta;
    return out;
}

double mean_abs_r(const std::vector<double>& times, const std::vector<cplx>& r, double t0, double t1) {
    double acc = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < times.size() && k < r.size(); ++k) {
        if (times[k] < t0 - 1e-12 || times[k] > t1 + 1e-12) continue;
        acc += std::abs(r[k]);
        ++n;
    }
    if (n == 0) throw InvalidInput("mean_abs_r: no samples in the window");
    return acc / static_cast<double>(n);
}

void write_kuramoto_csv(std::ostream& out, const KuramotoResult& result) {
    csv::header(out, {"t", "abs_r", "arg_r"});
    for (std::size_t k = 0; k < result.times.size(); ++k)
        csv::row(out, {result.times[k], std::abs(result.r[k]), std::arg(result.r[k])});
}

void write_phase_snapshots_csv(std::ostream& out, const KuramotoResult& result) {
    if (result.snapshots.empty()) return;
    out << "t";
    for (std::size_t i = 0; i < result.snapshots.front().size(); ++i) out << ",theta_" << i;
    out << '\n';
    for (std::size_t s = 0; s < result.snapshots.size(); ++s) {
        out << csv::number(result.snapshot_times[s]);
        for (double th : result.snapshots[s]) out << ',' << csv::number(th);
        out << '\n';
    }
}

}  // namespace delaystab
