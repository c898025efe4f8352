#include "delaystab/errors.hpp"
#include "delaystab/networks.hpp"
#include "delaystab/presets.hpp"
#include "delaystab/regions.hpp"
#include "delaystab/simulate.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace delaystab;

namespace {

struct Samples {
    std::vector<double> t;
    std::vector<double> y;
};

template <class Fn>
Samples sample(Fn f, double horizon, double dt) {
    Samples s;
    for (std::size_t k = 0; k * dt <= horizon + 1e-12; ++k) {
        s.t.push_back(static_cast<double>(k) * dt);
        s.y.push_back(f(s.t.back()));
    }
    return s;
}

/// ż = −z without delay.
Trajectory decay(const SimConfig& cfg) {
    const DdeRhs rhs = [](double, std::span<const cplx> x, std::span<const cplx>, std::span<cplx> dx) {
        dx[0] = -x[0];
    };
    return integrate_dde({cplx{1.0}}, 0.0, rhs, cfg, 1);
}

}  // namespace

TEST(Rate, PureExponential) {
    const Samples s = sample([](double t) { return std::exp(-2.0 * t); }, 10.0, 0.01);
    const RateEstimate e = estimate_rate(s.t, s.y, std::nullopt, SimConfig{});
    EXPECT_NEAR(e.rate, -2.0, 1e-3);
    EXPECT_GT(e.r_squared, 0.999);
    EXPECT_EQ(e.verdict, Verdict::converging);
}

TEST(Rate, OscillatingGrowth) {
    const Samples s = sample([](double t) { return std::exp(0.5 * t) * std::abs(std::cos(5.0 * t)); }, 50.0, 0.01);
    const RateEstimate e = estimate_rate(s.t, s.y, std::nullopt, SimConfig{});
    EXPECT_NEAR(e.rate, 0.5, 0.05);
    EXPECT_EQ(e.verdict, Verdict::diverging);
}

TEST(Rate, ConstantIsInconclusive) {
    const Samples s = sample([](double) { return 3.0; }, 10.0, 0.01);
    const RateEstimate e = estimate_rate(s.t, s.y, std::nullopt, SimConfig{});
    EXPECT_NEAR(e.rate, 0.0, 1e-12);
    EXPECT_EQ(e.verdict, Verdict::inconclusive);
}

TEST(Rate, BlowupAndShortInput) {
    const Samples s = sample([](double) { return 1.0; }, 10.0, 0.01);
    const RateEstimate e = estimate_rate(s.t, s.y, 3.0, SimConfig{});
    EXPECT_TRUE(std::isinf(e.rate));
    EXPECT_EQ(e.verdict, Verdict::diverging);
    const Samples few = sample([](double) { return 1.0; }, 1.0, 0.1);
    EXPECT_THROW((void)estimate_rate(few.t, few.y, std::nullopt, SimConfig{}), InvalidInput);
}

TEST(Integrator, UndelayedDecay) {
    SimConfig cfg;
    cfg.horizon = 10.0;
    const Trajectory tr = decay(cfg);
    EXPECT_NEAR(tr.norms.back(), std::exp(-10.0), 1e-12);
    EXPECT_NEAR(estimate_rate(tr, cfg).rate, -1.0, 1e-6);
}

TEST(Integrator, StepAdjustedToDivideDelay) {
    SimConfig cfg;
    cfg.dt = 0.03;
    cfg.horizon = 2.0;
    const Trajectory tr = simulate_scalar_discrete(0.0, 0.0, -1.0, 0.5, cfg);
    EXPECT_NEAR(0.5 / tr.dt, std::round(0.5 / tr.dt), 1e-9);
    EXPECT_LE(tr.dt, 0.03);
}

TEST(Integrator, MethodOfStepsIsFourthOrder) {
    // Error ratio under step halving approaches 2^4.
    const double tau = 0.5, horizon = 5.0;
    auto final_value = [&](double dt) {
        SimConfig cfg;
        cfg.dt = dt;
        cfg.horizon = horizon;
        cfg.history.value = 1.0;
        const Trajectory tr = simulate_scalar_discrete(-0.5, 0.7, cplx{-1.0, 0.4}, tau, cfg);
        return tr.state(tr.times.size() - 1)[0];
    };
    const cplx ref = final_value(tau / 640.0);
    const double e1 = std::abs(final_value(tau / 10.0) - ref);
    const double e2 = std::abs(final_value(tau / 20.0) - ref);
    const double ratio = e1 / e2;
    EXPECT_GE(ratio, 8.0);
    EXPECT_LE(ratio, 32.0);
}

TEST(Integrator, LinearChainMatchesDirectConvolution) {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> ua(-2.0, -0.5), uphi(0.0, 2 * std::numbers::pi), ufrac(0.1, 0.9),
        uT(0.2, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double a = ua(rng);
        // |L| < |a| keeps the system stable for every unit-mass kernel.
        const cplx L = std::polar(ufrac(rng) * -a, uphi(rng));
        const double T = uT(rng);
        const double dt = 0.002, horizon = 20.0;
        SimConfig cfg;
        cfg.dt = dt;
        cfg.horizon = horizon;
        cfg.history.value = 1.0;
        const Trajectory tr = simulate_scalar_gamma(a, L, Gamma{1, T}, cfg);
        const auto ref = oracle::exponential_convolution(a, L, T, 1.0, dt, horizon);
        ASSERT_EQ(tr.times.size(), ref.size());
        double worst = 0.0;
        for (std::size_t k = 0; k < ref.size(); ++k) worst = std::max(worst, std::abs(tr.state(k)[0] - ref[k]));
        EXPECT_LT(worst, 1e-4) << "a = " << a << " L = " << L << " T = " << T;
    }
}

TEST(Integrator, RateSignAgreesWithRootCount) {
    const CharFun F = presets::scalar_discrete(1.0, 0.0, 0.5);
    SimConfig cfg;
    cfg.horizon = 60.0;
    cfg.history.value = 1.0;
    int compared = 0;
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) {
            const cplx L{-4.0 + 6.0 * (i + 0.5) / 9.0, -3.0 + 6.0 * (j + 0.5) / 9.0};
            int nu = 0;
            try {
                nu = nu_contour(F, L);
            } catch (const OnCurve&) {
                continue;
            }
            const RateEstimate e = estimate_rate(simulate_scalar_discrete(1.0, 0.0, L, 0.5, cfg), cfg);
            if (e.verdict == Verdict::inconclusive) continue;
            EXPECT_EQ(e.verdict == Verdict::converging, nu == 0) << "L = " << L;
            ++compared;
        }
    }
    EXPECT_GT(compared, 70);
}

TEST(Integrator, GammaKernelStability) {
    SimConfig cfg;
    cfg.horizon = 60.0;
    EXPECT_EQ(estimate_rate(simulate_scalar_gamma(1.0, -3.0, Gamma{1, 0.5}, cfg), cfg).verdict,
              Verdict::converging);
    EXPECT_EQ(estimate_rate(simulate_scalar_gamma(1.0, 1.0, Gamma{1, 0.5}, cfg), cfg).verdict, Verdict::diverging);
}

TEST(Network, RingConsensusAroundBound) {
    const double Tc = carfollowing_Tc(1, 10, 1.0);
    SimConfig cfg;
    cfg.dt = 0.02;
    cfg.horizon = 300.0;
    cfg.history.kind = HistorySpec::Kind::random_uniform;
    cfg.history.seed = 1;
    cfg.rate_tol = 1e-3;
    const auto below = simulate_carfollowing(Ring{10, 1.0}, Gamma{1, 0.9 * Tc}, cfg);
    const auto above = simulate_carfollowing(Ring{10, 1.0}, Gamma{1, 1.1 * Tc}, cfg);
    EXPECT_EQ(below.sync.verdict, Verdict::converging);
    EXPECT_EQ(above.sync.verdict, Verdict::diverging);
    EXPECT_EQ(below.gaps.size(), below.gap_times.size());
}

TEST(Network, ConstantHistoryIsAlreadyConsensus) {
    SimConfig cfg;
    cfg.horizon = 10.0;
    const auto res = simulate_carfollowing(Ring{4, 1.0}, Gamma{2, 0.5}, cfg);
    EXPECT_TRUE(res.sync.already_consensus);
    EXPECT_EQ(res.sync.verdict, Verdict::inconclusive);
}

TEST(Network, DelayedPdStabilisation) {
    const double a = 1, b = 1, k1 = 1, k2 = 1.1, T = 0.05, R = 2.0;
    const int N = 60;
    const double ac = alpha_c(a, b, k1, k2, T, R, N);
    SimConfig cfg;
    cfg.dt = 0.05;
    cfg.horizon = 100.0;
    cfg.record_every = 20;
    cfg.history.kind = HistorySpec::Kind::random_uniform;
    cfg.history.seed = 4;
    const auto J = [&](double alpha) { return network_matrix(RandomNet{N, R, alpha, 9}); };
    EXPECT_TRUE(simulate_mas(a, b, k1, k2, T, J(0.5 * ac), cfg).stabilized);
    EXPECT_FALSE(simulate_mas(a, b, k1, k2, T, J(2.0 * ac), cfg).stabilized);
    EXPECT_FALSE(simulate_mas(a, b, k1, k2, T, CMatrix(N, N), cfg).stabilized);
}

TEST(Reduced, SynchronisedState) {
    SimConfig cfg;
    cfg.horizon = 40.0;
    for (const DelayKernel& k : {DelayKernel{Dirac{0.5}}, DelayKernel{Exponential{0.5}}}) {
        const Trajectory tr = simulate_oa(4.0, 0.0, 0.0, k, cfg);
        EXPECT_NEAR(tr.norms.back(), std::sqrt(0.5), 1e-6);
    }
}

TEST(Reduced, IncoherentBelowThreshold) {
    SimConfig cfg;
    cfg.horizon = 40.0;
    const Trajectory tr = simulate_oa(1.0, 0.0, 0.0, Dirac{0.0}, cfg);
    EXPECT_LT(tr.norms.back(), 1e-6);
}

TEST(Output, TrajectoryCsv) {
    SimConfig cfg;
    cfg.horizon = 1.0;
    cfg.dt = 0.5;
    std::ostringstream out;
    write_trajectory_csv(out, decay(cfg));
    const std::string s = out.str();
    EXPECT_EQ(s.substr(0, s.find('\n')), "t,re_0,im_0");
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 4);
}

TEST(Config, Validation) {
    SimConfig cfg;
    cfg.horizon = 0.0;
    EXPECT_THROW(cfg.validate(), InvalidInput);
    cfg = SimConfig{};
    cfg.dt = -1.0;
    EXPECT_THROW(cfg.validate(), InvalidInput);
    cfg = SimConfig{};
    cfg.record_every = 0;
    EXPECT_THROW(cfg.validate(), InvalidInput);
}
