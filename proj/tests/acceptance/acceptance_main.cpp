// Acceptance suite: one PASS/FAIL line per criterion, exit code 1 if any
// criterion fails. Tolerances are pinned below.

#include "delaystab/errors.hpp"
#include "delaystab/kuramoto.hpp"
#include "delaystab/networks.hpp"
#include "delaystab/presets.hpp"
#include "delaystab/regions.hpp"
#include "delaystab/scc.hpp"
#include "delaystab/simulate.hpp"

#include "delaystab_cli/app.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace delaystab;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr int grid_resolution = 41;
constexpr double map_time_budget_s = 300.0;
constexpr double endpoint_tol = 1e-6;
constexpr double rotation_tol = 1e-8;
constexpr int rotation_samples = 50;
constexpr int probes_per_quadrant = 20;
constexpr double probe_clearance = 0.1;
constexpr double rate_threshold = 0.01;
constexpr double tangency_rel_tol = 1e-6;
constexpr double carfollowing_horizon = 200.0;
constexpr int heat_cells = 21;
constexpr double tc2_tol = 1e-9;
constexpr int structure_resolution = 161;
constexpr int mc_trials = 100;
constexpr double mc_high = 0.9;
constexpr double mc_low = 0.1;
constexpr int circle_seeds = 20;
constexpr double circle_inflation = 1.05;
constexpr double circle_fraction = 0.95;
constexpr double coherent_min = 0.6;
constexpr double incoherent_max = 0.15;
constexpr double reduced_sup_tol = 0.05;
constexpr double fd_rel_tol = 1e-6;
constexpr double halving_lo = 8.0;
constexpr double halving_hi = 32.0;

constexpr cplx I{0.0, 1.0};

struct Outcome {
    bool pass = true;
    std::string detail;

    void note(const std::string& s) {
        if (!detail.empty()) detail += "; ";
        detail += s;
    }
    void require(bool ok, const std::string& s) {
        if (!ok) pass = false;
        note(std::string(ok ? "" : "FAILED ") + s);
    }
};

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Central difference refined by one Richardson step.
template <class Fn>
cplx derivative(Fn f, double x, double h = 1e-3) {
    const auto d = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
    return (4.0 * d(h / 2) - d(h)) / 3.0;
}

double distance_to_polylines(const std::vector<std::vector<cplx>>& lines, cplx p) {
    double best = INFINITY;
    for (const auto& line : lines) {
        for (std::size_t k = 0; k + 1 < line.size(); ++k) {
            const cplx a = line[k], b = line[k + 1];
            const double len2 = std::norm(b - a);
            double s = len2 > 0.0 ? ((p - a) * std::conj(b - a)).real() / len2 : 0.0;
            s = std::clamp(s, 0.0, 1.0);
            best = std::min(best, std::abs(p - (a + s * (b - a))));
        }
    }
    return best;
}

// 1. Propagated labels equal contour labels on every non-sentinel cell.
Outcome oracle_equivalence() {
    struct Case {
        std::string name;
        CharFun F;
        Window w;
    };
    const std::vector<Case> cases{
        {"ex1", presets::example1(), {-4, 4, -4, 4}},
        {"ex2", presets::example2(), {-1, 3, -1, 7}},
        {"ex5(a*tau<1)", presets::scalar_discrete(1.0, 0.0, 0.5), {-4, 2, -3, 3}},
        {"ex5(a*tau>1)", presets::scalar_discrete(1.0, 0.0, 2.0), {-4, 2, -3, 3}},
        {"ex6(n=1,aT<1)", presets::scalar_gamma(1.0, 1, 0.5), {-6, 2, -4, 4}},
        {"ex6(n=1,aT>1)", presets::scalar_gamma(1.0, 1, 2.0), {-6, 2, -4, 4}},
        {"ex6(n=3,aT<1)", presets::scalar_gamma(1.0, 3, 0.5), {-6, 2, -4, 4}},
        {"ex6(n=3,aT>1)", presets::scalar_gamma(1.0, 3, 2.0), {-6, 2, -4, 4}},
    };
    Outcome out;
    for (const auto& c : cases) {
        const auto t0 = std::chrono::steady_clock::now();
        const TracedCurves curves = trace_window(c.F, c.w);
        NuMapOptions opt;
        opt.full_oracle = true;
        const NuMap map = nu_map(c.F, c.w, grid_resolution, grid_resolution, curves.branches, opt);
        const double secs = seconds_since(t0);
        std::size_t compared = 0, mismatched = 0, unresolved = 0;
        for (std::size_t k = 0; k < map.labels.size(); ++k) {
            if (map.labels[k] == sentinel_label) continue;
            if (map.oracle_labels[k] == unresolved_label) {
                ++unresolved;
                continue;
            }
            ++compared;
            if (map.oracle_labels[k] != map.labels[k]) ++mismatched;
        }
        out.require(mismatched == 0 && unresolved == 0 && secs < map_time_budget_s,
                    fmt("%s %zu/%zu cells agree, %zu unresolved, %.1fs", c.name.c_str(), compared - mismatched,
                        compared, unresolved, secs));
    }
    return out;
}

// 2. Real endpoints of the scalar-delay region and the rotation property.
Outcome leaf_region() {
    Outcome out;
    const double a = 1.0, tau = 0.5, d = 2.5;
    const double beta_star = oracle::bisect([](double b) { return 0.5 * b - std::atan(b); }, 1.0, 3.0);
    const double left = -std::sqrt(1.0 + beta_star * beta_star);

    const CharFun F0 = presets::scalar_discrete(a, 0.0, tau);
    const Window w{-4, 2, -3, 3};
    const TracedCurves curves = trace_window(F0, w);
    const LineSlice s = line_slice(F0, curves.branches, cplx{w.re_lo}, cplx{w.re_hi});
    std::vector<std::pair<double, double>> stable;
    for (std::size_t k = 0; k < s.nu.size(); ++k) {
        if (s.nu[k] != 0) continue;
        const double lo = k == 0 ? w.re_lo : s.points[k - 1].real();
        const double hi = k == s.points.size() ? w.re_hi : s.points[k].real();
        stable.emplace_back(lo, hi);
    }
    if (stable.size() != 1) {
        out.require(false, fmt("expected one stable interval on the real axis, found %zu", stable.size()));
    } else {
        out.require(std::abs(stable[0].first - left) <= endpoint_tol,
                    fmt("left end %.12f vs %.12f", stable[0].first, left));
        out.require(std::abs(stable[0].second + a) <= endpoint_tol, fmt("right end %.12f vs -1", stable[0].second));
    }

    // Boundary of the d = 0 region is L(β), |β| ≤ β*; rotated by dτ it must
    // lie on the curve of the detuned system at β + d.
    const CharFun Fd = presets::scalar_discrete(a, d, tau);
    const cplx turn = std::exp(I * d * tau);
    double worst = 0.0;
    for (int k = 0; k < rotation_samples; ++k) {
        const double beta = -beta_star + 2.0 * beta_star * k / (rotation_samples - 1);
        const cplx L0 = polish_root(F0, beta, (I * beta - a) * std::exp(I * beta * tau));
        const cplx Lr = turn * L0;
        const cplx Ld = polish_root(Fd, beta + d, Lr + cplx{1e-3, -1e-3});
        worst = std::max(worst, std::abs(Ld - Lr));
    }
    out.require(worst <= rotation_tol, fmt("rotated boundary off by %.2e over %d samples", worst, rotation_samples));

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ux(w.re_lo, w.re_hi), uy(w.im_lo, w.im_hi);
    const auto lines = densify(curves.branches, 0.01);
    int agree = 0, probes = 0;
    while (probes < 40) {
        const cplx L{ux(rng), uy(rng)};
        if (distance_to_polylines(lines, L) < probe_clearance) continue;
        ++probes;
        const bool s0 = membership(F0, L).verdict == Membership::Verdict::stable;
        const bool sd = membership(Fd, turn * L).verdict == Membership::Verdict::stable;
        if (s0 == sd) ++agree;
    }
    out.require(agree == probes, fmt("rotated membership %d/%d", agree, probes));
    return out;
}

// 3. Gamma kernels: region iff aT < 1, its shape, and simulation agreement.
Outcome gamma_dichotomy() {
    Outcome out;
    const double a = 1.0;
    const Window w{-6, 2, -4, 4};
    struct Quadrant {
        int n;
        double T;
    };
    std::uint64_t seed = 10;
    for (const Quadrant q : {Quadrant{1, 0.5}, Quadrant{1, 2.0}, Quadrant{3, 0.5}, Quadrant{3, 2.0}}) {
        const std::string tag = fmt("n=%d,aT=%.1f", q.n, a * q.T);
        const CharFun F = presets::scalar_gamma(a, q.n, q.T);
        const TracedCurves curves = trace_window(F, w);
        const NuMap map = nu_map(F, w, 81, 81, curves.branches);
        const auto regions = stability_region(map, curves.branches);
        const bool expect_region = a * q.T < 1.0;
        out.require(regions.empty() != expect_region, fmt("%s regions=%zu", tag.c_str(), regions.size()));
        if (expect_region && !regions.empty()) {
            const bool clipped = std::any_of(regions.begin(), regions.end(), [](const auto& r) { return r.clipped; });
            if (q.n == 1) {
                out.require(clipped, tag + " region reaches the window edge");
            } else {
                out.require(!clipped && regions.size() == 1, tag + " region is a bounded loop");
                const int n = q.n;
                const double T = q.T;
                const double bs = oracle::bisect(
                    [&](double b) { return n * std::atan(b * T / n) - std::atan(b / a); }, 0.5, 50.0);
                const auto xs = self_intersections(curves.branches, 1e-9, &F);
                bool found = false;
                for (const auto& x : xs)
                    found |= std::abs(std::abs(x.beta_a) - bs) < 1e-6 && std::abs(std::abs(x.beta_b) - bs) < 1e-6;
                out.require(found, fmt("%s self-intersection at beta*=%.6f", tag.c_str(), bs));
            }
        }

        // Probes: half inside Ω when it exists, all clear of the curves.
        const auto lines = densify(curves.branches, 0.01);
        std::mt19937_64 rng(seed++);
        std::uniform_real_distribution<double> ux(w.re_lo, w.re_hi), uy(w.im_lo, w.im_hi);
        std::vector<std::size_t> inside;
        for (const auto& r : regions) inside.insert(inside.end(), r.cells.begin(), r.cells.end());
        SimConfig sim;
        sim.horizon = 100.0;
        sim.store_states = false;
        sim.rate_tol = rate_threshold;
        int agree = 0, probes = 0, stable_probes = 0, attempts = 0;
        while (probes < probes_per_quadrant && attempts < 100000) {
            ++attempts;
            cplx L{ux(rng), uy(rng)};
            if (!inside.empty() && probes % 2 == 0) {
                L = map.cell_center(inside[rng() % inside.size()]);
                L += cplx{(ux(rng) - w.re_lo) / w.width() - 0.5, (uy(rng) - w.im_lo) / w.height() - 0.5} *
                     map.cell_width();
            }
            if (!w.contains(L) || distance_to_polylines(lines, L) < probe_clearance) continue;
            ++probes;
            const Membership m = membership(F, L);
            const RateEstimate e = estimate_rate(simulate_scalar_gamma(a, L, Gamma{q.n, q.T}, sim), sim);
            const bool stable = m.verdict == Membership::Verdict::stable;
            stable_probes += stable;
            if ((stable && e.verdict == Verdict::converging) || (!stable && e.verdict == Verdict::diverging)) ++agree;
        }
        out.require(agree == probes && probes == probes_per_quadrant,
                    fmt("%s probes %d/%d agree (%d stable)", tag.c_str(), agree, probes, stable_probes));
    }
    return out;
}

// 4. Ring consensus bound: closed form vs tangency, simulation, heatmap.
Outcome carfollowing() {
    Outcome out;
    double worst_rel = 0.0;
    int sim_ok = 0, sim_total = 0;
    std::string sim_bad;
    SimConfig sim;
    sim.dt = 0.02;
    sim.horizon = carfollowing_horizon;
    sim.store_states = false;
    sim.rate_tol = rate_threshold;
    sim.history.kind = HistorySpec::Kind::random_uniform;
    sim.history.seed = 1;
    for (int n : {1, 2}) {
        for (int N : {5, 10}) {
            for (double alpha : {0.5, 1.0, 2.0}) {
                const double Tc = carfollowing_Tc(n, N, alpha);
                const cplx mu = alpha * (std::exp(2.0 * std::numbers::pi * I / double(N)) - 1.0);
                const double Tt =
                    tangency_search([n](double T) { return presets::carfollowing(n, T); }, mu, 0.01, 20.0, 400);
                worst_rel = std::max(worst_rel, std::abs(Tt - Tc) / Tc);
                const auto below = simulate_carfollowing(Ring{N, alpha}, Gamma{n, 0.9 * Tc}, sim).sync;
                const auto above = simulate_carfollowing(Ring{N, alpha}, Gamma{n, 1.1 * Tc}, sim).sync;
                const bool ok = below.verdict == Verdict::converging && above.verdict == Verdict::diverging;
                ++sim_total;
                if (ok) {
                    ++sim_ok;
                } else {
                    sim_bad += fmt(" (n=%d,N=%d,a=%.1f: %.4f/%.4f)", n, N, alpha, below.rate, above.rate);
                }
            }
        }
    }
    out.require(worst_rel <= tangency_rel_tol, fmt("tangency vs closed form max rel %.2e", worst_rel));
    out.require(sim_ok == sim_total, fmt("0.9Tc/1.1Tc sims %d/%d%s", sim_ok, sim_total, sim_bad.c_str()));

    // Heatmap over (α, T) ∈ (0, 2)² for n = 1, N = 10.
    const int n = 1, N = 10;
    const double h = 2.0 / heat_cells;
    std::vector<int> predicted(heat_cells * heat_cells), observed(heat_cells * heat_cells);
    for (int j = 0; j < heat_cells; ++j) {
        for (int i = 0; i < heat_cells; ++i) {
            const double alpha = (i + 0.5) * h, T = (j + 0.5) * h;
            predicted[j * heat_cells + i] = T < carfollowing_Tc(n, N, alpha);
            observed[j * heat_cells + i] = simulate_carfollowing(Ring{N, alpha}, Gamma{n, T}, sim).sync.rate < 0.0;
        }
    }
    int far_mismatch = 0, mismatch = 0;
    for (int j = 0; j < heat_cells; ++j) {
        for (int i = 0; i < heat_cells; ++i) {
            const int c = j * heat_cells + i;
            if (observed[c] == predicted[c]) continue;
            ++mismatch;
            bool near_curve = false;
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    const int ii = i + di, jj = j + dj;
                    if (ii < 0 || jj < 0 || ii >= heat_cells || jj >= heat_cells) continue;
                    near_curve |= predicted[jj * heat_cells + ii] != predicted[c];
                }
            if (!near_curve) ++far_mismatch;
        }
    }
    out.require(far_mismatch == 0,
                fmt("heatmap %dx%d: %d mismatches, %d beyond one cell", heat_cells, heat_cells, mismatch,
                    far_mismatch));
    return out;
}

// 5. Delayed PD thresholds and the region structure around them.
Outcome mas_thresholds() {
    Outcome out;
    using oracle::Rational;
    const Rational tc1 = mas_Tc1(Rational(1), Rational(1), Rational(1), Rational(11, 10));
    out.require(tc1 == Rational(1, 10), fmt("Tc1 = %lld/%lld", static_cast<long long>(tc1.num),
                                            static_cast<long long>(tc1.den)));
    const double tc2 = mas_Tc2(1.0, 1.0, 1.1);
    out.require(std::abs(tc2 - 1.1 / 2.1) <= tc2_tol, fmt("Tc2 = %.12f", tc2));

    const Window w{-6, 1, -3, 3};
    std::string counts;
    std::vector<std::size_t> components;
    std::vector<bool> has_zero;
    const std::vector<double> Ts{0.05, 0.09, 0.3, 0.45, 0.6};
    for (double T : Ts) {
        const CharFun F = presets::mas(1, 1, 1, 1.1, T);
        const TracedCurves curves = trace_window(F, w);
        const NuMap map = nu_map(F, w, structure_resolution, structure_resolution, curves.branches);
        components.push_back(map.component_nu.size());
        has_zero.push_back(std::count(map.labels.begin(), map.labels.end(), 0) > 0);
        counts += fmt(" T=%.2f:%zu%s", T, components.back(), has_zero.back() ? "" : "(no NU=0)");
    }
    out.require(components[0] == 2 && components[1] == 2 && components[2] == 3 && components[3] == 3,
                "components" + counts);
    out.require(has_zero[0] && has_zero[1] && has_zero[2] && has_zero[3] && !has_zero[4],
                "region empties beyond Tc2");
    return out;
}

// 6. Stabilisation frequency of random networks around the predicted α_c.
Outcome random_networks() {
    Outcome out;
    const double a = 1, b = 1, k1 = 1, k2 = 1.1;
    const int N = 100;
    SimConfig sim;
    sim.dt = 0.05;
    sim.horizon = 100.0;
    sim.record_every = 20;
    sim.store_states = false;
    sim.history.kind = HistorySpec::Kind::random_uniform;
    for (double T : {0.05, 0.15}) {
        for (double R : {1.0, 2.0, 3.0, 4.0}) {
            double ac = 0.0;
            try {
                ac = alpha_c(a, b, k1, k2, T, R, N);
            } catch (const InvalidInput& e) {
                out.require(false, fmt("T=%.2f R=%.0f: %s", T, R, e.what()));
                continue;
            }
            double freq[2];
            const double factors[2] = {0.8, 1.25};
            for (int f = 0; f < 2; ++f) {
                int ok = 0;
                for (int s = 0; s < mc_trials; ++s) {
                    SimConfig c = sim;
                    c.history.seed = static_cast<std::uint64_t>(s) + 1000003;
                    const CMatrix J = network_matrix(RandomNet{N, R, factors[f] * ac, static_cast<std::uint64_t>(s)});
                    ok += simulate_mas(a, b, k1, k2, T, J, c).stabilized;
                }
                freq[f] = static_cast<double>(ok) / mc_trials;
            }
            out.require(freq[0] >= mc_high && freq[1] <= mc_low,
                        fmt("T=%.2f R=%.0f alpha_c=%.4f freq %.2f/%.2f", T, R, ac, freq[0], freq[1]));
        }
    }
    return out;
}

// 7. Spectra of −R·I + αΞ fill the circular-law disk.
Outcome circular_law() {
    Outcome out;
    const int N = 100;
    const double R = 2.0, alpha = 0.3;
    const Circle c = circular_law_circle(N, R, alpha);
    std::size_t inside = 0, total = 0;
    double worst_seed = 1.0;
    for (int s = 0; s < circle_seeds; ++s) {
        const Spectrum spec = spectrum(RandomNet{N, R, alpha, static_cast<std::uint64_t>(s)});
        std::size_t in = 0;
        for (cplx mu : spec.eigenvalues) in += std::abs(mu - c.center) <= circle_inflation * c.radius;
        inside += in;
        total += spec.eigenvalues.size();
        worst_seed = std::min(worst_seed, static_cast<double>(in) / static_cast<double>(spec.eigenvalues.size()));
    }
    const double frac = static_cast<double>(inside) / static_cast<double>(total);
    out.require(frac >= circle_fraction,
                fmt("%.4f of %zu eigenvalues inside (worst seed %.2f)", frac, total, worst_seed));
    return out;
}

// 8. Delayed mean-field control desynchronises the ensemble.
Outcome kuramoto() {
    Outcome out;
    struct Set {
        const char* name;
        double d, C, S;
        KuramotoDelay delay;
    };
    const Set sets[] = {{"a", 0.0, -16.0, 2.0, {KuramotoDelay::Kind::exponential, 0.5}},
                        {"b", 2.5, -1.0, -3.0, {KuramotoDelay::Kind::constant, 0.5}}};
    for (const Set& s : sets) {
        KuramotoConfig cfg;
        cfg.N = 200;
        cfg.K = 4.0;
        cfg.d = s.d;
        cfg.C = s.C;
        cfg.S = s.S;
        cfg.delay = s.delay;
        cfg.horizon = 20.0;
        cfg.control_on = 10.0;
        const KuramotoResult on = simulate_kuramoto(cfg);
        cfg.control_on = 1e9;
        const KuramotoResult off = simulate_kuramoto(cfg);
        const double pre = mean_abs_r(off.times, off.r, 15.0, 20.0);
        const double post = mean_abs_r(on.times, on.r, 15.0, 20.0);
        out.require(pre >= coherent_min && post <= incoherent_max,
                    fmt("set %s: <|r|> %.3f without control, %.3f with control", s.name, pre, post));
    }

    // Reduced equation against N = 2000 oscillators started on the reduced
    // manifold with the same order parameter.
    const Set& s = sets[1];
    KuramotoConfig cfg;
    cfg.N = 2000;
    cfg.K = 4.0;
    cfg.d = s.d;
    cfg.C = s.C;
    cfg.S = s.S;
    cfg.delay = s.delay;
    cfg.initial_coherence = 0.3;
    const KuramotoResult micro = simulate_kuramoto(cfg);
    SimConfig sim;
    sim.dt = micro.dt;
    sim.horizon = cfg.horizon;
    OaOptions oo;
    oo.control_on = cfg.control_on;
    oo.r0 = cplx{cfg.initial_coherence, 0.0};
    const Trajectory macro = simulate_oa(cfg.K, cfg.d, cplx{cfg.C, cfg.S} / 2.0, Dirac{s.delay.tau}, sim, oo);
    double sup = 0.0;
    std::size_t k = 0;
    for (std::size_t m = 0; m < micro.times.size(); ++m) {
        while (k + 1 < macro.times.size() && macro.times[k + 1] <= micro.times[m] + 1e-9) ++k;
        if (std::abs(macro.times[k] - micro.times[m]) > 1e-9) continue;
        sup = std::max(sup, std::abs(std::abs(micro.r[m]) - macro.norms[k]));
    }
    out.require(sup <= reduced_sup_tol, fmt("set b, N=2000: sup | |r_micro| - |r_reduced| | = %.3f", sup));
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// 9. Derivatives, integrator order and reproducible CLI output.
Outcome hygiene() {
    Outcome out;
    constexpr Domain c = Domain::continuation;
    double worst = 0.0;
    auto check = [&](cplx got, cplx want) {
        worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
    };
    const DelayKernel kernels[] = {Dirac{0.7}, Uniform{0.2, 1.5}, Gamma{3, 0.8}, Exponential{0.4}};
    const cplx points[] = {cplx{0.3, 1.1}, cplx{2.0, -4.0}, cplx{0.0, 7.0}};
    for (const auto& k : kernels)
        for (cplx z : points) {
            check(laplace_derivative(k, z),
                  derivative([&](double x) { return laplace(k, z + x, c); }, 0.0));
        }
    const CharFun systems[] = {presets::example1(), presets::example2(), presets::mas(1, 1, 1, 1.1, 0.2),
                               presets::scalar_gamma(1.0, 3, 0.8)};
    for (const auto& F : systems) {
        for (cplx z : points) {
            const cplx L{-1.2, 0.4};
            check(F.d_lambda(z, L), derivative([&](double x) { return F.eval(z + x, L, c); }, 0.0));
            check(F.d_L(z, L), derivative([&](double x) { return F.eval(z, L + x, c); }, 0.0));
        }
        // Curve tangent and polar rate against differences of exact curve points.
        const auto branches = trace(F, 0.5, 3.0, 0.05);
        for (const auto& br : branches) {
            for (std::size_t i = 1; i + 1 < br.nodes.size(); i += 7) {
                const SccNode& n = br.nodes[i];
                if (n.irregular || n.tangent_undefined || n.polar_undefined) continue;
                auto curve = [&](double x) { return polish_root(F, n.beta + x, n.L, 20); };
                const cplx dL = derivative(curve, 0.0, 1e-3);
                check(n.tangent, dL);
                check(n.theta_prime, (dL / n.L).imag());
            }
        }
    }
    out.require(worst <= fd_rel_tol, fmt("finite-difference checks max rel %.2e", worst));

    // Step halving: e(h)/e(h/2) against a fine reference.
    std::string ratios;
    bool ratios_ok = true;
    auto halving = [&](const char* name, const std::function<cplx(double)>& final, double h) {
        const cplx ref = final(h / 64.0);
        const double r = std::abs(final(h) - ref) / std::abs(final(h / 2.0) - ref);
        ratios_ok &= r >= halving_lo && r <= halving_hi;
        ratios += fmt(" %s=%.1f", name, r);
    };
    auto last = [](const Trajectory& t) { return t.state(t.times.size() - 1)[0]; };
    halving("ode", [&](double dt) {
        SimConfig s;
        s.dt = dt;
        s.horizon = 5.0;
        const DdeRhs rhs = [](double t, std::span<const cplx> x, std::span<const cplx>, std::span<cplx> dx) {
            dx[0] = cplx{-0.3, 2.0} * x[0] + std::cos(t);
        };
        return last(integrate_dde({cplx{1.0}}, 0.0, rhs, s, 1));
    }, 0.1);
    halving("dde", [&](double dt) {
        SimConfig s;
        s.dt = dt;
        s.horizon = 5.0;
        s.history.value = 1.0;
        return last(simulate_scalar_discrete(-0.5, 0.7, cplx{-1.0, 0.4}, 0.5, s));
    }, 0.05);
    halving("gamma", [&](double dt) {
        SimConfig s;
        s.dt = dt;
        s.horizon = 5.0;
        s.history.value = 1.0;
        return last(simulate_scalar_gamma(-0.5, cplx{-1.0, 0.4}, Gamma{3, 0.8}, s));
    }, 0.1);
    halving("reduced", [&](double dt) {
        SimConfig s;
        s.dt = dt;
        s.horizon = 5.0;
        OaOptions o;
        o.r0 = cplx{0.3, 0.1};
        return last(simulate_oa(4.0, 1.0, cplx{-0.5, 1.5}, Dirac{0.5}, s, o));
    }, 0.05);
    out.require(ratios_ok, "step-halving ratios" + ratios);

    // Two CLI runs of the same config produce byte-identical artifacts.
    const fs::path root = fs::temp_directory_path() / "delaystab_acceptance_determinism";
    fs::remove_all(root);
    fs::create_directories(root);
    {
        std::ofstream(root / "kuramoto.json") << R"({"model": "kuramoto", "N": 100, "C": -1, "S": -3, "d": 2.5,
            "delay": {"kind": "exponential", "tau": 0.5}, "horizon": 5, "control_on": 2, "seed": 3})";
        std::ofstream(root / "ring.json") << R"({"model": "carfollowing", "network": {"kind": "ring", "N": 5},
            "n": 2, "T": 0.8, "sim": {"horizon": 20, "history": {"kind": "random_uniform", "seed": 7}}})";
    }
    bool same = true;
    std::size_t files = 0;
    for (const char* cfg : {"kuramoto.json", "ring.json"}) {
        for (const char* tag : {"1", "2"}) {
            const std::string conf = (root / cfg).string();
            const std::string dir = (root / (std::string(cfg) + tag)).string();
            const char* argv[] = {"delaystab", "simulate", "--config", conf.c_str(), "--out", dir.c_str()};
            std::ostringstream o, e;
            same &= cli::run_app(6, argv, o, e) == cli::exit_ok;
        }
        for (const auto& entry : fs::directory_iterator(root / (std::string(cfg) + "1"))) {
            const std::string name = entry.path().filename().string();
            if (name == "manifest.json") continue;
            same &= slurp(entry.path()) == slurp(root / (std::string(cfg) + "2") / name);
            ++files;
        }
    }
    fs::remove_all(root);
    out.require(same && files > 0, fmt("CLI reruns byte-identical over %zu files", files));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* title;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {1, "propagated NU equals contour NU", oracle_equivalence},
        {2, "scalar-delay region endpoints and rotation", leaf_region},
        {3, "gamma-kernel region dichotomy", gamma_dichotomy},
        {4, "ring consensus delay", carfollowing},
        {5, "delayed PD thresholds", mas_thresholds},
        {6, "random-network critical spread", random_networks},
        {7, "circular law", circular_law},
        {8, "mean-field control of oscillators", kuramoto},
        {9, "numerical hygiene", hygiene},
    };
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
    int failed = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note(std::string("exception: ") + e.what());
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << o.detail
                  << fmt(" [%.1fs]", seconds_since(t0)) << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
