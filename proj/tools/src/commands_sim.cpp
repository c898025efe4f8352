#include "delaystab_cli/codecs.hpp"
#include "delaystab_cli/commands.hpp"

#include "delaystab/csv.hpp"
#include "delaystab/errors.hpp"
#include "delaystab/kuramoto.hpp"
#include "delaystab/networks.hpp"
#include "delaystab/parallel.hpp"
#include "delaystab/presets.hpp"
#include "delaystab/regions.hpp"
#include "delaystab/simulate.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace delaystab::cli {

namespace {

json rate_to_json(const RateEstimate& e) {
    return {{"rate", number_to_json(e.rate)},
            {"r_squared", e.r_squared},
            {"verdict", to_string(e.verdict)},
            {"already_consensus", e.already_consensus}};
}

json blowup_to_json(const Trajectory& t) { return t.blowup_time ? json(*t.blowup_time) : json(nullptr); }

SimConfig scalar_defaults() { return SimConfig{}; }

SimConfig network_defaults(double dt, double horizon) {
    SimConfig c;
    c.dt = dt;
    c.horizon = horizon;
    c.history.kind = HistorySpec::Kind::random_uniform;
    c.history.amplitude = 1.0;
    return c;
}

std::string trajectory_csv(const Trajectory& t) {
    std::ostringstream s;
    write_trajectory_csv(s, t);
    return s.str();
}

KuramotoDelay read_kuramoto_delay(ObjectReader r, KuramotoDelay fallback) {
    KuramotoDelay d = fallback;
    const std::string kind =
        r.string("kind", fallback.kind == KuramotoDelay::Kind::constant ? "constant" : "exponential");
    if (kind == "constant") {
        d.kind = KuramotoDelay::Kind::constant;
    } else if (kind == "exponential") {
        d.kind = KuramotoDelay::Kind::exponential;
    } else {
        r.fail("kind", "expected constant or exponential");
    }
    d.tau = r.number("tau", fallback.tau);
    r.finish();
    return d;
}

KuramotoConfig read_kuramoto(ObjectReader& r, KuramotoConfig c) {
    c.N = static_cast<int>(r.integer("N", c.N));
    c.K = r.number("K", c.K);
    c.C = r.number("C", c.C);
    c.S = r.number("S", c.S);
    c.d = r.number("d", c.d);
    c.delay = read_kuramoto_delay(r.optional_object("delay"), c.delay);
    c.dt = r.number("dt", c.dt);
    c.horizon = r.number("horizon", c.horizon);
    c.control_on = r.number("control_on", c.control_on);
    c.frequency_cutoff = r.number("frequency_cutoff", c.frequency_cutoff);
    c.phase_offset = r.number("phase_offset", c.phase_offset);
    c.initial_coherence = r.number("initial_coherence", c.initial_coherence);
    c.seed = r.seed("seed", c.seed);
    c.snapshot_every = static_cast<int>(r.integer("snapshot_every", c.snapshot_every));
    try {
        c.validate();
    } catch (const InvalidInput& e) {
        throw ConfigError(r.path() + ": " + e.what());
    }
    return c;
}

DelayKernel oa_kernel(const KuramotoDelay& d) {
    if (d.kind == KuramotoDelay::Kind::exponential) return Exponential{d.tau};
    return Dirac{d.tau};
}

std::string kuramoto_csv(const KuramotoResult& k) {
    std::ostringstream s;
    write_kuramoto_csv(s, k);
    return s.str();
}

std::string oa_csv(const Trajectory& t) {
    std::ostringstream s;
    csv::header(s, {"t", "abs_r", "arg_r"});
    for (std::size_t k = 0; k < t.times.size(); ++k) {
        const cplx r = t.states.empty() ? cplx{t.norms[k], 0.0} : t.state(k)[0];
        csv::row(s, {t.times[k], std::abs(r), std::arg(r)});
    }
    return s.str();
}

/// Cell centres of n equal cells on [lo, hi].
std::vector<double> centers(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (i + 0.5) * (hi - lo) / n;
    return v;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + i * (hi - lo) / (n - 1);
    return v;
}

int read_count(ObjectReader& r, const std::string& key, int fallback, int minimum) {
    const long long v = r.integer(key, fallback);
    if (v < minimum || v > 100000) r.fail(key, "must be between " + std::to_string(minimum) + " and 100000");
    return static_cast<int>(v);
}

std::pair<double, double> read_range(ObjectReader& r, const std::string& key, double lo, double hi) {
    const auto given = r.optional_numbers(key);
    if (!given) {
        r.echo(key, {lo, hi});
        return {lo, hi};
    }
    const auto& v = *given;
    if (v.size() != 2 || !(v[1] > v[0])) r.fail(key, "expected [lo, hi] with lo < hi");
    return {v[0], v[1]};
}

int membership_label(const CharFun& F, cplx L) {
    try {
        const Membership m = membership(F, L);
        return m.verdict == Membership::Verdict::on_curve ? -1 : m.nu;
    } catch (const NumericalFailure&) {
        return -2;
    }
}

json scalar_heat(const CharFun& F, const Window& w, int res, const SimConfig& sim, const RunContext& ctx,
                 const std::function<Trajectory(cplx)>& run, Artifacts& out) {
    const auto xs = centers(w.re_lo, w.re_hi, res), ys = centers(w.im_lo, w.im_hi, res);
    const std::size_t cells = static_cast<std::size_t>(res) * static_cast<std::size_t>(res);
    std::vector<RateEstimate> rates(cells);
    std::vector<int> nus(cells);
    parallel_for(cells, ctx.jobs, [&](std::size_t c) {
        const cplx L{xs[c % xs.size()], ys[c / xs.size()]};
        rates[c] = estimate_rate(run(L), sim);
        nus[c] = membership_label(F, L);
    });
    std::ostringstream s;
    csv::header(s, {"re_L", "im_L", "rate", "r_squared", "nu"});
    std::size_t agree = 0, decided = 0;
    for (std::size_t c = 0; c < cells; ++c) {
        csv::row(s, {xs[c % xs.size()], ys[c / xs.size()], rates[c].rate, rates[c].r_squared,
                     static_cast<double>(nus[c])});
        if (nus[c] >= 0 && rates[c].verdict != Verdict::inconclusive) {
            ++decided;
            if ((nus[c] == 0) == (rates[c].verdict == Verdict::converging)) ++agree;
        }
    }
    out.write("heat.csv", s.str());
    return {{"cells", cells}, {"decided_cells", decided}, {"sign_agreement", agree}};
}

json reproduce_scalar_discrete(ObjectReader& r, const RunContext& ctx, Artifacts& out) {
    const double a = r.number("a", 1.0), d = r.number("d", 2.5), tau = r.number("tau", 0.5);
    const Window w = r.has("window") ? read_window(r.object("window")) : Window{-3, 3, -3, 3};
    if (!r.has("window")) r.echo("window", window_to_json(w));
    const int res = read_count(r, "resolution", ctx.paper_scale ? 101 : 21, 2);
    SimConfig defaults = scalar_defaults();
    defaults.horizon = 50.0;
    const SimConfig sim = read_sim(r.optional_object("sim"), defaults);
    r.finish();
    const CharFun F = presets::scalar_discrete(a, d, tau);
    return scalar_heat(F, w, res, sim, ctx,
                       [&](cplx L) { return simulate_scalar_discrete(a, d, L, tau, sim); }, out);
}

json reproduce_scalar_gamma(ObjectReader& r, const RunContext& ctx, Artifacts& out) {
    const double a = r.number("a", 1.0), T = r.number("T", 0.5);
    const auto n = static_cast<int>(r.integer("n", 1));
    const Window w = r.has("window") ? read_window(r.object("window")) : Window{-6, 2, -4, 4};
    if (!r.has("window")) r.echo("window", window_to_json(w));
    const int res = read_count(r, "resolution", ctx.paper_scale ? 101 : 21, 2);
    SimConfig defaults = scalar_defaults();
    defaults.horizon = 50.0;
    const SimConfig sim = read_sim(r.optional_object("sim"), defaults);
    r.finish();
    const CharFun F = presets::scalar_gamma(a, n, T);
    const Gamma g{n, T};
    return scalar_heat(F, w, res, sim, ctx, [&](cplx L) { return simulate_scalar_gamma(a, L, g, sim); }, out);
}

json reproduce_carfollowing(ObjectReader& r, const RunContext& ctx, Artifacts& out) {
    const auto n = static_cast<int>(r.integer("n", 1));
    const auto N = static_cast<int>(r.integer("N", 10));
    const auto [alo, ahi] = read_range(r, "alpha", 0.0, 2.0);
    const auto [tlo, thi] = read_range(r, "T", 0.0, 2.0);
    const int res = read_count(r, "resolution", ctx.paper_scale ? 101 : 21, 2);
    SimConfig defaults = network_defaults(0.02, 200.0);
    defaults.store_states = false;
    defaults.history.seed = 1;
    const SimConfig sim = read_sim(r.optional_object("sim"), defaults);
    r.finish();
    const auto alphas = centers(alo, ahi, res), Ts = centers(tlo, thi, res);
    const std::size_t cells = alphas.size() * Ts.size();
    std::vector<RateEstimate> rates(cells);
    parallel_for(cells, ctx.jobs, [&](std::size_t c) {
        const double alpha = alphas[c % alphas.size()], T = Ts[c / alphas.size()];
        rates[c] = simulate_carfollowing(Ring{N, alpha}, Gamma{n, T}, sim).sync;
    });
    std::ostringstream s;
    csv::header(s, {"alpha", "T", "rate", "Tc", "consensus_predicted"});
    std::size_t agree = 0;
    for (std::size_t c = 0; c < cells; ++c) {
        const double alpha = alphas[c % alphas.size()], T = Ts[c / alphas.size()];
        const double Tc = carfollowing_Tc(n, N, alpha);
        const bool predicted = T < Tc;
        csv::row(s, {alpha, T, rates[c].rate, Tc, predicted ? 1.0 : 0.0});
        if ((rates[c].rate < 0.0) == predicted) ++agree;
    }
    out.write("heat.csv", s.str());
    return {{"cells", cells}, {"sign_agreement", agree}};
}

json reproduce_mas_random(ObjectReader& r, const RunContext& ctx, Artifacts& out) {
    const double a = r.number("a", 1.0), b = r.number("b", 1.0);
    const double k1 = r.number("k1", 1.0), k2 = r.number("k2", 1.1);
    const double T = r.number("T", 0.05);
    const auto N = static_cast<int>(r.integer("N", 100));
    std::vector<double> Rs = {1.0, 2.0, 3.0, 4.0};
    if (r.has("R")) {
        Rs = r.numbers("R");
        if (Rs.empty()) r.fail("R", "expected at least one value");
    } else {
        r.echo("R", Rs);
    }
    const auto [alo, ahi] = read_range(r, "alpha", 0.0, 0.6);
    const int na = read_count(r, "alpha_points", 13, 1);
    const int trials = read_count(r, "trials", ctx.paper_scale ? 1000 : 100, 1);
    SimConfig defaults = network_defaults(0.05, 100.0);
    defaults.store_states = false;
    defaults.record_every = 20;
    const SimConfig base = read_sim(r.optional_object("sim"), defaults);
    r.finish();

    const auto alphas = linspace(alo, ahi, na);
    const std::size_t points = Rs.size() * alphas.size();
    std::vector<char> ok(points * static_cast<std::size_t>(trials), 0);
    parallel_for(ok.size(), ctx.jobs, [&](std::size_t job) {
        const std::size_t p = job / static_cast<std::size_t>(trials);
        const auto seed = static_cast<std::uint64_t>(job % static_cast<std::size_t>(trials));
        const double R = Rs[p / alphas.size()], alpha = alphas[p % alphas.size()];
        SimConfig sim = base;
        sim.history.seed = seed + 1000003;
        const CMatrix J = network_matrix(RandomNet{N, R, alpha, seed});
        ok[job] = simulate_mas(a, b, k1, k2, T, J, sim).stabilized ? 1 : 0;
    });
    std::ostringstream s;
    csv::header(s, {"R", "alpha", "alpha_c", "frequency", "trials"});
    for (std::size_t p = 0; p < points; ++p) {
        const double R = Rs[p / alphas.size()], alpha = alphas[p % alphas.size()];
        double ac = std::numeric_limits<double>::quiet_NaN();
        try {
            ac = alpha_c(a, b, k1, k2, T, R, N);
        } catch (const InvalidInput&) {
        }
        std::size_t hits = 0;
        for (int t = 0; t < trials; ++t) hits += ok[p * static_cast<std::size_t>(trials) + static_cast<std::size_t>(t)];
        csv::row(s, {R, alpha, ac, static_cast<double>(hits) / trials, static_cast<double>(trials)});
    }
    out.write("heat.csv", s.str());
    return {{"points", points}, {"trials", trials}};
}

json reproduce_kuramoto(ObjectReader& r, const RunContext& ctx, Artifacts& out) {
    const std::string which = r.string("case", "a");
    KuramotoConfig c;
    c.N = ctx.paper_scale ? 1000 : 200;
    c.K = 4.0;
    if (which == "a") {
        c.d = 0.0;
        c.C = -16.0;
        c.S = 2.0;
        c.delay = {KuramotoDelay::Kind::exponential, 0.5};
    } else if (which == "b") {
        c.d = 2.5;
        c.C = -1.0;
        c.S = -3.0;
        c.delay = {KuramotoDelay::Kind::constant, 0.5};
    } else {
        r.fail("case", "expected \"a\" or \"b\"");
    }
    c = read_kuramoto(r, c);
    r.finish();

    const KuramotoResult micro = simulate_kuramoto(c);
    SimConfig sim;
    sim.dt = c.dt;
    sim.horizon = c.horizon;
    OaOptions oo;
    oo.control_on = c.control_on;
    oo.r0 = micro.r.front();
    const Trajectory macro = simulate_oa(c.K, c.d, cplx{c.C, c.S} / 2.0, oa_kernel(c.delay), sim, oo);
    out.write("kuramoto.csv", kuramoto_csv(micro));
    out.write("oa.csv", oa_csv(macro));
    if (!micro.snapshots.empty()) {
        std::ostringstream s;
        write_phase_snapshots_csv(s, micro);
        out.write("phases.csv", s.str());
    }
    json summary = {{"truncated_frequencies", micro.truncated_frequencies},
                    {"resampled_delays", micro.resampled_delays},
                    {"max_delay_steps", micro.max_delay_steps}};
    const double t_end = micro.times.back();
    if (c.control_on > 5.0) summary["mean_abs_r_before_control"] = mean_abs_r(micro.times, micro.r, c.control_on - 5.0, c.control_on);
    if (t_end - c.control_on >= 5.0) summary["mean_abs_r_final"] = mean_abs_r(micro.times, micro.r, t_end - 5.0, t_end);
    out.write_json("summary.json", summary);
    return summary;
}

}  // namespace

json run_simulate(const json& config, json& resolved, const RunContext&, Artifacts& out) {
    ObjectReader r(config, resolved, "config");
    const std::string model = r.string("model");
    json result;
    try {
        if (model == "scalar_discrete") {
            const double a = r.number("a"), d = r.number("d", 0.0), tau = r.number("tau");
            const cplx L = r.complex("L");
            const SimConfig sim = read_sim(r.optional_object("sim"), scalar_defaults());
            r.finish();
            const Trajectory t = simulate_scalar_discrete(a, d, L, tau, sim);
            out.write("trajectory.csv", trajectory_csv(t));
            result = rate_to_json(estimate_rate(t, sim));
            result["blowup_time"] = blowup_to_json(t);
            result["dt_used"] = t.dt;
        } else if (model == "scalar_gamma") {
            const double a = r.number("a"), T = r.number("T");
            const auto n = static_cast<int>(r.integer("n"));
            const cplx L = r.complex("L");
            const SimConfig sim = read_sim(r.optional_object("sim"), scalar_defaults());
            r.finish();
            const Trajectory t = simulate_scalar_gamma(a, L, Gamma{n, T}, sim);
            out.write("trajectory.csv", trajectory_csv(t));
            result = rate_to_json(estimate_rate(t, sim));
            result["blowup_time"] = blowup_to_json(t);
        } else if (model == "carfollowing") {
            const NetworkSpec net = read_network(r.object("network"));
            const auto n = static_cast<int>(r.integer("n"));
            const double T = r.number("T");
            const SimConfig sim = read_sim(r.optional_object("sim"), network_defaults(0.02, 200.0));
            r.finish();
            const CarFollowingResult cf = simulate_carfollowing(net, Gamma{n, T}, sim);
            out.write("trajectory.csv", trajectory_csv(cf.velocities));
            std::ostringstream gaps;
            csv::header(gaps, {"t", "gap"});
            for (std::size_t k = 0; k < cf.gaps.size(); ++k) csv::row(gaps, {cf.gap_times[k], cf.gaps[k]});
            out.write("gaps.csv", gaps.str());
            result = rate_to_json(cf.sync);
            result["blowup_time"] = blowup_to_json(cf.velocities);
        } else if (model == "mas") {
            const double a = r.number("a", 1.0), b = r.number("b", 1.0);
            const double k1 = r.number("k1", 1.0), k2 = r.number("k2", 1.1);
            const double T = r.number("T");
            const NetworkSpec net = read_network(r.object("network"));
            SimConfig defaults = network_defaults(0.05, 100.0);
            defaults.store_states = false;
            const SimConfig sim = read_sim(r.optional_object("sim"), defaults);
            r.finish();
            const MasResult m = simulate_mas(a, b, k1, k2, T, network_matrix(net), sim);
            out.write("trajectory.csv", trajectory_csv(m.trajectory));
            result = {{"stabilized", m.stabilized},
                      {"initial_norm", m.initial_norm},
                      {"tail_max_norm", number_to_json(m.tail_max_norm)},
                      {"blowup_time", blowup_to_json(m.trajectory)}};
        } else if (model == "oa") {
            const double K = r.number("K"), d = r.number("d", 0.0);
            const cplx L = r.complex("L");
            const DelayKernel k = read_kernel(r.object("kernel"));
            OaOptions oo;
            oo.control_on = r.number("control_on", 0.0);
            oo.r0 = r.complex("r0", oo.r0);
            SimConfig defaults;
            defaults.horizon = 40.0;
            const SimConfig sim = read_sim(r.optional_object("sim"), defaults);
            r.finish();
            const Trajectory t = simulate_oa(K, d, L, k, sim, oo);
            out.write("trajectory.csv", trajectory_csv(t));
            result = rate_to_json(estimate_rate(t, sim));
            result["final_abs_r"] = t.norms.back();
            result["blowup_time"] = blowup_to_json(t);
        } else if (model == "kuramoto") {
            const KuramotoConfig c = read_kuramoto(r, KuramotoConfig{});
            r.finish();
            const KuramotoResult k = simulate_kuramoto(c);
            out.write("kuramoto.csv", kuramoto_csv(k));
            if (!k.snapshots.empty()) {
                std::ostringstream s;
                write_phase_snapshots_csv(s, k);
                out.write("phases.csv", s.str());
            }
            result = {{"final_abs_r", std::abs(k.r.back())},
                      {"truncated_frequencies", k.truncated_frequencies},
                      {"resampled_delays", k.resampled_delays}};
        } else {
            r.fail("model", "unknown model '" + model +
                                "' (scalar_discrete, scalar_gamma, carfollowing, mas, oa, kuramoto)");
        }
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    out.write_json("rate.json", result);
    return result;
}

const std::vector<std::string>& reproducible_figures() {
    static const std::vector<std::string> ids = {"fig7-heat", "fig9-heat", "fig12-heat", "fig15-heat",
                                                 "fig16-series"};
    return ids;
}

json run_reproduce(const std::string& figure, const json& config, json& resolved, const RunContext& ctx,
                   Artifacts& out) {
    ObjectReader r(config, resolved, "config");
    try {
        if (figure == "fig7-heat") return reproduce_scalar_discrete(r, ctx, out);
        if (figure == "fig9-heat") return reproduce_scalar_gamma(r, ctx, out);
        if (figure == "fig12-heat") return reproduce_carfollowing(r, ctx, out);
        if (figure == "fig15-heat") return reproduce_mas_random(r, ctx, out);
        if (figure == "fig16-series") return reproduce_kuramoto(r, ctx, out);
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    std::string known;
    for (const auto& id : reproducible_figures()) known += (known.empty() ? "" : ", ") + id;
    throw ConfigError("unknown figure '" + figure + "' (" + known + ")");
}

}  // namespace delaystab::cli
