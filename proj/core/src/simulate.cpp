#include "delaystab/simulate.hpp"

#include "delaystab/csv.hpp"
#include "delaystab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <string>

namespace delaystab {

void SimConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("sim: dt must be > 0");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidInput("sim: horizon must be > 0");
    if (dt > horizon) throw InvalidInput("sim: dt must not exceed the horizon");
    if (!(rate_window_fraction > 0.0 && rate_window_fraction < 1.0))
        throw InvalidInput("sim: rate_window_fraction must be in (0, 1)");
    if (!(rate_tol >= 0.0)) throw InvalidInput("sim: rate_tol must be >= 0");
    if (!(blowup > 0.0)) throw InvalidInput("sim: blowup threshold must be > 0");
    if (record_every < 1) throw InvalidInput("sim: record_every must be >= 1");
    if (history.kind == HistorySpec::Kind::random_uniform && !(history.amplitude > 0.0))
        throw InvalidInput("sim: history amplitude must be > 0");
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::converging: return "converging";
        case Verdict::diverging: return "diverging";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

RateEstimate estimate_rate(std::span<const double> times, std::span<const double> norms,
                           std::optional<double> blowup_time, const SimConfig& cfg) {
    RateEstimate est;
    if (blowup_time) {
        est.rate = std::numeric_limits<double>::infinity();
        est.verdict = Verdict::diverging;
        return est;
    }
    if (times.size() != norms.size() || times.empty()) throw InvalidInput("estimate_rate: empty trajectory");
    const double t_end = times.back();
    const double t_start = t_end - cfg.rate_window_fraction * (t_end - times.front());
    std::size_t first = 0;
    while (first < times.size() && times[first] < t_start - 1e-12) ++first;
    const std::size_t count = times.size() - first;
    if (count < 100) throw InvalidInput("estimate_rate: fewer than 100 samples in the fit window");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t k = first; k < times.size(); ++k) {
        if (!(norms[k] > 0.0)) continue;
        const double x = times[k], y = std::log(norms[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n == 0) {
        est.rate = -std::numeric_limits<double>::infinity();
        est.r_squared = 1.0;
        est.verdict = Verdict::converging;
        return est;
    }
    const double dn = static_cast<double>(n);
    const double mx = sx / dn, my = sy / dn;
    const double vxx = sxx / dn - mx * mx;
    const double slope = vxx > 0.0 ? (sxy / dn - mx * my) / vxx : 0.0;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t k = first; k < times.size(); ++k) {
        if (!(norms[k] > 0.0)) continue;
        const double y = std::log(norms[k]);
        const double fit = my + slope * (times[k] - mx);
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - my) * (y - my);
    }
    est.rate = slope;
    est.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
    if (slope < -cfg.rate_tol) {
        est.verdict = Verdict::converging;
    } else if (slope > cfg.rate_tol) {
        est.verdict = Verdict::diverging;
    } else {
        est.verdict = Verdict::inconclusive;
    }
    return est;
}

RateEstimate estimate_rate(const Trajectory& traj, const SimConfig& cfg) {
    return estimate_rate(traj.times, traj.norms, traj.blowup_time, cfg);
}

Trajectory integrate_dde(std::vector<cplx> x0, double tau, const DdeRhs& rhs, const SimConfig& cfg,
                         std::size_t observed) {
    cfg.validate();
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidInput("integrate_dde: tau must be >= 0");
    const std::size_t dim = x0.size();
    if (dim == 0 || observed == 0 || observed > dim) throw InvalidInput("integrate_dde: bad dimensions");

    double dt = cfg.dt;
    long m = 0;
    if (tau > 0.0) {
        m = static_cast<long>(std::ceil(tau / dt - 1e-9));
        dt = tau / static_cast<double>(m);
    }
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(cfg.horizon / dt)));

    Trajectory traj;
    traj.dim = dim;
    traj.dt = dt;
    const bool delayed_needed = tau > 0.0;
    std::vector<cplx> xs, fs;
    if (delayed_needed) {
        xs.resize((steps + 1) * dim);
        fs.resize((steps + 1) * dim);
    }
    std::vector<cplx> x = x0, k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim), xd(dim);

    auto delayed = [&](std::size_t k, double c) -> std::span<const cplx> {
        if (!delayed_needed) return {};
        const long j = static_cast<long>(k) - m;
        if (c == 0.0 || c == 1.0) {
            const long idx = j + static_cast<long>(c);
            if (idx <= 0) return x0;
            return {xs.data() + static_cast<std::size_t>(idx) * dim, dim};
        }
        if (j < 0) return x0;
        const auto a = static_cast<std::size_t>(j);
        for (std::size_t i = 0; i < dim; ++i) {
            xd[i] = 0.5 * (xs[a * dim + i] + xs[(a + 1) * dim + i]) +
                    dt * (fs[a * dim + i] - fs[(a + 1) * dim + i]) / 8.0;
        }
        return xd;
    };
    auto observed_norm = [&](const std::vector<cplx>& v) {
        double s = 0.0;
        for (std::size_t i = 0; i < observed; ++i) s += std::norm(v[i]);
        return std::sqrt(s);
    };
    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.norms.push_back(observed_norm(x));
        if (cfg.store_states) traj.states.insert(traj.states.end(), x.begin(), x.end());
    };

    record(0.0);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        if (delayed_needed) std::copy(x.begin(), x.end(), xs.begin() + static_cast<long>(k * dim));
        rhs(t, x, delayed(k, 0.0), k1);
        if (delayed_needed) std::copy(k1.begin(), k1.end(), fs.begin() + static_cast<long>(k * dim));
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
        rhs(t + 0.5 * dt, tmp, delayed(k, 0.5), k2);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
        rhs(t + 0.5 * dt, tmp, delayed(k, 0.5), k3);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = x[i] + dt * k3[i];
        rhs(t + dt, tmp, delayed(k, 1.0), k4);
        bool finite = true;
        for (std::size_t i = 0; i < dim; ++i) {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!std::isfinite(x[i].real()) || !std::isfinite(x[i].imag())) finite = false;
        }
        const double tn = static_cast<double>(k + 1) * dt;
        if (!finite || observed_norm(x) > cfg.blowup) {
            traj.blowup_time = tn;
            break;
        }
        if ((k + 1) % static_cast<std::size_t>(cfg.record_every) == 0 || k + 1 == steps) record(tn);
    }
    return traj;
}

namespace {

std::vector<cplx> initial_values(const HistorySpec& h, std::size_t count, bool complex_values) {
    std::vector<cplx> v(count, h.value);
    if (h.kind == HistorySpec::Kind::random_uniform) {
        std::mt19937_64 rng(h.seed);
        std::uniform_real_distribution<double> u(-h.amplitude, h.amplitude);
        for (auto& c : v) {
            const double re = u(rng);
            const double im = complex_values ? u(rng) : 0.0;
            c = {re, im};
        }
    }
    return v;
}

}  // namespace

Trajectory simulate_scalar_discrete(double a, double d, cplx L, double tau, const SimConfig& cfg) {
    if (!(tau > 0.0)) throw InvalidInput("simulate_scalar_discrete: tau must be > 0");
    const cplx q{a, d};
    auto rhs = [&](double, std::span<const cplx> x, std::span<const cplx> xd, std::span<cplx> dx) {
        dx[0] = q * x[0] + L * xd[0];
    };
    return integrate_dde(initial_values(cfg.history, 1, false), tau, rhs, cfg, 1);
}

Trajectory simulate_scalar_gamma(double a, cplx L, const Gamma& kernel, const SimConfig& cfg) {
    validate(DelayKernel{kernel});
    const int n = kernel.n;
    const double rate = n / kernel.T;
    std::vector<cplx> x0(static_cast<std::size_t>(n) + 1, initial_values(cfg.history, 1, false)[0]);
    auto rhs = [&](double, std::span<const cplx> x, std::span<const cplx>, std::span<cplx> dx) {
        dx[0] = a * x[0] + L * x[static_cast<std::size_t>(n)];
        dx[1] = rate * (x[0] - x[1]);
        for (std::size_t m = 2; m <= static_cast<std::size_t>(n); ++m) dx[m] = rate * (x[m - 1] - x[m]);
    };
    return integrate_dde(std::move(x0), 0.0, rhs, cfg, 1);
}

CarFollowingResult simulate_carfollowing(const NetworkSpec& net, const Gamma& kernel, const SimConfig& cfg) {
    if (!std::holds_alternative<Ring>(net) && !std::holds_alternative<Chain>(net))
        throw InvalidInput("simulate_carfollowing: network must be a ring or a chain");
    validate(DelayKernel{kernel});
    const CMatrix J = network_matrix(net);
    const std::size_t N = J.rows();
    const auto n = static_cast<std::size_t>(kernel.n);
    const double rate = kernel.n / kernel.T;

    const std::vector<cplx> agents = initial_values(cfg.history, N, false);
    std::vector<cplx> x0;
    for (std::size_t s = 0; s <= n; ++s) x0.insert(x0.end(), agents.begin(), agents.end());

    auto rhs = [&](double, std::span<const cplx> x, std::span<const cplx>, std::span<cplx> dx) {
        const std::size_t last = n * N;
        for (std::size_t i = 0; i < N; ++i) {
            cplx s{0.0, 0.0};
            for (std::size_t j = 0; j < N; ++j) s += J(i, j) * x[last + j];
            dx[i] = s;
        }
        for (std::size_t st = 1; st <= n; ++st)
            for (std::size_t i = 0; i < N; ++i) dx[st * N + i] = rate * (x[(st - 1) * N + i] - x[st * N + i]);
    };
    SimConfig inner = cfg;
    inner.store_states = true;
    CarFollowingResult out;
    Trajectory full = integrate_dde(std::move(x0), 0.0, rhs, inner, N);

    out.velocities.dim = N;
    out.velocities.dt = full.dt;
    out.velocities.times = full.times;
    out.velocities.norms = full.norms;
    out.velocities.blowup_time = full.blowup_time;
    for (std::size_t k = 0; k < full.times.size(); ++k) {
        const auto s = full.state(k);
        double lo = s[0].real(), hi = s[0].real();
        for (std::size_t i = 0; i < N; ++i) {
            lo = std::min(lo, s[i].real());
            hi = std::max(hi, s[i].real());
            if (cfg.store_states) out.velocities.states.push_back(s[i]);
        }
        out.gap_times.push_back(full.times[k]);
        out.gaps.push_back(hi - lo);
    }
    if (!out.gaps.empty() && out.gaps.front() == 0.0) {
        out.sync.already_consensus = true;
        out.sync.verdict = Verdict::inconclusive;
        out.sync.rate = 0.0;
        out.sync.r_squared = 1.0;
        return out;
    }
    out.sync = estimate_rate(out.gap_times, out.gaps, full.blowup_time, cfg);
    return out;
}

MasResult simulate_mas(double a, double b, double k1, double k2, double T, const CMatrix& J, const SimConfig& cfg) {
    cfg.validate();
    if (!(T >= 0.0)) throw InvalidInput("simulate_mas: T must be >= 0");
    if (J.rows() != J.cols() || J.rows() == 0) throw InvalidInput("simulate_mas: J must be square");
    const std::size_t N = J.rows();
    std::vector<double> Jr(N * N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            if (J(i, j).imag() != 0.0) throw InvalidInput("simulate_mas: J must be real");
            Jr[i * N + j] = J(i, j).real();
        }
    const bool filtered = T > 0.0;
    const std::size_t blocks = filtered ? 4 : 2;
    const std::size_t dim = blocks * N;

    std::vector<double> s(dim);
    {
        const std::vector<cplx> xv = initial_values(cfg.history, 2 * N, false);
        for (std::size_t i = 0; i < 2 * N; ++i) s[i] = xv[i].real();
        if (filtered) {
            for (std::size_t i = 0; i < N; ++i) {
                s[2 * N + i] = s[i];
                s[3 * N + i] = s[N + i];
            }
        }
    }
    std::vector<double> mix(N);
    auto rhs = [&](const std::vector<double>& y, std::vector<double>& dy) {
        const double* x = y.data();
        const double* v = y.data() + N;
        const double* p = filtered ? y.data() + 2 * N : x;
        const double* w = filtered ? y.data() + 3 * N : v;
        for (std::size_t j = 0; j < N; ++j) mix[j] = k1 * p[j] + k2 * w[j];
        for (std::size_t i = 0; i < N; ++i) {
            const double* row = Jr.data() + i * N;
            double u = 0.0;
            for (std::size_t j = 0; j < N; ++j) u += row[j] * mix[j];
            dy[i] = v[i];
            dy[N + i] = a * v[i] + b * x[i] + u;
        }
        if (filtered) {
            const double r = 1.0 / T;
            for (std::size_t i = 0; i < N; ++i) {
                dy[2 * N + i] = r * (x[i] - p[i]);
                dy[3 * N + i] = r * (v[i] - w[i]);
            }
        }
    };
    auto phys_norm = [&](const std::vector<double>& y) {
        double acc = 0.0;
        for (std::size_t i = 0; i < 2 * N; ++i) acc += y[i] * y[i];
        return std::sqrt(acc);
    };

    MasResult out;
    Trajectory& traj = out.trajectory;
    traj.dim = 2 * N;
    traj.dt = cfg.dt;
    out.initial_norm = phys_norm(s);
    const double dt = cfg.dt;
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(cfg.horizon / dt)));
    const double tail_start = 0.9 * static_cast<double>(steps) * dt;
    std::vector<double> k1v(dim), k2v(dim), k3v(dim), k4v(dim), tmp(dim);
    auto record = [&](double t, double nrm) {
        traj.times.push_back(t);
        traj.norms.push_back(nrm);
        if (cfg.store_states)
            for (std::size_t i = 0; i < 2 * N; ++i) traj.states.emplace_back(s[i], 0.0);
    };
    record(0.0, out.initial_norm);
    double tail = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        rhs(s, k1v);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = s[i] + 0.5 * dt * k1v[i];
        rhs(tmp, k2v);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = s[i] + 0.5 * dt * k2v[i];
        rhs(tmp, k3v);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = s[i] + dt * k3v[i];
        rhs(tmp, k4v);
        for (std::size_t i = 0; i < dim; ++i) s[i] += dt / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
        const double t = static_cast<double>(k + 1) * dt;
        const double nrm = phys_norm(s);
        if (!std::isfinite(nrm) || nrm > cfg.blowup) {
            traj.blowup_time = t;
            break;
        }
        if (t >= tail_start - 1e-12) tail = std::max(tail, nrm);
        if ((k + 1) % static_cast<std::size_t>(cfg.record_every) == 0 || k + 1 == steps) record(t, nrm);
    }
    out.tail_max_norm = traj.blowup_time ? std::numeric_limits<double>::infinity() : tail;
    out.stabilized = !traj.blowup_time && tail < 1e-3 * out.initial_norm;
    return out;
}

Trajectory simulate_oa(double K, double d, cplx L, const DelayKernel& kernel, const SimConfig& cfg,
                       const OaOptions& options) {
    validate(kernel);
    const cplx lin{K / 2.0 - 1.0, d};
    SimConfig inner = cfg;
    inner.blowup = std::min(cfg.blowup, 10.0);
    auto gain = [&](double t) { return t >= options.control_on ? L : cplx{0.0, 0.0}; };
    auto field = [&](double t, cplx r, cplx eta) {
        const cplx Lc = gain(t);
        return lin * r + Lc * eta - (K / 2.0) * std::norm(r) * r - std::conj(Lc) * r * r * std::conj(eta);
    };
    if (const auto* dk = std::get_if<Dirac>(&kernel)) {
        if (dk->tau == 0.0) {
            auto rhs = [&](double t, std::span<const cplx> x, std::span<const cplx>, std::span<cplx> dx) {
                dx[0] = field(t, x[0], x[0]);
            };
            return integrate_dde({options.r0}, 0.0, rhs, inner, 1);
        }
        auto rhs = [&](double t, std::span<const cplx> x, std::span<const cplx> xd, std::span<cplx> dx) {
            dx[0] = field(t, x[0], xd[0]);
        };
        return integrate_dde({options.r0}, dk->tau, rhs, inner, 1);
    }
    if (const auto* ek = std::get_if<Exponential>(&kernel)) {
        const double rate = 1.0 / ek->T;
        auto rhs = [&](double t, std::span<const cplx> x, std::span<const cplx>, std::span<cplx> dx) {
            dx[0] = field(t, x[0], x[1]);
            dx[1] = rate * (x[0] - x[1]);
        };
        Trajectory tr = integrate_dde({options.r0, options.r0}, 0.0, rhs, inner, 1);
        if (!tr.states.empty()) {
            std::vector<cplx> r;
            r.reserve(tr.times.size());
            for (std::size_t k = 0; k < tr.times.size(); ++k) r.push_back(tr.states[2 * k]);
            tr.states = std::move(r);
        }
        tr.dim = 1;
        return tr;
    }
    throw InvalidInput("simulate_oa: kernel must be dirac or exponential");
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    if (traj.states.empty()) {
        csv::header(out, {"t", "norm"});
        for (std::size_t k = 0; k < traj.times.size(); ++k) csv::row(out, {traj.times[k], traj.norms[k]});
        return;
    }
    out << "t";
    for (std::size_t i = 0; i < traj.dim; ++i) out << ",re_" << i << ",im_" << i;
    out << '\n';
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        out << csv::number(traj.times[k]);
        for (const cplx& v : traj.state(k)) out << ',' << csv::number(v.real()) << ',' << csv::number(v.imag());
        out << '\n';
    }
}

}  // namespace delaystab
