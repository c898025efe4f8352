#include "delaystab/networks.hpp"

#include "delaystab/errors.hpp"
#include "delaystab/presets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace delaystab {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double golden_min(const std::function<double(double)>& f, double lo, double hi, double& fmin) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - g * (hi - lo);
    double d = lo + g * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = f(d);
        }
    }
    const double x = 0.5 * (lo + hi);
    fmin = f(x);
    return x;
}

}  // namespace

void validate(const NetworkSpec& net) {
    std::visit(overloaded{
                   [](const Ring& r) {
                       if (r.N < 2) throw InvalidInput("ring: N must be >= 2");
                       if (!(r.alpha > 0.0)) throw InvalidInput("ring: alpha must be > 0");
                   },
                   [](const Chain& c) {
                       if (c.N < 2) throw InvalidInput("chain: N must be >= 2");
                       if (!(c.alpha > 0.0)) throw InvalidInput("chain: alpha must be > 0");
                   },
                   [](const Laplacian& l) {
                       const std::size_t n = l.weights.size();
                       if (n == 0) throw InvalidInput("laplacian: empty weight matrix");
                       for (const auto& row : l.weights) {
                           if (row.size() != n) throw InvalidInput("laplacian: weights must be square");
                           for (double w : row)
                               if (!(w >= 0.0) || !std::isfinite(w))
                                   throw InvalidInput("laplacian: weights must be finite and >= 0");
                       }
                   },
                   [](const RandomNet& r) {
                       if (r.N < 1) throw InvalidInput("random: N must be >= 1");
                       if (!(r.R > 0.0)) throw InvalidInput("random: R must be > 0");
                       if (!(r.alpha >= 0.0)) throw InvalidInput("random: alpha must be >= 0");
                   },
               },
               net);
}

CMatrix network_matrix(const NetworkSpec& net) {
    validate(net);
    return std::visit(overloaded{
                          [](const Ring& r) {
                              const auto n = static_cast<std::size_t>(r.N);
                              CMatrix J(n, n);
                              for (std::size_t i = 0; i < n; ++i) {
                                  J(i, i) = -r.alpha;
                                  J(i, (i + 1) % n) = r.alpha;
                              }
                              return J;
                          },
                          [](const Chain& c) {
                              const auto n = static_cast<std::size_t>(c.N);
                              CMatrix J(n, n);
                              for (std::size_t i = 0; i + 1 < n; ++i) {
                                  J(i, i) = -c.alpha;
                                  J(i, i + 1) = c.alpha;
                              }
                              return J;
                          },
                          [](const Laplacian& l) {
                              const std::size_t n = l.weights.size();
                              CMatrix J(n, n);
                              for (std::size_t i = 0; i < n; ++i) {
                                  double s = 0.0;
                                  for (std::size_t j = 0; j < n; ++j) {
                                      if (j == i) continue;
                                      J(i, j) = l.weights[i][j];
                                      s += l.weights[i][j];
                                  }
                                  J(i, i) = -s;
                              }
                              return J;
                          },
                          [](const RandomNet& r) {
                              const auto n = static_cast<std::size_t>(r.N);
                              CMatrix J(n, n);
                              std::mt19937_64 rng(r.seed);
                              std::uniform_real_distribution<double> xi(-1.0, 1.0);
                              for (std::size_t i = 0; i < n; ++i)
                                  for (std::size_t j = 0; j < n; ++j) J(i, j) = r.alpha * xi(rng);
                              for (std::size_t i = 0; i < n; ++i) J(i, i) -= r.R;
                              return J;
                          },
                      },
                      net);
}

Spectrum spectrum(const NetworkSpec& net) {
    validate(net);
    Spectrum s;
    if (const auto* r = std::get_if<Ring>(&net)) {
        s.method = SpectrumMethod::closed_form;
        s.eigenvalues.push_back({0.0, 0.0});
        for (int l = 1; l < r->N; ++l) {
            const double phi = 2.0 * pi * l / r->N;
            s.eigenvalues.push_back(r->alpha * (std::polar(1.0, phi) - 1.0));
        }
        return s;
    }
    if (const auto* c = std::get_if<Chain>(&net)) {
        s.method = SpectrumMethod::closed_form;
        s.eigenvalues.push_back({0.0, 0.0});
        for (int l = 1; l < c->N; ++l) s.eigenvalues.push_back(-c->alpha);
        return s;
    }
    s.method = SpectrumMethod::qr_iteration;
    s.eigenvalues = eigenvalues(network_matrix(net));
    return s;
}

Circle circular_law_circle(int N, double R, double alpha) {
    if (N < 1) throw InvalidInput("circular_law_circle: N must be >= 1");
    return {cplx{-R, 0.0}, alpha * std::sqrt(N / 3.0)};
}

Spectrum circular_law_spectrum(int N, double R, double alpha) {
    Spectrum s;
    s.method = SpectrumMethod::circular_law_approx;
    s.circle = circular_law_circle(N, R, alpha);
    return s;
}

ConsensusResult msf_consensus_check(const Spectrum& spec, const MembershipOracle& member) {
    if (spec.method == SpectrumMethod::circular_law_approx)
        throw InvalidInput("msf_consensus_check: needs explicit eigenvalues");
    ConsensusResult out;
    std::size_t zero = spec.eigenvalues.size();
    double best = 1e-9;
    for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
        const double a = std::abs(spec.eigenvalues[k]);
        if (a <= best) {
            best = a;
            zero = k;
        }
    }
    out.zero_excluded = zero < spec.eigenvalues.size();
    for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
        if (k == zero) continue;
        const Membership m = member(spec.eigenvalues[k]);
        if (m.verdict == Membership::Verdict::on_curve) {
            std::ostringstream os;
            os << "msf_consensus_check: eigenvalue " << spec.eigenvalues[k]
               << " is on a crossing curve (marginal, undecidable at tolerance)";
            throw Undecidable(os.str());
        }
        if (m.verdict == Membership::Verdict::unstable) out.offending.push_back(spec.eigenvalues[k]);
    }
    out.consensus = out.offending.empty();
    return out;
}

double carfollowing_Tc_mode(int n, int N, double alpha, int l) {
    if (n < 1 || N < 2 || !(alpha > 0.0)) throw InvalidInput("carfollowing_Tc: need n >= 1, N >= 2, alpha > 0");
    l = ((l % N) + N) % N;
    if (l == 0) return std::numeric_limits<double>::infinity();
    const double phi = 2.0 * pi * std::min(l, N - l) / N;
    const double t = std::tan(phi / (2.0 * n));
    return n * t * std::pow(1.0 + t * t, 0.5 * n) / (2.0 * alpha * std::sin(0.5 * phi));
}

double carfollowing_Tc(int n, int N, double alpha) { return carfollowing_Tc_mode(n, N, alpha, 1); }

double chain_Tc(int n, double alpha) {
    if (n < 1 || !(alpha > 0.0)) throw InvalidInput("chain_Tc: need n >= 1, alpha > 0");
    if (n == 1) return std::numeric_limits<double>::infinity();
    const double t = std::tan(pi / (2.0 * n));
    return (n / alpha) * t * std::pow(1.0 + t * t, 0.5 * n);
}

cplx mas_scc(double a, double b, double k1, double k2, double T, double beta) {
    if (k1 == 0.0) throw InvalidInput("mas_scc: k1 must be nonzero");
    return cplx{-beta * beta - b, -a * beta} * cplx{1.0, beta * T} / cplx{k1, k2 * beta};
}

double mas_r(double a, double b, double k1, double k2, double T, double beta) {
    return std::abs(mas_scc(a, b, k1, k2, T, beta));
}

double mas_theta(double a, double b, double k1, double k2, double T, double beta) {
    if (k1 == 0.0) throw InvalidInput("mas_theta: k1 must be nonzero");
    const double num = b > 0.0 ? pi + std::atan(a * beta / (beta * beta + b)) : std::arg(cplx{-beta * beta - b, -a * beta});
    const double den = k1 > 0.0 ? std::atan(k2 * beta / k1) : std::arg(cplx{k1, k2 * beta});
    return num + std::atan(beta * T) - den;
}

double alpha_c(double a, double b, double k1, double k2, double T, double R, int N) {
    if (N < 1) throw InvalidInput("alpha_c: N must be >= 1");
    if (k2 != 0.0 && a + k1 / k2 > 0.0 && T >= mas_Tc2(a, k1, k2))
        throw InvalidInput("alpha_c: T must be below the critical delay 1/(a + k1/k2)");
    const CharFun F = presets::mas(a, b, k1, k2, T);
    const Membership m = membership(F, cplx{-R, 0.0});
    if (m.verdict != Membership::Verdict::stable) {
        if (m.verdict == Membership::Verdict::on_curve) return 0.0;
        throw InvalidInput("alpha_c: anchor unstable at alpha = 0 (-R is not in the stability region)");
    }
    const double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(k1), std::abs(k2), std::abs(T), std::abs(R)});
    const double W = 50.0 * scale;
    const int grid = 10000;
    auto f = [&](double beta) { return std::abs(mas_scc(a, b, k1, k2, T, beta) + R); };
    std::vector<double> xs(grid + 1), fs(grid + 1);
    for (int i = 0; i <= grid; ++i) {
        xs[static_cast<std::size_t>(i)] = -W + 2.0 * W * i / grid;
        fs[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
    }
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const bool left = i == 0 || fs[k] <= fs[k - 1];
        const bool right = i == grid || fs[k] <= fs[k + 1];
        if (!(left && right)) continue;
        const double lo = xs[i == 0 ? k : k - 1];
        const double hi = xs[i == grid ? k : k + 1];
        double fm = fs[k];
        if (hi > lo) golden_min(f, lo, hi, fm);
        best = std::min({best, fm, fs[k]});
    }
    return std::sqrt(3.0 / N) * best;
}

double tangency_search(const std::function<CharFun(double)>& family, cplx mu, double p_lo, double p_hi,
                       int scan_points) {
    if (!(p_hi > p_lo) || scan_points < 2) throw InvalidInput("tangency_search: invalid parameter range");
    auto nu_at = [&](double p, bool& on_curve) {
        const Membership m = membership(family(p), mu);
        on_curve = m.verdict == Membership::Verdict::on_curve;
        return m.nu;
    };
    double lo = p_lo, hi = p_lo;
    bool oc = false;
    int nu_lo = nu_at(p_lo, oc);
    bool found = oc;
    for (int i = 1; i <= scan_points && !found; ++i) {
        const double p = p_lo + (p_hi - p_lo) * i / scan_points;
        const int nu = nu_at(p, oc);
        if (oc || nu != nu_lo) {
            hi = p;
            found = true;
            if (oc) lo = hi;
        } else {
            lo = p;
        }
    }
    if (!found) throw NumericalFailure("tangency_search: no crossing in the parameter range");
    while (hi - lo > 1e-7 * std::max(1.0, std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        const int nu = nu_at(mid, oc);
        if (oc) {
            lo = hi = mid;
            break;
        }
        if (nu == nu_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double p = 0.5 * (lo + hi);

    // Initial frequency: minimise |F_p(iβ, μ)| on a grid.
    const CharFun F0 = family(p);
    const double Rb = radius_bound(F0, mu, 0.0);
    double beta = 0.0;
    double fbest = std::numeric_limits<double>::infinity();
    const int grid = 20000;
    for (int i = 0; i <= grid; ++i) {
        const double b = -Rb + 2.0 * Rb * i / grid;
        const double v = std::abs(F0.eval(I * b, mu)) / std::max(1.0, std::pow(std::abs(b), F0.q()));
        if (v < fbest) {
            fbest = v;
            beta = b;
        }
    }
    for (int it = 0; it < 60; ++it) {
        const CharFun Fp = family(p);
        const cplx g = Fp.eval(I * beta, mu);
        const cplx gb = I * Fp.d_lambda(I * beta, mu);
        const double h = 1e-6 * std::max(1.0, std::abs(p));
        const cplx gp = (family(p + h).eval(I * beta, mu) - family(p - h).eval(I * beta, mu)) / (2.0 * h);
        const double det = gb.real() * gp.imag() - gb.imag() * gp.real();
        if (det == 0.0) break;
        const double db = ((-g).real() * gp.imag() - (-g).imag() * gp.real()) / det;
        const double dp = (gb.real() * (-g).imag() - gb.imag() * (-g).real()) / det;
        beta += db;
        p += dp;
        if (std::abs(dp) < 1e-15 * std::max(1.0, std::abs(p)) && std::abs(db) < 1e-15 * std::max(1.0, std::abs(beta)))
            break;
    }
    return p;
}

}  // namespace delaystab
