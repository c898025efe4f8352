#include "delaystab/scc.hpp"

#include "delaystab/csv.hpp"
#include "delaystab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

namespace delaystab {

namespace {

constexpr cplx I{0.0, 1.0};

struct Sample {
    std::vector<SccNode> nodes;
};

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double point_segment_distance(cplx p, cplx a, cplx b) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

std::vector<cplx> roots_in_L(const CharFun& F, double beta, double clip_radius) {
    const ComplexPoly p = F.l_polynomial(I * beta);
    if (p.is_zero()) {
        std::ostringstream os;
        os << "trace: identically singular frequency at beta = " << beta;
        throw NumericalFailure(os.str());
    }
    std::vector<cplx> c = p.coefficients();
    double maxc = 0.0;
    for (const auto& v : c) maxc = std::max(maxc, std::abs(v));
    while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * maxc) c.pop_back();
    if (c.size() <= 1) return {};

    std::vector<cplx> roots;
    for (cplx r : polynomial_roots(c)) {
        r = polish_root(F, beta, r, 2);
        if (std::isfinite(r.real()) && std::isfinite(r.imag()) && std::abs(r) <= clip_radius)
            roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

double unwrap_next(double previous, double angle) {
    return previous + std::remainder(angle - previous, 2.0 * std::numbers::pi);
}

void append_node(SccBranch& branch, SccNode node) {
    if (!branch.nodes.empty()) node.theta = unwrap_next(branch.nodes.back().theta, node.theta);
    branch.nodes.push_back(node);
}

struct Match {
    std::vector<int> root_of_branch;  // −1 when unmatched
    bool needs_refine = false;
};

Match match_roots(const std::vector<SccBranch>& active, const std::vector<SccNode>& next, double dbeta,
                  const TraceOptions& opt) {
    Match m;
    m.root_of_branch.assign(active.size(), -1);
    if (active.size() != next.size()) m.needs_refine = true;

    struct Pair {
        double d;
        std::size_t a;
        std::size_t r;
    };
    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < active.size(); ++a) {
        const SccNode& last = active[a].nodes.back();
        const cplx pred = last.L + last.tangent * dbeta;
        for (std::size_t r = 0; r < next.size(); ++r) pairs.push_back({std::abs(next[r].L - pred), a, r});
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.d < y.d; });
    std::vector<bool> root_used(next.size(), false);
    for (const auto& p : pairs) {
        if (m.root_of_branch[p.a] >= 0 || root_used[p.r]) continue;
        const SccNode& last = active[p.a].nodes.back();
        const double motion = std::abs(last.tangent) * std::abs(dbeta);
        const double allowed = 10.0 * motion + 1e-9 * (1.0 + std::abs(last.L));
        if (p.d > allowed) {
            m.needs_refine = true;
            continue;
        }
        m.root_of_branch[p.a] = static_cast<int>(p.r);
        root_used[p.r] = true;
        if (opt.max_segment > 0.0 && std::abs(next[p.r].L - last.L) > opt.max_segment &&
            point_segment_distance(opt.focus_center, last.L, next[p.r].L) <= opt.focus_radius) {
            m.needs_refine = true;
        }
    }
    for (std::size_t a = 0; a < active.size(); ++a)
        if (m.root_of_branch[a] < 0) m.needs_refine = true;
    return m;
}

// L and dL/dβ at β, either from F (Newton from the interpolant) or from the
// Hermite interpolant alone.
std::pair<cplx, cplx> curve_point(const SccBranch& b, double beta, const CharFun* F);

cplx hermite(const SccNode& a, const SccNode& b, double beta, cplx* derivative) {
    const double h = b.beta - a.beta;
    const double s = (beta - a.beta) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    if (derivative) {
        const double d00 = (6 * s2 - 6 * s) / h;
        const double d10 = 3 * s2 - 4 * s + 1;
        const double d01 = (-6 * s2 + 6 * s) / h;
        const double d11 = 3 * s2 - 2 * s;
        *derivative = d00 * a.L + d10 * a.tangent + d01 * b.L + d11 * b.tangent;
    }
    return h00 * a.L + h10 * h * a.tangent + h01 * b.L + h11 * h * b.tangent;
}

std::size_t interval_index(const SccBranch& branch, double beta) {
    const auto& n = branch.nodes;
    auto it = std::upper_bound(n.begin(), n.end(), beta,
                               [](double v, const SccNode& node) { return v < node.beta; });
    std::size_t i = static_cast<std::size_t>(std::distance(n.begin(), it));
    if (i == 0) return 0;
    return std::min(i - 1, n.size() - 2);
}

std::pair<cplx, cplx> curve_point(const SccBranch& b, double beta, const CharFun* F) {
    const std::size_t i = interval_index(b, beta);
    cplx d;
    const cplx guess = hermite(b.nodes[i], b.nodes[i + 1], beta, &d);
    if (!F) return {guess, d};
    const cplx L = polish_root(*F, beta, guess, 6);
    const SccNode node = make_node(*F, beta, L);
    return {L, node.tangent};
}

}  // namespace

cplx polish_root(const CharFun& F, double beta, cplx guess, int iterations) {
    const ComplexPoly p = F.l_polynomial(I * beta);
    const ComplexPoly dp = p.derivative();
    cplx L = guess;
    double res = std::abs(p(L));
    for (int it = 0; it < iterations && res > 0.0; ++it) {
        const cplx d = dp(L);
        if (d == cplx{0.0, 0.0}) break;
        const cplx cand = L - p(L) / d;
        const double cres = std::abs(p(cand));
        if (!(cres < res)) break;
        L = cand;
        res = cres;
    }
    return L;
}

SccNode make_node(const CharFun& F, double beta, cplx L) {
    SccNode node;
    node.beta = beta;
    node.L = L;
    const cplx lambda = I * beta;
    const cplx dl = F.d_lambda(lambda, L);
    const cplx dL = F.d_L(lambda, L);
    const double scale = std::max(1.0, std::pow(std::abs(beta), F.q() - 1));
    node.irregular = std::abs(dl) < 1e-12 * scale;
    if (std::abs(dL) < 1e-14 * (1.0 + std::abs(dl))) {
        node.tangent_undefined = true;
        node.tangent = 0.0;
    } else {
        node.tangent = -I * dl / dL;
    }
    node.r = std::abs(L);
    node.theta = std::arg(L);
    node.polar_undefined = node.r < 1e-12;
    node.theta_prime = node.polar_undefined || node.tangent_undefined ? 0.0 : (node.tangent / L).imag();
    return node;
}

std::vector<SccBranch> trace(const CharFun& F, double beta_lo, double beta_hi, double step,
                             const TraceOptions& options) {
    if (!(step > 0.0) || !std::isfinite(step)) throw InvalidInput("trace: step must be > 0");
    if (!(beta_hi >= beta_lo)) throw InvalidInput("trace: beta_hi must be >= beta_lo");

    std::map<double, Sample> cache;
    auto sample = [&](double b) -> const Sample& {
        auto it = cache.find(b);
        if (it != cache.end()) return it->second;
        Sample s;
        for (const cplx& r : roots_in_L(F, b, options.clip_radius)) s.nodes.push_back(make_node(F, b, r));
        return cache.emplace(b, std::move(s)).first->second;
    };

    const auto count = static_cast<long>(std::ceil((beta_hi - beta_lo) / step - 1e-9));
    std::vector<double> targets;
    targets.push_back(beta_hi);
    for (long m = count - 1; m >= 1; --m) targets.push_back(beta_lo + static_cast<double>(m) * step);
    double cur = beta_lo;
    const double min_dbeta = step / std::ldexp(1.0, options.max_depth);

    std::vector<SccBranch> done;
    std::vector<SccBranch> active;
    {
        const Sample& s = sample(cur);
        for (std::size_t r = 0; r < s.nodes.size(); ++r) {
            SccBranch b;
            b.root_index = static_cast<int>(r);
            append_node(b, s.nodes[r]);
            active.push_back(std::move(b));
        }
    }
    if (beta_hi == beta_lo) targets.clear();

    while (!targets.empty()) {
        const double b = targets.back();
        const Sample& next = sample(b);
        const double db = b - cur;
        const Match m = match_roots(active, next.nodes, db, options);
        if (m.needs_refine && db > 1.5 * min_dbeta) {
            targets.push_back(cur + 0.5 * db);
            continue;
        }
        std::vector<SccBranch> still;
        std::vector<bool> used(next.nodes.size(), false);
        for (std::size_t a = 0; a < active.size(); ++a) {
            const int r = m.root_of_branch[a];
            if (r >= 0) {
                append_node(active[a], next.nodes[static_cast<std::size_t>(r)]);
                used[static_cast<std::size_t>(r)] = true;
                still.push_back(std::move(active[a]));
            } else {
                done.push_back(std::move(active[a]));
            }
        }
        for (std::size_t r = 0; r < next.nodes.size(); ++r) {
            if (used[r]) continue;
            SccBranch nb;
            nb.root_index = static_cast<int>(r);
            append_node(nb, next.nodes[r]);
            still.push_back(std::move(nb));
        }
        active = std::move(still);
        cache.erase(cache.begin(), cache.find(b));
        cur = b;
        targets.pop_back();
    }
    for (auto& b : active) done.push_back(std::move(b));
    std::erase_if(done, [](const SccBranch& b) { return b.nodes.size() < 2; });
    return done;
}

TracedCurves trace_window(const CharFun& F, const Window& window, double step, TraceOptions options) {
    if (!window.valid()) throw InvalidInput("trace_window: invalid window");
    TracedCurves out;
    out.window = window;
    out.beta_bound = radius_bound(F, window.center(), window.half_diagonal());
    if (step <= 0.0) step = out.beta_bound / 2000.0;
    if (options.max_segment <= 0.0) options.max_segment = 0.02 * window.diagonal();
    if (!std::isfinite(options.focus_radius)) {
        options.focus_center = window.center();
        options.focus_radius = 1.05 * window.half_diagonal();
    }
    out.branches = trace(F, -out.beta_bound, out.beta_bound, step, options);
    return out;
}

SccBranch geometric_branch(const std::function<cplx(double)>& L, const std::function<cplx(double)>& dL,
                           double beta_lo, double beta_hi, double step) {
    if (!(step > 0.0)) throw InvalidInput("geometric_branch: step must be > 0");
    SccBranch b;
    const auto count = static_cast<long>(std::ceil((beta_hi - beta_lo) / step - 1e-9));
    for (long m = 0; m <= count; ++m) {
        const double beta = m == count ? beta_hi : beta_lo + static_cast<double>(m) * step;
        SccNode node;
        node.beta = beta;
        node.L = L(beta);
        node.tangent = dL(beta);
        node.r = std::abs(node.L);
        node.theta = std::arg(node.L);
        node.polar_undefined = node.r < 1e-12;
        node.theta_prime = node.polar_undefined ? 0.0 : (node.tangent / node.L).imag();
        append_node(b, node);
    }
    return b;
}

cplx branch_eval(const SccBranch& branch, double beta) {
    if (branch.nodes.empty()) throw InvalidInput("branch_eval: empty branch");
    if (branch.nodes.size() == 1) return branch.nodes.front().L;
    beta = std::clamp(beta, branch.nodes.front().beta, branch.nodes.back().beta);
    const std::size_t i = interval_index(branch, beta);
    return hermite(branch.nodes[i], branch.nodes[i + 1], beta, nullptr);
}

PolarProfile polar_profile(const SccBranch& branch) {
    PolarProfile p;
    const auto& n = branch.nodes;
    for (std::size_t m = 0; m < n.size(); ++m) {
        p.beta.push_back(n[m].beta);
        p.r.push_back(n[m].r);
        p.theta.push_back(n[m].theta);
        p.theta_prime.push_back(n[m].theta_prime);
        p.undefined.push_back(n[m].polar_undefined || n[m].tangent_undefined);
        double fd = 0.0;
        if (n.size() >= 2) {
            const std::size_t lo = m == 0 ? 0 : m - 1;
            const std::size_t hi = m + 1 == n.size() ? m : m + 1;
            fd = (n[hi].theta - n[lo].theta) / (n[hi].beta - n[lo].beta);
        }
        p.theta_prime_fd.push_back(fd);
    }
    return p;
}

CrossingReport crossing_at_point(const CharFun& F, double beta, cplx L) {
    const SccNode node = make_node(F, beta, L);
    CrossingReport c;
    c.beta_star = beta;
    c.L_star = L;
    c.tangent = node.tangent;
    c.normal = I * node.tangent;
    c.irregular = node.irregular;
    c.tangent_undefined = node.tangent_undefined;
    c.jump_normal = (node.irregular || node.tangent_undefined) ? 0 : -1;
    c.theta_prime = node.theta_prime;
    c.ray_degenerate = node.irregular || node.tangent_undefined || node.polar_undefined ||
                       std::abs(node.theta_prime) < 1e-12;
    c.jump_ray = c.ray_degenerate ? 0 : (node.theta_prime > 0.0 ? 1 : -1);
    return c;
}

CrossingReport crossing_at(const CharFun& F, const SccBranch& branch, double beta_star) {
    const cplx L = polish_root(F, beta_star, branch_eval(branch, beta_star), 12);
    return crossing_at_point(F, beta_star, L);
}

std::vector<SelfIntersection> self_intersections(const std::vector<SccBranch>& branches, double tol,
                                                 const CharFun* F) {
    struct Seg {
        std::size_t b;
        std::size_t i;
        double xmin;
        double xmax;
    };
    std::vector<Seg> segs;
    for (std::size_t b = 0; b < branches.size(); ++b) {
        const auto& n = branches[b].nodes;
        for (std::size_t i = 0; i + 1 < n.size(); ++i) {
            segs.push_back({b, i, std::min(n[i].L.real(), n[i + 1].L.real()) - tol,
                            std::max(n[i].L.real(), n[i + 1].L.real()) + tol});
        }
    }
    std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) { return x.xmin < y.xmin; });

    std::vector<SelfIntersection> out;
    auto record = [&](std::size_t ba, double beta_a, std::size_t bb, double beta_b, cplx L) {
        if (bb < ba || (bb == ba && beta_b < beta_a)) {
            std::swap(ba, bb);
            std::swap(beta_a, beta_b);
        }
        out.push_back({ba, bb, beta_a, beta_b, L});
    };
    auto refine = [&](std::size_t ba, double beta_a, std::size_t bb, double beta_b) {
        const SccBranch& A = branches[ba];
        const SccBranch& B = branches[bb];
        const double alo = A.nodes.front().beta, ahi = A.nodes.back().beta;
        const double blo = B.nodes.front().beta, bhi = B.nodes.back().beta;
        for (int it = 0; it < 30; ++it) {
            const auto [La, dA] = curve_point(A, beta_a, F);
            const auto [Lb, dB] = curve_point(B, beta_b, F);
            const cplx g = La - Lb;
            if (std::abs(g) < 1e-13 * (1.0 + std::abs(La))) break;
            const double det = cross(dA, -dB);
            if (det == 0.0) break;
            const double step_a = cross(-g, -dB) / det;
            const double step_b = cross(dA, -g) / det;
            beta_a = std::clamp(beta_a + step_a, alo, ahi);
            beta_b = std::clamp(beta_b + step_b, blo, bhi);
        }
        const auto [La, dA] = curve_point(A, beta_a, F);
        (void)dA;
        record(ba, beta_a, bb, beta_b, La);
    };

    for (std::size_t s = 0; s < segs.size(); ++s) {
        const Seg& S = segs[s];
        const auto& ns = branches[S.b].nodes;
        const cplx p = ns[S.i].L;
        const cplx r = ns[S.i + 1].L - p;
        for (std::size_t t = s + 1; t < segs.size() && segs[t].xmin <= S.xmax; ++t) {
            const Seg& T = segs[t];
            if (S.b == T.b && (S.i > T.i ? S.i - T.i : T.i - S.i) <= 1) continue;
            const auto& nt = branches[T.b].nodes;
            const cplx q = nt[T.i].L;
            const cplx u = nt[T.i + 1].L - q;

            // Coincident start nodes.
            if (std::abs(p - q) <= tol) {
                record(S.b, ns[S.i].beta, T.b, nt[T.i].beta, p);
                continue;
            }
            const double denom = cross(r, u);
            if (std::abs(denom) <= 1e-300) continue;
            const double ts = cross(q - p, u) / denom;
            const double tu = cross(q - p, r) / denom;
            if (ts <= 0.0 || ts >= 1.0 || tu <= 0.0 || tu >= 1.0) continue;
            const double beta_a = ns[S.i].beta + ts * (ns[S.i + 1].beta - ns[S.i].beta);
            const double beta_b = nt[T.i].beta + tu * (nt[T.i + 1].beta - nt[T.i].beta);
            refine(S.b, beta_a, T.b, beta_b);
        }
    }
    // Final nodes of each branch are never a segment start; check them too.
    for (std::size_t b = 0; b < branches.size(); ++b) {
        const auto& nb = branches[b].nodes;
        if (nb.empty()) continue;
        const SccNode& last = nb.back();
        for (std::size_t c = 0; c < branches.size(); ++c) {
            const auto& nc = branches[c].nodes;
            for (std::size_t j = 0; j < nc.size(); ++j) {
                if (c == b && j + 2 >= nb.size()) continue;
                if (c < b && j + 1 == nc.size()) continue;
                if (std::abs(nc[j].L - last.L) <= tol) record(b, last.beta, c, nc[j].beta, last.L);
            }
        }
    }

    std::sort(out.begin(), out.end(), [](const SelfIntersection& x, const SelfIntersection& y) {
        if (x.branch_a != y.branch_a) return x.branch_a < y.branch_a;
        if (x.branch_b != y.branch_b) return x.branch_b < y.branch_b;
        if (x.beta_a != y.beta_a) return x.beta_a < y.beta_a;
        return x.beta_b < y.beta_b;
    });
    std::vector<SelfIntersection> unique;
    for (const auto& x : out) {
        if (!unique.empty()) {
            const auto& y = unique.back();
            if (x.branch_a == y.branch_a && x.branch_b == y.branch_b &&
                std::abs(x.beta_a - y.beta_a) + std::abs(x.beta_b - y.beta_b) < 1e-7)
                continue;
        }
        unique.push_back(x);
    }
    return unique;
}

void write_branch_csv(std::ostream& out, const SccBranch& branch) {
    csv::header(out, {"beta", "re_L", "im_L", "r", "theta", "theta_prime"});
    for (const auto& n : branch.nodes)
        csv::row(out, {n.beta, n.L.real(), n.L.imag(), n.r, n.theta, n.theta_prime});
}

}  // namespace delaystab
