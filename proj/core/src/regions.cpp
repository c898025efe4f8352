#include "delaystab/regions.hpp"

#include "delaystab/csv.hpp"
#include "delaystab/errors.hpp"
#include "delaystab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>
#include <sstream>

namespace delaystab {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double pi = std::numbers::pi;

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double point_segment_distance(cplx p, cplx a, cplx b) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

struct Piece {
    double t0, t1;
    cplx f0, f1;
    double df0, df1;  // |dF/dt| at the ends
};

struct PathEval {
    cplx f;
    double df;
};

// Winding contribution of one oriented path t ∈ [0, 1] ↦ λ(t).
template <class Eval>
double track_phase(Eval&& eval, int pieces, double length, bool on_axis, const ContourOptions& opt,
                   std::size_t& evaluations) {
    const double min_len = 1e-13 * std::max(1.0, length);
    std::vector<PathEval> ends(static_cast<std::size_t>(pieces) + 1);
    for (int k = 0; k <= pieces; ++k) ends[static_cast<std::size_t>(k)] = eval(static_cast<double>(k) / pieces);
    evaluations += ends.size();

    double total = 0.0;
    std::vector<Piece> stack;
    for (int k = pieces - 1; k >= 0; --k) {
        const auto& a = ends[static_cast<std::size_t>(k)];
        const auto& b = ends[static_cast<std::size_t>(k) + 1];
        stack.push_back({static_cast<double>(k) / pieces, static_cast<double>(k + 1) / pieces, a.f, b.f, a.df,
                         b.df});
    }
    while (!stack.empty()) {
        const Piece p = stack.back();
        stack.pop_back();
        const double dphase = std::arg(p.f1 / p.f0);
        const double h = p.t1 - p.t0;
        const bool phase_ok = std::abs(dphase) <= opt.max_phase_step;
        const bool lipschitz_ok = h * std::max(p.df0, p.df1) <= 0.5 * std::min(std::abs(p.f0), std::abs(p.f1));
        if (phase_ok && lipschitz_ok) {
            total += dphase;
            continue;
        }
        if (h * length < min_len) {
            if (on_axis) throw OnCurve("nu_contour: root on the imaginary axis (step underflow)");
            throw WindingUnresolved("nu_contour: phase refinement underflow on the arc");
        }
        if (evaluations >= opt.max_evaluations)
            throw WindingUnresolved("nu_contour: evaluation budget exhausted");
        const double tm = 0.5 * (p.t0 + p.t1);
        const PathEval m = eval(tm);
        ++evaluations;
        stack.push_back({tm, p.t1, m.f, p.f1, m.df, p.df1});
        stack.push_back({p.t0, tm, p.f0, m.f, p.df0, m.df});
    }
    return total;
}

struct BetaPoint {
    double beta;
    cplx L;
};

std::vector<std::vector<BetaPoint>> densify_with_beta(const std::vector<SccBranch>& branches, double max_length,
                                                      const Window* focus) {
    std::vector<std::vector<BetaPoint>> out;
    for (const auto& br : branches) {
        std::vector<BetaPoint> poly;
        const auto& n = br.nodes;
        if (n.empty()) continue;
        poly.push_back({n[0].beta, n[0].L});
        for (std::size_t i = 0; i + 1 < n.size(); ++i) {
            const SccNode& a = n[i];
            const SccNode& b = n[i + 1];
            const double h = b.beta - a.beta;
            const double chord = std::abs(b.L - a.L);
            const double tan_len = h * std::max(std::abs(a.tangent), std::abs(b.tangent));
            const bool hermite_ok = tan_len <= 3.0 * chord + 1e-12 * (1.0 + std::abs(a.L));
            bool near = true;
            if (focus) {
                near = point_segment_distance(focus->center(), a.L, b.L) <= 1.5 * focus->half_diagonal() + chord;
            }
            long k = 1;
            if (near && max_length > 0.0) {
                const double est = hermite_ok ? std::max(chord, tan_len) : chord;
                k = std::clamp(static_cast<long>(std::ceil(est / max_length)), 1L, 100000L);
            }
            for (long m = 1; m < k; ++m) {
                const double s = static_cast<double>(m) / static_cast<double>(k);
                const double beta = a.beta + s * h;
                cplx L;
                if (hermite_ok) {
                    const double s2 = s * s, s3 = s2 * s;
                    L = (2 * s3 - 3 * s2 + 1) * a.L + (s3 - 2 * s2 + s) * h * a.tangent + (-2 * s3 + 3 * s2) * b.L +
                        (s3 - s2) * h * b.tangent;
                } else {
                    L = a.L + s * (b.L - a.L);
                }
                poly.push_back({beta, L});
            }
            poly.push_back({b.beta, b.L});
        }
        out.push_back(std::move(poly));
    }
    return out;
}

std::vector<std::vector<cplx>> strip_beta(const std::vector<std::vector<BetaPoint>>& in) {
    std::vector<std::vector<cplx>> out;
    out.reserve(in.size());
    for (const auto& p : in) {
        std::vector<cplx> q;
        q.reserve(p.size());
        for (const auto& v : p) q.push_back(v.L);
        out.push_back(std::move(q));
    }
    return out;
}

}  // namespace

int nu_contour(const CharFun& F, cplx L, const ContourOptions& opt, ContourDiagnostics* diag) {
    if (!std::isfinite(L.real()) || !std::isfinite(L.imag())) throw InvalidInput("nu_contour: L must be finite");
    const double R = radius_bound(F, L, 0.0);
    const int q = F.q();
    std::size_t evals = 0;

    // Right semicircle from −iR to iR.
    auto arc = [&](double t) {
        const double phi = -0.5 * pi + pi * t;
        const cplx lambda = std::polar(R, phi);
        const cplx f = F.eval(lambda, L);
        const double df = std::abs(F.d_lambda(lambda, L)) * pi * R;
        return PathEval{f, df};
    };
    // Imaginary axis from iR to −iR.
    auto axis = [&](double t) {
        const double y = R * (1.0 - 2.0 * t);
        const cplx lambda{0.0, y};
        const cplx f = F.eval(lambda, L);
        if (std::abs(f) < opt.on_curve_tol * std::max(1.0, std::pow(std::abs(y), q))) {
            std::ostringstream os;
            os << "nu_contour: L = " << L << " lies on a crossing curve (|F(i" << y << ", L)| = " << std::abs(f)
               << ")";
            throw OnCurve(os.str());
        }
        const double df = std::abs(F.d_lambda(lambda, L)) * 2.0 * R;
        return PathEval{f, df};
    };

    double phase = track_phase(arc, opt.initial_pieces_arc, pi * R, false, opt, evals);
    phase += track_phase(axis, opt.initial_pieces_axis, 2.0 * R, true, opt, evals);
    const double raw = phase / (2.0 * pi);
    const double rounded = std::round(raw);
    if (diag) *diag = {raw, R, evals};
    if (std::abs(raw - rounded) > opt.rounding_guard) {
        std::ostringstream os;
        os << "nu_contour: winding " << raw << " is not close to an integer";
        throw WindingUnresolved(os.str());
    }
    if (rounded < 0) throw WindingUnresolved("nu_contour: negative winding");
    return static_cast<int>(rounded);
}

cplx NuMap::cell_center(int ix, int iy) const {
    return {window.re_lo + (ix + 0.5) * cell_width(), window.im_lo + (iy + 0.5) * cell_height()};
}

cplx NuMap::cell_center(std::size_t index) const {
    const auto ix = static_cast<int>(index % static_cast<std::size_t>(nx));
    const auto iy = static_cast<int>(index / static_cast<std::size_t>(nx));
    return cell_center(ix, iy);
}

std::vector<std::vector<cplx>> densify(const std::vector<SccBranch>& branches, double max_length) {
    return strip_beta(densify_with_beta(branches, max_length, nullptr));
}

int crossing_jump(const std::vector<std::vector<cplx>>& polylines, cplx a, cplx b, int* crossings) {
    const cplx d = b - a;
    const double xmin = std::min(a.real(), b.real()), xmax = std::max(a.real(), b.real());
    const double ymin = std::min(a.imag(), b.imag()), ymax = std::max(a.imag(), b.imag());
    int jump = 0;
    int count = 0;
    for (const auto& poly : polylines) {
        for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
            const cplx p = poly[i];
            const cplx p1 = poly[i + 1];
            if (std::max(p.real(), p1.real()) < xmin || std::min(p.real(), p1.real()) > xmax ||
                std::max(p.imag(), p1.imag()) < ymin || std::min(p.imag(), p1.imag()) > ymax)
                continue;
            const cplx r = p1 - p;
            const double denom = cross(d, r);
            if (denom == 0.0) continue;
            const double t = cross(p - a, r) / denom;
            const double u = cross(p - a, d) / denom;
            if (t <= 0.0 || t >= 1.0 || u < 0.0 || u >= 1.0) continue;
            jump += cross(r, d) > 0.0 ? -1 : 1;
            ++count;
        }
    }
    if (crossings) *crossings = count;
    return jump;
}

NuMap nu_map(const CharFun& F, const Window& window, int nx, int ny, const std::vector<SccBranch>& branches,
             const NuMapOptions& opt) {
    if (!window.valid()) throw InvalidInput("nu_map: invalid window");
    if (nx < 1 || ny < 1) throw InvalidInput("nu_map: resolution must be positive");
    NuMap m;
    m.window = window;
    m.nx = nx;
    m.ny = ny;
    const std::size_t cells = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    const double cw = m.cell_width();
    const double ch = m.cell_height();
    const double half_diag = 0.5 * std::hypot(cw, ch);

    const auto polylines_beta = densify_with_beta(branches, opt.densify_fraction * std::min(cw, ch), &window);
    const auto polylines = strip_beta(polylines_beta);

    // Sentinel cells: centre within half a cell diagonal of a curve.
    std::vector<char> sentinel(cells, 0);
    for (const auto& poly : polylines) {
        for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
            const cplx p0 = poly[i], p1 = poly[i + 1];
            const double x0 = std::min(p0.real(), p1.real()) - half_diag;
            const double x1 = std::max(p0.real(), p1.real()) + half_diag;
            const double y0 = std::min(p0.imag(), p1.imag()) - half_diag;
            const double y1 = std::max(p0.imag(), p1.imag()) + half_diag;
            if (x1 < window.re_lo || x0 > window.re_hi || y1 < window.im_lo || y0 > window.im_hi) continue;
            const int ix0 = std::max(0, static_cast<int>(std::floor((x0 - window.re_lo) / cw - 0.5)));
            const int ix1 = std::min(nx - 1, static_cast<int>(std::ceil((x1 - window.re_lo) / cw - 0.5)));
            const int iy0 = std::max(0, static_cast<int>(std::floor((y0 - window.im_lo) / ch - 0.5)));
            const int iy1 = std::min(ny - 1, static_cast<int>(std::ceil((y1 - window.im_lo) / ch - 0.5)));
            for (int iy = iy0; iy <= iy1; ++iy)
                for (int ix = ix0; ix <= ix1; ++ix)
                    if (point_segment_distance(m.cell_center(ix, iy), p0, p1) <= half_diag)
                        sentinel[static_cast<std::size_t>(iy * nx + ix)] = 1;
        }
    }

    // 4-connected components of the remaining cells.
    m.component.assign(cells, -1);
    int ncomp = 0;
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t c = 0; c < cells; ++c) {
        if (sentinel[c] || m.component[c] >= 0) continue;
        std::deque<std::size_t> queue{c};
        m.component[c] = ncomp;
        members.emplace_back();
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            members.back().push_back(v);
            const int ix = static_cast<int>(v % static_cast<std::size_t>(nx));
            const int iy = static_cast<int>(v / static_cast<std::size_t>(nx));
            const int nbr[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
            for (const auto& nb : nbr) {
                if (nb[0] < 0 || nb[0] >= nx || nb[1] < 0 || nb[1] >= ny) continue;
                const auto w = static_cast<std::size_t>(nb[1] * nx + nb[0]);
                if (sentinel[w] || m.component[w] >= 0) continue;
                m.component[w] = ncomp;
                queue.push_back(w);
            }
        }
        ++ncomp;
    }

    // Chamfer distance to the nearest sentinel cell.
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(cells, inf);
    for (std::size_t c = 0; c < cells; ++c)
        if (sentinel[c]) dist[c] = 0.0;
    const double dd = std::hypot(cw, ch);
    auto relax = [&](int ix, int iy, int jx, int jy, double w) {
        if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) return;
        double& here = dist[static_cast<std::size_t>(iy * nx + ix)];
        const double there = dist[static_cast<std::size_t>(jy * nx + jx)] + w;
        if (there < here) here = there;
    };
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            relax(ix, iy, ix - 1, iy, cw);
            relax(ix, iy, ix, iy - 1, ch);
            relax(ix, iy, ix - 1, iy - 1, dd);
            relax(ix, iy, ix + 1, iy - 1, dd);
        }
    for (int iy = ny - 1; iy >= 0; --iy)
        for (int ix = nx - 1; ix >= 0; --ix) {
            relax(ix, iy, ix + 1, iy, cw);
            relax(ix, iy, ix, iy + 1, ch);
            relax(ix, iy, ix + 1, iy + 1, dd);
            relax(ix, iy, ix - 1, iy + 1, dd);
        }
    const cplx wc = window.center();
    auto better = [&](std::size_t a, std::size_t b) {
        // Prefer larger distance; among unbounded distances prefer the centre.
        if (dist[a] != dist[b]) return dist[a] > dist[b];
        const double da = std::abs(m.cell_center(a) - wc), db = std::abs(m.cell_center(b) - wc);
        if (da != db) return da < db;
        return a < b;
    };
    std::vector<std::vector<std::size_t>> ranked(static_cast<std::size_t>(ncomp));
    for (int k = 0; k < ncomp; ++k) {
        auto& r = ranked[static_cast<std::size_t>(k)];
        r = members[static_cast<std::size_t>(k)];
        std::sort(r.begin(), r.end(), better);
    }

    m.component_nu.assign(static_cast<std::size_t>(ncomp), unresolved_label);
    m.component_representative.assign(static_cast<std::size_t>(ncomp), 0);
    m.component_method.assign(static_cast<std::size_t>(ncomp), "unresolved");
    for (int k = 0; k < ncomp; ++k)
        m.component_representative[static_cast<std::size_t>(k)] = ranked[static_cast<std::size_t>(k)].front();

    // Certifies a component with the contour oracle, moving away from the
    // representative if it lands on a curve.
    auto certify = [&](int k) -> bool {
        const auto& r = ranked[static_cast<std::size_t>(k)];
        const std::size_t tries = std::min<std::size_t>(r.size(), 8);
        for (std::size_t t = 0; t < tries; ++t) {
            const std::size_t idx = r[t * (r.size() / tries)];
            try {
                ++m.contour_calls;
                const int nu = nu_contour(F, m.cell_center(idx), opt.contour);
                m.component_nu[static_cast<std::size_t>(k)] = nu;
                m.component_representative[static_cast<std::size_t>(k)] = idx;
                m.component_method[static_cast<std::size_t>(k)] = "contour";
                return true;
            } catch (const NumericalFailure& e) {
                m.warnings.push_back(e.what());
            }
        }
        return false;
    };

    std::vector<int> order(static_cast<std::size_t>(ncomp));
    for (int k = 0; k < ncomp; ++k) order[static_cast<std::size_t>(k)] = k;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return better(ranked[static_cast<std::size_t>(a)].front(), ranked[static_cast<std::size_t>(b)].front());
    });

    int anchor = -1;
    for (int k : order) {
        if (certify(k)) {
            anchor = k;
            break;
        }
    }
    if (anchor < 0 && ncomp > 0) {
        m.warnings.push_back("nu_map: no component could be certified");
    }
    if (anchor >= 0) {
        const auto ak = static_cast<std::size_t>(anchor);
        m.component_method[ak] = "anchor";
        m.anchor = {m.cell_center(m.component_representative[ak]), m.component_nu[ak], AnchorMethod::contour};
        const cplx aL = m.anchor.L;
        int last_labeled = -1;
        for (int k : order) {
            if (k == anchor) continue;
            const auto kk = static_cast<std::size_t>(k);
            if (opt.contour_every_component) {
                if (!certify(k)) m.warnings.push_back("nu_map: component left unresolved");
                continue;
            }
            const cplx target = m.cell_center(m.component_representative[kk]);
            const int nu1 = m.anchor.nu + crossing_jump(polylines, aL, target);
            // Second path through a pivot with a known label.
            cplx pivot;
            int pivot_nu;
            if (last_labeled >= 0) {
                const auto pk = static_cast<std::size_t>(last_labeled);
                pivot = m.cell_center(m.component_representative[pk]);
                pivot_nu = m.component_nu[pk];
            } else {
                const cplx d = target - aL;
                double best = -1.0;
                std::size_t best_idx = m.component_representative[ak];
                for (std::size_t idx : members[ak]) {
                    const double off = std::abs(cross(d, m.cell_center(idx) - aL)) / std::max(std::abs(d), 1e-300);
                    if (off > best) {
                        best = off;
                        best_idx = idx;
                    }
                }
                pivot = m.cell_center(best_idx);
                pivot_nu = m.anchor.nu;
            }
            const int nu2 = pivot_nu + crossing_jump(polylines, pivot, target);
            if (nu1 == nu2 && nu1 >= 0) {
                m.component_nu[kk] = nu1;
                m.component_method[kk] = "crossings";
                last_labeled = k;
            } else if (certify(k)) {
                last_labeled = k;
            } else {
                m.warnings.push_back("nu_map: component left unresolved");
            }
        }
    }

    m.labels.assign(cells, sentinel_label);
    for (std::size_t c = 0; c < cells; ++c)
        if (m.component[c] >= 0) m.labels[c] = m.component_nu[static_cast<std::size_t>(m.component[c])];

    if (opt.full_oracle) {
        m.oracle_labels.assign(cells, sentinel_label);
        std::vector<std::size_t> todo;
        for (std::size_t c = 0; c < cells; ++c)
            if (!sentinel[c]) todo.push_back(c);
        parallel_for(todo.size(), opt.jobs, [&](std::size_t i) {
            const std::size_t c = todo[i];
            try {
                m.oracle_labels[c] = nu_contour(F, m.cell_center(c), opt.contour);
            } catch (const NumericalFailure&) {
                m.oracle_labels[c] = unresolved_label;
            }
        });
        m.contour_calls += todo.size();
    }
    return m;
}

std::vector<RegionComponent> stability_region(const NuMap& map, const std::vector<SccBranch>& branches) {
    std::vector<RegionComponent> out;
    const double cw = map.cell_width(), ch = map.cell_height();
    const auto polylines = strip_beta(densify_with_beta(branches, 0.25 * std::min(cw, ch), &map.window));
    for (std::size_t k = 0; k < map.component_nu.size(); ++k) {
        if (map.component_nu[k] != 0) continue;
        RegionComponent rc;
        for (std::size_t c = 0; c < map.component.size(); ++c) {
            if (map.component[c] != static_cast<int>(k)) continue;
            rc.cells.push_back(c);
            const int ix = static_cast<int>(c % static_cast<std::size_t>(map.nx));
            const int iy = static_cast<int>(c / static_cast<std::size_t>(map.nx));
            if (ix == 0 || iy == 0 || ix == map.nx - 1 || iy == map.ny - 1) rc.clipped = true;
        }
        rc.representative = map.cell_center(map.component_representative[k]);

        auto touches = [&](cplx p) {
            if (!map.window.contains(p)) return false;
            const int ix = static_cast<int>((p.real() - map.window.re_lo) / cw);
            const int iy = static_cast<int>((p.imag() - map.window.im_lo) / ch);
            for (int y = iy - 2; y <= iy + 2; ++y)
                for (int x = ix - 2; x <= ix + 2; ++x) {
                    if (x < 0 || y < 0 || x >= map.nx || y >= map.ny) continue;
                    if (map.component[static_cast<std::size_t>(y * map.nx + x)] == static_cast<int>(k)) return true;
                }
            return false;
        };
        for (const auto& poly : polylines) {
            std::vector<cplx> run;
            for (const cplx& p : poly) {
                if (touches(p)) {
                    run.push_back(p);
                } else {
                    if (run.size() >= 2) rc.boundary.push_back(run);
                    run.clear();
                }
            }
            if (run.size() >= 2) rc.boundary.push_back(run);
        }
        out.push_back(std::move(rc));
    }
    return out;
}

Membership membership(const CharFun& F, cplx L, const ContourOptions& options) {
    try {
        const int nu = nu_contour(F, L, options);
        return {nu == 0 ? Membership::Verdict::stable : Membership::Verdict::unstable, nu};
    } catch (const OnCurve&) {
        return {Membership::Verdict::on_curve, -1};
    }
}

LineSlice line_slice(const CharFun& F, const std::vector<SccBranch>& branches, cplx a, cplx b,
                     const ContourOptions& options) {
    LineSlice out;
    out.a = a;
    out.b = b;
    const cplx d = b - a;
    const double len = std::abs(d);
    if (len == 0.0) throw InvalidInput("line_slice: degenerate segment");
    Window focus{std::min(a.real(), b.real()) - 1e-9, std::max(a.real(), b.real()) + 1e-9,
                 std::min(a.imag(), b.imag()) - 1e-9, std::max(a.imag(), b.imag()) + 1e-9};
    const auto polys = densify_with_beta(branches, len / 400.0, &focus);

    std::vector<double> cuts;
    for (const auto& poly : polys) {
        for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
            const cplx p = poly[i].L;
            const cplx r = poly[i + 1].L - p;
            const double denom = cross(d, r);
            if (denom == 0.0) continue;
            const double t = cross(p - a, r) / denom;
            const double u = cross(p - a, d) / denom;
            if (t < -1e-9 || t > 1.0 + 1e-9 || u < 0.0 || u >= 1.0) continue;
            double beta = poly[i].beta + u * (poly[i + 1].beta - poly[i].beta);
            double s = t;
            for (int it = 0; it < 40; ++it) {
                const cplx L = a + s * d;
                const cplx lambda = I * beta;
                const cplx g = F.eval(lambda, L);
                if (std::abs(g) < 1e-15 * std::max(1.0, std::pow(std::abs(beta), F.q()))) break;
                const cplx gb = I * F.d_lambda(lambda, L);
                const cplx gs = F.d_L(lambda, L) * d;
                const double det = cross(gb, gs);
                if (det == 0.0) break;
                const double db = cross(-g, gs) / det;
                const double ds = cross(gb, -g) / det;
                beta += db;
                s += ds;
                if (std::abs(db) < 1e-16 * (1.0 + std::abs(beta)) && std::abs(ds) < 1e-16) break;
            }
            if (s > 0.0 && s < 1.0) cuts.push_back(s);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    for (double s : cuts)
        if (out.cuts.empty() || s - out.cuts.back() > 1e-12) out.cuts.push_back(s);
    for (double s : out.cuts) out.points.push_back(a + s * d);

    std::vector<double> bounds{0.0};
    bounds.insert(bounds.end(), out.cuts.begin(), out.cuts.end());
    bounds.push_back(1.0);
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        const double mid = 0.5 * (bounds[i] + bounds[i + 1]);
        out.nu.push_back(nu_contour(F, a + mid * d, options));
    }
    return out;
}

void write_numap_csv(std::ostream& out, const NuMap& map) {
    csv::header(out, {"re_L", "im_L", "nu"});
    for (std::size_t c = 0; c < map.labels.size(); ++c) {
        const cplx L = map.cell_center(c);
        out << csv::number(L.real()) << ',' << csv::number(L.imag()) << ',' << map.labels[c] << '\n';
    }
}

}  // namespace delaystab
