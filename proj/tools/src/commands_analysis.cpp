#include "delaystab_cli/codecs.hpp"
#include "delaystab_cli/commands.hpp"

#include "delaystab/networks.hpp"
#include "delaystab/regions.hpp"
#include "delaystab/scc.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace delaystab::cli {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string branch_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "branch_%03zu.csv", i);
    return buf;
}

json polyline_to_json(const std::vector<cplx>& pts) {
    json out = json::array();
    for (const cplx& p : pts) out.push_back(complex_to_json(p));
    return out;
}

}  // namespace

json run_scc(const json& config, json& resolved, const RunContext&, Artifacts& out) {
    ObjectReader r(config, resolved, "config");
    const SystemSpec sys = read_system(r.object("system"));
    std::vector<SccBranch> branches;
    json range;
    if (r.has("beta")) {
        ObjectReader b = r.object("beta");
        const double lo = b.number("lo"), hi = b.number("hi");
        if (!(hi > lo)) b.fail("hi", "need lo < hi");
        const double step = b.number("step", (hi - lo) / 4000.0);
        if (!(step > 0.0)) b.fail("step", "must be > 0");
        b.finish();
        r.finish();
        branches = trace(sys.F, lo, hi, step);
        range = {{"lo", lo}, {"hi", hi}, {"step", step}};
    } else {
        const Window w = r.has("window") ? read_window(r.object("window")) : sys.default_window;
        if (!r.has("window")) r.echo("window", window_to_json(w));
        r.finish();
        TracedCurves tc = trace_window(sys.F, w);
        branches = std::move(tc.branches);
        range = {{"lo", -tc.beta_bound}, {"hi", tc.beta_bound}};
    }

    json info = json::array();
    for (std::size_t i = 0; i < branches.size(); ++i) {
        std::ostringstream csv;
        write_branch_csv(csv, branches[i]);
        out.write(branch_name(i), csv.str());
        const auto& nodes = branches[i].nodes;
        info.push_back({{"file", branch_name(i)},
                        {"nodes", nodes.size()},
                        {"beta_lo", nodes.front().beta},
                        {"beta_hi", nodes.back().beta}});
    }
    json crossings = json::array();
    for (const auto& s : self_intersections(branches, 1e-9, &sys.F)) {
        crossings.push_back({{"branch_a", s.branch_a},
                             {"branch_b", s.branch_b},
                             {"beta_a", s.beta_a},
                             {"beta_b", s.beta_b},
                             {"L", complex_to_json(s.L)}});
    }
    json doc = {{"beta_range", range},
                {"charfun", charfun_to_json(sys.F)},
                {"branches", info},
                {"self_intersections", crossings}};
    out.write_json("scc.json", doc);
    return {{"branches", branches.size()}, {"self_intersections", crossings.size()}};
}

json run_numap(const json& config, json& resolved, const RunContext& ctx, Artifacts& out) {
    ObjectReader r(config, resolved, "config");
    const SystemSpec sys = read_system(r.object("system"));
    const Window w = r.has("window") ? read_window(r.object("window")) : sys.default_window;
    if (!r.has("window")) r.echo("window", window_to_json(w));
    const int default_res = ctx.paper_scale ? 201 : 41;
    int nx = default_res, ny = default_res;
    if (r.has("resolution")) {
        const auto res = r.numbers("resolution");
        if (res.size() != 2 || res[0] < 2 || res[1] < 2 || res[0] != std::floor(res[0]) || res[1] != std::floor(res[1]))
            r.fail("resolution", "expected [nx, ny] with integers >= 2");
        nx = static_cast<int>(res[0]);
        ny = static_cast<int>(res[1]);
    } else {
        r.echo("resolution", {nx, ny});
    }
    const bool full = r.boolean("full_oracle", false) || ctx.full_oracle;
    r.finish();

    const auto t0 = std::chrono::steady_clock::now();
    const TracedCurves curves = trace_window(sys.F, w);
    const double trace_s = seconds_since(t0);
    NuMapOptions opt;
    opt.full_oracle = full;
    opt.jobs = ctx.jobs;
    const auto t1 = std::chrono::steady_clock::now();
    const NuMap map = nu_map(sys.F, w, nx, ny, curves.branches, opt);
    const double map_s = seconds_since(t1);
    const auto regions = stability_region(map, curves.branches);

    std::ostringstream csv;
    write_numap_csv(csv, map);
    out.write("numap.csv", csv.str());

    std::map<int, std::size_t> counts;
    for (int l : map.labels) ++counts[l];
    json label_counts = json::object();
    for (const auto& [label, n] : counts) label_counts[std::to_string(label)] = n;

    json components = json::array();
    for (std::size_t k = 0; k < map.component_nu.size(); ++k) {
        components.push_back({{"nu", map.component_nu[k]},
                              {"method", map.component_method[k]},
                              {"representative", complex_to_json(map.cell_center(map.component_representative[k]))}});
    }
    json stable = json::array();
    for (const auto& rc : regions) {
        json boundary = json::array();
        for (const auto& piece : rc.boundary) boundary.push_back(polyline_to_json(piece));
        stable.push_back({{"cells", rc.cells.size()},
                          {"clipped", rc.clipped},
                          {"representative", complex_to_json(rc.representative)},
                          {"boundary", boundary}});
    }
    const char* method = map.anchor.method == AnchorMethod::contour ? "contour" : "polynomial";
    json doc = {{"window", window_to_json(w)},
                {"resolution", {nx, ny}},
                {"anchor", {{"L", complex_to_json(map.anchor.L)}, {"nu", map.anchor.nu}, {"method", method}}},
                {"label_counts", label_counts},
                {"components", components},
                {"stability_regions", stable},
                {"warnings", map.warnings}};
    json summary = {{"label_counts", label_counts},
                    {"components", components.size()},
                    {"stability_regions", stable.size()},
                    {"contour_calls", map.contour_calls},
                    {"trace_seconds", trace_s},
                    {"map_seconds", map_s}};
    if (full) {
        std::size_t mismatches = 0, unresolved = 0;
        for (std::size_t c = 0; c < map.labels.size(); ++c) {
            if (map.labels[c] == sentinel_label) continue;
            if (map.oracle_labels[c] == unresolved_label) {
                ++unresolved;
            } else if (map.oracle_labels[c] != map.labels[c]) {
                ++mismatches;
            }
        }
        doc["oracle"] = {{"mismatches", mismatches}, {"unresolved", unresolved}};
        summary["oracle"] = doc["oracle"];
    }
    out.write_json("boundary.json", doc);
    return summary;
}

json run_critical(const json& config, json& resolved, const RunContext&, Artifacts& out) {
    ObjectReader r(config, resolved, "config");
    const std::string kind = r.string("kind");
    json doc;
    if (kind == "carfollowing") {
        const auto n = static_cast<int>(r.integer("n"));
        const auto N = static_cast<int>(r.integer("N"));
        const double alpha = r.number("alpha", 1.0);
        r.finish();
        json modes = json::array();
        for (int l = 1; l < N; ++l) modes.push_back(number_to_json(carfollowing_Tc_mode(n, N, alpha, l)));
        doc = {{"Tc", number_to_json(carfollowing_Tc(n, N, alpha))}, {"Tc_modes", modes}};
    } else if (kind == "chain") {
        const auto n = static_cast<int>(r.integer("n"));
        const double alpha = r.number("alpha", 1.0);
        r.finish();
        doc = {{"Tc", number_to_json(chain_Tc(n, alpha))}};
    } else if (kind == "mas") {
        const double a = r.number("a", 1.0), b = r.number("b", 1.0);
        const double k1 = r.number("k1", 1.0), k2 = r.number("k2", 1.1);
        doc = {{"Tc1", number_to_json(mas_Tc1(a, b, k1, k2))}, {"Tc2", number_to_json(mas_Tc2(a, k1, k2))}};
        if (r.has("R")) {
            const double R = r.number("R");
            const double T = r.number("T");
            const auto N = static_cast<int>(r.integer("N", 100));
            doc["alpha_c"] = number_to_json(alpha_c(a, b, k1, k2, T, R, N));
        }
        r.finish();
    } else {
        r.fail("kind", "unknown kind '" + kind + "' (carfollowing, chain, mas)");
    }
    out.write_json("critical.json", doc);
    return doc;
}

}  // namespace delaystab::cli
