#include "delaystab/errors.hpp"
#include "delaystab/presets.hpp"
#include "delaystab/regions.hpp"
#include "delaystab/scc.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

using namespace delaystab;

namespace {

constexpr cplx I{0.0, 1.0};

/// Real L at which the curve e^{iβ/2}(iβ − 1) returns to the real axis:
/// tan(β/2) = β.
double second_real_crossing() {
    const double beta = oracle::bisect([](double b) { return std::tan(b / 2) - b; }, 2.0, 3.0);
    return (std::exp(I * beta / 2.0) * (I * beta - 1.0)).real();
}

}  // namespace

TEST(Regions, ContourCountAgreesWithDenseWinding) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (const CharFun& F : {presets::example1(), presets::example2()}) {
        for (int i = 0; i < 12; ++i) {
            const cplx L{u(rng), u(rng)};
            const double R = radius_bound(F, L, 0.0);
            EXPECT_EQ(nu_contour(F, L), oracle::winding_dense([&](cplx lam) { return F.eval(lam, L); }, R, 40000))
                << "L = " << L;
        }
    }
}

TEST(Regions, ContourRejectsPointsOnCurves) {
    EXPECT_THROW((void)nu_contour(presets::example1(), cplx{-1.0, 0.0}), OnCurve);
}

TEST(Regions, LineSliceAlongRealAxis) {
    const CharFun F = presets::scalar_discrete(1.0, 0.0, 0.5);
    const TracedCurves curves = trace_window(F, Window{-4.0, 2.0, -3.0, 3.0});
    const LineSlice s = line_slice(F, curves.branches, cplx{-4.0}, cplx{2.0});
    const double first = second_real_crossing();
    EXPECT_NEAR(first, -2.536558989230599, 1e-12);
    ASSERT_EQ(s.points.size(), 2u);
    EXPECT_NEAR(s.points[0].real(), first, 1e-9);
    EXPECT_NEAR(s.points[1].real(), -1.0, 1e-9);
    EXPECT_NEAR(s.cuts[1], 0.5, 1e-9);
    EXPECT_EQ(s.nu, (std::vector<int>{2, 0, 1}));
}

TEST(Regions, MembershipVerdicts) {
    const CharFun F = presets::scalar_discrete(1.0, 0.0, 0.5);
    EXPECT_EQ(membership(F, cplx{-1.5}).verdict, Membership::Verdict::stable);
    const Membership out = membership(F, cplx{0.5});
    EXPECT_EQ(out.verdict, Membership::Verdict::unstable);
    EXPECT_EQ(out.nu, 1);
    const Membership on = membership(F, cplx{-1.0});
    EXPECT_EQ(on.verdict, Membership::Verdict::on_curve);
    EXPECT_EQ(on.nu, -1);
}

TEST(Regions, FrequencyShiftRotatesTheGainPlane) {
    // With ż = (a + id)z + Lz(t − τ), λ → λ + id maps the system with
    // detuning d at gain L to the one without detuning at L e^{−idτ}.
    const double a = 1.0, d = 1.3, tau = 0.5;
    const CharFun shifted = presets::scalar_discrete(a, d, tau);
    const CharFun plain = presets::scalar_discrete(a, 0.0, tau);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 20; ++i) {
        const cplx L{u(rng), u(rng)};
        EXPECT_EQ(nu_contour(shifted, L), nu_contour(plain, L * std::exp(-I * d * tau))) << "L = " << L;
    }
}

TEST(Regions, MapAgreesWithFullOracle) {
    for (const auto& [F, w] : {std::pair{presets::example1(), Window{-4, 4, -4, 4}},
                               std::pair{presets::example2(), Window{-1, 3, -1, 7}},
                               std::pair{presets::scalar_gamma(1.0, 1, 0.5), Window{-6, 2, -4, 4}}}) {
        const TracedCurves curves = trace_window(F, w);
        NuMapOptions opt;
        opt.full_oracle = true;
        const NuMap map = nu_map(F, w, 25, 25, curves.branches, opt);
        std::size_t compared = 0;
        for (std::size_t c = 0; c < map.labels.size(); ++c) {
            if (map.labels[c] == sentinel_label || map.oracle_labels[c] == unresolved_label) continue;
            EXPECT_EQ(map.labels[c], map.oracle_labels[c]) << "cell " << map.cell_center(c);
            ++compared;
        }
        EXPECT_GT(compared, map.labels.size() / 2);
    }
}

TEST(Regions, StabilityRegionOfScalarDelay) {
    const CharFun F = presets::scalar_discrete(1.0, 0.0, 0.5);
    const Window w{-4, 2, -3, 3};
    const TracedCurves curves = trace_window(F, w);
    const NuMap map = nu_map(F, w, 61, 61, curves.branches);
    const auto regions = stability_region(map, curves.branches);
    ASSERT_EQ(regions.size(), 1u);
    EXPECT_FALSE(regions.front().clipped);
    EXPECT_FALSE(regions.front().boundary.empty());
    EXPECT_EQ(nu_contour(F, regions.front().representative), 0);
    const double first = second_real_crossing();
    for (std::size_t c : regions.front().cells) {
        const cplx L = map.cell_center(c);
        EXPECT_GT(L.real(), first - 0.1);
        EXPECT_LT(L.real(), -1.0 + 0.1);
    }
}

TEST(Regions, CrossingJumpCountsSignedCrossings) {
    const CharFun F = presets::scalar_discrete(1.0, 0.0, 0.5);
    const TracedCurves curves = trace_window(F, Window{-4, 2, -3, 3});
    const auto lines = densify(curves.branches, 0.01);
    int n = 0;
    const double y = 0.013;
    EXPECT_EQ(crossing_jump(lines, cplx{-1.5, y}, cplx{0.5, y}, &n), 1);
    EXPECT_EQ(n, 1);
    EXPECT_EQ(crossing_jump(lines, cplx{-1.5, y}, cplx{-3.5, y}, &n), 2);
    EXPECT_EQ(n, 2);
    EXPECT_EQ(crossing_jump(lines, cplx{0.5, y}, cplx{-3.5, y}, &n), 1);
    EXPECT_EQ(n, 3);
}

TEST(Regions, NuMapCsvHeader) {
    const CharFun F = presets::example1();
    const Window w{-1, 1, -1, 1};
    const TracedCurves curves = trace_window(F, w);
    const NuMap map = nu_map(F, w, 4, 3, curves.branches);
    std::ostringstream out;
    write_numap_csv(out, map);
    const std::string s = out.str();
    EXPECT_EQ(s.substr(0, s.find('\n')), "re_L,im_L,nu");
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 13);
}
