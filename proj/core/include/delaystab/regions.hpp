#pragma once

// Counting unstable roots NU(L) = #{λ : F(λ, L) = 0, Re λ ≥ 0}.
//
// nu_contour is the reference: the winding number of F(·, L) around the
// boundary of the right half-disk of radius radius_bound(F, L, 0), tracked
// by adaptive phase accumulation. nu_map labels a grid by flood-filling the
// cells that are not touched by a crossing curve, certifying one component
// with nu_contour and deriving the others from signed curve crossings.

#include "delaystab/charfun.hpp"
#include "delaystab/scc.hpp"
#include "delaystab/window.hpp"

#include <cstddef>
#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

namespace delaystab {

struct ContourOptions {
    double on_curve_tol = 1e-6;  ///< on |F(iβ, L)| / max(1, |β|^q)
    double max_phase_step = std::numbers::pi / 4.0;
    double rounding_guard = 0.05;
    std::size_t max_evaluations = 4'000'000;
    int initial_pieces_axis = 64;
    int initial_pieces_arc = 32;
};

struct ContourDiagnostics {
    double raw_winding = 0.0;
    double radius = 0.0;
    std::size_t evaluations = 0;
};

/// Throws OnCurve when a root sits on the imaginary axis (to tolerance) and
/// WindingUnresolved when refinement cannot settle the phase.
[[nodiscard]] int nu_contour(const CharFun& F, cplx L, const ContourOptions& options = {},
                             ContourDiagnostics* diagnostics = nullptr);

enum class AnchorMethod { contour, polynomial };

struct Anchor {
    cplx L;
    int nu = 0;
    AnchorMethod method = AnchorMethod::contour;
};

inline constexpr int sentinel_label = -1;    ///< cell touched by a crossing curve
inline constexpr int unresolved_label = -2;  ///< component that could not be certified

struct NuMapOptions {
    /// Also evaluate nu_contour on every non-sentinel cell.
    bool full_oracle = false;
    /// Polylines are subdivided until segments are at most this fraction of a cell.
    double densify_fraction = 0.25;
    /// Label every component with nu_contour instead of crossing counts.
    bool contour_every_component = false;
    int jobs = 1;
    ContourOptions contour;
};

struct NuMap {
    Window window;
    int nx = 0;
    int ny = 0;
    std::vector<int> labels;     ///< row-major, index iy * nx + ix
    std::vector<int> component;  ///< −1 on sentinel cells
    std::vector<int> component_nu;
    std::vector<std::size_t> component_representative;  ///< cell index
    std::vector<std::string> component_method;          ///< "anchor", "crossings" or "contour"
    Anchor anchor;
    std::vector<int> oracle_labels;  ///< full-oracle mode only; unresolved_label where the oracle failed
    std::size_t contour_calls = 0;
    std::vector<std::string> warnings;

    [[nodiscard]] cplx cell_center(int ix, int iy) const;
    [[nodiscard]] cplx cell_center(std::size_t index) const;
    [[nodiscard]] int label(int ix, int iy) const { return labels[static_cast<std::size_t>(iy * nx + ix)]; }
    [[nodiscard]] double cell_width() const { return window.width() / nx; }
    [[nodiscard]] double cell_height() const { return window.height() / ny; }
};

[[nodiscard]] NuMap nu_map(const CharFun& F, const Window& window, int nx, int ny,
                           const std::vector<SccBranch>& branches, const NuMapOptions& options = {});

/// Branch polylines refined by Hermite interpolation so that no segment is
/// longer than max_length.
[[nodiscard]] std::vector<std::vector<cplx>> densify(const std::vector<SccBranch>& branches, double max_length);

/// Net NU change along the straight path a → b from the normal crossing
/// rule (each crossing along +n contributes −1). Each element of polylines
/// must be ordered by increasing β.
[[nodiscard]] int crossing_jump(const std::vector<std::vector<cplx>>& polylines, cplx a, cplx b,
                                int* crossings = nullptr);

struct RegionComponent {
    std::vector<std::size_t> cells;
    bool clipped = false;  ///< touches the window border
    cplx representative;
    std::vector<std::vector<cplx>> boundary;
};

/// Connected NU = 0 components and the curve pieces bordering them.
[[nodiscard]] std::vector<RegionComponent> stability_region(const NuMap& map,
                                                            const std::vector<SccBranch>& branches);

struct Membership {
    enum class Verdict { stable, unstable, on_curve };
    Verdict verdict = Verdict::stable;
    int nu = 0;  ///< −1 for on_curve
};

[[nodiscard]] Membership membership(const CharFun& F, cplx L, const ContourOptions& options = {});

struct LineSlice {
    cplx a;
    cplx b;
    std::vector<double> cuts;    ///< parameters s ∈ (0, 1) of curve crossings, ascending
    std::vector<cplx> points;    ///< a + s (b − a) at each cut
    std::vector<int> nu;         ///< NU on each open interval between consecutive cuts
};

/// Crossings of the segment a → b with the curves, refined by Newton on
/// F(iβ, a + s(b − a)) = 0, and NU on each piece.
[[nodiscard]] LineSlice line_slice(const CharFun& F, const std::vector<SccBranch>& branches, cplx a, cplx b,
                                   const ContourOptions& options = {});

/// CSV columns: re_L,im_L,nu (−1 for sentinel cells).
void write_numap_csv(std::ostream& out, const NuMap& map);

}  // namespace delaystab
