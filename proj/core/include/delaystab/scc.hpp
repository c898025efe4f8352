#pragma once

// Stability crossing curves: the gains L for which F(iβ, L) = 0 has a real
// solution β. Each branch is a sampled curve β ↦ L(β) with its tangent
// L′(β) = −i ∂_λF / ∂_LF and polar data θ′ = Im(L′/L).

#include "delaystab/charfun.hpp"
#include "delaystab/window.hpp"

#include <functional>
#include <iosfwd>
#include <limits>
#include <vector>

namespace delaystab {

struct SccNode {
    double beta = 0.0;
    cplx L;
    cplx tangent;  ///< dL/dβ
    double r = 0.0;
    double theta = 0.0;  ///< unwrapped along the branch
    double theta_prime = 0.0;
    bool polar_undefined = false;    ///< r < 1e−12
    bool tangent_undefined = false;  ///< ∂_LF = 0
    bool irregular = false;          ///< ∂_λF = 0
};

struct SccBranch {
    std::vector<SccNode> nodes;  ///< ascending β
    int root_index = 0;          ///< rank of the starting root among the roots at the first node
};

struct TraceOptions {
    /// Segments longer than this are bisected (0 disables the rule).
    double max_segment = 0.0;
    /// The length rule only applies to segments within this distance of
    /// focus_center.
    cplx focus_center{0.0, 0.0};
    double focus_radius = std::numeric_limits<double>::infinity();
    int max_depth = 20;
    /// Roots farther than this from the origin are discarded.
    double clip_radius = 1e8;
};

/// All branches with β in [beta_lo, beta_hi], uniform base step with
/// adaptive bisection. Throws NumericalFailure when F(iβ, ·) vanishes
/// identically at some node.
[[nodiscard]] std::vector<SccBranch> trace(const CharFun& F, double beta_lo, double beta_hi, double step,
                                           const TraceOptions& options = {});

struct TracedCurves {
    std::vector<SccBranch> branches;
    double beta_bound = 0.0;  ///< every curve point inside the window has |β| < beta_bound
    Window window;
};

/// Traces over β ∈ [−R, R] with R the radius bound of the disk enclosing
/// the window, so no curve point inside the window is missed. A zero step
/// picks R/2000; a zero max_segment picks 2% of the window diagonal.
[[nodiscard]] TracedCurves trace_window(const CharFun& F, const Window& window, double step = 0.0,
                                        TraceOptions options = {});

/// Geometric node at an exact curve point.
[[nodiscard]] SccNode make_node(const CharFun& F, double beta, cplx L);

/// Newton refinement of a root of F(iβ, ·) near the guess.
[[nodiscard]] cplx polish_root(const CharFun& F, double beta, cplx guess, int iterations = 8);

/// Branch from an explicit parameterisation, for curves known in closed form.
[[nodiscard]] SccBranch geometric_branch(const std::function<cplx(double)>& L,
                                         const std::function<cplx(double)>& dL, double beta_lo,
                                         double beta_hi, double step);

/// Cubic Hermite interpolation of the branch at β (clamped to its range).
[[nodiscard]] cplx branch_eval(const SccBranch& branch, double beta);

struct PolarProfile {
    std::vector<double> beta;
    std::vector<double> r;
    std::vector<double> theta;
    std::vector<double> theta_prime;     ///< Im(L′/L)
    std::vector<double> theta_prime_fd;  ///< centered differences of theta (one-sided at the ends)
    std::vector<bool> undefined;
};

[[nodiscard]] PolarProfile polar_profile(const SccBranch& branch);

struct CrossingReport {
    double beta_star = 0.0;
    cplx L_star;
    cplx tangent;
    cplx normal;          ///< i·L′(β*) = ∂_λF / ∂_LF
    int jump_normal = 0;  ///< −1 when regular: NU(L*+εn) − NU(L*−εn)
    double theta_prime = 0.0;
    int jump_ray = 0;  ///< Sgn(θ′), 0 when degenerate
    bool irregular = false;
    bool tangent_undefined = false;
    bool ray_degenerate = false;
};

/// Crossing data at the branch point nearest to β*.
[[nodiscard]] CrossingReport crossing_at(const CharFun& F, const SccBranch& branch, double beta_star);
/// Crossing data at an exact curve point (iβ a root of F(·, L)).
[[nodiscard]] CrossingReport crossing_at_point(const CharFun& F, double beta, cplx L);

struct SelfIntersection {
    std::size_t branch_a = 0;
    std::size_t branch_b = 0;
    double beta_a = 0.0;
    double beta_b = 0.0;
    cplx L;
};

/// Points visited twice by the curves: proper crossings between
/// non-adjacent segments plus coincident nodes within tol. Crossings are
/// refined by Newton on L(β₁) = L(β₂), using F when given and the Hermite
/// interpolant otherwise.
[[nodiscard]] std::vector<SelfIntersection> self_intersections(const std::vector<SccBranch>& branches,
                                                               double tol = 1e-9,
                                                               const CharFun* F = nullptr);

/// CSV columns: beta,re_L,im_L,r,theta,theta_prime.
void write_branch_csv(std::ostream& out, const SccBranch& branch);

}  // namespace delaystab
