#pragma once

// Network matrices J, their spectra, and critical parameters of the
// networked examples. A networked system ẋ = J ∫x(t−τ)h(τ)dτ (or its PD
// analogue) decouples into one scalar mode per eigenvalue μ of J; the
// network reaches consensus iff every nonzero μ lies in the stability
// region of the mode equation.

#include "delaystab/charfun.hpp"
#include "delaystab/linalg.hpp"
#include "delaystab/regions.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace delaystab {

/// Directed ring: agent i follows agent i+1 (mod N) with gain alpha.
struct Ring {
    int N = 2;
    double alpha = 1.0;
};

/// Open chain: as the ring, but the last agent has no predecessor.
struct Chain {
    int N = 2;
    double alpha = 1.0;
};

/// Weighted graph; the diagonal is rebuilt so every row sums to zero.
struct Laplacian {
    std::vector<std::vector<double>> weights;
};

/// J = −R·I + α·Ξ with Ξ i.i.d. uniform on [−1, 1] (mt19937_64, given seed).
struct RandomNet {
    int N = 2;
    double R = 1.0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
};

using NetworkSpec = std::variant<Ring, Chain, Laplacian, RandomNet>;

void validate(const NetworkSpec& net);

[[nodiscard]] CMatrix network_matrix(const NetworkSpec& net);

struct Circle {
    cplx center;
    double radius = 0.0;
};

enum class SpectrumMethod { closed_form, qr_iteration, circular_law_approx };

struct Spectrum {
    std::vector<cplx> eigenvalues;  ///< empty for circular_law_approx
    SpectrumMethod method = SpectrumMethod::closed_form;
    std::optional<Circle> circle;
};

/// Closed form for Ring and Chain, QR iteration otherwise.
[[nodiscard]] Spectrum spectrum(const NetworkSpec& net);

/// Disk of radius α√(N/3) about −R that the spectrum of a RandomNet fills
/// for large N.
[[nodiscard]] Circle circular_law_circle(int N, double R, double alpha);
[[nodiscard]] Spectrum circular_law_spectrum(int N, double R, double alpha);

struct ConsensusResult {
    bool consensus = false;
    bool zero_excluded = false;
    std::vector<cplx> offending;
};

using MembershipOracle = std::function<Membership(cplx)>;

/// True iff every eigenvalue except one zero mode (|μ| ≤ 1e−9, if present)
/// is stable. Throws Undecidable if some eigenvalue is on a curve.
[[nodiscard]] ConsensusResult msf_consensus_check(const Spectrum& spec, const MembershipOracle& member);

/// Critical mean delay of the ring for mode l (φ = 2πl/N):
/// T = n tan(φ/2n) (1 + tan²(φ/2n))^{n/2} / (2α sin(φ/2)).
[[nodiscard]] double carfollowing_Tc_mode(int n, int N, double alpha, int l);
/// The ring consensus bound, mode l = 1.
[[nodiscard]] double carfollowing_Tc(int n, int N, double alpha);
/// Chain bound (n/α) tan(π/2n)(1 + tan²(π/2n))^{n/2}; +∞ for n = 1.
[[nodiscard]] double chain_Tc(int n, double alpha);

/// L_T(β) = (−β² − b − iaβ)(1 + iβT)/(k1 + ik2β).
[[nodiscard]] cplx mas_scc(double a, double b, double k1, double k2, double T, double beta);
/// Polar form of mas_scc, angle assembled from the factor arguments and
/// unwrapped continuously in β.
[[nodiscard]] double mas_r(double a, double b, double k1, double k2, double T, double beta);
[[nodiscard]] double mas_theta(double a, double b, double k1, double k2, double T, double beta);

/// Delay at which the loop of the crossing curve appears: k2/k1 − a/b.
template <class Num>
[[nodiscard]] Num mas_Tc1(const Num& a, const Num& b, const Num& k1, const Num& k2) {
    return k2 / k1 - a / b;
}

/// Delay beyond which no stability region remains: 1/(a + k1/k2).
template <class Num>
[[nodiscard]] Num mas_Tc2(const Num& a, const Num& k1, const Num& k2) {
    return Num(1) / (a + k1 / k2);
}

/// √(3/N) · inf_β |L_T(β) + R|: the largest α for which the circular-law
/// disk stays inside the stability region. Throws InvalidInput when −R is
/// not stable at α = 0.
[[nodiscard]] double alpha_c(double a, double b, double k1, double k2, double T, double R, int N);

/// Parameter p in [p_lo, p_hi] at which the fixed gain mu first meets a
/// crossing curve of family(p): membership scan followed by Newton on
/// F_p(iβ, mu) = 0 in (β, p).
[[nodiscard]] double tangency_search(const std::function<CharFun(double)>& family, cplx mu, double p_lo,
                                     double p_hi, int scan_points = 200);

}  // namespace delaystab
