#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace delaystab {

using cplx = std::complex<double>;

/// Axis-aligned rectangle in the complex L-plane.
struct Window {
    double re_lo = -1.0;
    double re_hi = 1.0;
    double im_lo = -1.0;
    double im_hi = 1.0;

    [[nodiscard]] cplx center() const noexcept { return {0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)}; }
    [[nodiscard]] double width() const noexcept { return re_hi - re_lo; }
    [[nodiscard]] double height() const noexcept { return im_hi - im_lo; }
    [[nodiscard]] double diagonal() const noexcept { return std::hypot(width(), height()); }
    [[nodiscard]] double half_diagonal() const noexcept { return 0.5 * diagonal(); }
    [[nodiscard]] bool contains(cplx L) const noexcept {
        return L.real() >= re_lo && L.real() <= re_hi && L.imag() >= im_lo && L.imag() <= im_hi;
    }
    [[nodiscard]] bool valid() const noexcept {
        return std::isfinite(re_lo) && std::isfinite(re_hi) && std::isfinite(im_lo) &&
               std::isfinite(im_hi) && re_hi > re_lo && im_hi > im_lo;
    }
};

}  // namespace delaystab
