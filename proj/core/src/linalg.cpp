#include "delaystab/linalg.hpp"

#include "delaystab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace delaystab {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

cplx CMatrix::trace() const noexcept {
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius_norm() const noexcept {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

namespace {

double abs1(cplx z) { return std::abs(z.real()) + std::abs(z.imag()); }

// Radix-2 diagonal scaling so that row and column norms are comparable.
void balance(CMatrix& a) {
    const std::size_t n = a.rows();
    constexpr double radix = 2.0;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += abs1(a(j, i));
                r += abs1(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            const double s = c + r;
            double f = 1.0;
            double g = r / radix;
            while (c < g) {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix * radix;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                for (std::size_t j = 0; j < n; ++j) a(i, j) /= f;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

// Unitary similarity to upper Hessenberg form via Householder reflectors.
void hessenberg(CMatrix& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    std::vector<cplx> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;
        const cplx x0 = a(k + 1, k);
        const cplx phase = (std::abs(x0) == 0.0) ? cplx{1.0, 0.0} : x0 / std::abs(x0);
        const cplx alpha = -phase * xnorm;
        for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
        v[k + 1] -= alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;
        const double scale = 1.0 / std::sqrt(vnorm2);
        for (std::size_t i = k + 1; i < n; ++i) v[i] *= scale;

        // A <- (I - 2vv*) A
        for (std::size_t j = k; j < n; ++j) {
            cplx dot{0.0, 0.0};
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= 2.0 * v[i] * dot;
        }
        // A <- A (I - 2vv*)
        for (std::size_t i = 0; i < n; ++i) {
            cplx dot{0.0, 0.0};
            for (std::size_t j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= 2.0 * dot * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

struct Givens {
    double c = 1.0;
    cplx s{0.0, 0.0};
};

// G = [[c, s], [-conj(s), c]] with G [a; b] = [r; 0].
Givens make_givens(cplx a, cplx b) {
    const double ab = std::abs(b);
    if (ab == 0.0) return {1.0, {0.0, 0.0}};
    const double aa = std::abs(a);
    if (aa == 0.0) return {0.0, {1.0, 0.0}};
    const double r = std::hypot(aa, ab);
    return {aa / r, (a / aa) * std::conj(b) / r};
}

cplx wilkinson_shift(const CMatrix& h, std::size_t hi) {
    const cplx a = h(hi - 1, hi - 1);
    const cplx b = h(hi - 1, hi);
    const cplx c = h(hi, hi - 1);
    const cplx d = h(hi, hi);
    const cplx half_tr = 0.5 * (a + d);
    const cplx det = a * d - b * c;
    const cplx disc = std::sqrt(half_tr * half_tr - det);
    const cplx mu1 = half_tr + disc;
    const cplx mu2 = half_tr - disc;
    return (std::abs(mu1 - d) < std::abs(mu2 - d)) ? mu1 : mu2;
}

}  // namespace

std::vector<cplx> eigenvalues(CMatrix h, const EigenOptions& options) {
    if (h.rows() != h.cols()) throw InvalidInput("eigenvalues: matrix must be square");
    const std::size_t n = h.rows();
    std::vector<cplx> eig(n);
    if (n == 0) return eig;
    if (options.balance) balance(h);
    hessenberg(h);

    const double norm = std::max(h.frobenius_norm(), 1e-300);
    std::vector<Givens> rot(n);
    long hi = static_cast<long>(n) - 1;
    int iter = 0;
    int total_iter = 0;
    while (hi >= 0) {
        long lo = hi;
        while (lo > 0) {
            const auto l = static_cast<std::size_t>(lo);
            double scale = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
            if (scale == 0.0) scale = norm;
            if (std::abs(h(l, l - 1)) <= options.deflation_tol * scale) {
                h(l, l - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eig[static_cast<std::size_t>(hi)] = h(static_cast<std::size_t>(hi), static_cast<std::size_t>(hi));
            --hi;
            iter = 0;
            continue;
        }
        ++iter;
        ++total_iter;
        if (iter > options.max_iterations_per_eigenvalue) {
            std::ostringstream os;
            os << "eigenvalues: QR iteration did not converge for eigenvalue index " << hi
               << " (active block [" << lo << ", " << hi << "], " << iter
               << " iterations, " << total_iter << " total, subdiagonal |h| = "
               << std::abs(h(static_cast<std::size_t>(hi), static_cast<std::size_t>(hi - 1))) << ")";
            throw EigenNoConvergence(os.str());
        }

        const auto ulo = static_cast<std::size_t>(lo);
        const auto uhi = static_cast<std::size_t>(hi);
        cplx shift;
        if (iter % options.exceptional_shift_every == 0) {
            shift = h(uhi, uhi) + cplx{std::abs(h(uhi, uhi - 1).real()) +
                                          (uhi >= 2 ? std::abs(h(uhi - 1, uhi - 2).real()) : 0.0),
                                      std::abs(h(uhi, uhi - 1).imag())};
        } else {
            shift = wilkinson_shift(h, uhi);
        }

        for (std::size_t i = ulo; i <= uhi; ++i) h(i, i) -= shift;
        for (std::size_t k = ulo; k < uhi; ++k) {
            const Givens g = make_givens(h(k, k), h(k + 1, k));
            rot[k] = g;
            for (std::size_t j = k; j <= uhi; ++j) {
                const cplx x = h(k, j);
                const cplx y = h(k + 1, j);
                h(k, j) = g.c * x + g.s * y;
                h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
            }
        }
        for (std::size_t k = ulo; k < uhi; ++k) {
            const Givens& g = rot[k];
            const std::size_t last = std::min(k + 2, uhi);
            for (std::size_t i = ulo; i <= last; ++i) {
                const cplx x = h(i, k);
                const cplx y = h(i, k + 1);
                h(i, k) = x * g.c + y * std::conj(g.s);
                h(i, k + 1) = -x * g.s + y * g.c;
            }
        }
        for (std::size_t i = ulo; i <= uhi; ++i) h(i, i) += shift;
    }
    return eig;
}

cplx determinant(CMatrix a) {
    if (a.rows() != a.cols()) throw InvalidInput("determinant: matrix must be square");
    const std::size_t n = a.rows();
    cplx det{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                piv = i;
            }
        }
        if (best == 0.0) return {0.0, 0.0};
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = a(i, k) / a(k, k);
            if (f == cplx{0.0, 0.0}) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

std::vector<cplx> polynomial_roots(std::span<const cplx> ascending) {
    std::size_t len = ascending.size();
    while (len > 0 && ascending[len - 1] == cplx{0.0, 0.0}) --len;
    if (len <= 1) return {};
    const std::size_t degree = len - 1;
    const cplx lead = ascending[degree];

    std::vector<cplx> roots;
    if (degree == 1) {
        roots.push_back(-ascending[0] / lead);
    } else {
        CMatrix companion(degree, degree);
        for (std::size_t i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
        for (std::size_t i = 0; i < degree; ++i) companion(i, degree - 1) = -ascending[i] / lead;
        roots = eigenvalues(std::move(companion));
    }

    auto eval = [&](cplx x, cplx& dp) {
        cplx p{0.0, 0.0};
        dp = {0.0, 0.0};
        for (std::size_t m = len; m-- > 0;) {
            dp = dp * x + p;
            p = p * x + ascending[m];
        }
        return p;
    };
    for (auto& r : roots) {
        for (int it = 0; it < 3; ++it) {
            cplx dp;
            const cplx p = eval(r, dp);
            if (dp == cplx{0.0, 0.0}) break;
            const cplx candidate = r - p / dp;
            cplx dq;
            if (std::abs(eval(candidate, dq)) < std::abs(p)) {
                r = candidate;
            } else {
                break;
            }
        }
    }
    return roots;
}

}  // namespace delaystab
