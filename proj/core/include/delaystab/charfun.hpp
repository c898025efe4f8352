#pragma once

// Characteristic function of ż = Q(L)z + B(L)∫z(t−τ)h(τ)dτ:
//
//   F(λ, L) = det[λI − Q(L) − B(L)ĥ(λ)] = λ^q − Σ_{k,j} P_{k,j}(L) λ^k ĥ(λ)^j
//
// The term table holds P_{k,j} for k < q and k + j ≤ q. A P_{q,j} term with
// j ≥ 1 would make the system neutral and is rejected.

#include "delaystab/kernels.hpp"
#include "delaystab/linalg.hpp"
#include "delaystab/poly.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace delaystab {

/// q×q matrix whose entries are polynomials in L.
class MatrixFun {
public:
    MatrixFun() = default;
    explicit MatrixFun(std::size_t q) : q_(q), entries_(q * q) {}
    MatrixFun(std::initializer_list<std::initializer_list<ComplexPoly>> rows);

    [[nodiscard]] std::size_t size() const noexcept { return q_; }
    ComplexPoly& operator()(std::size_t i, std::size_t j) { return entries_[i * q_ + j]; }
    const ComplexPoly& operator()(std::size_t i, std::size_t j) const { return entries_[i * q_ + j]; }

    [[nodiscard]] CMatrix eval(cplx L) const;

private:
    std::size_t q_ = 0;
    std::vector<ComplexPoly> entries_;
};

struct CharTerm {
    int k = 0;  ///< power of λ
    int j = 0;  ///< power of ĥ(λ)
    ComplexPoly p;
};

class CharFun {
public:
    /// Validates the term table (k < q, k + j ≤ q, one entry per (k, j)) and
    /// drops zero polynomials. Terms are stored sorted by (k, j).
    static CharFun from_terms(int q, DelayKernel kernel, std::vector<CharTerm> terms);

    [[nodiscard]] int q() const noexcept { return q_; }
    [[nodiscard]] const DelayKernel& kernel() const noexcept { return kernel_; }
    [[nodiscard]] const std::vector<CharTerm>& terms() const noexcept { return terms_; }

    /// P_{k,j}, or the zero polynomial when absent.
    [[nodiscard]] ComplexPoly term(int k, int j) const;
    [[nodiscard]] int max_j() const noexcept;
    /// Largest degree in L over all P_{k,j}.
    [[nodiscard]] int degree_in_L() const noexcept;
    /// True when every P_{k,j} has real coefficients and the kernel is real,
    /// which makes the SCCs and NU conjugate-symmetric.
    [[nodiscard]] bool real_coefficients() const noexcept;

    [[nodiscard]] cplx eval(cplx lambda, cplx L, Domain domain = Domain::right_half_plane) const;
    [[nodiscard]] cplx d_lambda(cplx lambda, cplx L, Domain domain = Domain::right_half_plane) const;
    [[nodiscard]] cplx d_L(cplx lambda, cplx L, Domain domain = Domain::right_half_plane) const;

    /// F(λ, ·) as a polynomial in L at fixed λ.
    [[nodiscard]] ComplexPoly l_polynomial(cplx lambda, Domain domain = Domain::right_half_plane) const;

private:
    int q_ = 1;
    DelayKernel kernel_;
    std::vector<CharTerm> terms_;
};

/// Symbolic cofactor expansion of det[λI − Q(L) − B(L)s] in (λ, s).
[[nodiscard]] CharFun build_charfun(const MatrixFun& Q, const MatrixFun& B, const DelayKernel& kernel);

/// Smallest R (to bisection accuracy, floor 1e−3) with
/// Σ R^{k−q} max_{|L−center|≤radius} |P_{k,j}(L)| ≤ 1/2, so that
/// |F(λ, L)| ≥ |λ|^q / 2 whenever |λ| ≥ R, Re λ ≥ 0 and L is in the disk.
[[nodiscard]] double radius_bound(const CharFun& F, cplx center, double radius);

/// Root count with Re λ ≥ 0 for kernels with a rational transform, by
/// clearing the (1 + λT/n) denominators and solving the polynomial.
/// Throws InvalidInput for Dirac{τ > 0} and Uniform kernels.
[[nodiscard]] int nu_polynomial(const CharFun& F, cplx L);

}  // namespace delaystab
