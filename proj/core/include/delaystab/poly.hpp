#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace delaystab {

using cplx = std::complex<double>;

/// Polynomial with complex coefficients in ascending degree. The trailing
/// coefficient is nonzero unless the polynomial is zero (empty coefficients).
class ComplexPoly {
public:
    ComplexPoly() = default;
    explicit ComplexPoly(std::vector<cplx> coefficients);
    ComplexPoly(std::initializer_list<cplx> coefficients);

    static ComplexPoly constant(cplx c);
    /// The identity polynomial p(L) = L.
    static ComplexPoly identity();

    [[nodiscard]] const std::vector<cplx>& coefficients() const noexcept { return coeffs_; }
    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Degree; −1 for the zero polynomial.
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] cplx coefficient(int power) const noexcept;

    [[nodiscard]] cplx operator()(cplx x) const noexcept;
    [[nodiscard]] ComplexPoly derivative() const;

    /// Σ |p_m| ρ^m, an upper bound of |p(L)| over |L| ≤ ρ.
    [[nodiscard]] double abs_bound(double rho) const noexcept;

    ComplexPoly& operator+=(const ComplexPoly& other);
    ComplexPoly& operator-=(const ComplexPoly& other);
    ComplexPoly& operator*=(cplx scale);

    friend ComplexPoly operator+(ComplexPoly a, const ComplexPoly& b) { return a += b; }
    friend ComplexPoly operator-(ComplexPoly a, const ComplexPoly& b) { return a -= b; }
    friend ComplexPoly operator*(ComplexPoly a, cplx s) { return a *= s; }
    friend ComplexPoly operator*(cplx s, ComplexPoly a) { return a *= s; }
    friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);
    ComplexPoly operator-() const;

    friend bool operator==(const ComplexPoly&, const ComplexPoly&) = default;

private:
    void trim();
    std::vector<cplx> coeffs_;
};

}  // namespace delaystab
