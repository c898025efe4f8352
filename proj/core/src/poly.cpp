#include "delaystab/poly.hpp"

#include <algorithm>
#include <cmath>

namespace delaystab {

ComplexPoly::ComplexPoly(std::vector<cplx> coefficients) : coeffs_(std::move(coefficients)) {
    trim();
}

ComplexPoly::ComplexPoly(std::initializer_list<cplx> coefficients) : coeffs_(coefficients) {
    trim();
}

ComplexPoly ComplexPoly::constant(cplx c) { return ComplexPoly{c}; }

ComplexPoly ComplexPoly::identity() { return ComplexPoly{cplx{0.0}, cplx{1.0}}; }

cplx ComplexPoly::coefficient(int power) const noexcept {
    if (power < 0 || power >= static_cast<int>(coeffs_.size())) return {0.0, 0.0};
    return coeffs_[static_cast<std::size_t>(power)];
}

cplx ComplexPoly::operator()(cplx x) const noexcept {
    cplx acc{0.0, 0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

ComplexPoly ComplexPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<cplx> d(coeffs_.size() - 1);
    for (std::size_t m = 1; m < coeffs_.size(); ++m) d[m - 1] = coeffs_[m] * static_cast<double>(m);
    return ComplexPoly(std::move(d));
}

double ComplexPoly::abs_bound(double rho) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * rho + std::abs(*it);
    return acc;
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t m = 0; m < other.coeffs_.size(); ++m) coeffs_[m] += other.coeffs_[m];
    trim();
    return *this;
}

ComplexPoly& ComplexPoly::operator-=(const ComplexPoly& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t m = 0; m < other.coeffs_.size(); ++m) coeffs_[m] -= other.coeffs_[m];
    trim();
    return *this;
}

ComplexPoly& ComplexPoly::operator*=(cplx scale) {
    for (auto& c : coeffs_) c *= scale;
    trim();
    return *this;
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<cplx> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return ComplexPoly(std::move(out));
}

ComplexPoly ComplexPoly::operator-() const {
    ComplexPoly out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

void ComplexPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == cplx{0.0, 0.0}) coeffs_.pop_back();
}

}  // namespace delaystab
