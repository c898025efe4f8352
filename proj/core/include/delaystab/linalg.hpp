#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace delaystab {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Sized for network matrices of a few
/// hundred rows and companion matrices of small polynomials.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<cplx> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    [[nodiscard]] std::span<const cplx> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }

    [[nodiscard]] cplx trace() const noexcept;
    [[nodiscard]] double frobenius_norm() const noexcept;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

struct EigenOptions {
    double deflation_tol = 1e-12;
    int max_iterations_per_eigenvalue = 60;
    int exceptional_shift_every = 10;
    bool balance = true;
};

/// All eigenvalues of a square matrix: diagonal balancing, Householder
/// reduction to upper Hessenberg form, then single-shift complex QR with a
/// Wilkinson shift. Throws EigenNoConvergence with iteration diagnostics.
[[nodiscard]] std::vector<cplx> eigenvalues(CMatrix a, const EigenOptions& options = {});

/// Determinant by LU factorisation with partial pivoting.
[[nodiscard]] cplx determinant(CMatrix a);

/// All roots of Σ c_m x^m (ascending coefficients). Zero leading
/// coefficients are dropped; each root gets a Newton polish.
[[nodiscard]] std::vector<cplx> polynomial_roots(std::span<const cplx> ascending);

}  // namespace delaystab
