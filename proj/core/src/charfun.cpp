#include "delaystab/charfun.hpp"

#include "delaystab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

namespace delaystab {

MatrixFun::MatrixFun(std::initializer_list<std::initializer_list<ComplexPoly>> rows)
    : q_(rows.size()), entries_() {
    entries_.reserve(q_ * q_);
    for (const auto& r : rows) {
        if (r.size() != q_) throw InvalidInput("MatrixFun: rows must form a square matrix");
        entries_.insert(entries_.end(), r.begin(), r.end());
    }
}

CMatrix MatrixFun::eval(cplx L) const {
    CMatrix m(q_, q_);
    for (std::size_t i = 0; i < q_; ++i)
        for (std::size_t j = 0; j < q_; ++j) m(i, j) = (*this)(i, j)(L);
    return m;
}

namespace {

// Polynomial in (λ, s) with coefficients that are polynomials in L.
using Bivariate = std::map<std::pair<int, int>, ComplexPoly>;

Bivariate multiply(const Bivariate& a, const Bivariate& b) {
    Bivariate out;
    for (const auto& [ka, pa] : a) {
        for (const auto& [kb, pb] : b) {
            ComplexPoly prod = pa * pb;
            if (prod.is_zero()) continue;
            out[{ka.first + kb.first, ka.second + kb.second}] += prod;
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

void accumulate(Bivariate& into, const Bivariate& term, bool negate) {
    for (const auto& [key, p] : term) {
        if (negate) {
            into[key] -= p;
        } else {
            into[key] += p;
        }
    }
    std::erase_if(into, [](const auto& kv) { return kv.second.is_zero(); });
}

// Cofactor expansion along the first remaining row.
Bivariate det_recursive(const std::vector<Bivariate>& m, std::size_t q, std::size_t row,
                        std::vector<bool>& used_cols) {
    if (row == q) return Bivariate{{{0, 0}, ComplexPoly::constant(1.0)}};
    Bivariate total;
    int sign_index = 0;
    for (std::size_t c = 0; c < q; ++c) {
        if (used_cols[c]) continue;
        const Bivariate& entry = m[row * q + c];
        if (!entry.empty()) {
            used_cols[c] = true;
            Bivariate minor = det_recursive(m, q, row + 1, used_cols);
            used_cols[c] = false;
            accumulate(total, multiply(entry, minor), sign_index % 2 == 1);
        }
        ++sign_index;
    }
    return total;
}

cplx ipow(cplx base, int n) {
    cplx result{1.0, 0.0};
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

ComplexPoly poly_pow(const ComplexPoly& p, int n) {
    ComplexPoly result = ComplexPoly::constant(1.0);
    for (int i = 0; i < n; ++i) result = result * p;
    return result;
}

}  // namespace

CharFun CharFun::from_terms(int q, DelayKernel kernel, std::vector<CharTerm> terms) {
    if (q < 1) throw InvalidInput("charfun: q must be >= 1");
    validate(kernel);
    std::map<std::pair<int, int>, ComplexPoly> table;
    for (auto& t : terms) {
        if (t.k < 0 || t.j < 0) throw InvalidInput("charfun: term powers must be nonnegative");
        if (t.p.is_zero()) continue;
        if (t.k >= q) {
            std::ostringstream os;
            os << "charfun: term lambda^" << t.k << " h^" << t.j
               << " at or above the leading power " << q
               << " is not of retarded type (neutral systems are not supported)";
            throw InvalidInput(os.str());
        }
        if (t.k + t.j > q) {
            std::ostringstream os;
            os << "charfun: term lambda^" << t.k << " h^" << t.j << " exceeds total degree " << q;
            throw InvalidInput(os.str());
        }
        if (!table.emplace(std::pair{t.k, t.j}, std::move(t.p)).second)
            throw InvalidInput("charfun: duplicate (k, j) term");
    }
    CharFun f;
    f.q_ = q;
    f.kernel_ = std::move(kernel);
    for (auto& [key, p] : table) f.terms_.push_back({key.first, key.second, std::move(p)});
    return f;
}

ComplexPoly CharFun::term(int k, int j) const {
    for (const auto& t : terms_)
        if (t.k == k && t.j == j) return t.p;
    return {};
}

int CharFun::max_j() const noexcept {
    int m = 0;
    for (const auto& t : terms_) m = std::max(m, t.j);
    return m;
}

int CharFun::degree_in_L() const noexcept {
    int m = 0;
    for (const auto& t : terms_) m = std::max(m, t.p.degree());
    return m;
}

bool CharFun::real_coefficients() const noexcept {
    for (const auto& t : terms_)
        for (const auto& c : t.p.coefficients())
            if (c.imag() != 0.0) return false;
    return true;
}

cplx CharFun::eval(cplx lambda, cplx L, Domain domain) const {
    const cplx s = max_j() > 0 ? laplace(kernel_, lambda, domain) : cplx{1.0, 0.0};
    cplx acc = ipow(lambda, q_);
    for (const auto& t : terms_) acc -= t.p(L) * ipow(lambda, t.k) * ipow(s, t.j);
    return acc;
}

cplx CharFun::d_lambda(cplx lambda, cplx L, Domain domain) const {
    const bool has_kernel = max_j() > 0;
    const cplx s = has_kernel ? laplace(kernel_, lambda, domain) : cplx{1.0, 0.0};
    const cplx ds = has_kernel ? laplace_derivative(kernel_, lambda, domain) : cplx{0.0, 0.0};
    cplx acc = static_cast<double>(q_) * ipow(lambda, q_ - 1);
    for (const auto& t : terms_) {
        cplx d{0.0, 0.0};
        if (t.k > 0) d += static_cast<double>(t.k) * ipow(lambda, t.k - 1) * ipow(s, t.j);
        if (t.j > 0) d += ipow(lambda, t.k) * static_cast<double>(t.j) * ipow(s, t.j - 1) * ds;
        acc -= t.p(L) * d;
    }
    return acc;
}

cplx CharFun::d_L(cplx lambda, cplx L, Domain domain) const {
    const cplx s = max_j() > 0 ? laplace(kernel_, lambda, domain) : cplx{1.0, 0.0};
    cplx acc{0.0, 0.0};
    for (const auto& t : terms_) acc -= t.p.derivative()(L) * ipow(lambda, t.k) * ipow(s, t.j);
    return acc;
}

ComplexPoly CharFun::l_polynomial(cplx lambda, Domain domain) const {
    const cplx s = max_j() > 0 ? laplace(kernel_, lambda, domain) : cplx{1.0, 0.0};
    ComplexPoly acc = ComplexPoly::constant(ipow(lambda, q_));
    for (const auto& t : terms_) acc -= t.p * (ipow(lambda, t.k) * ipow(s, t.j));
    return acc;
}

CharFun build_charfun(const MatrixFun& Q, const MatrixFun& B, const DelayKernel& kernel) {
    const std::size_t q = Q.size();
    if (q == 0) throw InvalidInput("build_charfun: dimension must be >= 1");
    if (B.size() != q) throw InvalidInput("build_charfun: Q and B dimensions differ");

    std::vector<Bivariate> m(q * q);
    for (std::size_t r = 0; r < q; ++r) {
        for (std::size_t c = 0; c < q; ++c) {
            Bivariate e;
            if (r == c) e[{1, 0}] = ComplexPoly::constant(1.0);
            if (!Q(r, c).is_zero()) e[{0, 0}] = -Q(r, c);
            if (!B(r, c).is_zero()) e[{0, 1}] = -B(r, c);
            m[r * q + c] = std::move(e);
        }
    }
    std::vector<bool> used(q, false);
    Bivariate det = det_recursive(m, q, 0, used);

    const int qi = static_cast<int>(q);
    std::vector<CharTerm> terms;
    for (auto& [key, p] : det) {
        if (key == std::pair{qi, 0}) {
            if (!(p == ComplexPoly::constant(1.0)))
                throw NumericalFailure("build_charfun: leading coefficient is not 1");
            continue;
        }
        terms.push_back({key.first, key.second, -p});
    }
    return CharFun::from_terms(qi, kernel, std::move(terms));
}

double radius_bound(const CharFun& F, cplx center, double radius) {
    if (!(radius >= 0.0) || !std::isfinite(radius) || !std::isfinite(std::abs(center)))
        throw InvalidInput("radius_bound: window must be a bounded disk");
    const double outer = std::abs(center) + radius;
    std::vector<std::pair<int, double>> bounds;
    for (const auto& t : F.terms()) bounds.emplace_back(t.k - F.q(), t.p.abs_bound(outer));
    auto excess = [&](double R) {
        double s = 0.0;
        for (const auto& [power, m] : bounds) s += m * std::pow(R, power);
        return s;
    };
    constexpr double floor_r = 1e-3;
    double hi = 1.0;
    double lo;
    if (excess(hi) > 0.5) {
        while (excess(hi) > 0.5) hi *= 2.0;
        lo = hi / 2.0;
    } else {
        while (hi > floor_r && excess(hi / 2.0) <= 0.5) hi /= 2.0;
        if (hi <= floor_r) return floor_r;
        lo = hi / 2.0;
    }
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) > 0.5) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::max(hi, floor_r);
}

int nu_polynomial(const CharFun& F, cplx L) {
    RationalForm rf;
    if (F.max_j() > 0 && !rational_form(F.kernel(), rf))
        throw InvalidInput("nu_polynomial: kernel has no rational transform");
    const int J = F.max_j();
    const ComplexPoly w = rf.n > 0 ? ComplexPoly{cplx{1.0}, cplx{rf.T / rf.n}} : ComplexPoly::constant(1.0);
    const ComplexPoly lambda = ComplexPoly::identity();

    ComplexPoly g = poly_pow(lambda, F.q()) * poly_pow(w, rf.n * J);
    for (const auto& t : F.terms())
        g -= (poly_pow(lambda, t.k) * poly_pow(w, rf.n * (J - t.j))) * t.p(L);

    int count = 0;
    for (const cplx& r : polynomial_roots(g.coefficients()))
        if (r.real() >= -1e-10 * std::max(1.0, std::abs(r))) ++count;
    return count;
}

}  // namespace delaystab
