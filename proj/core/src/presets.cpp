#include "delaystab/presets.hpp"

#include "delaystab/errors.hpp"

namespace delaystab::presets {

CharFun scalar(cplx q0, const DelayKernel& kernel) {
    MatrixFun Q{{ComplexPoly::constant(q0)}};
    MatrixFun B{{ComplexPoly::identity()}};
    return build_charfun(Q, B, kernel);
}

CharFun example1() { return scalar(1.0, Dirac{0.5}); }

CharFun example2() {
    const cplx c{0.1, 0.1};
    MatrixFun Q{{ComplexPoly{c, cplx{-1.0}}}};
    MatrixFun B{{ComplexPoly::identity()}};
    return build_charfun(Q, B, Dirac{1.0});
}

CharFun scalar_discrete(double a, double d, double tau) {
    if (!(tau >= 0.0)) throw InvalidInput("scalar_discrete: tau must be >= 0");
    return scalar({a, d}, Dirac{tau});
}

CharFun scalar_gamma(double a, int n, double T) { return scalar(a, Gamma{n, T}); }

CharFun carfollowing(int n, double T) { return scalar(0.0, Gamma{n, T}); }

DelayKernel mas_kernel(double T) {
    if (!(T >= 0.0)) throw InvalidInput("mas: T must be >= 0");
    if (T == 0.0) return Dirac{0.0};
    return Exponential{T};
}

CharFun mas(double a, double b, double k1, double k2, double T) {
    MatrixFun Q{{ComplexPoly{}, ComplexPoly::constant(1.0)}, {ComplexPoly::constant(b), ComplexPoly::constant(a)}};
    MatrixFun B{{ComplexPoly{}, ComplexPoly{}}, {ComplexPoly{cplx{0.0}, cplx{k1}}, ComplexPoly{cplx{0.0}, cplx{k2}}}};
    return build_charfun(Q, B, mas_kernel(T));
}

CharFun kuramoto_linear(double K, double d, const DelayKernel& kernel) {
    return scalar({K / 2.0 - 1.0, d}, kernel);
}

}  // namespace delaystab::presets
