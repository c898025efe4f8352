#include "delaystab_cli/codecs.hpp"

#include "delaystab/errors.hpp"
#include "delaystab/presets.hpp"

#include <cmath>
#include <type_traits>

namespace delaystab::cli {

DelayKernel read_kernel(ObjectReader r) {
    const std::string kind = r.string("kind");
    DelayKernel k;
    if (kind == "dirac") {
        k = Dirac{r.number("tau")};
    } else if (kind == "uniform") {
        k = Uniform{r.number("a", 0.0), r.number("A")};
    } else if (kind == "gamma") {
        k = Gamma{static_cast<int>(r.integer("n")), r.number("T")};
    } else if (kind == "exponential") {
        k = Exponential{r.number("T")};
    } else {
        r.fail("kind", "unknown kernel kind '" + kind + "' (dirac, uniform, gamma, exponential)");
    }
    r.finish();
    try {
        validate(k);
    } catch (const InvalidInput& e) {
        throw ConfigError(r.path() + ": " + e.what());
    }
    return k;
}

json kernel_to_json(const DelayKernel& kernel) {
    return std::visit(
        [](const auto& k) -> json {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Dirac>) {
                return {{"kind", "dirac"}, {"tau", k.tau}};
            } else if constexpr (std::is_same_v<K, Uniform>) {
                return {{"kind", "uniform"}, {"a", k.a}, {"A", k.A}};
            } else if constexpr (std::is_same_v<K, Gamma>) {
                return {{"kind", "gamma"}, {"n", k.n}, {"T", k.T}};
            } else {
                return {{"kind", "exponential"}, {"T", k.T}};
            }
        },
        kernel);
}

ComplexPoly poly_from_json(const json& value, const std::string& where) {
    if (value.is_number()) return ComplexPoly::constant(complex_from_json(value, where));
    if (!value.is_array()) throw ConfigError(where + ": expected a coefficient list");
    std::vector<cplx> coeffs;
    for (std::size_t m = 0; m < value.size(); ++m)
        coeffs.push_back(complex_from_json(value[m], where + "[" + std::to_string(m) + "]"));
    return ComplexPoly(std::move(coeffs));
}

json poly_to_json(const ComplexPoly& p) {
    json out = json::array();
    for (const cplx& c : p.coefficients()) out.push_back(complex_to_json(c));
    return out;
}

namespace {

MatrixFun matrix_from_json(const json& value, const std::string& where) {
    if (!value.is_array() || value.empty()) throw ConfigError(where + ": expected a non-empty square matrix");
    const std::size_t q = value.size();
    MatrixFun M(q);
    for (std::size_t i = 0; i < q; ++i) {
        if (!value[i].is_array() || value[i].size() != q)
            throw ConfigError(where + ": row " + std::to_string(i) + " must have " + std::to_string(q) + " entries");
        for (std::size_t j = 0; j < q; ++j)
            M(i, j) = poly_from_json(value[i][j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    return M;
}

Window box(double re_lo, double re_hi, double im_lo, double im_hi) { return {re_lo, re_hi, im_lo, im_hi}; }

}  // namespace

SystemSpec read_system(ObjectReader r) {
    SystemSpec s;
    s.preset = r.string("preset");
    const std::string& p = s.preset;
    try {
        if (p == "example1") {
            s.F = presets::example1();
            s.default_window = box(-4, 4, -4, 4);
        } else if (p == "example2") {
            s.F = presets::example2();
            s.default_window = box(-1, 3, -1, 7);
        } else if (p == "example5" || p == "example5-unstable") {
            const bool unstable = p == "example5-unstable";
            const double a = r.number("a", 1.0);
            const double d = r.number("d", 0.0);
            const double tau = r.number("tau", unstable ? 2.0 : 0.5);
            if (unstable && !(a * tau > 1.0)) r.fail("tau", "example5-unstable needs a*tau > 1");
            s.F = presets::scalar_discrete(a, d, tau);
            s.default_window = box(-4, 2, -3, 3);
        } else if (p == "example6") {
            const double a = r.number("a", 1.0);
            const auto n = static_cast<int>(r.integer("n", 1));
            const double T = r.number("T", 0.5);
            s.F = presets::scalar_gamma(a, n, T);
            s.default_window = box(-6, 2, -4, 4);
        } else if (p == "carfollowing") {
            const auto n = static_cast<int>(r.integer("n", 1));
            const double T = r.number("T", 1.0);
            s.F = presets::carfollowing(n, T);
            s.default_window = box(-3, 1, -2, 2);
        } else if (p == "mas") {
            const double a = r.number("a", 1.0), b = r.number("b", 1.0);
            const double k1 = r.number("k1", 1.0), k2 = r.number("k2", 1.1);
            const double T = r.number("T", 0.05);
            s.F = presets::mas(a, b, k1, k2, T);
            s.default_window = box(-6, 1, -3, 3);
        } else if (p == "kuramoto") {
            const double K = r.number("K", 4.0), d = r.number("d", 0.0);
            DelayKernel k = Exponential{0.5};
            if (r.has("kernel")) {
                k = read_kernel(r.object("kernel"));
            } else {
                r.echo("kernel", kernel_to_json(k));
            }
            s.F = presets::kuramoto_linear(K, d, k);
            s.default_window = box(-20, 5, -12, 12);
        } else if (p == "custom") {
            const MatrixFun Q = matrix_from_json(r.raw("Q"), r.path() + ".Q");
            const MatrixFun B = matrix_from_json(r.raw("B"), r.path() + ".B");
            r.echo("Q", r.raw("Q"));
            r.echo("B", r.raw("B"));
            const DelayKernel k = read_kernel(r.object("kernel"));
            s.F = build_charfun(Q, B, k);
            s.default_window = box(-4, 4, -4, 4);
        } else {
            r.fail("preset", "unknown preset '" + p +
                                 "' (example1, example2, example5, example5-unstable, example6, carfollowing, mas, "
                                 "kuramoto, custom)");
        }
    } catch (const InvalidInput& e) {
        throw ConfigError(r.path() + ": " + e.what());
    }
    r.finish();
    return s;
}

json charfun_to_json(const CharFun& F) {
    json terms = json::array();
    for (const CharTerm& t : F.terms()) terms.push_back({{"k", t.k}, {"j", t.j}, {"p", poly_to_json(t.p)}});
    return {{"q", F.q()}, {"kernel", kernel_to_json(F.kernel())}, {"terms", terms}};
}

CharFun charfun_from_json(const json& value) {
    json resolved;
    ObjectReader r(value, resolved, "charfun");
    const auto q = static_cast<int>(r.integer("q"));
    const DelayKernel k = read_kernel(r.object("kernel"));
    const json& raw = r.raw("terms");
    if (!raw.is_array()) r.fail("terms", "expected an array");
    std::vector<CharTerm> terms;
    for (std::size_t m = 0; m < raw.size(); ++m) {
        json tr;
        ObjectReader t(raw[m], tr, "charfun.terms[" + std::to_string(m) + "]");
        CharTerm term;
        term.k = static_cast<int>(t.integer("k"));
        term.j = static_cast<int>(t.integer("j"));
        term.p = poly_from_json(t.raw("p"), t.path() + ".p");
        t.finish();
        terms.push_back(std::move(term));
    }
    r.finish();
    try {
        return CharFun::from_terms(q, k, std::move(terms));
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("charfun: ") + e.what());
    }
}

NetworkSpec read_network(ObjectReader r) {
    const std::string kind = r.string("kind");
    NetworkSpec net;
    if (kind == "ring") {
        net = Ring{static_cast<int>(r.integer("N")), r.number("alpha", 1.0)};
    } else if (kind == "chain") {
        net = Chain{static_cast<int>(r.integer("N")), r.number("alpha", 1.0)};
    } else if (kind == "laplacian") {
        const json& w = r.raw("weights");
        Laplacian lap;
        if (!w.is_array()) r.fail("weights", "expected a square matrix");
        for (const auto& row : w) {
            if (!row.is_array()) r.fail("weights", "expected a square matrix");
            std::vector<double> vals;
            for (const auto& e : row) {
                if (!e.is_number()) r.fail("weights", "expected numbers");
                vals.push_back(e.get<double>());
            }
            lap.weights.push_back(std::move(vals));
        }
        r.echo("weights", w);
        net = lap;
    } else if (kind == "random") {
        net = RandomNet{static_cast<int>(r.integer("N")), r.number("R"), r.number("alpha"), r.seed("seed", 0)};
    } else {
        r.fail("kind", "unknown network kind '" + kind + "' (ring, chain, laplacian, random)");
    }
    r.finish();
    try {
        validate(net);
    } catch (const InvalidInput& e) {
        throw ConfigError(r.path() + ": " + e.what());
    }
    return net;
}

json network_to_json(const NetworkSpec& net) {
    return std::visit(
        [](const auto& n) -> json {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Ring>) {
                return {{"kind", "ring"}, {"N", n.N}, {"alpha", n.alpha}};
            } else if constexpr (std::is_same_v<N, Chain>) {
                return {{"kind", "chain"}, {"N", n.N}, {"alpha", n.alpha}};
            } else if constexpr (std::is_same_v<N, Laplacian>) {
                return {{"kind", "laplacian"}, {"weights", n.weights}};
            } else {
                return {{"kind", "random"}, {"N", n.N}, {"R", n.R}, {"alpha", n.alpha}, {"seed", n.seed}};
            }
        },
        net);
}

Window read_window(ObjectReader r) {
    const auto re = r.numbers("re");
    const auto im = r.numbers("im");
    r.finish();
    if (re.size() != 2 || im.size() != 2) throw ConfigError(r.path() + ": re and im must be [lo, hi] pairs");
    Window w{re[0], re[1], im[0], im[1]};
    if (!w.valid()) throw ConfigError(r.path() + ": need lo < hi on both axes");
    return w;
}

json window_to_json(const Window& w) { return {{"re", {w.re_lo, w.re_hi}}, {"im", {w.im_lo, w.im_hi}}}; }

SimConfig read_sim(ObjectReader r, const SimConfig& defaults) {
    SimConfig c = defaults;
    c.dt = r.number("dt", defaults.dt);
    c.horizon = r.number("horizon", defaults.horizon);
    c.rate_window_fraction = r.number("rate_window_fraction", defaults.rate_window_fraction);
    c.rate_tol = r.number("rate_tol", defaults.rate_tol);
    c.blowup = r.number("blowup", defaults.blowup);
    c.record_every = static_cast<int>(r.integer("record_every", defaults.record_every));
    c.store_states = r.boolean("store_states", defaults.store_states);
    if (r.has("history")) {
        ObjectReader h = r.object("history");
        const std::string kind = h.string("kind", "constant");
        if (kind == "constant") {
            c.history.kind = HistorySpec::Kind::constant;
            c.history.value = h.complex("value", defaults.history.value);
        } else if (kind == "random_uniform") {
            c.history.kind = HistorySpec::Kind::random_uniform;
            c.history.amplitude = h.number("amplitude", defaults.history.amplitude);
            c.history.seed = h.seed("seed", defaults.history.seed);
        } else {
            h.fail("kind", "expected constant or random_uniform");
        }
        h.finish();
    } else {
        json hist = {{"kind", c.history.kind == HistorySpec::Kind::constant ? "constant" : "random_uniform"}};
        if (c.history.kind == HistorySpec::Kind::constant) {
            hist["value"] = complex_to_json(c.history.value);
        } else {
            hist["amplitude"] = c.history.amplitude;
            hist["seed"] = c.history.seed;
        }
        r.echo("history", hist);
    }
    r.finish();
    try {
        c.validate();
    } catch (const InvalidInput& e) {
        throw ConfigError(r.path() + ": " + e.what());
    }
    return c;
}

}  // namespace delaystab::cli
