#pragma once

// JSON encodings of the library's value types.
//
//   kernel   {"kind":"dirac","tau":0.5} | {"kind":"uniform","a":0,"A":1}
//            | {"kind":"gamma","n":2,"T":1} | {"kind":"exponential","T":1}
//   system   {"preset":"example5","a":1,"d":0,"tau":0.5} or
//            {"preset":"custom","Q":[[poly]],"B":[[poly]],"kernel":{...}}
//            where poly is an ascending coefficient list of numbers or [re, im]
//   network  {"kind":"ring","N":10,"alpha":1} | {"kind":"chain",...}
//            | {"kind":"laplacian","weights":[[...]]}
//            | {"kind":"random","N":100,"R":2,"alpha":0.5,"seed":0}
//   window   {"re":[lo, hi],"im":[lo, hi]}

#include "delaystab/charfun.hpp"
#include "delaystab/kernels.hpp"
#include "delaystab/networks.hpp"
#include "delaystab/simulate.hpp"
#include "delaystab/window.hpp"
#include "delaystab_cli/config.hpp"

#include <string>

namespace delaystab::cli {

[[nodiscard]] DelayKernel read_kernel(ObjectReader reader);
[[nodiscard]] json kernel_to_json(const DelayKernel& kernel);

[[nodiscard]] ComplexPoly poly_from_json(const json& value, const std::string& where);
[[nodiscard]] json poly_to_json(const ComplexPoly& p);

struct SystemSpec {
    std::string preset;
    CharFun F;
    Window default_window;
};

[[nodiscard]] SystemSpec read_system(ObjectReader reader);
/// Term table {"q":..,"kernel":..,"terms":[{"k":..,"j":..,"p":poly}]}.
[[nodiscard]] json charfun_to_json(const CharFun& F);
[[nodiscard]] CharFun charfun_from_json(const json& value);

[[nodiscard]] NetworkSpec read_network(ObjectReader reader);
[[nodiscard]] json network_to_json(const NetworkSpec& net);

[[nodiscard]] Window read_window(ObjectReader reader);
[[nodiscard]] json window_to_json(const Window& w);

[[nodiscard]] SimConfig read_sim(ObjectReader reader, const SimConfig& defaults);

}  // namespace delaystab::cli
