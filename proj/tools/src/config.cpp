#include "delaystab_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace delaystab::cli {

ObjectReader::ObjectReader(const json& in, json& resolved, std::string path)
    : in_(in), resolved_(resolved), path_(std::move(path)) {
    if (!in_.is_object()) throw ConfigError(path_ + ": expected an object");
    if (!resolved_.is_object()) resolved_ = json::object();
}

bool ObjectReader::has(const std::string& key) const { return in_.contains(key); }

void ObjectReader::fail(const std::string& key, const std::string& message) const {
    throw ConfigError(path_ + "." + key + ": " + message);
}

const json& ObjectReader::field(const std::string& key) {
    if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) seen_.push_back(key);
    const auto it = in_.find(key);
    if (it == in_.end()) fail(key, "required field missing");
    return *it;
}

double ObjectReader::number(const std::string& key) {
    const json& v = field(key);
    if (!v.is_number()) fail(key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(key, "expected a finite number");
    resolved_[key] = x;
    return x;
}

double ObjectReader::number(const std::string& key, double fallback) {
    if (!has(key)) {
        seen_.push_back(key);
        resolved_[key] = fallback;
        return fallback;
    }
    return number(key);
}

double ObjectReader::extended_number(const std::string& key, double fallback) {
    if (!has(key)) {
        seen_.push_back(key);
        resolved_[key] = number_to_json(fallback);
        return fallback;
    }
    const json& v = field(key);
    double x = 0.0;
    if (v.is_string() && v.get<std::string>() == "inf") {
        x = std::numeric_limits<double>::infinity();
    } else if (v.is_number()) {
        x = v.get<double>();
    } else {
        fail(key, "expected a number or \"inf\"");
    }
    resolved_[key] = number_to_json(x);
    return x;
}

long long ObjectReader::integer(const std::string& key) {
    const json& v = field(key);
    if (v.is_number_integer()) {
        const auto x = v.get<long long>();
        resolved_[key] = x;
        return x;
    }
    if (v.is_number_float()) {
        const double x = v.get<double>();
        if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9e15) {
            resolved_[key] = static_cast<long long>(x);
            return static_cast<long long>(x);
        }
    }
    fail(key, "expected an integer");
}

long long ObjectReader::integer(const std::string& key, long long fallback) {
    if (!has(key)) {
        seen_.push_back(key);
        resolved_[key] = fallback;
        return fallback;
    }
    return integer(key);
}

std::uint64_t ObjectReader::seed(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) {
        seen_.push_back(key);
        resolved_[key] = fallback;
        return fallback;
    }
    const json& v = field(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        fail(key, "expected a non-negative integer");
    const auto x = v.get<std::uint64_t>();
    resolved_[key] = x;
    return x;
}

bool ObjectReader::boolean(const std::string& key, bool fallback) {
    if (!has(key)) {
        seen_.push_back(key);
        resolved_[key] = fallback;
        return fallback;
    }
    const json& v = field(key);
    if (!v.is_boolean()) fail(key, "expected true or false");
    resolved_[key] = v.get<bool>();
    return v.get<bool>();
}

std::string ObjectReader::string(const std::string& key) {
    const json& v = field(key);
    if (!v.is_string()) fail(key, "expected a string");
    resolved_[key] = v.get<std::string>();
    return v.get<std::string>();
}

std::string ObjectReader::string(const std::string& key, const std::string& fallback) {
    if (!has(key)) {
        seen_.push_back(key);
        resolved_[key] = fallback;
        return fallback;
    }
    return string(key);
}

std::complex<double> ObjectReader::complex(const std::string& key) {
    const auto z = complex_from_json(field(key), path_ + "." + key);
    resolved_[key] = complex_to_json(z);
    return z;
}

std::complex<double> ObjectReader::complex(const std::string& key, std::complex<double> fallback) {
    if (!has(key)) {
        seen_.push_back(key);
        resolved_[key] = complex_to_json(fallback);
        return fallback;
    }
    return complex(key);
}

std::vector<double> ObjectReader::numbers(const std::string& key) {
    const json& v = field(key);
    if (!v.is_array()) fail(key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number() || !std::isfinite(e.get<double>())) fail(key, "expected an array of finite numbers");
        out.push_back(e.get<double>());
    }
    resolved_[key] = out;
    return out;
}

std::optional<std::vector<double>> ObjectReader::optional_numbers(const std::string& key) {
    if (!has(key)) {
        seen_.push_back(key);
        return std::nullopt;
    }
    return numbers(key);
}

ObjectReader ObjectReader::object(const std::string& key) {
    const json& v = field(key);
    if (!v.is_object()) fail(key, "expected an object");
    json& child = resolved_[key];
    child = json::object();
    return ObjectReader(v, child, path_ + "." + key);
}

ObjectReader ObjectReader::optional_object(const std::string& key) {
    static const json empty = json::object();
    if (has(key)) return object(key);
    seen_.push_back(key);
    json& child = resolved_[key];
    child = json::object();
    return ObjectReader(empty, child, path_ + "." + key);
}

const json& ObjectReader::raw(const std::string& key) { return field(key); }

void ObjectReader::echo(const std::string& key, const json& value) { resolved_[key] = value; }

void ObjectReader::finish() const {
    std::string unknown;
    for (auto it = in_.begin(); it != in_.end(); ++it) {
        if (std::find(seen_.begin(), seen_.end(), it.key()) != seen_.end()) continue;
        if (!unknown.empty()) unknown += ", ";
        unknown += it.key();
    }
    if (!unknown.empty()) throw ConfigError(path_ + ": unknown field(s): " + unknown);
}

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": malformed JSON: " + e.what());
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str(), path);
}

std::complex<double> complex_from_json(const json& value, const std::string& where) {
    if (value.is_number()) {
        const double x = value.get<double>();
        if (std::isfinite(x)) return {x, 0.0};
    } else if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
        const double re = value[0].get<double>(), im = value[1].get<double>();
        if (std::isfinite(re) && std::isfinite(im)) return {re, im};
    }
    throw ConfigError(where + ": expected a finite number or a [re, im] pair");
}

json complex_to_json(std::complex<double> value) { return json::array({value.real(), value.imag()}); }

json number_to_json(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return value;
}

}  // namespace delaystab::cli
