#pragma once

// Strict reader over JSON experiment configs. Every field read through an
// ObjectReader is echoed, with its default filled in, into a resolved
// document; finish() rejects fields that were never read.

#include <json.hpp>

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace delaystab::cli {

using json = nlohmann::json;

/// Malformed or schema-violating configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ObjectReader {
public:
    ObjectReader(const json& in, json& resolved, std::string path);

    [[nodiscard]] bool has(const std::string& key) const;

    double number(const std::string& key);
    double number(const std::string& key, double fallback);
    /// Accepts a number, the string "inf", or omission (fallback).
    double extended_number(const std::string& key, double fallback);
    long long integer(const std::string& key);
    long long integer(const std::string& key, long long fallback);
    std::uint64_t seed(const std::string& key, std::uint64_t fallback);
    bool boolean(const std::string& key, bool fallback);
    std::string string(const std::string& key);
    std::string string(const std::string& key, const std::string& fallback);
    /// A complex value: a number or a [re, im] pair.
    std::complex<double> complex(const std::string& key);
    std::complex<double> complex(const std::string& key, std::complex<double> fallback);
    std::vector<double> numbers(const std::string& key);
    std::optional<std::vector<double>> optional_numbers(const std::string& key);

    /// Nested object reader; the resolved child is created on demand.
    ObjectReader object(const std::string& key);
    /// As object(), but a missing key reads as an empty object.
    ObjectReader optional_object(const std::string& key);
    [[nodiscard]] const json& raw(const std::string& key);
    /// Copies a sub-document verbatim into the resolved output.
    void echo(const std::string& key, const json& value);

    /// Throws ConfigError naming every field that was not read.
    void finish() const;

    [[nodiscard]] const std::string& path() const noexcept { return path_; }
    [[noreturn]] void fail(const std::string& key, const std::string& message) const;

private:
    const json& field(const std::string& key);

    const json& in_;
    json& resolved_;
    std::string path_;
    std::vector<std::string> seen_;
};

/// Parses text, mapping syntax errors to ConfigError.
[[nodiscard]] json parse_json(const std::string& text, const std::string& origin);
[[nodiscard]] json load_json_file(const std::string& path);

/// Complex value from a number or a [re, im] pair.
[[nodiscard]] std::complex<double> complex_from_json(const json& value, const std::string& where);
[[nodiscard]] json complex_to_json(std::complex<double> value);
/// Finite numbers stay numbers; ±inf and nan become "inf", "-inf", "nan".
[[nodiscard]] json number_to_json(double value);

}  // namespace delaystab::cli
