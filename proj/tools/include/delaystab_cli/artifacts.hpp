#pragma once

#include "delaystab_cli/config.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace delaystab::cli {

/// Git blob id: SHA-1 of "blob <size>\0" followed by the content.
[[nodiscard]] std::string git_blob_hash(std::string_view content);

/// Output directory plus a record of every file written to it.
class Artifacts {
public:
    explicit Artifacts(std::filesystem::path dir);

    void write(const std::string& name, std::string_view content);
    void write_json(const std::string& name, const json& doc);

    [[nodiscard]] const std::filesystem::path& dir() const noexcept { return dir_; }
    [[nodiscard]] const json& listing() const noexcept { return listing_; }

private:
    std::filesystem::path dir_;
    json listing_ = json::array();
};

}  // namespace delaystab::cli
