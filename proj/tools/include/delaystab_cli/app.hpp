#pragma once

#include <iosfwd>

namespace delaystab::cli {

/// Exit codes: 0 ok, 1 numerical or runtime failure, 2 invalid config or usage.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_invalid = 2;

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace delaystab::cli
