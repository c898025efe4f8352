#pragma once

// Subcommand bodies. Each reads its config through a strict reader, fills
// the resolved config, writes its artifacts and returns a summary that the
// manifest embeds.

#include "delaystab_cli/artifacts.hpp"
#include "delaystab_cli/config.hpp"

#include <string>
#include <vector>

namespace delaystab::cli {

struct RunContext {
    int jobs = 1;
    bool full_oracle = false;
    bool paper_scale = false;
};

json run_scc(const json& config, json& resolved, const RunContext& ctx, Artifacts& out);
json run_numap(const json& config, json& resolved, const RunContext& ctx, Artifacts& out);
json run_critical(const json& config, json& resolved, const RunContext& ctx, Artifacts& out);
json run_simulate(const json& config, json& resolved, const RunContext& ctx, Artifacts& out);
json run_reproduce(const std::string& figure, const json& config, json& resolved, const RunContext& ctx,
                   Artifacts& out);

[[nodiscard]] const std::vector<std::string>& reproducible_figures();

}  // namespace delaystab::cli
