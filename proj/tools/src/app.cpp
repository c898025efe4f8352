#include "delaystab_cli/app.hpp"

#include "delaystab_cli/artifacts.hpp"
#include "delaystab_cli/commands.hpp"
#include "delaystab_cli/config.hpp"

#include "delaystab/errors.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ostream>
#include <string>

namespace delaystab::cli {

namespace {

struct Options {
    std::string config;
    std::string out = "out";
    int jobs = 1;
    bool full_oracle = false;
    bool paper_scale = false;
    std::string figure;
};

void add_common(CLI::App* sub, Options& o, bool config_required) {
    auto* c = sub->add_option("--config", o.config, "experiment config (JSON)");
    if (config_required) c->required();
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1, 1024))->capture_default_str();
    sub->add_flag("--full-oracle", o.full_oracle, "check every cell against the contour oracle");
    sub->add_flag("--paper-scale", o.paper_scale, "use full-resolution grids and trial counts");
}

int execute(const std::string& command, const Options& o, std::ostream& out) {
    const json config = o.config.empty() ? json::object() : load_json_file(o.config);
    if (!config.is_object()) throw ConfigError("config: top level must be an object");
    RunContext ctx{o.jobs, o.full_oracle, o.paper_scale};
    Artifacts artifacts(o.out);
    json resolved = json::object();
    const auto t0 = std::chrono::steady_clock::now();
    json summary;
    if (command == "scc") {
        summary = run_scc(config, resolved, ctx, artifacts);
    } else if (command == "numap") {
        summary = run_numap(config, resolved, ctx, artifacts);
    } else if (command == "critical") {
        summary = run_critical(config, resolved, ctx, artifacts);
    } else if (command == "simulate") {
        summary = run_simulate(config, resolved, ctx, artifacts);
    } else {
        summary = run_reproduce(o.figure, config, resolved, ctx, artifacts);
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json manifest = {{"command", command},
                     {"library_version", DELAYSTAB_VERSION},
                     {"config", resolved},
                     {"config_hash", git_blob_hash(resolved.dump())},
                     {"jobs", o.jobs},
                     {"full_oracle", o.full_oracle},
                     {"paper_scale", o.paper_scale},
                     {"outputs", artifacts.listing()},
                     {"summary", summary},
                     {"wall_time_seconds", wall}};
    if (command == "reproduce") manifest["figure"] = o.figure;
    artifacts.write_json("manifest.json", manifest);
    out << summary.dump(2) << '\n';
    return exit_ok;
}

}  // namespace

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stability regions of linear delay systems with a complex gain"};
    app.set_version_flag("--version", std::string(DELAYSTAB_VERSION));
    app.require_subcommand(1, 1);
    Options o;
    add_common(app.add_subcommand("scc", "trace stability crossing curves"), o, true);
    add_common(app.add_subcommand("numap", "label a window by the number of unstable roots"), o, true);
    add_common(app.add_subcommand("critical", "closed-form critical delays and gains"), o, true);
    add_common(app.add_subcommand("simulate", "time-domain simulation and rate estimate"), o, true);
    auto* rep = app.add_subcommand("reproduce", "regenerate a figure's data at desk scale");
    std::string figures;
    for (const auto& id : reproducible_figures()) figures += (figures.empty() ? "" : ", ") + id;
    rep->add_option("figure", o.figure, "one of: " + figures)->required();
    add_common(rep, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << DELAYSTAB_VERSION << '\n';
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return execute(command, o, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_invalid;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

}  // namespace delaystab::cli
