// vofrac: simulate variable-order fractional systems from a JSON config.
//
//   vofrac run <config.json>
//   vofrac compare <config.json>
//   vofrac list-systems [--json]
//
// Exit codes: 0 success, 2 configuration error, 1 any other failure. Errors
// are written to stderr as a single JSON object.

#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vofrac/export.hpp"
#include "vofrac/runner.hpp"

namespace {

int report_error(const std::string& kind, const std::string& field, const std::string& message,
                 int code) {
    nlohmann::ordered_json err;
    err["error"] = {{"kind", kind}, {"field", field}, {"message", message}};
    std::cerr << err.dump() << '\n';
    return code;
}

void print_run(const vofrac::RunOutcome& r) {
    const auto& t = r.trajectory;
    std::cout << vofrac::to_string(t.scheme().scheme) << " (" << vofrac::to_string(t.scheme().mode)
              << ")";
    if (r.sweep_value) std::cout << " sweep value " << vofrac::format_double(*r.sweep_value);
    std::cout << ": " << t.size() << " nodes, elapsed " << vofrac::format_double(t.wall_time()) << " s";
    if (t.diverged_at()) std::cout << ", diverged at step " << *t.diverged_at();
    std::cout << '\n';
    for (const auto& path : r.written) std::cout << "  wrote " << path.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variable-order fractional system simulator"};
    app.require_subcommand(1);

    std::string run_config;
    auto* run_cmd = app.add_subcommand("run", "Run one scheme (optionally a parameter sweep)");
    run_cmd->add_option("config", run_config, "JSON configuration file")->required();

    std::string compare_config;
    auto* compare_cmd = app.add_subcommand("compare", "Run several schemes side by side");
    compare_cmd->add_option("config", compare_config, "JSON configuration file")->required();

    bool as_json = false;
    auto* list_cmd = app.add_subcommand("list-systems", "List the system catalog");
    list_cmd->add_flag("--json", as_json, "Emit the catalog as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return report_error("usage", "", e.what(), 2);
    }

    try {
        if (*list_cmd) {
            std::cout << (as_json ? vofrac::list_systems_json() : vofrac::list_systems_text());
        } else if (*run_cmd) {
            for (const auto& r : vofrac::run(vofrac::load_config(run_config))) print_run(r);
        } else if (*compare_cmd) {
            const auto result = vofrac::compare(vofrac::load_config(compare_config));
            for (const auto& r : result.runs) print_run(r);
            std::cout << result.table_csv;
        }
    } catch (const vofrac::ConfigError& e) {
        return report_error("config", e.field(), e.what(), 2);
    } catch (const std::exception& e) {
        return report_error("runtime", "", e.what(), 1);
    }
    return 0;
}
