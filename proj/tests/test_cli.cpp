#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include <json.hpp>

#include "vofrac/config.hpp"
#include "vofrac/export.hpp"
#include "vofrac/runner.hpp"
#include "vofrac/solvers.hpp"
#include "vofrac/systems.hpp"

namespace fs = std::filesystem;
using namespace vofrac;

namespace {

const fs::path kConfigs = VOFRAC_CONFIG_DIR;

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("vofrac_test_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int shell(const std::string& command) {
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string quoted(const fs::path& p) {
    return "'" + p.string() + "'";
}

const char* kMinimal = R"({
  "system": {"id": "lorenz", "preset": "fig2"},
  "scheme": {"name": "LC"},
  "grid": {"t0": 0, "t_end": 1, "h": 0.01}
})";

std::string with_field(const std::string& pointer, const nlohmann::json& value) {
    auto doc = nlohmann::json::parse(kMinimal);
    doc[nlohmann::json::json_pointer(pointer)] = value;
    return doc.dump();
}

std::string config_error_field(const std::string& text) {
    try {
        (void)parse_config(text);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<accepted>";
}

}  // namespace

TEST_CASE("config parsing fills defaults from the preset") {
    const auto cfg = parse_config(kMinimal);
    CHECK(cfg.system_id == "lorenz");
    CHECK(cfg.initial_condition == StateVector{0.1, 0.1, 0.1});
    REQUIRE(cfg.schemes.size() == 1);
    CHECK(cfg.schemes[0].scheme == Scheme::LC);
    CHECK(cfg.schemes[0].mode == SchemeMode::Reference);
    CHECK(cfg.order.is_constant());
    CHECK(cfg.output.portrait == std::array<std::size_t, 2>{0, 2});
}

TEST_CASE("config errors name the offending field") {
    CHECK(config_error_field(with_field("/grid/h", -0.01)) == "grid.h");
    CHECK(config_error_field(with_field("/grid/colour", 1)) == "grid.colour");
    CHECK(config_error_field(with_field("/extra", 1)) == "extra");
    CHECK(config_error_field(with_field("/system/id", "duffing")) == "system.id");
    CHECK(config_error_field(with_field("/system/preset", "fig9")) == "system.preset");
    CHECK(config_error_field(with_field("/system/params", {{"rho", 1}})) == "system.params.rho");
    CHECK(config_error_field(with_field("/initial_condition", {1, 2})) == "initial_condition");
    CHECK(config_error_field(with_field("/scheme/name", "euler")) == "scheme.name");
    CHECK(config_error_field(with_field("/scheme/mode", "fast")) == "scheme.mode");
    CHECK(config_error_field(with_field("/order", {{"kind", "constant"}, {"clamp", {0.0, 1.0}}})).rfind("order", 0) == 0);
    CHECK(config_error_field(with_field("/order", {{"kind", "constant"}, {"value", 1.5}})) == "<accepted>");
    CHECK(config_error_field(with_field("/order", {{"kind", "cubic"}})) == "order.kind");
    CHECK(config_error_field("{not json") != "<accepted>");
    CHECK(config_error_field(with_field("/grid/h", 0.01)) == "<accepted>");
}

TEST_CASE("scheme names are case-insensitive") {
    CHECK(parse_scheme("lc") == Scheme::LC);
    CHECK(parse_scheme("CF") == Scheme::CFC);
    CHECK(parse_scheme("ab") == Scheme::ABC);
    CHECK(parse_scheme("Rk4") == Scheme::RK4);
    CHECK_THROWS(parse_scheme("euler"));
}

TEST_CASE("every shipped config parses") {
    std::size_t count = 0;
    for (const auto& entry : fs::directory_iterator(kConfigs)) {
        if (entry.path().extension() != ".json") continue;
        CAPTURE(entry.path().string());
        CHECK_NOTHROW(load_config(entry.path()));
        ++count;
    }
    CHECK(count >= 5);
    const auto fig2 = load_config(kConfigs / "lorenz_fig2.json");
    CHECK(build_grid(fig2.grid.t0, fig2.grid.t_end, fig2.grid.h).node_count() == 50001);
}

TEST_CASE("CSV round-trips byte for byte") {
    const auto sys = make_system("lorenz", std::string("fig2"));
    SchemeConfig cfg;
    const auto traj = solve(sys, OrderFunction::sinusoidal(0.9, 0.05, 1.0), build_grid(0.0, 5.0, 0.01),
                            {0.1, 0.1, 0.1}, cfg);
    const std::string csv = format_csv(traj);
    const auto table = parse_csv(csv);
    CHECK(table.header == std::vector<std::string>{"t", "x1", "x2", "x3"});
    CHECK(table.rows.size() == traj.size());
    CHECK(format_csv(table) == csv);
    for (std::size_t k = 0; k < traj.size(); k += 97) {
        CHECK(table.rows[k][1] == traj.state(k)[0]);
        CHECK(table.rows[k][0] == traj.time(k));
    }
    CHECK_THROWS_AS(parse_csv("t,x1\n0,abc\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_csv("t,x1\n0,1,2\n"), std::runtime_error);
}

TEST_CASE("format_double is shortest round-trip") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5e-300) == "-2.5e-300");
    for (double v : {1.0 / 3.0, 2.0 / 3.0, 1e22, 123456.789, 5e-324}) {
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
}

TEST_CASE("SVG has one polyline per series and well-formed structure") {
    const auto sys = make_system("rossler", std::string("classical"));
    const auto grid = build_grid(0.0, 20.0, 0.01);
    const auto a = solve_rk4(sys, grid, {1.0, 1.0, 1.0});
    const auto b = solve_rk4(sys, grid, {1.1, 1.0, 1.0});
    const std::string svg = format_svg({{&a, "a"}, {&b, "b & c"}}, 0, 2);

    const std::regex polyline("<polyline ");
    CHECK(std::distance(std::sregex_iterator(svg.begin(), svg.end(), polyline), std::sregex_iterator()) == 2);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("b &amp; c") != std::string::npos);
    CHECK(svg.find("b & c") == std::string::npos);
    // every opened element is closed or self-closed
    const std::regex open_tag("<(svg|text|polyline|rect)[ >]");
    const std::regex close_tag("</(svg|text)>|/>");
    const auto n_open = std::distance(std::sregex_iterator(svg.begin(), svg.end(), open_tag), std::sregex_iterator());
    const auto n_close = std::distance(std::sregex_iterator(svg.begin(), svg.end(), close_tag), std::sregex_iterator());
    CHECK(n_open == n_close);

    const std::string single = format_svg({{&a, "only"}}, 0, 1);
    CHECK(std::distance(std::sregex_iterator(single.begin(), single.end(), polyline), std::sregex_iterator()) == 1);
}

TEST_CASE("list-systems reports the catalog") {
    const auto doc = nlohmann::json::parse(list_systems_json());
    REQUIRE(doc.is_array());
    CHECK(doc.size() == 7);
    bool saw_fig2 = false, saw_d = false;
    for (const auto& e : doc) {
        if (e["id"] == "lorenz") {
            for (const auto& p : e["presets"]) {
                if (p["name"] != "fig2") continue;
                saw_fig2 = true;
                CHECK(p["params"]["sigma"] == 10.0);
                CHECK(p["params"]["r"] == 30.0);
                CHECK(p["params"]["b"] == 8.0 / 3.0);
            }
        }
        if (e["id"] == "shilnikov") {
            for (const auto& p : e["parameters"]) {
                if (p["name"] != "d") continue;
                saw_d = true;
                CHECK(p["default"] == 0.0);
                CHECK_FALSE(p["note"].get<std::string>().empty());
            }
        }
    }
    CHECK(saw_fig2);
    CHECK(saw_d);
    CHECK(list_systems_text().find("coupled-lorenz") != std::string::npos);
}

TEST_CASE("run writes artifacts and reruns are byte-identical") {
    const auto dir = scratch_dir("run");
    auto cfg = load_config(kConfigs / "coupled_lorenz_sync.json");
    cfg.grid.t_end = 20.0;
    cfg.output.csv = dir / "a.csv";
    cfg.output.svg = dir / "a.svg";
    cfg.output.summary = dir / "a.json";
    const auto first = run(cfg);
    REQUIRE(first.size() == 1);
    CHECK(first[0].written.size() == 3);
    const std::string csv_a = slurp(dir / "a.csv");

    cfg.output.csv = dir / "b.csv";
    (void)run(cfg);
    CHECK(csv_a == slurp(dir / "b.csv"));
    CHECK(std::count(csv_a.begin(), csv_a.end(), '\n') == 2002);

    const auto summary = nlohmann::json::parse(slurp(dir / "a.json"));
    CHECK(summary["scheme"]["name"] == "LC");
    CHECK(summary["scheme"]["mode"] == "reference");
    CHECK(summary["elapsed_seconds"].is_number());
    CHECK(summary["diverged_at"].is_null());
    CHECK(summary["diagnostics"]["sync"]["synchronized"] == true);
}

TEST_CASE("divergence is reported, not raised") {
    const auto dir = scratch_dir("diverge");
    auto cfg = parse_config(with_field("/system/params", {{"r", 30}, {"sigma", 10}}));
    cfg.schemes[0].scheme = Scheme::ABC;
    cfg.order = OrderFunction::constant(0.8);
    cfg.output.summary = dir / "s.json";
    const auto out = run(cfg);
    REQUIRE(out.size() == 1);
    REQUIRE(out[0].trajectory.diverged_at().has_value());
    const auto summary = nlohmann::json::parse(slurp(dir / "s.json"));
    CHECK(summary["diverged_at"] == *out[0].trajectory.diverged_at());
}

TEST_CASE("sweep produces one suffixed output per value") {
    const auto dir = scratch_dir("sweep");
    auto cfg = load_config(kConfigs / "rossler_sweep.json");
    cfg.grid.t_end = 5.0;
    cfg.output.csv = dir / "r.csv";
    cfg.output.summary.reset();
    const auto out = run(cfg);
    REQUIRE(out.size() == 3);
    CHECK(fs::exists(dir / "r.c=4.csv"));
    CHECK(fs::exists(dir / "r.c=5.7.csv"));
    CHECK(fs::exists(dir / "r.c=8.csv"));
    CHECK(*out[1].sweep_value == 5.7);
    CHECK(out[0].trajectory.back()[0] != out[2].trajectory.back()[0]);

    cfg.sweep->parallel = false;
    const auto serial = run(cfg);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::equal(serial[i].trajectory.data().begin(), serial[i].trajectory.data().end(),
                         out[i].trajectory.data().begin()));
    }
}

TEST_CASE("compare at order 1 agrees across schemes") {
    const auto dir = scratch_dir("compare");
    auto cfg = load_config(kConfigs / "compare_lorenz.json");
    cfg.output.csv = dir / "c.csv";
    cfg.output.svg = dir / "c.svg";
    cfg.output.table = dir / "table.csv";
    const auto result = compare(cfg);
    REQUIRE(result.runs.size() == 3);
    const auto& lc = result.runs[0].trajectory.back();
    for (const auto& r : result.runs) {
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(r.trajectory.back()[i] - lc[i]) < 1e-6);
    }
    const std::string table = slurp(dir / "table.csv");
    CHECK(std::count(table.begin(), table.end(), '\n') == 4);
    CHECK(table == result.table_csv);
    CHECK(fs::exists(dir / "c_lc.csv"));
    CHECK(fs::exists(dir / "c_abc.csv"));
    CHECK(fs::exists(dir / "c_cfc_unit.csv"));

    auto single = cfg;
    single.schemes.resize(1);
    CHECK_THROWS_AS(compare(single), ConfigError);
    CHECK_THROWS_AS(run(cfg), ConfigError);
}

TEST_CASE("with_suffix inserts before the extension") {
    CHECK(with_suffix("out/a.csv", "_lc") == fs::path("out/a_lc.csv"));
    CHECK(with_suffix("plain", ".k=1") == fs::path("plain.k=1"));
}

TEST_CASE("binary exit codes and error reporting") {
    const fs::path exe = VOFRAC_CLI_PATH;
    const auto dir = scratch_dir("binary");
    const auto err = dir / "err.txt";

    CHECK(shell(quoted(exe) + " list-systems > " + quoted(dir / "list.txt")) == 0);
    CHECK(slurp(dir / "list.txt").find("shilnikov") != std::string::npos);
    CHECK(shell(quoted(exe) + " list-systems --json > " + quoted(dir / "list.json")) == 0);
    CHECK(nlohmann::json::parse(slurp(dir / "list.json")).size() == 7);

    {
        std::ofstream(dir / "bad.json") << with_field("/grid/h", -0.01);
    }
    CHECK(shell(quoted(exe) + " run " + quoted(dir / "bad.json") + " 2> " + quoted(err)) == 2);
    const auto report = nlohmann::json::parse(slurp(err));
    CHECK(report["error"]["kind"] == "config");
    CHECK(report["error"]["field"] == "grid.h");

    CHECK(shell(quoted(exe) + " compare " + quoted(dir / "bad.json") + " 2> " + quoted(err)) == 2);
    {
        std::ofstream(dir / "one.json") << kMinimal;
    }
    CHECK(shell(quoted(exe) + " compare " + quoted(dir / "one.json") + " 2> " + quoted(err)) == 2);
    CHECK(nlohmann::json::parse(slurp(err))["error"]["field"] == "schemes");
    CHECK(shell(quoted(exe) + " run " + quoted(dir / "missing.json") + " 2> " + quoted(err)) == 2);
    CHECK(shell(quoted(exe) + " frobnicate 2> " + quoted(err) + " > /dev/null") == 2);

    // relative output paths resolve against the working directory
    CHECK(shell("cd " + quoted(dir) + " && " + quoted(exe) + " compare " +
                quoted(kConfigs / "compare_lorenz.json") + " > stdout.txt") == 0);
    CHECK(fs::exists(dir / "out" / "compare_lorenz_table.csv"));
    CHECK(fs::exists(dir / "out" / "compare_lorenz_lc.svg"));
}
