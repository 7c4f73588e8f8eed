#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "merit/runner.hpp"
#include "scenario_fixtures.hpp"

using namespace merit;
namespace fs = std::filesystem;

namespace {

fs::path fresh(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("merit_runner_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

// 24-hour case: a ten-hour monotone thermal block and a windy half with the
// wind unit at the margin; both promised steps last longer than five hours
Scenario small_case() {
    const std::size_t T = 24;
    Profile demand(T), wind(T, 0.0), pv(T, 0.0);
    for (std::size_t t = 0; t < 12; ++t) demand[t] = 8000.0 + 300.0 * static_cast<double>(t);
    for (std::size_t t = 12; t < 24; ++t) {
        demand[t] = 10000.0;
        wind[t] = 21000.0 / 30000.0;
    }
    Scenario s = fixtures::res_ocgt_scenario(demand, wind, pv);
    s.expect_steps = {"thermal_marginal:ocgt", "res_marginal:wind"};
    return s;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("run writes the full artifact set and a manifest") {
    fs::path dir = fresh("case_small");
    serialize_scenario(small_case(), dir);
    fs::path out = fresh("out_small");
    RunConfig cfg;
    cfg.scenario_dir = dir.string();
    cfg.out_dir = out.string();
    cfg.verify = true;
    cfg.export_lp = (out / "model.lp").string();
    std::ostringstream log;
    int rc = run(cfg, log);
    INFO(log.str());
    CHECK(rc == 0);
    for (const char* f : {"prices_DE.csv", "duration_DE.csv", "steps_DE.csv", "dispatch_DE.csv",
                          "market_values.csv", "manifest.json", "verify_report.csv", "model.lp"})
        CHECK(fs::exists(out / f));
    CHECK(slurp(out / "model.lp").find("Minimize") != std::string::npos);
    auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
    CHECK(manifest["status"] == "optimal");
    CHECK(manifest["solver"] == "revised");
    CHECK(manifest["horizon"] == 24);
    CHECK(manifest["objective_eur"].get<double>() > 0.0);
    CHECK(manifest.contains("wall_time_s"));
}

TEST_CASE("invalid scenarios exit with the input-error code") {
    fs::path dir = fresh("case_invalid");
    Scenario s = small_case();
    s.fuel_price_domestic = s.fuel_price_import + 1.0;  // violates the price ordering
    serialize_scenario(s, dir);
    RunConfig cfg;
    cfg.scenario_dir = dir.string();
    cfg.out_dir = fresh("out_invalid").string();
    std::ostringstream log;
    CHECK(run(cfg, log) == 2);
    CHECK(log.str().find("fuel_price_domestic") != std::string::npos);

    RunConfig missing;
    missing.scenario_dir = (fs::temp_directory_path() / "merit_does_not_exist").string();
    missing.out_dir = cfg.out_dir;
    std::ostringstream log2;
    CHECK(run(missing, log2) == 2);
}

TEST_CASE("verify passes on intact artifacts and fails on tampered prices") {
    fs::path dir = fresh("case_verify");
    serialize_scenario(small_case(), dir);
    fs::path out = fresh("out_verify");
    RunConfig cfg;
    cfg.scenario_dir = dir.string();
    cfg.out_dir = out.string();
    std::ostringstream log;
    REQUIRE(run(cfg, log) == 0);
    std::ostringstream vlog;
    CHECK(verify(cfg, vlog) == 0);

    // tamper: shift the thermal plateau by two euros
    fs::path pricesfile = out / "prices_DE.csv";
    std::string text = slurp(pricesfile);
    std::string tampered = "hour,price\n";
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    int t = 0;
    while (std::getline(in, line)) {
        auto comma = line.find(',');
        double v = std::strtod(line.c_str() + comma + 1, nullptr);
        if (v > 200.0) v += 2.0;
        tampered += std::to_string(t++) + "," + std::to_string(v) + "\n";
    }
    std::ofstream(pricesfile, std::ios::trunc) << tampered;
    std::ostringstream vlog2;
    CHECK(verify(cfg, vlog2) == 1);
    CHECK(vlog2.str().find("FAILED") != std::string::npos);
}

TEST_CASE("reference-solver reruns produce byte-identical artifacts") {
    fs::path dir = fresh("case_bytes");
    serialize_scenario(small_case(), dir);
    RunConfig cfg;
    cfg.scenario_dir = dir.string();
    cfg.solver = SolverChoice::Reference;
    std::ostringstream log;
    cfg.out_dir = fresh("out_bytes1").string();
    REQUIRE(run(cfg, log) == 0);
    fs::path out1 = cfg.out_dir;
    cfg.out_dir = fresh("out_bytes2").string();
    REQUIRE(run(cfg, log) == 0);
    for (const char* f :
         {"prices_DE.csv", "duration_DE.csv", "steps_DE.csv", "dispatch_DE.csv", "market_values.csv"})
        CHECK(slurp(out1 / f) == slurp(fs::path(cfg.out_dir) / f));
}

TEST_CASE("zone filter restricts the solved system and the artifacts") {
    fs::path dir = fresh("case_zones");
    Scenario s = small_case();
    Zone fr = s.zones[0];
    fr.id = "FR";
    s.zones.push_back(fr);
    Interconnector ic;
    ic.from_zone = "DE";
    ic.to_zone = "FR";
    ic.ntc = fixtures::flat(s.horizon, 1000.0);
    ic.transmission_efficiency = 0.95;
    s.interconnectors.push_back(ic);
    serialize_scenario(s, dir);

    RunConfig cfg;
    cfg.scenario_dir = dir.string();
    cfg.out_dir = fresh("out_zones_both").string();
    std::ostringstream log;
    REQUIRE(run(cfg, log) == 0);
    CHECK(fs::exists(fs::path(cfg.out_dir) / "prices_DE.csv"));
    CHECK(fs::exists(fs::path(cfg.out_dir) / "prices_FR.csv"));

    cfg.zones = {"DE"};
    cfg.out_dir = fresh("out_zones_de").string();
    std::ostringstream log2;
    REQUIRE(run(cfg, log2) == 0);
    CHECK(fs::exists(fs::path(cfg.out_dir) / "prices_DE.csv"));
    CHECK(!fs::exists(fs::path(cfg.out_dir) / "prices_FR.csv"));

    cfg.zones = {"XX"};
    std::ostringstream log3;
    CHECK(run(cfg, log3) == 2);
}

TEST_CASE("horizon override truncates and over-long overrides are input errors") {
    fs::path dir = fresh("case_horizon");
    serialize_scenario(small_case(), dir);
    RunConfig cfg;
    cfg.scenario_dir = dir.string();
    cfg.out_dir = fresh("out_horizon").string();
    cfg.horizon = 12;
    std::ostringstream log;
    REQUIRE(run(cfg, log) == 0);
    auto manifest = nlohmann::json::parse(slurp(fs::path(cfg.out_dir) / "manifest.json"));
    CHECK(manifest["horizon"] == 12);
    cfg.horizon = 999;
    std::ostringstream log2;
    CHECK(run(cfg, log2) == 2);
}

TEST_CASE("dual degeneracy flagging marks flat stretches only") {
    const std::size_t T = 5;
    Profile demand{10.0, 10.0, 11.0, 12.0, 13.0};
    Scenario s = fixtures::res_ocgt_scenario(demand, fixtures::flat(T, 0.0),
                                             fixtures::flat(T, 0.0));
    fs::path dir = fresh("case_flags");
    serialize_scenario(s, dir);
    RunConfig cfg;
    cfg.scenario_dir = dir.string();
    cfg.out_dir = fresh("out_flags").string();
    cfg.check_duals = true;
    std::ostringstream log;
    REQUIRE(run(cfg, log) == 0);
    std::ifstream in(fs::path(cfg.out_dir) / "prices_DE.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "hour,price,degenerate");
    std::vector<int> flags;
    while (std::getline(in, line)) flags.push_back(line.back() - '0');
    REQUIRE(flags.size() == T);
    CHECK(flags[0] == 1);  // flat pair: the dual is a vertex of an interval
    CHECK(flags[1] == 1);
    CHECK(flags[2] == 0);  // strictly monotone interior hours price uniquely
    CHECK(flags[3] == 0);
}
