#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "merit/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"hourly economic dispatch with price extraction from market-clearing duals"};
    app.require_subcommand(1);

    merit::RunConfig cfg;
    if (const char* env = std::getenv("MERIT_SOLVER")) {
        auto parsed = merit::parse_solver(env);
        if (!parsed) {
            std::cerr << "unknown solver in MERIT_SOLVER: " << env << "\n";
            return 2;
        }
        cfg.solver = *parsed;
    }
    std::string solver_name;
    int horizon = -1;
    std::string zones_csv;
    std::string export_lp;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", cfg.scenario_dir, "scenario directory")->required();
        cmd->add_option("--horizon", horizon, "restrict to the first N hours");
        cmd->add_option("--zones", zones_csv, "comma-separated zone filter");
        cmd->add_option("--solver", solver_name, "solver: revised or reference");
        cmd->add_option("--out", cfg.out_dir, "output directory");
        cmd->add_option("--step-tol", cfg.step_tol, "price step level tolerance (EUR/MWh)");
        cmd->add_option("--min-step-hours", cfg.min_step_hours, "minimum plateau length");
        cmd->add_option("--feas-tol", cfg.feasibility_tol, "solver feasibility tolerance");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "build, solve and write artifacts");
    add_common(run_cmd);
    run_cmd->add_flag("--verify", cfg.verify, "verify detected steps after the run");
    run_cmd->add_flag("--check-duals", cfg.check_duals,
                      "flag hours whose one-sided price sensitivities disagree");
    run_cmd->add_option("--export-lp", export_lp, "also write the model in LP format");

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "match a completed run's steps against the analytic levels");
    add_common(verify_cmd);

    CLI11_PARSE(app, argc, argv);

    if (!solver_name.empty()) {
        auto parsed = merit::parse_solver(solver_name);
        if (!parsed) {
            std::cerr << "unknown solver: " << solver_name << "\n";
            return 2;
        }
        cfg.solver = *parsed;
    }
    if (horizon > 0) cfg.horizon = horizon;
    if (!zones_csv.empty()) {
        std::size_t pos = 0;
        while (pos != std::string::npos) {
            auto comma = zones_csv.find(',', pos);
            cfg.zones.push_back(zones_csv.substr(pos, comma - pos));
            pos = comma == std::string::npos ? comma : comma + 1;
        }
    }
    if (!export_lp.empty()) cfg.export_lp = export_lp;

    if (run_cmd->parsed()) return merit::run(cfg);
    return merit::verify(cfg);
}
