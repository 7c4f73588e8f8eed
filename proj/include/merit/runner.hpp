#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "json.hpp"
#include "merit/analytics.hpp"
#include "merit/builders.hpp"
#include "merit/lp_format.hpp"
#include "merit/scenario_io.hpp"
#include "merit/solve.hpp"
#include "merit/verify.hpp"

namespace merit {

/// Batch run configuration; exit-code contract: 0 success, 1 verification
/// failure, 2 input error, 3 solver failure.
struct RunConfig {
    std::string scenario_dir;
    std::optional<int> horizon;
    std::vector<std::string> zones;  // empty keeps all zones
    SolverChoice solver = SolverChoice::Revised;
    double feasibility_tol = 1e-7;
    double step_tol = 0.5;
    int min_step_hours = 5;
    std::string out_dir = "out";
    bool verify = false;
    bool check_duals = false;  // flag hours whose +/-eps sensitivities disagree
    std::optional<std::string> export_lp;
};

namespace rundetail {

inline Scenario load_filtered(const RunConfig& cfg) {
    Scenario s = load_scenario(cfg.scenario_dir);
    if (cfg.horizon) s = truncate_scenario(std::move(s), static_cast<std::size_t>(*cfg.horizon));
    if (!cfg.zones.empty()) {
        Scenario filtered = s;
        filtered.zones.clear();
        filtered.interconnectors.clear();
        for (const auto& want : cfg.zones) {
            const Zone* z = s.find_zone(want);
            if (!z) throw ScenarioError("unknown zone in filter: " + want);
            filtered.zones.push_back(*z);
        }
        for (const auto& ic : s.interconnectors)
            if (filtered.find_zone(ic.from_zone) && filtered.find_zone(ic.to_zone))
                filtered.interconnectors.push_back(ic);
        return filtered;
    }
    return s;
}

inline std::vector<double> read_price_column(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ScenarioError("missing file: " + file.string());
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> out;
    while (std::getline(in, line)) {
        auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        out.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
    }
    return out;
}

/// One-sided objective sensitivities around a demand hour. Where they
/// disagree the market dual is degenerate (a vertex of the optimal dual
/// set) and the hour is flagged rather than trusted as a unique price.
inline std::vector<bool> degenerate_hours(const Scenario& s, const std::string& zone,
                                          double base_objective, SolverChoice solver) {
    std::vector<bool> flagged(s.horizon, false);
    Scenario work = s;
    Zone* z = nullptr;
    for (auto& cand : work.zones)
        if (cand.id == zone) z = &cand;
    if (!z) return flagged;
    const double eps = 1e-3;
    SolveOptions opt;
    opt.solver = solver;
    for (std::size_t t = 0; t < s.horizon; ++t) {
        z->electricity_demand[t] += eps;
        double up = (solve(assemble(work).lp, opt).objective - base_objective) / eps;
        z->electricity_demand[t] -= 2.0 * eps;
        double dn = (base_objective - solve(assemble(work).lp, opt).objective) / eps;
        z->electricity_demand[t] += eps;
        flagged[t] = std::abs(up - dn) > 1e-4 * std::max(1.0, std::abs(up));
    }
    return flagged;
}

inline int verify_prices(const Scenario& s, const RunConfig& cfg, std::ostream& log) {
    auto targets = expand_predictions(predictions_for(s), s.expect_steps);
    bool all_ok = true;
    std::vector<bool> satisfied(targets.size(), false);  // across all zones
    std::ofstream report(std::filesystem::path(cfg.out_dir) / "verify_report.csv",
                         std::ios::trunc);
    report << "zone,level,duration,matched_source,deviation\n";
    for (const auto& z : s.zones) {
        PriceSeries prices;
        prices.zone = z.id;
        prices.values =
            read_price_column(std::filesystem::path(cfg.out_dir) / ("prices_" + z.id + ".csv"));
        if (prices.values.size() != s.horizon)
            throw ScenarioError("price series length mismatch for zone " + z.id);
        auto steps = detect_steps(duration_curve(prices), cfg.step_tol, cfg.min_step_hours);
        VerifyReport rep = verify_steps(steps, targets, cfg.step_tol);
        {
            // annotate the step artifact with the matched analytic sources
            std::vector<PriceStep> annotated;
            for (const auto& line : rep.lines) {
                PriceStep st = line.step;
                st.matched_source = line.matched_id;
                annotated.push_back(st);
            }
            std::ofstream f(std::filesystem::path(cfg.out_dir) / ("steps_" + z.id + ".csv"),
                            std::ios::trunc);
            write_steps_csv(annotated, f);
        }
        for (const auto& line : rep.lines) {
            report << z.id << "," << csv::num(line.step.level) << "," << line.step.duration << ","
                   << line.matched_id << "," << csv::num(line.deviation) << "\n";
            if (line.matched_id.empty()) {
                log << "unmatched step in " << z.id << ": level " << line.step.level
                    << " over " << line.step.duration << " h\n";
                all_ok = false;
            } else {
                log << "matched " << z.id << " step " << line.step.level << " ("
                    << line.step.duration << " h) -> " << line.matched_id << " (dev "
                    << line.deviation << ")\n";
            }
        }
        for (std::size_t i = 0; i < targets.size(); ++i) {
            bool miss = false;
            for (const auto& m : rep.missing) miss |= m.id == targets[i].id;
            if (!miss) satisfied[i] = true;
        }
    }
    // a promised step must show up in at least one zone of the run
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (!targets[i].required || satisfied[i]) continue;
        log << "missing expected step: " << targets[i].id << " at level " << targets[i].level
            << "\n";
        report << "*," << csv::num(targets[i].level) << ",0," << targets[i].id << ",missing\n";
        all_ok = false;
    }
    log << (all_ok ? "verification passed\n" : "verification FAILED\n");
    return all_ok ? 0 : 1;
}

}  // namespace rundetail

/// Builds, solves and writes all artifacts for one scenario.
inline int run(const RunConfig& cfg, std::ostream& log = std::cout) {
    namespace fs = std::filesystem;
    auto t0 = std::chrono::steady_clock::now();
    Scenario s;
    try {
        s = rundetail::load_filtered(cfg);
        auto violations = validate(s);
        if (!violations.empty()) {
            log << "scenario invalid:\n";
            for (const auto& v : violations) log << "  " << v.str() << "\n";
            return 2;
        }
    } catch (const ScenarioError& e) {
        log << "input error: " << e.what() << "\n";
        return 2;
    }

    Assembled a;
    try {
        a = assemble(s);
    } catch (const BuilderError& e) {
        log << "input error: " << e.what() << "\n";
        return 2;
    }
    fs::create_directories(cfg.out_dir);
    if (cfg.export_lp) {
        std::ofstream lpfile(*cfg.export_lp, std::ios::trunc);
        write_lp_format(a.lp, lpfile);
    }

    SolveOptions opt;
    opt.solver = cfg.solver;
    opt.tolerance = cfg.feasibility_tol;
    Solution sol;
    try {
        sol = solve(a.lp, opt);
    } catch (const LpError& e) {
        log << "solver failure: " << e.what() << "\n";
        return 3;
    }
    if (sol.status != SolveStatus::Optimal) {
        log << "solver outcome: " << to_string(sol.status) << "\n";
        for (const auto& t : sol.conflict) log << "  involved: " << t.str() << "\n";
        return 3;
    }

    std::map<std::string, PriceSeries> prices;
    for (const auto& z : s.zones) {
        PriceSeries p = extract_prices(sol, a.clearing.at(z.id), z.id);
        auto curve = duration_curve(p);
        auto steps = detect_steps(curve, cfg.step_tol, cfg.min_step_hours);
        {
            std::ofstream f(fs::path(cfg.out_dir) / ("prices_" + z.id + ".csv"), std::ios::trunc);
            if (cfg.check_duals) {
                auto flagged = rundetail::degenerate_hours(s, z.id, sol.objective, cfg.solver);
                f << "hour,price,degenerate\n";
                for (std::size_t t = 0; t < p.values.size(); ++t)
                    f << t << "," << csv::num(p.values[t]) << "," << (flagged[t] ? 1 : 0) << "\n";
            } else {
                write_prices_csv(p, f);
            }
        }
        {
            std::ofstream f(fs::path(cfg.out_dir) / ("duration_" + z.id + ".csv"), std::ios::trunc);
            write_duration_csv(curve, f);
        }
        {
            std::ofstream f(fs::path(cfg.out_dir) / ("steps_" + z.id + ".csv"), std::ios::trunc);
            write_steps_csv(steps, f);
        }
        {
            std::ofstream f(fs::path(cfg.out_dir) / ("dispatch_" + z.id + ".csv"), std::ios::trunc);
            write_dispatch_csv(s, z, a.registry, sol, f);
        }
        for (const auto& u : z.chp_systems) {
            auto labels = classify_chp_states(s, z, u, a.registry, sol, p);
            std::ofstream f(fs::path(cfg.out_dir) / ("chp_states_" + z.id + "." + u.id + ".csv"),
                            std::ios::trunc);
            write_chp_states_csv(labels, f);
        }
        prices.emplace(z.id, std::move(p));
    }
    {
        auto report = market_values(s, a.registry, sol, prices);
        std::ofstream f(fs::path(cfg.out_dir) / "market_values.csv", std::ios::trunc);
        write_market_values_csv(report, f);
    }

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    nlohmann::json manifest{
        {"scenario", cfg.scenario_dir},
        {"horizon", s.horizon},
        {"solver", to_string(cfg.solver)},
        {"feasibility_tolerance", cfg.feasibility_tol},
        {"step_tolerance", cfg.step_tol},
        {"min_step_hours", cfg.min_step_hours},
        {"objective_eur", sol.objective},
        {"iterations", sol.iterations},
        {"max_primal_residual", sol.max_primal_residual},
        {"duality_gap", sol.duality_gap},
        {"wall_time_s", wall},
        {"status", to_string(sol.status)},
    };
    std::ofstream mf(fs::path(cfg.out_dir) / "manifest.json", std::ios::trunc);
    mf << manifest.dump(2) << "\n";

    log << "solved " << cfg.scenario_dir << ": objective " << sol.objective << " EUR, "
        << sol.iterations << " iterations, " << wall << " s\n";
    if (cfg.verify) return rundetail::verify_prices(s, cfg, log);
    return 0;
}

/// Re-checks the artifacts of a completed run against the oracle
/// predictions derived from the scenario parameters.
inline int verify(const RunConfig& cfg, std::ostream& log = std::cout) {
    try {
        Scenario s = rundetail::load_filtered(cfg);
        return rundetail::verify_prices(s, cfg, log);
    } catch (const ScenarioError& e) {
        log << "input error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace merit
