#pragma once

#include <algorithm>
#include <cmath>

#include "merit/analytics.hpp"
#include "merit/oracle.hpp"
#include "merit/scenario.hpp"

namespace merit {

/// Analytic price levels implied by a scenario's parameters, one bundle per
/// mechanism. The required flag mirrors the scenario's expect_step list.
inline std::vector<oracle::OpportunityPrediction> predictions_for(const Scenario& s) {
    std::vector<oracle::OpportunityPrediction> out;
    auto wanted = [&](const std::string& id) {
        return std::find(s.expect_steps.begin(), s.expect_steps.end(), id) != s.expect_steps.end();
    };
    auto emit = [&](std::string id, std::string inputs, double level, double ramp) {
        oracle::OpportunityPrediction p;
        p.id = std::move(id);
        p.inputs = std::move(inputs);
        p.level = level;
        p.ramp = ramp;
        p.required = wanted(p.id);
        out.push_back(std::move(p));
    };
    const double p_imp = s.fuel_price_import;
    struct Exportable {
        std::string zone, id;
        double level, ramp;
    };
    std::vector<Exportable> exportable;
    for (const auto& z : s.zones) {
        double backstop = 0.0;
        for (const auto& u : z.thermal) backstop = std::max(backstop, u.marginal_cost(p_imp));
        for (const auto& u : z.chp_systems) backstop = std::max(backstop, u.var_cost(p_imp));

        for (const auto& u : z.thermal) {
            emit("thermal_marginal:" + u.id,
                 "P=" + std::to_string(p_imp) + " eta=" + std::to_string(u.efficiency),
                 u.marginal_cost(p_imp), 2.0 * u.load_change_cost);
            exportable.push_back({z.id, "thermal_marginal:" + u.id, u.marginal_cost(p_imp),
                                  2.0 * u.load_change_cost});
        }
        for (const auto& u : z.renewables)
            if (u.variable_cost > 0.0) {
                emit("res_marginal:" + u.id, "cvp=" + std::to_string(u.variable_cost),
                     u.variable_cost + u.curtailment_bonus, 0.0);
                exportable.push_back(
                    {z.id, "res_marginal:" + u.id, u.variable_cost + u.curtailment_bonus, 0.0});
            }
        if (!z.renewables.empty()) emit("res_floor", "curtailment bonus epsilon", 0.0, 0.0);
        for (const auto& u : z.ptg)
            emit("ptg:" + u.id, "credit=" + std::to_string(u.credit(s.fuel_price_domestic)),
                 oracle::ptg_willingness(u.credit(s.fuel_price_domestic), u.conversion_factor),
                 2.0 * u.load_change_cost);
        for (const auto& u : z.batteries)
            emit("storage_step:" + u.id, "roundtrip=" + std::to_string(u.eta_in * u.eta_out),
                 oracle::storage_step(backstop, u.eta_in * u.eta_out), 2.0 * u.load_change_cost);
        for (const auto& u : z.hydro)
            emit("storage_step:" + u.id, "pump_eta=" + std::to_string(u.pump_efficiency),
                 oracle::storage_step(backstop, u.pump_efficiency), 0.0);
        for (const auto& u : z.hybrid_boilers)
            emit("boiler_electric:" + u.id, "eta_cb=" + std::to_string(u.boiler_efficiency),
                 oracle::boiler_electric_step(u.boiler_cost(p_imp), u.boiler_efficiency,
                                              u.electric_efficiency),
                 0.0);
        for (const auto& u : z.chp_systems) {
            emit("chp_marginal:" + u.id, "eta=" + std::to_string(u.electrical_efficiency),
                 u.var_cost(p_imp), 2.0 * u.load_change_cost);
            if (u.boiler_design_factor > 0.0)
                emit("chp_vs_boiler:" + u.id, "eta_cb=" + std::to_string(u.boiler_efficiency),
                     oracle::chp_vs_fuel_boiler(p_imp, u.electrical_efficiency, u.boiler_efficiency,
                                                u.power_to_heat_ratio, u.power_loss_factor),
                     oracle::chp_vs_fuel_boiler_ramp(u.load_change_cost, u.power_to_heat_ratio,
                                                     u.power_loss_factor));
            if (u.electric_backup_design_factor > 0.0 && !u.electric_backup_efficiency.empty())
                emit("chp_vs_electric:" + u.id,
                     "eta_con=" + std::to_string(u.electric_backup_efficiency[0]),
                     oracle::chp_vs_electric_backup(p_imp, u.electrical_efficiency,
                                                    u.power_to_heat_ratio, u.power_loss_factor,
                                                    u.electric_backup_efficiency[0]),
                     oracle::chp_vs_electric_backup_ramp(u.load_change_cost, u.power_to_heat_ratio,
                                                         u.power_loss_factor,
                                                         u.electric_backup_efficiency[0]));
        }
        for (const auto& u : z.vehicles)
            if (u.fuel_per_km > 0.0 && u.electricity_per_km > 0.0)
                emit("vehicle_ice:" + u.id, "fc=" + std::to_string(u.fuel_per_km),
                     u.engine_fuel_cost(p_imp) * u.fuel_per_km * u.charging_efficiency /
                         u.electricity_per_km,
                     0.0);
    }
    // an exporter's marginal unit reappears in the importing zone lifted by
    // the transmission loss factor
    for (const auto& ic : s.interconnectors)
        for (const auto& e : exportable)
            if (e.zone == ic.from_zone)
                emit(e.id + ":via:" + ic.from_zone + "->" + ic.to_zone,
                     "TL=" + std::to_string(ic.transmission_efficiency),
                     e.level / ic.transmission_efficiency,
                     e.ramp / ic.transmission_efficiency);

    // deduplicate identical ids across zones (same technology in two zones)
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.id < b.id; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) { return a.id == b.id; }),
              out.end());
    return out;
}

struct StepTarget {
    std::string id;
    double level = 0.0;
    bool required = false;
};

/// Expands each prediction into its base level plus the two ramp-adjusted
/// companions (load changes enter the clearing dual twice).
inline std::vector<StepTarget> expand_predictions(
    const std::vector<oracle::OpportunityPrediction>& preds,
    const std::vector<std::string>& expect) {
    auto wanted = [&](const std::string& id) {
        return std::find(expect.begin(), expect.end(), id) != expect.end();
    };
    std::vector<StepTarget> out;
    for (const auto& p : preds) {
        out.push_back({p.id, p.level, p.required});
        if (p.ramp > 0.0) {
            out.push_back({p.id + "+lc", p.level + p.ramp, wanted(p.id + "+lc")});
            out.push_back({p.id + "-lc", p.level - p.ramp, wanted(p.id + "-lc")});
        }
    }
    return out;
}

struct VerifyReport {
    struct Line {
        PriceStep step;
        std::string matched_id;  // empty when unmatched
        double deviation = 0.0;
    };
    std::vector<Line> lines;
    std::vector<StepTarget> missing;  // required targets with no matching step
    bool ok() const {
        if (!missing.empty()) return false;
        for (const auto& l : lines)
            if (l.matched_id.empty()) return false;
        return true;
    }
};

/// Matches detected steps against analytic targets. A verification passes
/// when every detected step has an analytic source and every step the case
/// promises is present within tolerance.
inline VerifyReport verify_steps(const std::vector<PriceStep>& steps,
                                 const std::vector<StepTarget>& targets, double level_tol) {
    VerifyReport rep;
    std::vector<bool> hit(targets.size(), false);
    for (const auto& s : steps) {
        int best = -1;
        double bestdev = level_tol;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            double dev = std::abs(s.level - targets[i].level);
            if (dev <= bestdev) {
                bestdev = dev;
                best = static_cast<int>(i);
            }
        }
        VerifyReport::Line line;
        line.step = s;
        if (best >= 0) {
            line.matched_id = targets[best].id;
            line.deviation = s.level - targets[best].level;
            hit[best] = true;
        }
        rep.lines.push_back(line);
    }
    for (std::size_t i = 0; i < targets.size(); ++i)
        if (targets[i].required && !hit[i]) rep.missing.push_back(targets[i]);
    return rep;
}

}  // namespace merit
