#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "merit/lp.hpp"
#include "merit/scenario.hpp"

namespace merit {

struct BuilderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Decision-variable roles, one per symbol of the dispatch formulation.
enum class VarRole {
    Generation,          // x_gen
    Curtailment,         // x_cu
    Consumption,         // x_con
    HeatPumpConsumption, // x_con_hp
    BackupConsumption,   // x_con_bu
    TurbineGeneration,   // x_gen_t (hydro)
    PumpedTurbineGeneration,  // x_gen_pt
    StorageLevel,        // x_s
    PumpedStorageLevel,  // x_s_p
    Spillage,            // x_sp
    PumpedSpillage,      // x_sp_p
    StorageCharge,       // x_in
    StorageDischarge,    // x_out
    RampUp,              // x_lc+
    RampDown,            // x_lc-
    ChpHeat,             // q_chp
    HeatCharge,          // q_in
    HeatDischarge,       // q_out
    HeatLevel,           // q_s
    BoilerFuel,          // y_cb
    FuelUse,             // y_con
    FuelOutput,          // y_gen
    ElectricDistance,    // z_el
    IceDistance,         // z_ice
    Transfer,            // x_ij
};

inline const char* to_string(VarRole r) {
    switch (r) {
        case VarRole::Generation: return "gen";
        case VarRole::Curtailment: return "curtail";
        case VarRole::Consumption: return "con";
        case VarRole::HeatPumpConsumption: return "conHp";
        case VarRole::BackupConsumption: return "conBackup";
        case VarRole::TurbineGeneration: return "turbine";
        case VarRole::PumpedTurbineGeneration: return "pumpedTurbine";
        case VarRole::StorageLevel: return "level";
        case VarRole::PumpedStorageLevel: return "levelPumped";
        case VarRole::Spillage: return "spill";
        case VarRole::PumpedSpillage: return "spillPumped";
        case VarRole::StorageCharge: return "charge";
        case VarRole::StorageDischarge: return "discharge";
        case VarRole::RampUp: return "rampUp";
        case VarRole::RampDown: return "rampDown";
        case VarRole::ChpHeat: return "chpHeat";
        case VarRole::HeatCharge: return "heatCharge";
        case VarRole::HeatDischarge: return "heatDischarge";
        case VarRole::HeatLevel: return "heatLevel";
        case VarRole::BoilerFuel: return "boilerFuel";
        case VarRole::FuelUse: return "fuelUse";
        case VarRole::FuelOutput: return "fuelOutput";
        case VarRole::ElectricDistance: return "distanceElectric";
        case VarRole::IceDistance: return "distanceIce";
        case VarRole::Transfer: return "flow";
    }
    return "?";
}

/// (unit, role, hour) -> variable handle. Unit ids are zone-qualified.
class VariableRegistry {
public:
    void add(const std::string& unit, VarRole role, int t, VarId v) {
        auto [it, fresh] = map_.emplace(key(unit, role, t), v);
        if (!fresh) throw BuilderError("registry collision: " + unit + ":" + to_string(role) +
                                       "@" + std::to_string(t));
    }
    VarId require(const std::string& unit, VarRole role, int t) const {
        auto it = map_.find(key(unit, role, t));
        if (it == map_.end())
            throw BuilderError("registry miss: " + unit + ":" + to_string(role) + "@" +
                               std::to_string(t));
        return it->second;
    }
    bool has(const std::string& unit, VarRole role, int t) const {
        return map_.count(key(unit, role, t)) > 0;
    }
    std::size_t size() const { return map_.size(); }

private:
    static std::string key(const std::string& unit, VarRole role, int t) {
        return unit + '\x1f' + std::to_string(static_cast<int>(role)) + '\x1f' + std::to_string(t);
    }
    std::unordered_map<std::string, VarId> map_;
};

namespace build {

struct Ctx {
    const Scenario& s;
    const Zone& z;
    VariableRegistry& reg;
    LinearProgram& lp;
    int T() const { return static_cast<int>(s.horizon); }
    std::string uid(const std::string& unit) const { return z.id + "." + unit; }
    Tag vtag(const std::string& unit, VarRole role, int t) const {
        return Tag{z.id, unit, to_string(role), t};
    }
    Tag rtag(const std::string& unit, const std::string& eq, int t) const {
        return Tag{z.id, unit, eq, t};
    }
    VarId var(const std::string& unit, VarRole role, int t, Bounds b, double cost) {
        VarId v = lp.add_variable(b, cost, vtag(unit, role, t));
        reg.add(uid(unit), role, t, v);
        return v;
    }
};

/// Renewable generation with market-based curtailment: per hour one joint
/// limit, generation at variable cost, curtailment earning a small bonus
/// that ranks which technology curtails first.
inline void build_renewables(Ctx& c) {
    for (const auto& u : c.z.renewables) {
        for (int t = 0; t < c.T(); ++t) {
            VarId g = c.var(u.id, VarRole::Generation, t, {0.0, kInf}, u.variable_cost);
            VarId cu = c.var(u.id, VarRole::Curtailment, t, {0.0, kInf}, -u.curtailment_bonus);
            c.lp.add_constraint({{g, 1.0}, {cu, 1.0}}, Sense::LessEqual,
                                u.availability[t] * u.capacity, c.rtag(u.id, "res_limit", t));
        }
    }
}

/// Conventional units: availability-bounded output plus ramp tracking
/// between consecutive hours.
inline void build_thermal(Ctx& c) {
    for (const auto& u : c.z.thermal) {
        double cost = u.marginal_cost(c.s.fuel_price_import);
        for (int t = 0; t < c.T(); ++t)
            c.var(u.id, VarRole::Generation, t, {0.0, u.availability[t] * u.capacity}, cost);
        for (int t = 0; t + 1 < c.T(); ++t) {
            VarId up = c.var(u.id, VarRole::RampUp, t, {0.0, kInf}, u.load_change_cost);
            VarId dn = c.var(u.id, VarRole::RampDown, t, {0.0, kInf}, u.load_change_cost);
            c.lp.add_constraint({{c.reg.require(c.uid(u.id), VarRole::Generation, t + 1), 1.0},
                                 {c.reg.require(c.uid(u.id), VarRole::Generation, t), -1.0},
                                 {up, -1.0},
                                 {dn, 1.0}},
                                Sense::Equal, 0.0, c.rtag(u.id, "ramp_link", t));
        }
    }
}

/// Power-to-gas: consumption capped by capacity, fuel output credited at the
/// domestic fuel value, ramping priced on consumption changes.
inline void build_ptg(Ctx& c) {
    for (const auto& u : c.z.ptg) {
        double credit = u.credit(c.s.fuel_price_domestic);
        for (int t = 0; t < c.T(); ++t) {
            VarId con = c.var(u.id, VarRole::Consumption, t, {0.0, u.capacity}, 0.0);
            VarId fuel = c.var(u.id, VarRole::FuelOutput, t, {0.0, kInf}, -credit);
            c.lp.add_constraint({{fuel, 1.0}, {con, -u.conversion_factor}}, Sense::Equal, 0.0,
                                c.rtag(u.id, "fuel_link", t));
        }
        for (int t = 0; t + 1 < c.T(); ++t) {
            VarId up = c.var(u.id, VarRole::RampUp, t, {0.0, kInf}, u.load_change_cost);
            VarId dn = c.var(u.id, VarRole::RampDown, t, {0.0, kInf}, u.load_change_cost);
            c.lp.add_constraint({{c.reg.require(c.uid(u.id), VarRole::Consumption, t + 1), 1.0},
                                 {c.reg.require(c.uid(u.id), VarRole::Consumption, t), -1.0},
                                 {up, -1.0},
                                 {dn, 1.0}},
                                Sense::Equal, 0.0, c.rtag(u.id, "ramp_link", t));
        }
    }
}

/// Stationary storage: charge/discharge/level with cyclic continuity; ramp
/// cost applies to changes of the net injection schedule.
inline void build_battery(Ctx& c) {
    for (const auto& u : c.z.batteries) {
        for (int t = 0; t < c.T(); ++t) {
            c.var(u.id, VarRole::StorageCharge, t, {0.0, u.power_cap}, 0.0);
            c.var(u.id, VarRole::StorageDischarge, t, {0.0, u.power_cap}, 0.0);
            c.var(u.id, VarRole::StorageLevel, t, {0.0, u.energy_cap}, 0.0);
        }
        for (int t = 0; t < c.T(); ++t) {
            int next = (t + 1) % c.T();
            c.lp.add_constraint(
                {{c.reg.require(c.uid(u.id), VarRole::StorageLevel, next), 1.0},
                 {c.reg.require(c.uid(u.id), VarRole::StorageLevel, t), -(1.0 - u.loss_factor)},
                 {c.reg.require(c.uid(u.id), VarRole::StorageCharge, t), -u.eta_in},
                 {c.reg.require(c.uid(u.id), VarRole::StorageDischarge, t), 1.0 / u.eta_out}},
                Sense::Equal, -u.self_discharge, c.rtag(u.id, "storage", t));
        }
        for (int t = 0; t + 1 < c.T(); ++t) {
            VarId up = c.var(u.id, VarRole::RampUp, t, {0.0, kInf}, u.load_change_cost);
            VarId dn = c.var(u.id, VarRole::RampDown, t, {0.0, kInf}, u.load_change_cost);
            c.lp.add_constraint(
                {{c.reg.require(c.uid(u.id), VarRole::StorageDischarge, t + 1), 1.0},
                 {c.reg.require(c.uid(u.id), VarRole::StorageCharge, t + 1), -1.0},
                 {c.reg.require(c.uid(u.id), VarRole::StorageDischarge, t), -1.0},
                 {c.reg.require(c.uid(u.id), VarRole::StorageCharge, t), 1.0},
                 {up, -1.0},
                 {dn, 1.0}},
                Sense::Equal, 0.0, c.rtag(u.id, "ramp_link", t));
        }
    }
}

/// Equivalent-reservoir hydropower: turbines, pumps, two cyclic reservoir
/// balances with spillage, no cost contribution.
inline void build_hydro(Ctx& c) {
    for (const auto& u : c.z.hydro) {
        for (int t = 0; t < c.T(); ++t) {
            VarId tur = c.var(u.id, VarRole::TurbineGeneration, t, {0.0, u.turbine_cap[t]}, 0.0);
            VarId ptur =
                c.var(u.id, VarRole::PumpedTurbineGeneration, t, {0.0, u.pumped_turbine_cap[t]}, 0.0);
            VarId gen = c.var(u.id, VarRole::Generation, t, {0.0, kInf}, 0.0);
            c.var(u.id, VarRole::Consumption, t, {0.0, u.pump_cap[t]}, 0.0);
            c.var(u.id, VarRole::StorageLevel, t, {0.0, u.reservoir_cap_main}, 0.0);
            c.var(u.id, VarRole::PumpedStorageLevel, t, {0.0, u.reservoir_cap_pumped}, 0.0);
            c.var(u.id, VarRole::Spillage, t, {0.0, kInf}, 0.0);
            c.var(u.id, VarRole::PumpedSpillage, t, {0.0, kInf}, 0.0);
            c.lp.add_constraint({{gen, 1.0}, {tur, -1.0}, {ptur, -1.0}}, Sense::Equal, 0.0,
                                c.rtag(u.id, "gen_total", t));
        }
        auto v = [&](VarRole r, int t) { return c.reg.require(c.uid(u.id), r, t); };
        for (int t = 0; t < c.T(); ++t) {
            int next = (t + 1) % c.T();
            c.lp.add_constraint({{v(VarRole::StorageLevel, next), 1.0},
                                 {v(VarRole::StorageLevel, t), -1.0},
                                 {v(VarRole::TurbineGeneration, t), 1.0},
                                 {v(VarRole::PumpedTurbineGeneration, t), 1.0},
                                 {v(VarRole::Consumption, t), -u.pump_efficiency},
                                 {v(VarRole::Spillage, t), 1.0},
                                 {v(VarRole::PumpedSpillage, t), 1.0}},
                                Sense::Equal, u.inflow_main[t], c.rtag(u.id, "reservoir", t));
            c.lp.add_constraint({{v(VarRole::PumpedStorageLevel, next), 1.0},
                                 {v(VarRole::PumpedStorageLevel, t), -1.0},
                                 {v(VarRole::PumpedTurbineGeneration, t), 1.0},
                                 {v(VarRole::Consumption, t), -u.pump_efficiency},
                                 {v(VarRole::PumpedSpillage, t), 1.0}},
                                Sense::Equal, u.inflow_pumped[t], c.rtag(u.id, "reservoir_pumped", t));
        }
    }
}

/// Multivalent CHP system: extraction-condensing feasible region, fuel
/// boiler and electric backup sized by design factors, thermal storage,
/// heat balance with network losses, ramping on power plus extraction.
inline void build_chp(Ctx& c) {
    for (const auto& u : c.z.chp_systems) {
        const Market* m = c.z.find_market(c.z.heat_markets, u.heat_market);
        if (!m) throw BuilderError(c.uid(u.id) + ": unknown heat market " + u.heat_market);
        const double p = c.s.fuel_price_import;
        const double boiler_heat_cap = u.boiler_design_factor * u.chp_capacity;
        for (int t = 0; t < c.T(); ++t) {
            double cap = u.availability[t] * u.chp_capacity;
            VarId gen = c.var(u.id, VarRole::Generation, t, {0.0, cap}, u.var_cost(p));
            VarId q = c.var(u.id, VarRole::ChpHeat, t, {0.0, kInf}, u.heat_cost(p));
            VarId y = c.var(u.id, VarRole::BoilerFuel, t,
                            {0.0, boiler_heat_cap / u.boiler_efficiency}, u.boiler_cost(p));
            VarId con = c.var(u.id, VarRole::Consumption, t,
                              {0.0, u.electric_backup_design_factor * u.chp_capacity}, 0.0);
            double qcap = u.storage.energy_cap > 0.0 ? kInf : 0.0;
            VarId qin = c.var(u.id, VarRole::HeatCharge, t, {0.0, qcap}, 0.0);
            VarId qout = c.var(u.id, VarRole::HeatDischarge, t, {0.0, qcap}, 0.0);
            c.var(u.id, VarRole::HeatLevel, t, {0.0, u.storage.energy_cap}, 0.0);
            c.lp.add_constraint({{gen, 1.0}, {q, u.power_loss_factor}}, Sense::LessEqual, cap,
                                c.rtag(u.id, "chp_fuel_limit", t));
            c.lp.add_constraint({{q, u.power_to_heat_ratio}, {gen, -1.0}}, Sense::LessEqual, 0.0,
                                c.rtag(u.id, "chp_backpressure", t));
            double need = u.solar_thermal_factor[t] * m->demand[t] / (1.0 - u.network_loss);
            c.lp.add_constraint({{q, 1.0},
                                 {y, u.boiler_efficiency},
                                 {con, u.electric_backup_efficiency[t]},
                                 {qout, 1.0},
                                 {qin, -1.0}},
                                Sense::Equal, need, c.rtag(u.id, "heat_balance", t));
        }
        auto v = [&](VarRole r, int t) { return c.reg.require(c.uid(u.id), r, t); };
        for (int t = 0; t < c.T(); ++t) {
            int next = (t + 1) % c.T();
            c.lp.add_constraint(
                {{v(VarRole::HeatLevel, next), 1.0},
                 {v(VarRole::HeatLevel, t), -(1.0 - u.storage.loss_factor)},
                 {v(VarRole::HeatCharge, t), -u.storage.eta_in},
                 {v(VarRole::HeatDischarge, t), 1.0 / u.storage.eta_out}},
                Sense::Equal, -u.storage.self_discharge, c.rtag(u.id, "heat_storage", t));
        }
        for (int t = 0; t + 1 < c.T(); ++t) {
            VarId up = c.var(u.id, VarRole::RampUp, t, {0.0, kInf}, u.load_change_cost);
            VarId dn = c.var(u.id, VarRole::RampDown, t, {0.0, kInf}, u.load_change_cost);
            c.lp.add_constraint({{v(VarRole::Generation, t + 1), 1.0},
                                 {v(VarRole::Generation, t), -1.0},
                                 {v(VarRole::ChpHeat, t + 1), u.power_loss_factor},
                                 {v(VarRole::ChpHeat, t), -u.power_loss_factor},
                                 {up, -1.0},
                                 {dn, 1.0}},
                                Sense::Equal, 0.0, c.rtag(u.id, "ramp_link", t));
        }
    }
}

/// Hybrid boiler system: fuel boiler plus electric boiler jointly covering
/// the residual heat demand each hour.
inline void build_hybrid_boiler(Ctx& c) {
    for (const auto& u : c.z.hybrid_boilers) {
        const Market* m = c.z.find_market(c.z.heat_markets, u.heat_market);
        if (!m) throw BuilderError(c.uid(u.id) + ": unknown heat market " + u.heat_market);
        for (int t = 0; t < c.T(); ++t) {
            VarId y = c.var(u.id, VarRole::BoilerFuel, t, {0.0, u.boiler_cap / u.boiler_efficiency},
                            u.boiler_cost(c.s.fuel_price_import));
            VarId con = c.var(u.id, VarRole::Consumption, t, {0.0, u.electric_cap}, 0.0);
            double need = u.solar_thermal_factor[t] * m->demand[t] / (1.0 - u.network_loss);
            c.lp.add_constraint({{y, u.boiler_efficiency}, {con, u.electric_efficiency}},
                                Sense::Equal, need, c.rtag(u.id, "heat_balance", t));
        }
    }
}

/// Hybrid heat pump system: hourly-COP main unit, electric and fuel backups,
/// thermal storage charged only from the heat pump itself.
inline void build_heat_pump(Ctx& c) {
    for (const auto& u : c.z.heat_pumps) {
        const Market* m = c.z.find_market(c.z.heat_markets, u.heat_market);
        if (!m) throw BuilderError(c.uid(u.id) + ": unknown heat market " + u.heat_market);
        for (int t = 0; t < c.T(); ++t) {
            VarId hp = c.var(u.id, VarRole::HeatPumpConsumption, t, {0.0, u.hp_cap}, 0.0);
            VarId bu = c.var(u.id, VarRole::BackupConsumption, t, {0.0, u.backup_electric_cap}, 0.0);
            VarId con = c.var(u.id, VarRole::Consumption, t, {0.0, kInf}, 0.0);
            double fuel_ub = u.backup_fuel_efficiency > 0.0
                                 ? u.backup_fuel_cap / u.backup_fuel_efficiency
                                 : 0.0;
            VarId y = c.var(u.id, VarRole::FuelUse, t, {0.0, fuel_ub},
                            u.fuel_cost(c.s.fuel_price_import));
            double qcap = u.storage.energy_cap > 0.0 ? kInf : 0.0;
            VarId qin = c.var(u.id, VarRole::HeatCharge, t, {0.0, qcap}, 0.0);
            VarId qout = c.var(u.id, VarRole::HeatDischarge, t, {0.0, qcap}, 0.0);
            c.var(u.id, VarRole::HeatLevel, t, {0.0, u.storage.energy_cap}, 0.0);
            c.lp.add_constraint({{con, 1.0}, {hp, -1.0}, {bu, -1.0}}, Sense::Equal, 0.0,
                                c.rtag(u.id, "con_total", t));
            c.lp.add_constraint({{qin, 1.0}, {hp, -u.cop[t]}}, Sense::LessEqual, 0.0,
                                c.rtag(u.id, "hp_charge_limit", t));
            c.lp.add_constraint({{hp, u.cop[t]},
                                 {bu, u.backup_electric_efficiency},
                                 {y, u.backup_fuel_efficiency},
                                 {qout, 1.0},
                                 {qin, -1.0}},
                                Sense::Equal, u.solar_thermal_factor[t] * m->demand[t],
                                c.rtag(u.id, "heat_balance", t));
        }
        auto v = [&](VarRole r, int t) { return c.reg.require(c.uid(u.id), r, t); };
        for (int t = 0; t < c.T(); ++t) {
            int next = (t + 1) % c.T();
            c.lp.add_constraint(
                {{v(VarRole::HeatLevel, next), 1.0},
                 {v(VarRole::HeatLevel, t), -(1.0 - u.storage.loss_factor)},
                 {v(VarRole::HeatCharge, t), -u.storage.eta_in},
                 {v(VarRole::HeatDischarge, t), 1.0 / u.storage.eta_out}},
                Sense::Equal, -u.storage.self_discharge, c.rtag(u.id, "heat_storage", t));
        }
    }
}

/// Air-conditioning: electric chillers with a lossy cold store in the
/// cooling demand balance.
inline void build_cooling(Ctx& c) {
    for (const auto& u : c.z.cooling) {
        const Market* m = c.z.find_market(c.z.cooling_markets, u.cooling_market);
        if (!m) throw BuilderError(c.uid(u.id) + ": unknown cooling market " + u.cooling_market);
        for (int t = 0; t < c.T(); ++t) {
            VarId con = c.var(u.id, VarRole::Consumption, t, {0.0, u.capacity}, 0.0);
            double qcap = u.storage.energy_cap > 0.0 ? kInf : 0.0;
            VarId qin = c.var(u.id, VarRole::HeatCharge, t, {0.0, qcap}, 0.0);
            VarId qout = c.var(u.id, VarRole::HeatDischarge, t, {0.0, qcap}, 0.0);
            c.var(u.id, VarRole::HeatLevel, t, {0.0, u.storage.energy_cap}, 0.0);
            c.lp.add_constraint({{con, u.electric_efficiency[t]}, {qin, -1.0}, {qout, 1.0}},
                                Sense::Equal, m->demand[t], c.rtag(u.id, "cool_balance", t));
        }
        auto v = [&](VarRole r, int t) { return c.reg.require(c.uid(u.id), r, t); };
        for (int t = 0; t < c.T(); ++t) {
            int next = (t + 1) % c.T();
            c.lp.add_constraint(
                {{v(VarRole::HeatLevel, next), 1.0},
                 {v(VarRole::HeatLevel, t), -(1.0 - u.storage.loss_factor)},
                 {v(VarRole::HeatCharge, t), -u.storage.eta_in},
                 {v(VarRole::HeatDischarge, t), 1.0 / u.storage.eta_out}},
                Sense::Equal, -u.storage.self_discharge, c.rtag(u.id, "cool_storage", t));
        }
    }
}

/// Road transport: hourly split between electric and combustion driving,
/// charging envelopes, cyclic state of charge for the flexible sub-fleet.
/// The share entering the equations is the fixed-schedule share.
inline void build_transport(Ctx& c) {
    for (const auto& u : c.z.vehicles) {
        const Market* m = c.z.find_market(c.z.road_markets, u.road_market);
        if (!m) throw BuilderError(c.uid(u.id) + ": unknown road market " + u.road_market);
        const double fs = u.fixed_share();
        const double phi = u.market_share;
        for (int t = 0; t < c.T(); ++t) {
            double zmax = u.max_electric_distance[t];
            double d = m->demand[t];
            VarId zel = c.var(u.id, VarRole::ElectricDistance, t,
                              {fs * zmax * phi, zmax * phi}, 0.0);
            double ice_lo = std::max(0.0, fs * (d - zmax) * phi);
            double ice_hi = std::max(0.0, (d - fs * zmax) * phi);
            VarId zice = c.var(u.id, VarRole::IceDistance, t, {ice_lo, ice_hi}, 0.0);
            c.var(u.id, VarRole::Consumption, t,
                  {fs * u.inflexible_charging[t] * phi,
                   fs * u.inflexible_charging[t] * phi +
                       (1.0 - fs) * u.max_flexible_charging[t] * phi},
                  0.0);
            c.var(u.id, VarRole::StorageLevel, t,
                  {(1.0 - fs) * u.soc_min[t] * phi, (1.0 - fs) * u.soc_max[t] * phi}, 0.0);
            VarId y = c.var(u.id, VarRole::FuelUse, t, {0.0, kInf},
                            u.engine_fuel_cost(c.s.fuel_price_import));
            c.lp.add_constraint({{zice, 1.0}, {zel, 1.0}}, Sense::Equal, phi * d,
                                c.rtag(u.id, "road_balance", t));
            c.lp.add_constraint({{y, 1.0}, {zice, -u.fuel_per_km}}, Sense::Equal, 0.0,
                                c.rtag(u.id, "fuel_link", t));
        }
        auto v = [&](VarRole r, int t) { return c.reg.require(c.uid(u.id), r, t); };
        for (int t = 0; t < c.T(); ++t) {
            int next = (t + 1) % c.T();
            double rhs = u.electricity_per_km * fs * u.max_electric_distance[t] * phi -
                         u.charging_efficiency * fs * u.inflexible_charging[t] * phi;
            c.lp.add_constraint({{v(VarRole::StorageLevel, next), 1.0},
                                 {v(VarRole::StorageLevel, t), -1.0},
                                 {v(VarRole::ElectricDistance, t), u.electricity_per_km},
                                 {v(VarRole::Consumption, t), -u.charging_efficiency}},
                                Sense::Equal, rhs, c.rtag(u.id, "soc", t));
        }
    }
}

}  // namespace build

struct Assembled {
    LinearProgram lp;
    VariableRegistry registry;
    std::map<std::string, std::vector<RowId>> clearing;  // zone id -> per-hour rows
};

/// Builds the zonal market clearing equalities and the cross-border transfer
/// variables; returns the clearing row handles for dual extraction.
inline std::map<std::string, std::vector<RowId>> build_market_clearing(const Scenario& s,
                                                                       VariableRegistry& reg,
                                                                       LinearProgram& lp) {
    const int T = static_cast<int>(s.horizon);
    // transfer variables, one per directed interconnector and hour
    for (const auto& ic : s.interconnectors) {
        std::string unit = ic.from_zone + "->" + ic.to_zone;
        for (int t = 0; t < T; ++t) {
            VarId f = lp.add_variable({0.0, ic.ntc[t]}, 0.0,
                                      Tag{ic.from_zone, unit, to_string(VarRole::Transfer), t});
            reg.add(unit, VarRole::Transfer, t, f);
        }
    }
    std::map<std::string, std::vector<RowId>> clearing;
    for (const auto& z : s.zones) {
        // structural feasibility: demand with no generation and no import path
        bool has_demand = false;
        for (double d : z.electricity_demand) has_demand |= d > 0.0;
        bool has_gen = !z.renewables.empty() || !z.thermal.empty() || !z.chp_systems.empty() ||
                       !z.hydro.empty() || !z.batteries.empty();
        bool has_import = false;
        for (const auto& ic : s.interconnectors)
            if (ic.to_zone == z.id)
                for (double v : ic.ntc) has_import |= v > 0.0;
        if (has_demand && !has_gen && !has_import)
            throw BuilderError("zone " + z.id +
                               " is structurally infeasible: positive demand but no generation "
                               "and no import capacity");

        auto& rows = clearing[z.id];
        rows.reserve(T);
        for (int t = 0; t < T; ++t) {
            std::vector<std::pair<VarId, double>> row;
            auto gen = [&](const std::string& unit) {
                row.emplace_back(reg.require(z.id + "." + unit, VarRole::Generation, t), 1.0);
            };
            auto con = [&](const std::string& unit, VarRole role = VarRole::Consumption) {
                row.emplace_back(reg.require(z.id + "." + unit, role, t), -1.0);
            };
            for (const auto& u : z.renewables) gen(u.id);
            for (const auto& u : z.thermal) gen(u.id);
            for (const auto& u : z.chp_systems) {
                gen(u.id);
                con(u.id);
            }
            for (const auto& u : z.hydro) {
                gen(u.id);
                con(u.id);
            }
            for (const auto& u : z.batteries) {
                row.emplace_back(reg.require(z.id + "." + u.id, VarRole::StorageDischarge, t), 1.0);
                row.emplace_back(reg.require(z.id + "." + u.id, VarRole::StorageCharge, t), -1.0);
            }
            for (const auto& u : z.ptg) con(u.id);
            for (const auto& u : z.hybrid_boilers) con(u.id);
            for (const auto& u : z.heat_pumps) con(u.id);
            for (const auto& u : z.cooling) con(u.id);
            for (const auto& u : z.vehicles) con(u.id);
            for (const auto& ic : s.interconnectors) {
                std::string unit = ic.from_zone + "->" + ic.to_zone;
                if (ic.from_zone == z.id)
                    row.emplace_back(reg.require(unit, VarRole::Transfer, t), -1.0);
                if (ic.to_zone == z.id)
                    row.emplace_back(reg.require(unit, VarRole::Transfer, t),
                                     ic.transmission_efficiency);
            }
            rows.push_back(lp.add_constraint(row, Sense::Equal, z.electricity_demand[t],
                                             Tag{z.id, "", "clearing", t}));
        }
    }
    return clearing;
}

/// Validates the scenario and assembles the complete hourly dispatch LP with
/// deterministic variable ordering (zone, technology, unit, role, hour).
inline Assembled assemble(const Scenario& s) {
    auto violations = validate(s);
    if (!violations.empty()) {
        std::string msg = "scenario fails validation:";
        for (const auto& v : violations) msg += "\n  " + v.str();
        throw BuilderError(msg);
    }
    Assembled out;
    for (const auto& z : s.zones) {
        build::Ctx c{s, z, out.registry, out.lp};
        build::build_renewables(c);
        build::build_thermal(c);
        build::build_chp(c);
        build::build_hydro(c);
        build::build_battery(c);
        build::build_ptg(c);
        build::build_hybrid_boiler(c);
        build::build_heat_pump(c);
        build::build_cooling(c);
        build::build_transport(c);
    }
    out.clearing = build_market_clearing(s, out.registry, out.lp);
    return out;
}

}  // namespace merit
