#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace merit {

using Profile = std::vector<double>;

/// Loaded time-series columns, keyed by column name.
using TimeSeriesStore = std::map<std::string, Profile>;

struct ThermalStorageParams {
    double energy_cap = 0.0;  // MWh
    double eta_in = 1.0;
    double eta_out = 1.0;
    double loss_factor = 0.0;     // share lost per hour
    double self_discharge = 0.0;  // MWh drained per hour
};

struct RenewableUnit {
    std::string id;
    double capacity = 0.0;  // MW_el
    Profile availability;   // [0,1]
    double variable_cost = 0.0;     // EUR/MWh_el
    double curtailment_bonus = 0.0; // EUR/MWh_el credit, ranks curtailment
};

struct ThermalUnit {
    std::string id;
    double capacity = 0.0;
    Profile availability;
    double efficiency = 1.0;  // fuel -> electricity
    double load_change_cost = 0.0;
    std::optional<double> variable_cost;  // override for non-methane fleets
    // minimum generation is fixed to zero for clustered linear units
    static constexpr double min_generation = 0.0;

    double marginal_cost(double fuel_price_import) const {
        return variable_cost ? *variable_cost : fuel_price_import / efficiency;
    }
};

struct ChpSystem {
    std::string id;
    double chp_capacity = 0.0;          // MW_el
    double electrical_efficiency = 0.0; // condensing mode
    double power_to_heat_ratio = 0.0;   // MWh_el per MWh_th at the backpressure line
    double power_loss_factor = 0.0;     // MWh_el lost per MWh_th extracted
    double design_ratio_chp = 0.0;      // fleet sizing parameter, unused by constraints
    double boiler_design_factor = 0.0;          // boiler heat cap = factor * chp_capacity
    double electric_backup_design_factor = 0.0; // backup power cap = factor * chp_capacity
    double boiler_efficiency = 1.0;
    Profile electric_backup_efficiency;  // MWh_th/MWh_el; hourly for heat pump backup
    double load_change_cost = 0.0;
    ThermalStorageParams storage;
    double network_loss = 0.0;  // district heating grid loss share
    Profile solar_thermal_factor;  // residual demand share after solar thermal
    std::string heat_market;
    Profile availability;
    std::optional<double> heat_extraction_cost;  // default fuel_price * power_loss_factor
    std::optional<double> boiler_fuel_cost;      // default fuel_price_import

    double var_cost(double fuel_price) const { return fuel_price / electrical_efficiency; }
    double heat_cost(double fuel_price) const {
        return heat_extraction_cost ? *heat_extraction_cost : fuel_price * power_loss_factor;
    }
    double boiler_cost(double fuel_price) const {
        return boiler_fuel_cost ? *boiler_fuel_cost : fuel_price;
    }
};

struct HydroSystem {
    std::string id;
    Profile turbine_cap;         // MW_el
    Profile pumped_turbine_cap;  // MW_el
    Profile pump_cap;            // MW_el
    double pump_efficiency = 1.0;
    Profile inflow_main;    // MW_el equivalents
    Profile inflow_pumped;
    double reservoir_cap_main = 0.0;    // MWh_el
    double reservoir_cap_pumped = 0.0;  // MWh_el
};

struct PowerToGasUnit {
    std::string id;
    double capacity = 0.0;           // MW_el
    double conversion_factor = 0.0;  // MWh_th per MWh_el
    double load_change_cost = 0.0;
    std::optional<double> fuel_credit;  // default fuel_price_domestic

    double credit(double fuel_price_domestic) const {
        return fuel_credit ? *fuel_credit : fuel_price_domestic;
    }
};

struct BatteryUnit {
    std::string id;
    double power_cap = 0.0;
    double energy_cap = 0.0;
    double eta_in = 1.0;
    double eta_out = 1.0;
    double loss_factor = 0.0;
    double self_discharge = 0.0;
    double load_change_cost = 0.0;
};

struct HybridBoilerSystem {
    std::string id;
    double boiler_efficiency = 1.0;
    double electric_efficiency = 1.0;  // MWh_th per MWh_el
    std::optional<double> boiler_fuel_cost;  // default fuel_price_import
    double boiler_cap = 0.0;    // MW_th
    double electric_cap = 0.0;  // MW_el
    double network_loss = 0.0;
    Profile solar_thermal_factor;
    std::string heat_market;

    double boiler_cost(double fuel_price) const {
        return boiler_fuel_cost ? *boiler_fuel_cost : fuel_price;
    }
};

struct HeatPumpSystem {
    std::string id;
    double hp_cap = 0.0;  // MW_el
    Profile cop;          // MWh_th per MWh_el, hourly
    double backup_electric_efficiency = 0.0;  // MWh_th per MWh_el
    double backup_fuel_efficiency = 0.0;      // fuel -> heat
    double backup_electric_cap = 0.0;         // MW_el
    double backup_fuel_cap = 0.0;             // MW_th output
    ThermalStorageParams storage;
    Profile solar_thermal_factor;
    std::string heat_market;
    std::optional<double> backup_fuel_cost;  // default fuel_price_import

    double fuel_cost(double fuel_price) const {
        return backup_fuel_cost ? *backup_fuel_cost : fuel_price;
    }
};

struct CoolingSystem {
    std::string id;
    double capacity = 0.0;       // MW_el
    Profile electric_efficiency; // MWh_th removed per MWh_el, hourly
    ThermalStorageParams storage;
    std::string cooling_market;
};

struct VehicleFleet {
    std::string id;
    double market_share = 0.0;   // share of the road market demand
    double flexible_share = 0.0; // 1 = fully controlled charging
    Profile max_electric_distance;  // km/h
    Profile inflexible_charging;    // MWh_el/h
    Profile max_flexible_charging;  // MWh_el/h
    Profile soc_min, soc_max;       // MWh_el
    double charging_efficiency = 1.0;
    double electricity_per_km = 0.0;  // MWh_el/km
    double fuel_per_km = 0.0;         // MWh_th/km
    std::optional<double> ice_cost;   // EUR/MWh_th, default fuel_price_import
    std::string road_market;

    double engine_fuel_cost(double fuel_price) const {
        return ice_cost ? *ice_cost : fuel_price;
    }
    // the share in the dispatch equations is the fixed-schedule share
    double fixed_share() const { return 1.0 - flexible_share; }
};

struct Market {
    std::string id;
    Profile demand;  // MWh_el/h, MWh_th/h or km/h depending on the market kind
};

struct Zone {
    std::string id;
    Profile electricity_demand;
    std::vector<RenewableUnit> renewables;
    std::vector<ThermalUnit> thermal;
    std::vector<ChpSystem> chp_systems;
    std::vector<HydroSystem> hydro;
    std::vector<BatteryUnit> batteries;
    std::vector<PowerToGasUnit> ptg;
    std::vector<HybridBoilerSystem> hybrid_boilers;
    std::vector<HeatPumpSystem> heat_pumps;
    std::vector<CoolingSystem> cooling;
    std::vector<VehicleFleet> vehicles;
    std::vector<Market> heat_markets;
    std::vector<Market> cooling_markets;
    std::vector<Market> road_markets;

    const Market* find_market(const std::vector<Market>& ms, const std::string& id) const {
        for (const auto& m : ms)
            if (m.id == id) return &m;
        return nullptr;
    }
};

struct Interconnector {
    std::string from_zone, to_zone;
    Profile ntc;  // MW_el
    double transmission_efficiency = 1.0;  // delivered share, < 1
};

struct Scenario {
    std::vector<Zone> zones;
    std::vector<Interconnector> interconnectors;
    double fuel_price_import = 0.0;    // EUR/MWh_th
    double fuel_price_domestic = 0.0;  // EUR/MWh_th, import minus national transport
    std::size_t horizon = 0;           // hourly steps
    TimeSeriesStore timeseries;
    std::vector<std::string> expect_steps;  // prediction ids this case promises

    const Zone* find_zone(const std::string& id) const {
        for (const auto& z : zones)
            if (z.id == id) return &z;
        return nullptr;
    }
};

// ---------------------------------------------------------------------------

struct Violation {
    std::string unit;
    std::string field;
    std::string rule;
    std::string str() const { return unit + "." + field + ": " + rule; }
};

namespace detail {

inline constexpr double kBig = 1e30;

inline void check_profile(std::vector<Violation>& out, const std::string& unit,
                          const std::string& field, const Profile& p, std::size_t T,
                          double lo = -kBig, double hi = kBig) {
    if (p.size() != T) {
        out.push_back({unit, field, "profile length " + std::to_string(p.size()) +
                                        " does not match horizon " + std::to_string(T)});
        return;
    }
    for (double v : p) {
        if (!(v >= lo && v <= hi)) {
            out.push_back({unit, field, "value " + std::to_string(v) + " outside [" +
                                            std::to_string(lo) + ", " + std::to_string(hi) + "]"});
            return;
        }
    }
}

inline void check_storage(std::vector<Violation>& out, const std::string& unit,
                          const ThermalStorageParams& s) {
    if (!(s.eta_in > 0.0 && s.eta_in <= 1.0)) out.push_back({unit, "storage.eta_in", "must be in (0,1]"});
    if (!(s.eta_out > 0.0 && s.eta_out <= 1.0))
        out.push_back({unit, "storage.eta_out", "must be in (0,1]"});
    if (!(s.loss_factor >= 0.0 && s.loss_factor < 1.0))
        out.push_back({unit, "storage.loss_factor", "must be in [0,1)"});
    if (s.self_discharge < 0.0) out.push_back({unit, "storage.self_discharge", "must be >= 0"});
    if (s.energy_cap < 0.0) out.push_back({unit, "storage.energy_cap", "must be >= 0"});
}

}  // namespace detail

/// Checks every type invariant; returns one entry per violated rule.
inline std::vector<Violation> validate(const Scenario& s) {
    using detail::check_profile;
    using detail::check_storage;
    std::vector<Violation> out;
    const std::size_t T = s.horizon;
    if (T < 1) out.push_back({"scenario", "horizon", "must be >= 1"});
    if (s.fuel_price_domestic > s.fuel_price_import)
        out.push_back({"scenario", "fuel_price_domestic", "must be <= fuel_price_import"});

    for (const auto& z : s.zones) {
        auto uid = [&](const std::string& u) { return z.id + "." + u; };
        check_profile(out, z.id, "electricity_demand", z.electricity_demand, T, 0.0);
        for (const auto& m : z.heat_markets) check_profile(out, uid(m.id), "demand", m.demand, T, 0.0);
        for (const auto& m : z.cooling_markets)
            check_profile(out, uid(m.id), "demand", m.demand, T, 0.0);
        for (const auto& m : z.road_markets) check_profile(out, uid(m.id), "demand", m.demand, T, 0.0);

        for (const auto& u : z.renewables) {
            check_profile(out, uid(u.id), "availability", u.availability, T, 0.0, 1.0);
            if (u.capacity < 0.0) out.push_back({uid(u.id), "capacity", "must be >= 0"});
        }
        for (const auto& u : z.thermal) {
            check_profile(out, uid(u.id), "availability", u.availability, T, 0.0, 1.0);
            if (!(u.efficiency > 0.0 && u.efficiency <= 1.0))
                out.push_back({uid(u.id), "efficiency", "must be in (0,1]"});
            if (u.capacity < 0.0) out.push_back({uid(u.id), "capacity", "must be >= 0"});
        }
        for (const auto& u : z.chp_systems) {
            if (!(u.power_to_heat_ratio > 0.0))
                out.push_back({uid(u.id), "power_to_heat_ratio", "must be > 0"});
            if (!(u.power_loss_factor >= 0.0 && u.power_loss_factor < 1.0))
                out.push_back({uid(u.id), "power_loss_factor", "must be in [0,1)"});
            if (!(u.electrical_efficiency > 0.0 && u.electrical_efficiency <= 1.0))
                out.push_back({uid(u.id), "electrical_efficiency", "must be in (0,1]"});
            if (!(u.boiler_efficiency > 0.0 && u.boiler_efficiency <= 1.0))
                out.push_back({uid(u.id), "boiler_efficiency", "must be in (0,1]"});
            if (u.boiler_design_factor < 0.0)
                out.push_back({uid(u.id), "boiler_design_factor", "must be >= 0"});
            if (u.electric_backup_design_factor < 0.0)
                out.push_back({uid(u.id), "electric_backup_design_factor", "must be >= 0"});
            if (!(u.network_loss >= 0.0 && u.network_loss < 1.0))
                out.push_back({uid(u.id), "network_loss", "must be in [0,1)"});
            check_profile(out, uid(u.id), "availability", u.availability, T, 0.0, 1.0);
            check_profile(out, uid(u.id), "solar_thermal_factor", u.solar_thermal_factor, T, 0.0, 1.0);
            check_profile(out, uid(u.id), "electric_backup_efficiency", u.electric_backup_efficiency,
                          T, 0.0);
            check_storage(out, uid(u.id), u.storage);
            if (!z.find_market(z.heat_markets, u.heat_market))
                out.push_back({uid(u.id), "heat_market", "unknown market '" + u.heat_market + "'"});
        }
        for (const auto& u : z.hydro) {
            if (!(u.pump_efficiency > 0.0 && u.pump_efficiency <= 1.0))
                out.push_back({uid(u.id), "pump_efficiency", "must be in (0,1]"});
            check_profile(out, uid(u.id), "turbine_cap", u.turbine_cap, T, 0.0);
            check_profile(out, uid(u.id), "pumped_turbine_cap", u.pumped_turbine_cap, T, 0.0);
            check_profile(out, uid(u.id), "pump_cap", u.pump_cap, T, 0.0);
            check_profile(out, uid(u.id), "inflow_main", u.inflow_main, T, 0.0);
            check_profile(out, uid(u.id), "inflow_pumped", u.inflow_pumped, T, 0.0);
        }
        for (const auto& u : z.batteries) {
            if (!(u.eta_in * u.eta_out > 0.0 && u.eta_in * u.eta_out <= 1.0))
                out.push_back({uid(u.id), "eta_in*eta_out", "round trip must be in (0,1]"});
            if (u.energy_cap < 0.0) out.push_back({uid(u.id), "energy_cap", "must be >= 0"});
            if (!(u.loss_factor >= 0.0 && u.loss_factor < 1.0))
                out.push_back({uid(u.id), "loss_factor", "must be in [0,1)"});
        }
        for (const auto& u : z.ptg) {
            if (!(u.conversion_factor > 0.0 && u.conversion_factor < 1.0))
                out.push_back({uid(u.id), "conversion_factor", "must be in (0,1)"});
        }
        for (const auto& u : z.hybrid_boilers) {
            if (!(u.boiler_efficiency > 0.0 && u.boiler_efficiency <= 1.0))
                out.push_back({uid(u.id), "boiler_efficiency", "must be in (0,1]"});
            if (!(u.electric_efficiency > 0.0))
                out.push_back({uid(u.id), "electric_efficiency", "must be > 0"});
            if (!(u.network_loss >= 0.0 && u.network_loss < 1.0))
                out.push_back({uid(u.id), "network_loss", "must be in [0,1)"});
            check_profile(out, uid(u.id), "solar_thermal_factor", u.solar_thermal_factor, T, 0.0, 1.0);
            if (!z.find_market(z.heat_markets, u.heat_market))
                out.push_back({uid(u.id), "heat_market", "unknown market '" + u.heat_market + "'"});
        }
        for (const auto& u : z.heat_pumps) {
            check_profile(out, uid(u.id), "cop", u.cop, T);
            for (double v : u.cop)
                if (!(v > 0.0)) {
                    out.push_back({uid(u.id), "cop", "must be > 0 in every hour"});
                    break;
                }
            check_profile(out, uid(u.id), "solar_thermal_factor", u.solar_thermal_factor, T, 0.0, 1.0);
            check_storage(out, uid(u.id), u.storage);
            if (!z.find_market(z.heat_markets, u.heat_market))
                out.push_back({uid(u.id), "heat_market", "unknown market '" + u.heat_market + "'"});
        }
        for (const auto& u : z.cooling) {
            check_profile(out, uid(u.id), "electric_efficiency", u.electric_efficiency, T, 0.0);
            check_storage(out, uid(u.id), u.storage);
            if (!z.find_market(z.cooling_markets, u.cooling_market))
                out.push_back({uid(u.id), "cooling_market", "unknown market '" + u.cooling_market + "'"});
        }
        for (const auto& u : z.vehicles) {
            if (!(u.flexible_share >= 0.0 && u.flexible_share <= 1.0))
                out.push_back({uid(u.id), "flexible_share", "must be in [0,1]"});
            if (!(u.market_share >= 0.0 && u.market_share <= 1.0))
                out.push_back({uid(u.id), "market_share", "must be in [0,1]"});
            if (!(u.charging_efficiency > 0.0 && u.charging_efficiency <= 1.0))
                out.push_back({uid(u.id), "charging_efficiency", "must be in (0,1]"});
            check_profile(out, uid(u.id), "max_electric_distance", u.max_electric_distance, T, 0.0);
            check_profile(out, uid(u.id), "inflexible_charging", u.inflexible_charging, T, 0.0);
            check_profile(out, uid(u.id), "max_flexible_charging", u.max_flexible_charging, T, 0.0);
            check_profile(out, uid(u.id), "soc_min", u.soc_min, T, 0.0);
            check_profile(out, uid(u.id), "soc_max", u.soc_max, T, 0.0);
            if (u.soc_min.size() == T && u.soc_max.size() == T)
                for (std::size_t t = 0; t < T; ++t)
                    if (u.soc_min[t] > u.soc_max[t]) {
                        out.push_back({uid(u.id), "soc_min", "exceeds soc_max at step " +
                                                                 std::to_string(t)});
                        break;
                    }
            if (!z.find_market(z.road_markets, u.road_market))
                out.push_back({uid(u.id), "road_market", "unknown market '" + u.road_market + "'"});
        }

        // every market needs at least one supplying unit
        for (const auto& m : z.heat_markets) {
            bool used = false;
            for (const auto& u : z.chp_systems) used |= u.heat_market == m.id;
            for (const auto& u : z.hybrid_boilers) used |= u.heat_market == m.id;
            for (const auto& u : z.heat_pumps) used |= u.heat_market == m.id;
            if (!used) out.push_back({uid(m.id), "heat_market", "no supplying unit"});
        }
        for (const auto& m : z.cooling_markets) {
            bool used = false;
            for (const auto& u : z.cooling) used |= u.cooling_market == m.id;
            if (!used) out.push_back({uid(m.id), "cooling_market", "no supplying unit"});
        }
        for (const auto& m : z.road_markets) {
            bool used = false;
            for (const auto& u : z.vehicles) used |= u.road_market == m.id;
            if (!used) out.push_back({uid(m.id), "road_market", "no supplying fleet"});
        }
    }

    for (const auto& ic : s.interconnectors) {
        std::string id = ic.from_zone + "->" + ic.to_zone;
        if (!(ic.transmission_efficiency > 0.0 && ic.transmission_efficiency < 1.0))
            out.push_back({id, "transmission_efficiency", "TL must satisfy 0 < TL < 1"});
        if (!s.find_zone(ic.from_zone))
            out.push_back({id, "from_zone", "unknown zone '" + ic.from_zone + "'"});
        if (!s.find_zone(ic.to_zone)) out.push_back({id, "to_zone", "unknown zone '" + ic.to_zone + "'"});
        check_profile(out, id, "ntc", ic.ntc, T, 0.0);
    }
    return out;
}

}  // namespace merit
