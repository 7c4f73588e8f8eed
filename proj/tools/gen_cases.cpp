// Regenerates the bundled scenario directories under cases/. Each case
// isolates one group of price-setting mechanisms; segment layouts are chosen
// so that every step named in the case's expect_step list lasts at least
// five hours and sits on strictly monotone dispatch where exact duals are
// needed.

#include <cmath>
#include <filesystem>
#include <iostream>

#include "merit/scenario.hpp"
#include "merit/scenario_io.hpp"

using namespace merit;

namespace {

constexpr std::size_t kT = 168;
constexpr double kFuelImport = 119.2;
constexpr double kFuelDomestic = 114.0;
constexpr double kPi = 3.14159265358979323846;

Profile flat(double v, std::size_t T = kT) { return Profile(T, v); }

// triangle wave: single-hour peak at phase period/2, single-hour trough at 0
double tri_shape(int phase, int period) {
    int half = period / 2;
    return phase <= half ? static_cast<double>(phase) / half
                         : static_cast<double>(period - phase) / half;
}

RenewableUnit make_pv(double cap = 40000.0) {
    return RenewableUnit{"pv", cap, flat(0.0), 0.0, 9e-6};
}
RenewableUnit make_wind(double cap = 30000.0) {
    return RenewableUnit{"wind", cap, flat(0.0), 4.58, 1e-5};
}
ThermalUnit make_ocgt(double cap = 125000.0) {
    ThermalUnit u;
    u.id = "ocgt";
    u.capacity = cap;
    u.availability = flat(1.0);
    u.efficiency = 0.40;
    u.load_change_cost = 4.8;
    return u;
}

// dark segment with repeated demand triangles: 298 plateau on the flanks,
// 307.6 at peaks, 288.4 at troughs
void dark_triangles(Zone& z, int from, int to, double lo = 8000.0, double hi = 12000.0) {
    for (int t = from; t <= to; ++t)
        z.electricity_demand[t] = lo + (hi - lo) * tri_shape((t - from) % 12, 12);
}

Scenario base_scenario() {
    Scenario s;
    s.horizon = kT;
    s.fuel_price_import = kFuelImport;
    s.fuel_price_domestic = kFuelDomestic;
    Zone z;
    z.id = "DE";
    z.electricity_demand = flat(0.0);
    z.renewables.push_back(make_pv());
    z.renewables.push_back(make_wind());
    z.thermal.push_back(make_ocgt());
    s.zones.push_back(z);
    return s;
}

void set_wind(Zone& z, int t, double available_mw) {
    z.renewables[1].availability[t] = available_mw / z.renewables[1].capacity;
}
void set_pv(Zone& z, int t, double available_mw) {
    z.renewables[0].availability[t] = available_mw / z.renewables[0].capacity;
}

// --------------------------------------------------------------- res_ocgt
Scenario case_res_ocgt() {
    Scenario s = base_scenario();
    Zone& z = s.zones[0];
    dark_triangles(z, 0, 83);
    for (int t = 84; t <= 125; ++t) {  // windy nights: wind marginal at 4.58
        z.electricity_demand[t] = 10000.0 + 400.0 * tri_shape((t - 84) % 8, 8);
        set_wind(z, t, 21000.0);
    }
    for (int t = 126; t <= 167; ++t) {  // bright days: full surplus near zero
        z.electricity_demand[t] = 9000.0 + 400.0 * tri_shape((t - 126) % 8, 8);
        set_wind(z, t, 7500.0);
        set_pv(z, t, 32000.0);
    }
    s.expect_steps = {"thermal_marginal:ocgt", "thermal_marginal:ocgt+lc",
                      "thermal_marginal:ocgt-lc", "res_marginal:wind", "res_floor"};
    return s;
}

// ----------------------------------------------------------- res_ocgt_ptg
Scenario case_res_ocgt_ptg() {
    Scenario s = base_scenario();
    Zone& z = s.zones[0];
    PowerToGasUnit ptg;
    ptg.id = "electrolyser";
    ptg.capacity = 5000.0;
    ptg.conversion_factor = 0.5925;
    ptg.load_change_cost = 1.0;
    z.ptg.push_back(ptg);

    dark_triangles(z, 0, 83);
    for (int t = 84; t <= 125; ++t) {  // surplus below the electrolyser cap
        z.electricity_demand[t] = 10000.0;
        double surplus = 1000.0 + 3200.0 * tri_shape((t - 84) % 8, 8);
        set_wind(z, t, 10000.0 + surplus);
    }
    for (int t = 126; t <= 145; ++t) {  // electrolyser saturated, wind curtails
        z.electricity_demand[t] = 10000.0;
        set_wind(z, t, 17000.0 + 300.0 * tri_shape((t - 126) % 8, 8));
    }
    for (int t = 146; t <= 167; ++t) {  // solar floods everything
        z.electricity_demand[t] = 9000.0;
        set_wind(z, t, 7500.0);
        set_pv(z, t, 32000.0);
    }
    s.expect_steps = {"thermal_marginal:ocgt", "thermal_marginal:ocgt+lc",
                      "thermal_marginal:ocgt-lc", "ptg:electrolyser",
                      "ptg:electrolyser+lc",     "ptg:electrolyser-lc",
                      "res_marginal:wind",       "res_floor"};
    return s;
}

// ------------------------------------------------------- res_ocgt_battery
Scenario case_res_ocgt_battery() {
    Scenario s = base_scenario();
    Zone& z = s.zones[0];
    z.thermal[0].load_change_cost = 0.0;  // isolate the storage value chain
    BatteryUnit bat;
    bat.id = "bess";
    bat.power_cap = 1500.0;
    bat.energy_cap = 9000.0;
    bat.eta_in = std::sqrt(0.92);
    bat.eta_out = std::sqrt(0.92);
    bat.loss_factor = 1.39e-7;
    bat.load_change_cost = 0.1;
    z.batteries.push_back(bat);

    dark_triangles(z, 0, 83);
    for (int cyc = 0; cyc < 7; ++cyc) {
        int t0 = 84 + 12 * cyc;
        for (int k = 0; k < 6; ++k) {  // surplus half-day, battery absorbs all
            int t = t0 + k;
            z.electricity_demand[t] = 9000.0;
            double surplus = 300.0 + 1000.0 * tri_shape(k % 6, 6);
            set_wind(z, t, 9000.0 + surplus);
        }
        for (int k = 6; k < 12; ++k) {  // dark half-day, battery plus turbine
            int t = t0 + k;
            z.electricity_demand[t] = 9000.0 + 200.0 * (k - 6);
        }
    }
    s.expect_steps = {"thermal_marginal:ocgt", "storage_step:bess"};
    return s;
}

// --------------------------------------------------------- res_ocgt_hydro
Scenario case_res_ocgt_hydro() {
    Scenario s = base_scenario();
    Zone& z = s.zones[0];
    z.thermal[0].load_change_cost = 0.0;  // isolate the storage value chain
    HydroSystem hy;
    hy.id = "phs";
    hy.turbine_cap = flat(800.0);
    hy.pumped_turbine_cap = flat(2000.0);
    hy.pump_cap = flat(2000.0);
    hy.pump_efficiency = 0.73;
    hy.inflow_main = flat(100.0);
    hy.inflow_pumped = flat(0.0);
    hy.reservoir_cap_main = 60000.0;
    hy.reservoir_cap_pumped = 20000.0;
    z.hydro.push_back(hy);

    dark_triangles(z, 0, 83);
    for (int cyc = 0; cyc < 7; ++cyc) {
        int t0 = 84 + 12 * cyc;
        for (int k = 0; k < 6; ++k) {  // pumping absorbs every surplus hour
            int t = t0 + k;
            z.electricity_demand[t] = 9000.0;
            double surplus = 300.0 + 1500.0 * tri_shape(k % 6, 6);
            set_wind(z, t, 9000.0 + surplus);
        }
        for (int k = 6; k < 12; ++k) {
            int t = t0 + k;
            z.electricity_demand[t] = 9000.0 + 200.0 * (k - 6);
        }
    }
    s.expect_steps = {"thermal_marginal:ocgt", "storage_step:phs"};
    return s;
}

// ------------------------------------------------------ res_ocgt_vehicles
Scenario case_res_ocgt_vehicles() {
    Scenario s = base_scenario();
    Zone& z = s.zones[0];
    // one long dark ramp up and down; flexible charging spreads over the
    // equal-priced flanks without creating unpredicted plateaus
    for (int t = 0; t <= 41; ++t) z.electricity_demand[t] = 8000.0 + 100.0 * t;
    for (int t = 42; t <= 83; ++t) z.electricity_demand[t] = 12100.0 - 98.0 * (t - 41);
    for (int t = 84; t <= 139; ++t) {
        z.electricity_demand[t] = 10000.0;
        set_wind(z, t, 21000.0);
    }
    for (int t = 140; t <= 167; ++t) {
        z.electricity_demand[t] = 9000.0;
        set_wind(z, t, 7500.0);
        set_pv(z, t, 32000.0);
    }

    Profile road(kT);
    for (std::size_t t = 0; t < kT; ++t) {
        int h = static_cast<int>(t) % 24;
        road[t] = 8.0e5 + (h >= 6 && h <= 21 ? 8.0e5 : 0.0);  // km per hour
    }
    z.road_markets.push_back(Market{"road", road});

    VehicleFleet bev;
    bev.id = "bev";
    bev.market_share = 0.7;
    bev.flexible_share = 0.8;
    bev.max_electric_distance = road;  // the whole demand could run electric
    Profile ic(kT);
    for (std::size_t t = 0; t < kT; ++t) {
        int h = static_cast<int>(t) % 24;
        ic[t] = (h >= 18 || h < 2) ? 260.0 : 20.0;  // fixed evening charging, MWh/h
    }
    bev.inflexible_charging = ic;
    bev.max_flexible_charging = flat(600.0);
    bev.soc_min = flat(0.0);
    bev.soc_max = flat(5000.0);
    bev.charging_efficiency = 0.9;
    bev.electricity_per_km = 1.8e-4;
    bev.fuel_per_km = 5.8e-4;  // combustion fallback never competitive
    bev.road_market = "road";
    z.vehicles.push_back(bev);

    VehicleFleet phev = bev;
    phev.id = "phev";
    phev.market_share = 0.3;
    phev.flexible_share = 0.6;
    // a fifth of the demand must run on the combustion engine
    for (std::size_t t = 0; t < kT; ++t) phev.max_electric_distance[t] = 0.8 * road[t];
    phev.max_flexible_charging = flat(600.0);
    phev.soc_max = flat(2000.0);
    phev.fuel_per_km = 5.233e-4;  // indifference price 311.89, above the backstop
    z.vehicles.push_back(phev);

    s.expect_steps = {"thermal_marginal:ocgt", "res_marginal:wind", "res_floor"};
    return s;
}

// ------------------------------------------------------- res_ocgt_cooling
Scenario case_res_ocgt_cooling() {
    Scenario s = base_scenario();
    Zone& z = s.zones[0];
    dark_triangles(z, 0, 83);
    for (int t = 84; t <= 139; ++t) {
        z.electricity_demand[t] = 10000.0;
        set_wind(z, t, 22000.0);
    }
    for (int t = 140; t <= 167; ++t) {
        z.electricity_demand[t] = 9000.0;
        set_wind(z, t, 7500.0);
        set_pv(z, t, 32000.0);
    }
    Profile cool(kT);
    for (std::size_t t = 0; t < kT; ++t) {
        int h = static_cast<int>(t) % 24;
        cool[t] = (h >= 8 && h <= 19) ? 6000.0 : 1500.0;
    }
    z.cooling_markets.push_back(Market{"cool", cool});
    CoolingSystem ac;
    ac.id = "ac";
    ac.capacity = 2500.0;
    ac.electric_efficiency = flat(3.0);
    ac.storage.energy_cap = 30000.0;
    ac.storage.loss_factor = 0.10;
    ac.cooling_market = "cool";
    z.cooling.push_back(ac);
    s.expect_steps = {"thermal_marginal:ocgt", "thermal_marginal:ocgt+lc",
                      "thermal_marginal:ocgt-lc", "res_marginal:wind", "res_floor"};
    return s;
}

// ----------------------------------------------------- res_ocgt_heat_pump
Scenario case_res_ocgt_heat_pump() {
    Scenario s = base_scenario();
    Zone& z = s.zones[0];
    for (int t = 0; t <= 41; ++t) z.electricity_demand[t] = 8000.0 + 100.0 * t;
    for (int t = 42; t <= 83; ++t) z.electricity_demand[t] = 12100.0 - 98.0 * (t - 41);
    for (int t = 84; t <= 95; ++t) {
        // narrow surplus band: the heat pump is the marginal consumer and
        // charges the store against later dark-hour pump displacement
        z.electricity_demand[t] = 10000.0;
        set_wind(z, t, 10000.0 + 300.0 + 1500.0 * tri_shape((t - 84) % 12, 12));
    }
    for (int t = 96; t <= 139; ++t) {
        z.electricity_demand[t] = 10000.0;
        set_wind(z, t, 22000.0);
    }
    for (int t = 140; t <= 167; ++t) {
        z.electricity_demand[t] = 9000.0;
        set_wind(z, t, 7500.0);
        set_pv(z, t, 32000.0);
    }
    // heat stays below the pump's own reach, so stored heat competes with
    // the pump's later electricity draw rather than with boiler fuel
    Profile heat = flat(8000.0);
    z.heat_markets.push_back(Market{"hp_heat", heat});
    HeatPumpSystem hp;
    hp.id = "hp";
    hp.hp_cap = 6000.0;
    hp.cop = flat(3.5);
    hp.backup_fuel_efficiency = 0.90;
    hp.backup_fuel_cap = 14000.0;
    hp.storage.energy_cap = 18000.0;
    hp.storage.eta_in = 0.99;
    hp.storage.eta_out = 0.99;
    hp.storage.loss_factor = 0.0021;
    hp.solar_thermal_factor = flat(1.0);
    hp.heat_market = "hp_heat";
    z.heat_pumps.push_back(hp);
    s.expect_steps = {"thermal_marginal:ocgt", "res_marginal:wind", "res_floor"};
    return s;
}

// ------------------------------------------------- res_ocgt_hybrid_boiler
Scenario case_res_ocgt_hybrid_boiler() {
    Scenario s = base_scenario();
    Zone& z = s.zones[0];
    dark_triangles(z, 0, 71);
    for (int t = 72; t <= 107; ++t) {  // surplus below the 0.90 system's cap
        z.electricity_demand[t] = 10000.0;
        set_wind(z, t, 10000.0 + 800.0 + 2800.0 * tri_shape((t - 72) % 8, 8));
    }
    for (int t = 108; t <= 143; ++t) {  // 0.90 saturated, 0.93 partial
        z.electricity_demand[t] = 10000.0;
        set_wind(z, t, 10000.0 + 4600.0 + 3000.0 * tri_shape((t - 108) % 8, 8));
    }
    for (int t = 144; t <= 167; ++t) {  // both saturated, wind curtails
        z.electricity_demand[t] = 10000.0;
        set_wind(z, t, 10000.0 + 8600.0 + 400.0 * tri_shape((t - 144) % 8, 8));
    }
    z.heat_markets.push_back(Market{"heat_a", flat(9000.0)});
    z.heat_markets.push_back(Market{"heat_b", flat(9000.0)});
    HybridBoilerSystem a;
    a.id = "hb90";
    a.boiler_efficiency = 0.90;
    a.electric_efficiency = 0.99;
    a.boiler_cap = 12000.0;
    a.electric_cap = 4000.0;
    a.solar_thermal_factor = flat(1.0);
    a.heat_market = "heat_a";
    HybridBoilerSystem b = a;
    b.id = "hb93";
    b.boiler_efficiency = 0.93;
    b.heat_market = "heat_b";
    z.hybrid_boilers.push_back(a);
    z.hybrid_boilers.push_back(b);
    s.expect_steps = {"thermal_marginal:ocgt",    "thermal_marginal:ocgt+lc",
                      "thermal_marginal:ocgt-lc", "boiler_electric:hb90",
                      "boiler_electric:hb93",     "res_marginal:wind"};
    return s;
}

// ---------------------------------------------------------- res_ocgt_chp
Scenario case_res_ocgt_chp() {
    Scenario s = base_scenario();
    Zone& z = s.zones[0];
    Profile heat(kT, 0.0);

    // (i) 0..23: deep shortage, huge heat need: state A hours
    for (int t = 0; t <= 23; ++t) {
        z.electricity_demand[t] = 14000.0 + 4000.0 * tri_shape(t % 12, 12);
        heat[t] = 18000.0;
    }
    // (ii) 24..35: shortage, low heat: CHP covers heat alone at its fuel
    // limit (state G); 36..47: heat beyond the fuel-limit corner, electric
    // backup partial (state D)
    for (int t = 24; t <= 35; ++t) {
        z.electricity_demand[t] = 11000.0 + 2000.0 * tri_shape((t - 24) % 12, 12);
        heat[t] = 3600.0;
    }
    for (int t = 36; t <= 47; ++t) {
        z.electricity_demand[t] = 11000.0 + 2000.0 * tri_shape((t - 36) % 12, 12);
        heat[t] = 10800.0;
    }
    // (iii) 48..59: no turbine, boiler partial with backup full (state B);
    // 60..71: backup partial, boiler off (state E)
    for (int t = 48; t <= 59; ++t) {
        z.electricity_demand[t] = 1500.0 + 20.0 * (t - 48);
        heat[t] = 11700.0;
    }
    for (int t = 60; t <= 71; ++t) {
        z.electricity_demand[t] = 1800.0 + 20.0 * (t - 60);
        heat[t] = 8100.0;
    }
    // (iv) 72..95: condensing margin, low heat (state H)
    for (int t = 72; t <= 95; ++t) {
        z.electricity_demand[t] = 5000.0 + 40.0 * (t - 72);
        heat[t] = 2700.0;
    }
    // (v) 96..139: windy, turbine off; heat need keeps boiler partial with
    // the backup at full load (state C)
    for (int t = 96; t <= 139; ++t) {
        z.electricity_demand[t] = 10000.0;
        set_wind(z, t, 24000.0);
        heat[t] = 11700.0;
    }
    // (vi) 140..167: solar flood, backup partial (state F)
    for (int t = 140; t <= 167; ++t) {
        z.electricity_demand[t] = 9000.0;
        set_wind(z, t, 7500.0);
        set_pv(z, t, 34000.0);
        heat[t] = 5400.0;
    }
    z.heat_markets.push_back(Market{"dh", heat});

    ChpSystem chp;
    chp.id = "ccgt_chp";
    chp.chp_capacity = 8000.0;
    chp.electrical_efficiency = 0.56;
    chp.power_to_heat_ratio = 1.4;
    chp.power_loss_factor = 0.1;
    chp.design_ratio_chp = 0.33;
    chp.boiler_design_factor = 2.0;
    chp.electric_backup_design_factor = 0.3;
    chp.boiler_efficiency = 0.93;
    chp.electric_backup_efficiency = flat(3.3);  // large-scale heat pump backup
    chp.load_change_cost = 4.8;
    chp.network_loss = 0.10;
    chp.solar_thermal_factor = flat(1.0);
    chp.availability = flat(1.0);
    chp.heat_market = "dh";
    chp.storage.energy_cap = 1500.0;
    chp.storage.eta_in = 0.99;
    chp.storage.eta_out = 0.99;
    chp.storage.loss_factor = 0.0021;
    z.chp_systems.push_back(chp);

    s.expect_steps = {"thermal_marginal:ocgt",   "chp_marginal:ccgt_chp",
                      "chp_vs_boiler:ccgt_chp",  "chp_vs_electric:ccgt_chp",
                      "res_marginal:wind",       "res_floor"};
    return s;
}

// ---------------------------------------------------------------- all_de
Scenario case_all_de() {
    Scenario s;
    s.horizon = kT;
    s.fuel_price_import = kFuelImport;
    s.fuel_price_domestic = kFuelDomestic;
    Zone z;
    z.id = "DE";
    z.electricity_demand = flat(0.0);

    // installed capacities of the full German configuration
    z.renewables.push_back(RenewableUnit{"pv", 174400.0, flat(0.0), 0.0, 9e-6});
    z.renewables.push_back(RenewableUnit{"wind_onshore", 162300.0, flat(0.0), 4.58, 1e-5});
    z.renewables.push_back(RenewableUnit{"wind_offshore", 36700.0, flat(0.0), 0.0, 8e-6});
    z.thermal.push_back(make_ocgt(800000.0));  // backstop, not limiting

    for (std::size_t t = 0; t < kT; ++t) {
        int h = static_cast<int>(t) % 24;
        int day = static_cast<int>(t) / 24;
        double base = 52000.0 + 9000.0 * std::sin(2.0 * kPi * (h - 9) / 24.0);
        z.electricity_demand[t] = base + (day % 7 >= 5 ? -4000.0 : 0.0);
        double sun = (h >= 7 && h <= 17) ? std::sin(kPi * (h - 7) / 10.0) : 0.0;
        // wind: three-day waves; days two and three are a calm, overcast spell
        double wave = 0.5 + 0.45 * std::sin(2.0 * kPi * static_cast<double>(t) / 72.0);
        if (day == 2 || day == 3) {
            wave *= 0.12;
            sun *= 0.25;
        }
        z.renewables[0].availability[t] = 0.75 * sun;
        z.renewables[1].availability[t] = std::min(0.95, wave);
        z.renewables[2].availability[t] = std::min(0.95, wave * 1.15);
    }

    HydroSystem hy;
    hy.id = "hydro";
    hy.turbine_cap = flat(6200.0);
    hy.pumped_turbine_cap = flat(3000.0);
    hy.pump_cap = flat(3000.0);
    hy.pump_efficiency = 0.73;
    hy.inflow_main = flat(1500.0);
    hy.inflow_pumped = flat(0.0);
    hy.reservoir_cap_main = 400000.0;
    hy.reservoir_cap_pumped = 40000.0;
    z.hydro.push_back(hy);

    BatteryUnit bat;
    bat.id = "battery";
    bat.power_cap = 6500.0;
    bat.energy_cap = 39000.0;
    bat.eta_in = std::sqrt(0.92);
    bat.eta_out = std::sqrt(0.92);
    bat.loss_factor = 1.39e-7;
    bat.load_change_cost = 0.1;
    z.batteries.push_back(bat);

    PowerToGasUnit ptg;
    ptg.id = "ptg";
    ptg.capacity = 27100.0;
    ptg.conversion_factor = 0.5925;
    ptg.load_change_cost = 1.0;
    z.ptg.push_back(ptg);

    Profile cool(kT);
    for (std::size_t t = 0; t < kT; ++t) {
        int h = static_cast<int>(t) % 24;
        cool[t] = (h >= 9 && h <= 18) ? 12000.0 : 3000.0;
    }
    z.cooling_markets.push_back(Market{"cool", cool});
    CoolingSystem ac;
    ac.id = "aircon";
    ac.capacity = 21100.0;
    ac.electric_efficiency = flat(3.0);
    ac.storage.energy_cap = 21100.0 * 3.0 * 12.0;
    ac.storage.loss_factor = 0.10;
    ac.cooling_market = "cool";
    z.cooling.push_back(ac);

    Profile road(kT);
    for (std::size_t t = 0; t < kT; ++t) {
        int h = static_cast<int>(t) % 24;
        road[t] = 1.0e6 + (((h >= 7 && h <= 9) || (h >= 16 && h <= 18)) ? 1.2e6 : 0.0);
    }
    z.road_markets.push_back(Market{"road", road});
    VehicleFleet bev;
    bev.id = "bev";
    bev.market_share = 0.6;
    bev.flexible_share = 0.8;
    bev.max_electric_distance = road;
    Profile ic(kT);
    for (std::size_t t = 0; t < kT; ++t) {
        int h = static_cast<int>(t) % 24;
        ic[t] = (h >= 18 || h < 2) ? 700.0 : 60.0;
    }
    bev.inflexible_charging = ic;
    bev.max_flexible_charging = flat(1500.0);
    bev.soc_min = flat(0.0);
    bev.soc_max = flat(15000.0);
    bev.charging_efficiency = 0.9;
    bev.electricity_per_km = 1.8e-4;
    bev.fuel_per_km = 5.8e-4;
    bev.road_market = "road";
    z.vehicles.push_back(bev);
    VehicleFleet phev = bev;
    phev.id = "phev";
    phev.market_share = 0.4;
    phev.flexible_share = 0.6;
    for (std::size_t t = 0; t < kT; ++t) phev.max_electric_distance[t] = 0.8 * road[t];
    phev.soc_max = flat(8000.0);
    phev.fuel_per_km = 5.233e-4;
    z.vehicles.push_back(phev);

    Profile heat_dh(kT), heat_onsite(kT), heat_hp(kT);
    for (std::size_t t = 0; t < kT; ++t) {
        int h = static_cast<int>(t) % 24;
        double morning = (h >= 5 && h <= 9) ? 1.0 : 0.0;
        heat_dh[t] = 16000.0 + 3000.0 * morning;
        heat_onsite[t] = 9000.0 + 2000.0 * morning;
        heat_hp[t] = 14000.0 + 4000.0 * morning;
    }
    z.heat_markets.push_back(Market{"dh_a", heat_dh});
    z.heat_markets.push_back(Market{"dh_b", heat_dh});
    z.heat_markets.push_back(Market{"onsite_a", heat_onsite});
    z.heat_markets.push_back(Market{"onsite_b", heat_onsite});
    z.heat_markets.push_back(Market{"hp_heat", heat_hp});

    ChpSystem ccgt;
    ccgt.id = "ccgt_chp";
    ccgt.chp_capacity = 25000.0;
    ccgt.electrical_efficiency = 0.56;
    ccgt.power_to_heat_ratio = 1.4;
    ccgt.power_loss_factor = 0.1;
    ccgt.design_ratio_chp = 0.33;
    ccgt.boiler_design_factor = 2.0;
    ccgt.electric_backup_design_factor = 0.8;
    ccgt.boiler_efficiency = 0.93;
    ccgt.electric_backup_efficiency = flat(0.99);
    ccgt.load_change_cost = 4.8;
    ccgt.network_loss = 0.10;
    ccgt.solar_thermal_factor = flat(1.0);
    ccgt.availability = flat(1.0);
    ccgt.heat_market = "dh_a";
    ccgt.storage.energy_cap = 8.0 * 20000.0;
    ccgt.storage.eta_in = 0.99;
    ccgt.storage.eta_out = 0.99;
    ccgt.storage.loss_factor = 0.0021;
    z.chp_systems.push_back(ccgt);

    ChpSystem og = ccgt;
    og.id = "ocgt_chp";
    og.chp_capacity = 15300.0;  // total CHP fleet 40.3 GW
    og.electrical_efficiency = 0.42;
    og.power_to_heat_ratio = 0.86;
    og.power_loss_factor = 0.01;
    og.boiler_efficiency = 0.90;
    og.electric_backup_efficiency = flat(3.3);
    og.heat_market = "dh_b";
    og.storage.energy_cap = 8.0 * 15000.0;
    z.chp_systems.push_back(og);

    HybridBoilerSystem hb;
    hb.id = "hb90";
    hb.boiler_efficiency = 0.90;
    hb.electric_efficiency = 0.99;
    hb.boiler_cap = 16000.0;
    hb.electric_cap = 7000.0;
    hb.solar_thermal_factor = flat(1.0);
    hb.heat_market = "onsite_a";
    z.hybrid_boilers.push_back(hb);
    HybridBoilerSystem hb2 = hb;
    hb2.id = "hb93";
    hb2.boiler_efficiency = 0.93;
    hb2.heat_market = "onsite_b";
    z.hybrid_boilers.push_back(hb2);

    HeatPumpSystem hp;
    hp.id = "heat_pump";
    hp.hp_cap = 10000.0;
    hp.cop = flat(0.0);
    for (std::size_t t = 0; t < kT; ++t) {
        int h = static_cast<int>(t) % 24;
        hp.cop[t] = 3.3 + 0.7 * ((h >= 11 && h <= 16) ? 1.0 : 0.0);
    }
    hp.backup_fuel_efficiency = 0.90;
    hp.backup_fuel_cap = 20000.0;
    hp.storage.energy_cap = 6.0 * 10000.0;
    hp.storage.eta_in = 0.99;
    hp.storage.eta_out = 0.99;
    hp.storage.loss_factor = 0.0021;
    hp.solar_thermal_factor = flat(1.0);
    hp.heat_market = "hp_heat";
    z.heat_pumps.push_back(hp);

    s.zones.push_back(z);
    s.expect_steps = {};  // smoothing dominates; the focused cases carry promises
    return s;
}

// ----------------------------------------------------------------- de_fr
Scenario case_de_fr() {
    Scenario s;
    s.horizon = kT;
    s.fuel_price_import = kFuelImport;
    s.fuel_price_domestic = kFuelDomestic;

    Zone de;
    de.id = "DE";
    de.electricity_demand = flat(0.0);
    de.renewables.push_back(RenewableUnit{"run_of_river", 100.0, flat(1.0), 0.0, 1e-9});
    de.renewables.push_back(make_pv());
    de.renewables.push_back(make_wind());
    de.thermal.push_back(make_ocgt());
    for (int t = 0; t <= 55; ++t) {  // dark: cheap imports at night, turbines by day
        int h = t % 24;
        de.electricity_demand[t] = (h >= 22 || h <= 5) ? 4000.0 : 11000.0 + 150.0 * (h - 6);
    }
    for (int t = 56; t <= 111; ++t) {  // windy: wind marginal, exports to FR
        de.electricity_demand[t] = 10000.0;
        de.renewables[2].availability[t] = 21000.0 / 30000.0;
    }
    for (int t = 112; t <= 167; ++t) {  // sunny midday surplus
        int h = t % 24;
        de.electricity_demand[t] = 9000.0;
        de.renewables[1].availability[t] = (h >= 8 && h <= 17) ? 0.8 : 0.0;
        de.renewables[2].availability[t] = 0.25;
    }

    Zone fr;
    fr.id = "FR";
    fr.electricity_demand = flat(4000.0);
    ThermalUnit nuke;
    nuke.id = "nuclear";
    nuke.capacity = 9000.0;
    nuke.availability = flat(1.0);
    nuke.efficiency = 0.33;
    nuke.load_change_cost = 0.5;
    nuke.variable_cost = 10.6;
    fr.thermal.push_back(nuke);

    s.zones.push_back(de);
    s.zones.push_back(fr);

    Interconnector fr_de;
    fr_de.from_zone = "FR";
    fr_de.to_zone = "DE";
    fr_de.ntc = flat(4800.0);
    fr_de.transmission_efficiency = 0.95;
    s.interconnectors.push_back(fr_de);
    Interconnector de_fr;
    de_fr.from_zone = "DE";
    de_fr.to_zone = "FR";
    de_fr.ntc = flat(4800.0);
    de_fr.transmission_efficiency = 0.95;
    s.interconnectors.push_back(de_fr);

    s.expect_steps = {"thermal_marginal:ocgt", "thermal_marginal:nuclear",
                      "thermal_marginal:nuclear:via:FR->DE", "res_marginal:wind"};
    return s;
}

void emit(const Scenario& s, const std::filesystem::path& root, const std::string& name) {
    auto violations = validate(s);
    if (!violations.empty()) {
        std::cerr << name << " INVALID:\n";
        for (const auto& v : violations) std::cerr << "  " << v.str() << "\n";
        std::exit(1);
    }
    serialize_scenario(s, root / name);
    std::cout << "wrote " << (root / name).string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::path root = argc > 1 ? argv[1] : "cases";
    emit(case_res_ocgt(), root, "res_ocgt");
    emit(case_res_ocgt_ptg(), root, "res_ocgt_ptg");
    emit(case_res_ocgt_battery(), root, "res_ocgt_battery");
    emit(case_res_ocgt_hydro(), root, "res_ocgt_hydro");
    emit(case_res_ocgt_vehicles(), root, "res_ocgt_vehicles");
    emit(case_res_ocgt_cooling(), root, "res_ocgt_cooling");
    emit(case_res_ocgt_heat_pump(), root, "res_ocgt_heat_pump");
    emit(case_res_ocgt_hybrid_boiler(), root, "res_ocgt_hybrid_boiler");
    emit(case_res_ocgt_chp(), root, "res_ocgt_chp");
    emit(case_all_de(), root, "all_de");
    emit(case_de_fr(), root, "de_fr");
    return 0;
}
