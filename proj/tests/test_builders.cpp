#include <cmath>

#include "audit_support.hpp"
#include "doctest.h"
#include "merit/builders.hpp"
#include "merit/oracle.hpp"
#include "merit/solve.hpp"
#include "scenario_fixtures.hpp"
#include "test_support.hpp"

using namespace merit;
using fixtures::flat;
using fixtures::ramp;

namespace {

Solution solve_both_and_check(const LinearProgram& lp) {
    SolveOptions a, b;
    a.solver = SolverChoice::Revised;
    b.solver = SolverChoice::Reference;
    Solution sa = solve(lp, a);
    if (lp.num_variables() <= 5000) {
        Solution sb = solve(lp, b);
        REQUIRE(sa.status == sb.status);
        if (sa.status == SolveStatus::Optimal)
            REQUIRE(std::abs(sa.objective - sb.objective) <=
                    1e-7 * (1.0 + std::abs(sa.objective)));
    }
    return sa;
}

}  // namespace

TEST_CASE("renewables: zero availability forces output and curtailment to zero") {
    Scenario s = fixtures::minimal_scenario(3);
    s.zones[0].renewables[0].availability = {1.0, 0.0, 1.0};
    s.zones[0].electricity_demand = {5.0, 0.0, 5.0};
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.value_of(a.registry.require("DE.wind", VarRole::Generation, 1)) == 0.0);
    CHECK(sol.value_of(a.registry.require("DE.wind", VarRole::Curtailment, 1)) == 0.0);
}

TEST_CASE("renewables: objective coefficients carry cost and bonus signs") {
    Scenario s = fixtures::minimal_scenario(2);
    s.zones[0].renewables[0].variable_cost = 4.6;
    s.zones[0].renewables[0].curtailment_bonus = 0.000010;
    Assembled a = assemble(s);
    VarId gen = a.registry.require("DE.wind", VarRole::Generation, 0);
    VarId cu = a.registry.require("DE.wind", VarRole::Curtailment, 0);
    CHECK(a.lp.variable(gen).cost == 4.6);
    CHECK(a.lp.variable(cu).cost == -0.000010);
}

TEST_CASE("renewables: wind-marginal hour prices at wind cost plus bonus") {
    Scenario s = fixtures::minimal_scenario(1);
    s.zones[0].electricity_demand = {5.0};  // wind can supply 10
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    double price = sol.dual_of(a.clearing.at("DE")[0]);
    CHECK(price == doctest::Approx(4.58 + 1e-5).epsilon(1e-9));
    CHECK(price == doctest::Approx(4.58).epsilon(1e-2));
}

TEST_CASE("thermal: interior monotone hours price at fuel cost over efficiency") {
    Profile demand{8000, 9000, 10000, 11000, 12000, 11000, 10000};
    Scenario s = fixtures::res_ocgt_scenario(demand, flat(7, 0.0), flat(7, 0.0));
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    const double p298 = 119.2 / 0.40;
    // hours 1..3 strictly increasing, ramps cancel
    for (int t : {1, 2, 3})
        CHECK(sol.dual_of(a.clearing.at("DE")[t]) == doctest::Approx(p298).epsilon(1e-12));
    // hour 4 is the peak: ramp up into it and down out of it
    CHECK(sol.dual_of(a.clearing.at("DE")[4]) == doctest::Approx(p298 + 9.6).epsilon(1e-12));
    // hour 5 strictly decreasing
    CHECK(sol.dual_of(a.clearing.at("DE")[5]) == doctest::Approx(p298).epsilon(1e-12));
}

TEST_CASE("thermal: down-spike hour prices below marginal cost") {
    Profile demand{12000, 11000, 10000, 11000, 12000};
    Scenario s = fixtures::res_ocgt_scenario(demand, flat(5, 0.0), flat(5, 0.0));
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    CHECK(sol.dual_of(a.clearing.at("DE")[2]) ==
          doctest::Approx(119.2 / 0.40 - 9.6).epsilon(1e-12));
}

TEST_CASE("power-to-gas: interior surplus hour prices at the fuel credit") {
    const std::size_t T = 6;
    // wind surplus ramps 1000..3500 against a 5000 MW electrolyser
    Profile surplus = ramp(T, 1000.0, 500.0);
    Profile demand = flat(T, 10000.0);
    Profile av(T);
    for (std::size_t t = 0; t < T; ++t) av[t] = (demand[t] + surplus[t]) / 30000.0;
    Scenario s = fixtures::res_ocgt_scenario(demand, av, flat(T, 0.0));
    PowerToGasUnit ptg;
    ptg.id = "electrolyser";
    ptg.capacity = 5000.0;
    ptg.conversion_factor = 0.5925;
    ptg.load_change_cost = 1.0;
    s.zones[0].ptg.push_back(ptg);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    double willingness = merit::oracle::ptg_willingness(114.0, 0.5925);
    CHECK(willingness == doctest::Approx(67.545).epsilon(1e-12));
    for (int t : {1, 2, 3, 4})
        CHECK(sol.dual_of(a.clearing.at("DE")[t]) == doctest::Approx(willingness).epsilon(1e-9));
    // fuel output follows the conversion factor
    double con = sol.value_of(a.registry.require("DE.electrolyser", VarRole::Consumption, 2));
    double fuel = sol.value_of(a.registry.require("DE.electrolyser", VarRole::FuelOutput, 2));
    CHECK(fuel == doctest::Approx(0.5925 * con).epsilon(1e-12));
    CHECK(con == doctest::Approx(surplus[2]).epsilon(1e-9));
}

TEST_CASE("power-to-gas at full capacity leaves the zero-cost renewable marginal") {
    const std::size_t T = 3;
    Profile demand = flat(T, 10000.0);
    // solar surplus far beyond the 5000 MW electrolyser
    Scenario s = fixtures::res_ocgt_scenario(demand, flat(T, 0.0), flat(T, 0.7));
    PowerToGasUnit ptg;
    ptg.id = "electrolyser";
    ptg.capacity = 5000.0;
    ptg.conversion_factor = 0.5925;
    ptg.load_change_cost = 1.0;
    s.zones[0].ptg.push_back(ptg);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    for (int t = 0; t < 3; ++t) {
        CHECK(sol.value_of(a.registry.require("DE.electrolyser", VarRole::Consumption, t)) ==
              doctest::Approx(5000.0));
        double price = sol.dual_of(a.clearing.at("DE")[t]);
        CHECK(std::abs(price) <= 1e-5);  // curtailment-bonus epsilon
    }
}

TEST_CASE("battery: round-trip identity and the storage continuity") {
    const std::size_t T = 3;
    Scenario s;
    s.horizon = T;
    s.fuel_price_import = 119.2;
    s.fuel_price_domestic = 114.0;
    Zone z;
    z.id = "DE";
    z.electricity_demand = {0.0, 0.92, 0.0};
    RenewableUnit pv{"pv", 10.0, {0.1, 0.0, 0.0}, 0.0, 9e-6};
    z.renewables.push_back(pv);
    BatteryUnit bat;
    bat.id = "bess";
    bat.power_cap = 5.0;
    bat.energy_cap = 10.0;
    bat.eta_in = std::sqrt(0.92);
    bat.eta_out = std::sqrt(0.92);
    z.batteries.push_back(bat);
    s.zones.push_back(z);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.value_of(a.registry.require("DE.bess", VarRole::StorageCharge, 0)) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.value_of(a.registry.require("DE.bess", VarRole::StorageDischarge, 1)) ==
          doctest::Approx(0.92).epsilon(1e-9));
    auto res = auditsup::conservation(s, a.registry, sol);
    CHECK(res.max_all() <= 1e-6);
}

TEST_CASE("battery: linear loss factor compounds over one hundred hours") {
    const std::size_t T = 102;
    const double lam = 1.39e-7;
    Scenario s;
    s.horizon = T;
    s.fuel_price_import = 119.2;
    s.fuel_price_domestic = 114.0;
    Zone z;
    z.id = "DE";
    Profile demand = flat(T, 0.0);
    Profile av = flat(T, 0.0);
    av[0] = 0.1;
    const double recoverable = 0.92 * std::pow(1.0 - lam, 101);
    demand[101] = recoverable;
    z.electricity_demand = demand;
    z.renewables.push_back(RenewableUnit{"pv", 10.0, av, 0.0, 9e-6});
    BatteryUnit bat;
    bat.id = "bess";
    bat.power_cap = 5.0;
    bat.energy_cap = 10.0;
    bat.eta_in = std::sqrt(0.92);
    bat.eta_out = std::sqrt(0.92);
    bat.loss_factor = lam;
    z.batteries.push_back(bat);
    s.zones.push_back(z);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.value_of(a.registry.require("DE.bess", VarRole::StorageCharge, 0)) ==
          doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("hydro: no inflow and empty reservoirs pin everything to zero") {
    const std::size_t T = 4;
    Scenario s;
    s.horizon = T;
    s.fuel_price_import = 119.2;
    s.fuel_price_domestic = 114.0;
    Zone z;
    z.id = "DE";
    z.electricity_demand = flat(T, 0.0);
    HydroSystem hy;
    hy.id = "phs";
    hy.turbine_cap = flat(T, 10.0);
    hy.pumped_turbine_cap = flat(T, 10.0);
    hy.pump_cap = flat(T, 10.0);
    hy.pump_efficiency = 0.73;
    hy.inflow_main = flat(T, 0.0);
    hy.inflow_pumped = flat(T, 0.0);
    hy.reservoir_cap_main = 100.0;
    hy.reservoir_cap_pumped = 50.0;
    z.hydro.push_back(hy);
    s.zones.push_back(z);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(0.0));
    for (int t = 0; t < static_cast<int>(T); ++t) {
        CHECK(sol.value_of(a.registry.require("DE.phs", VarRole::Generation, t)) ==
              doctest::Approx(0.0));
        CHECK(sol.value_of(a.registry.require("DE.phs", VarRole::Consumption, t)) ==
              doctest::Approx(0.0));
    }
}

TEST_CASE("hydro: pumping one unit recovers the pump efficiency share") {
    const std::size_t T = 3;
    Scenario s;
    s.horizon = T;
    s.fuel_price_import = 119.2;
    s.fuel_price_domestic = 114.0;
    Zone z;
    z.id = "DE";
    z.electricity_demand = {0.0, 0.73, 0.0};
    Profile av = {0.1, 0.0, 0.0};
    z.renewables.push_back(RenewableUnit{"pv", 10.0, av, 0.0, 9e-6});
    HydroSystem hy;
    hy.id = "phs";
    hy.turbine_cap = flat(T, 0.0);
    hy.pumped_turbine_cap = flat(T, 10.0);
    hy.pump_cap = flat(T, 10.0);
    hy.pump_efficiency = 0.73;
    hy.inflow_main = flat(T, 0.0);
    hy.inflow_pumped = flat(T, 0.0);
    hy.reservoir_cap_main = 100.0;
    hy.reservoir_cap_pumped = 50.0;
    z.hydro.push_back(hy);
    s.zones.push_back(z);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.value_of(a.registry.require("DE.phs", VarRole::Consumption, 0)) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.value_of(a.registry.require("DE.phs", VarRole::PumpedTurbineGeneration, 1)) ==
          doctest::Approx(0.73).epsilon(1e-9));
    auto res = auditsup::conservation(s, a.registry, sol);
    CHECK(res.max_all() <= 1e-6);
}

TEST_CASE("chp: power price equals the boiler opportunity when both are interior") {
    Scenario s = fixtures::chp_boiler_opportunity_scenario(6);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    double expected = merit::oracle::chp_vs_fuel_boiler(119.2, 0.56, 0.93, 1.4, 0.1);
    CHECK(expected == doctest::Approx(129.82).epsilon(1e-4));
    for (int t : {1, 2, 3, 4})
        CHECK(sol.dual_of(a.clearing.at("DE")[t]) == doctest::Approx(expected).epsilon(1e-9));
    // the CHP runs on the backpressure line with the boiler partial
    double gen = sol.value_of(a.registry.require("DE.ccgt_chp", VarRole::Generation, 2));
    double q = sol.value_of(a.registry.require("DE.ccgt_chp", VarRole::ChpHeat, 2));
    double y = sol.value_of(a.registry.require("DE.ccgt_chp", VarRole::BoilerFuel, 2));
    CHECK(gen == doctest::Approx(1.4 * q).epsilon(1e-9));
    CHECK(y > 1.0);
}

TEST_CASE("chp: power price equals the electric-backup opportunity") {
    Scenario s = fixtures::chp_electric_opportunity_scenario(6);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    double expected = merit::oracle::chp_vs_electric_backup(119.2, 0.56, 1.4, 0.1, 0.99);
    CHECK(expected == doctest::Approx(128.59).epsilon(1e-4));
    for (int t : {1, 2, 3, 4})
        CHECK(sol.dual_of(a.clearing.at("DE")[t]) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("chp: condensing-mode hours price at the chp marginal cost") {
    Scenario s = fixtures::chp_boiler_opportunity_scenario(6);
    // high electric demand, low heat demand: the unit runs above the
    // backpressure line and its own fuel cost sets the price
    s.zones[0].electricity_demand = ramp(6, 5000.0, 20.0);
    s.zones[0].heat_markets[0].demand = flat(6, 1000.0);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    double expected = 119.2 / 0.56;
    for (int t : {1, 2, 3, 4})
        CHECK(sol.dual_of(a.clearing.at("DE")[t]) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("chp at its fuel limit: heat dual equals the displaced-power heat value") {
    Scenario s = fixtures::chp_case_g_scenario(6);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    double expected = merit::oracle::case_g_heat_value(119.2, 0.1, 0.56, 0.40);
    CHECK(expected == doctest::Approx(20.43).epsilon(1e-3));
    for (int t : {1, 2, 3, 4}) {
        RowId heat = *a.lp.find_constraint(Tag{"DE", "ccgt_chp", "heat_balance", t});
        CHECK(sol.dual_of(heat) == doctest::Approx(expected).epsilon(1e-9));
        // power price is set by the gas turbine backstop
        CHECK(sol.dual_of(a.clearing.at("DE")[t]) ==
              doctest::Approx(119.2 / 0.40).epsilon(1e-9));
    }
}

TEST_CASE("hybrid boiler: electric boiler marginal hours price at the fuel parity") {
    const std::size_t T = 6;
    SUBCASE("first system partial") {
        Scenario s = fixtures::hybrid_boiler_scenario(T, ramp(T, 800.0, 400.0));
        Assembled a = assemble(s);
        Solution sol = solve_both_and_check(a.lp);
        double expected = merit::oracle::boiler_electric_step(119.2, 0.90, 0.99);
        for (int t : {1, 2, 3, 4})
            CHECK(sol.dual_of(a.clearing.at("DE")[t]) == doctest::Approx(expected).epsilon(1e-9));
    }
    SUBCASE("first system saturated, second partial") {
        Scenario s = fixtures::hybrid_boiler_scenario(T, ramp(T, 4500.0, 500.0));
        Assembled a = assemble(s);
        Solution sol = solve_both_and_check(a.lp);
        double expected = merit::oracle::boiler_electric_step(119.2, 0.93, 0.99);
        CHECK(expected == doctest::Approx(126.89).epsilon(1e-4));
        for (int t : {1, 2, 3, 4})
            CHECK(sol.dual_of(a.clearing.at("DE")[t]) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("heat pump: COP three turns one unit of power into three of heat") {
    const std::size_t T = 2;
    Scenario s;
    s.horizon = T;
    s.fuel_price_import = 119.2;
    s.fuel_price_domestic = 114.0;
    Zone z;
    z.id = "DE";
    z.electricity_demand = flat(T, 0.0);
    z.renewables.push_back(RenewableUnit{"pv", 10.0, flat(T, 1.0), 0.0, 9e-6});
    z.heat_markets.push_back(Market{"heat", flat(T, 3.0)});
    HeatPumpSystem hp;
    hp.id = "hp";
    hp.hp_cap = 5.0;
    hp.cop = flat(T, 3.0);
    hp.solar_thermal_factor = flat(T, 1.0);
    hp.heat_market = "heat";
    z.heat_pumps.push_back(hp);
    s.zones.push_back(z);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.value_of(a.registry.require("DE.hp", VarRole::HeatPumpConsumption, 0)) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("heat pump: fuel backup marginal sets the heat value") {
    const std::size_t T = 4;
    Scenario s;
    s.horizon = T;
    s.fuel_price_import = 119.2;
    s.fuel_price_domestic = 114.0;
    Zone z;
    z.id = "DE";
    z.electricity_demand = flat(T, 0.0);
    z.renewables.push_back(RenewableUnit{"pv", 2000.0, flat(T, 1.0), 0.0, 9e-6});
    z.heat_markets.push_back(Market{"heat", ramp(T, 12000.0, 10.0)});
    HeatPumpSystem hp;
    hp.id = "hp";
    hp.hp_cap = 3000.0;  // heat output caps at 10500
    hp.cop = flat(T, 3.5);
    hp.backup_fuel_efficiency = 0.90;
    hp.backup_fuel_cap = 8000.0;
    hp.solar_thermal_factor = flat(T, 1.0);
    hp.heat_market = "heat";
    z.heat_pumps.push_back(hp);
    s.zones.push_back(z);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    for (int t : {1, 2}) {
        RowId heat = *a.lp.find_constraint(Tag{"DE", "hp", "heat_balance", t});
        CHECK(sol.dual_of(heat) == doctest::Approx(119.2 / 0.90).epsilon(1e-9));
    }
}

TEST_CASE("cooling: zero demand pins every cooling variable to zero") {
    const std::size_t T = 3;
    Scenario s;
    s.horizon = T;
    s.fuel_price_import = 119.2;
    s.fuel_price_domestic = 114.0;
    Zone z;
    z.id = "DE";
    z.electricity_demand = flat(T, 0.0);
    z.cooling_markets.push_back(Market{"cool", flat(T, 0.0)});
    CoolingSystem ac;
    ac.id = "ac";
    ac.capacity = 10.0;
    ac.electric_efficiency = flat(T, 3.0);
    ac.storage.energy_cap = 20.0;
    ac.storage.loss_factor = 0.1;
    ac.cooling_market = "cool";
    z.cooling.push_back(ac);
    s.zones.push_back(z);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    for (int t = 0; t < static_cast<int>(T); ++t) {
        CHECK(sol.value_of(a.registry.require("DE.ac", VarRole::Consumption, t)) ==
              doctest::Approx(0.0));
        CHECK(sol.value_of(a.registry.require("DE.ac", VarRole::HeatLevel, t)) ==
              doctest::Approx(0.0));
    }
}

TEST_CASE("cooling: two hours of storage loses ten percent per hour") {
    const std::size_t T = 3;
    Scenario s;
    s.horizon = T;
    s.fuel_price_import = 119.2;
    s.fuel_price_domestic = 114.0;
    Zone z;
    z.id = "DE";
    z.electricity_demand = flat(T, 0.0);
    Profile av = {1.0, 0.0, 0.0};
    z.renewables.push_back(RenewableUnit{"pv", 10.0, av, 0.0, 9e-6});
    const double recovered = 1.0 * 0.9 * 0.9;  // charge held over two transitions
    z.cooling_markets.push_back(Market{"cool", {0.0, 0.0, recovered}});
    CoolingSystem ac;
    ac.id = "ac";
    ac.capacity = 10.0;
    ac.electric_efficiency = flat(T, 3.0);
    ac.storage.energy_cap = 20.0;
    ac.storage.loss_factor = 0.1;
    ac.cooling_market = "cool";
    z.cooling.push_back(ac);
    s.zones.push_back(z);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.value_of(a.registry.require("DE.ac", VarRole::HeatCharge, 0)) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.value_of(a.registry.require("DE.ac", VarRole::HeatDischarge, 2)) ==
          doctest::Approx(recovered).epsilon(1e-9));
}

TEST_CASE("transport: the flexibility share shapes the charging and driving envelopes") {
    const std::size_t T = 2;
    Scenario base;
    base.horizon = T;
    base.fuel_price_import = 119.2;
    base.fuel_price_domestic = 114.0;
    Zone z;
    z.id = "DE";
    z.electricity_demand = flat(T, 0.0);
    z.renewables.push_back(RenewableUnit{"pv", 1000.0, flat(T, 1.0), 0.0, 9e-6});
    z.road_markets.push_back(Market{"road", flat(T, 100.0)});
    VehicleFleet v;
    v.id = "bev";
    v.market_share = 1.0;
    v.max_electric_distance = flat(T, 100.0);
    v.inflexible_charging = flat(T, 7.0);
    v.max_flexible_charging = flat(T, 20.0);
    v.soc_min = flat(T, 2.0);
    v.soc_max = flat(T, 50.0);
    v.charging_efficiency = 0.9;
    v.electricity_per_km = 1.8e-4;
    v.fuel_per_km = 0.0;
    v.road_market = "road";

    SUBCASE("fully inflexible fleet is pinned to the fixed charging profile") {
        v.flexible_share = 0.0;
        z.vehicles.push_back(v);
        base.zones.push_back(z);
        Assembled a = assemble(base);
        const auto& con = a.lp.variable(a.registry.require("DE.bev", VarRole::Consumption, 0));
        CHECK(con.bounds.lower == doctest::Approx(7.0));
        CHECK(con.bounds.upper == doctest::Approx(7.0));
        const auto& soc = a.lp.variable(a.registry.require("DE.bev", VarRole::StorageLevel, 0));
        CHECK(soc.bounds.lower == 0.0);
        CHECK(soc.bounds.upper == 0.0);  // state of charge untracked, window collapses
        const auto& zel = a.lp.variable(a.registry.require("DE.bev", VarRole::ElectricDistance, 0));
        CHECK(zel.bounds.lower == doctest::Approx(100.0));
        CHECK(zel.bounds.upper == doctest::Approx(100.0));
    }
    SUBCASE("fully flexible fleet gets the full envelopes") {
        v.flexible_share = 1.0;
        z.vehicles.push_back(v);
        base.zones.push_back(z);
        Assembled a = assemble(base);
        const auto& con = a.lp.variable(a.registry.require("DE.bev", VarRole::Consumption, 0));
        CHECK(con.bounds.lower == doctest::Approx(0.0));
        CHECK(con.bounds.upper == doctest::Approx(20.0));
        const auto& soc = a.lp.variable(a.registry.require("DE.bev", VarRole::StorageLevel, 0));
        CHECK(soc.bounds.lower == doctest::Approx(2.0));
        CHECK(soc.bounds.upper == doctest::Approx(50.0));
    }
}

TEST_CASE("transport: hybrid fleet covers the road demand and books engine fuel") {
    const std::size_t T = 4;
    Scenario s;
    s.horizon = T;
    s.fuel_price_import = 119.2;
    s.fuel_price_domestic = 114.0;
    Zone z;
    z.id = "DE";
    z.electricity_demand = flat(T, 0.0);
    z.renewables.push_back(RenewableUnit{"pv", 1.0, flat(T, 1.0), 0.0, 9e-6});
    z.road_markets.push_back(Market{"road", flat(T, 1000.0)});
    VehicleFleet v;
    v.id = "phev";
    v.market_share = 1.0;
    v.flexible_share = 0.5;
    v.max_electric_distance = flat(T, 600.0);
    v.inflexible_charging = flat(T, 0.05);
    v.max_flexible_charging = flat(T, 2.0);
    v.soc_min = flat(T, 0.0);
    v.soc_max = flat(T, 10.0);
    v.charging_efficiency = 0.9;
    v.electricity_per_km = 1.8e-4;
    v.fuel_per_km = 5.233e-4;
    v.road_market = "road";
    z.vehicles.push_back(v);
    s.zones.push_back(z);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    for (int t = 0; t < static_cast<int>(T); ++t) {
        double zel = sol.value_of(a.registry.require("DE.phev", VarRole::ElectricDistance, t));
        double zice = sol.value_of(a.registry.require("DE.phev", VarRole::IceDistance, t));
        CHECK(zel + zice == doctest::Approx(1000.0).epsilon(1e-9));
        double fuel = sol.value_of(a.registry.require("DE.phev", VarRole::FuelUse, t));
        CHECK(fuel == doctest::Approx(5.233e-4 * zice).epsilon(1e-9));
    }
    auto res = auditsup::conservation(s, a.registry, sol);
    CHECK(res.max_all() <= 1e-6);
}

TEST_CASE("market clearing: two zones separate prices only under congestion") {
    const std::size_t T = 2;
    Scenario s;
    s.horizon = T;
    s.fuel_price_import = 119.2;
    s.fuel_price_domestic = 114.0;
    Zone a_zone, b_zone;
    a_zone.id = "A";
    a_zone.electricity_demand = flat(T, 2.0);
    ThermalUnit cheap;
    cheap.id = "nuke";
    cheap.capacity = 100.0;
    cheap.availability = flat(T, 1.0);
    cheap.efficiency = 0.9;
    cheap.variable_cost = 10.0;
    a_zone.thermal.push_back(cheap);
    b_zone.id = "B";
    b_zone.electricity_demand = {3.0, 10.0};
    ThermalUnit dear;
    dear.id = "ocgt";
    dear.capacity = 100.0;
    dear.availability = flat(T, 1.0);
    dear.efficiency = 0.4;
    b_zone.thermal.push_back(dear);
    s.zones.push_back(a_zone);
    s.zones.push_back(b_zone);
    Interconnector ic;
    ic.from_zone = "A";
    ic.to_zone = "B";
    ic.ntc = flat(T, 5.0);
    ic.transmission_efficiency = 0.95;
    s.interconnectors.push_back(ic);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    // hour 0: flow interior, importer price = exporter price / TL
    double pa0 = sol.dual_of(a.clearing.at("A")[0]);
    double pb0 = sol.dual_of(a.clearing.at("B")[0]);
    CHECK(pa0 == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(pb0 == doctest::Approx(10.0 / 0.95).epsilon(1e-9));
    // hour 1: link congested, prices separate with the exporter lower
    double pa1 = sol.dual_of(a.clearing.at("A")[1]);
    double pb1 = sol.dual_of(a.clearing.at("B")[1]);
    CHECK(pa1 == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(pb1 == doctest::Approx(119.2 / 0.4).epsilon(1e-9));
    double flow1 = sol.value_of(a.registry.require("A->B", VarRole::Transfer, 1));
    CHECK(flow1 == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("market clearing: structurally infeasible zone is flagged before solving") {
    Scenario s;
    s.horizon = 2;
    s.fuel_price_import = 119.2;
    s.fuel_price_domestic = 114.0;
    Zone z;
    z.id = "island";
    z.electricity_demand = flat(2, 5.0);
    s.zones.push_back(z);
    CHECK_THROWS_WITH_AS(assemble(s), doctest::Contains("structurally infeasible"), BuilderError);
}

TEST_CASE("assemble: empty scenario gives an empty program") {
    Scenario s;
    s.horizon = 1;
    s.fuel_price_import = 1.0;
    s.fuel_price_domestic = 1.0;
    Assembled a = assemble(s);
    CHECK(a.lp.num_variables() == 0);
    CHECK(a.lp.num_constraints() == 0);
}

TEST_CASE("assemble: deterministic variable and constraint counts") {
    const std::size_t T = 24;
    Scenario s = fixtures::res_ocgt_scenario(flat(T, 10000.0), flat(T, 0.3), flat(T, 0.3));
    Assembled a = assemble(s);
    // per hour: pv gen+cu, wind gen+cu, ocgt gen; plus 2 ramp vars per link
    CHECK(a.lp.num_variables() == T * 5 + 2 * (T - 1));
    // per hour: two res limits and one clearing row; plus ramp links
    CHECK(a.lp.num_constraints() == T * 3 + (T - 1));
    CHECK(a.registry.size() == a.lp.num_variables());
}

TEST_CASE("curtailment order follows the bonus ranking") {
    const std::size_t T = 1;
    Scenario s;
    s.horizon = T;
    s.fuel_price_import = 119.2;
    s.fuel_price_domestic = 114.0;
    Zone z;
    z.id = "DE";
    z.renewables.push_back(RenewableUnit{"pv", 10.0, flat(T, 1.0), 0.0, 9e-6});
    z.renewables.push_back(RenewableUnit{"wind", 10.0, flat(T, 1.0), 4.58, 1e-5});
    z.renewables.push_back(RenewableUnit{"offshore", 10.0, flat(T, 1.0), 0.0, 8e-6});
    s.zones.push_back(z);

    SUBCASE("wind curtails first") {
        s.zones[0].electricity_demand = flat(T, 25.0);
        Assembled a = assemble(s);
        Solution sol = solve_both_and_check(a.lp);
        CHECK(sol.value_of(a.registry.require("DE.wind", VarRole::Curtailment, 0)) ==
              doctest::Approx(5.0).epsilon(1e-9));
        CHECK(sol.value_of(a.registry.require("DE.pv", VarRole::Curtailment, 0)) ==
              doctest::Approx(0.0));
        CHECK(sol.value_of(a.registry.require("DE.offshore", VarRole::Curtailment, 0)) ==
              doctest::Approx(0.0));
    }
    SUBCASE("then solar, then offshore") {
        s.zones[0].electricity_demand = flat(T, 12.0);
        Assembled a = assemble(s);
        Solution sol = solve_both_and_check(a.lp);
        CHECK(sol.value_of(a.registry.require("DE.wind", VarRole::Curtailment, 0)) ==
              doctest::Approx(10.0).epsilon(1e-9));
        CHECK(sol.value_of(a.registry.require("DE.pv", VarRole::Curtailment, 0)) ==
              doctest::Approx(8.0).epsilon(1e-9));
        CHECK(sol.value_of(a.registry.require("DE.offshore", VarRole::Curtailment, 0)) ==
              doctest::Approx(0.0));
    }
}

TEST_CASE("zero-demand empty system solves to zero objective and zero duals") {
    Scenario s;
    s.horizon = 3;
    s.fuel_price_import = 119.2;
    s.fuel_price_domestic = 114.0;
    Zone z;
    z.id = "DE";
    z.electricity_demand = flat(3, 0.0);
    s.zones.push_back(z);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == 0.0);
    for (int t = 0; t < 3; ++t) CHECK(sol.dual_of(a.clearing.at("DE")[t]) == 0.0);
}

TEST_CASE("heat and power balances close on a mixed system") {
    Scenario s = fixtures::chp_case_g_scenario(8);
    Assembled a = assemble(s);
    Solution sol = solve_both_and_check(a.lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    auto res = auditsup::conservation(s, a.registry, sol);
    CHECK(res.storage <= 1e-6);
    CHECK(res.heat <= 1e-6);
    CHECK(res.power <= 1e-6);
}

TEST_CASE("fuzz: random storage systems agree across solvers and conserve") {
    testsup::Rng rng(777);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t T = 12 + rng.below(13);
        Scenario s;
        s.horizon = T;
        s.fuel_price_import = 119.2;
        s.fuel_price_domestic = 114.0;
        Zone z;
        z.id = "DE";
        Profile demand(T), av(T);
        for (std::size_t t = 0; t < T; ++t) {
            demand[t] = rng.uniform(500.0, 4000.0);
            av[t] = rng.uniform(0.0, 1.0);
        }
        z.electricity_demand = demand;
        z.renewables.push_back(RenewableUnit{"pv", rng.uniform(1000.0, 6000.0), av, 0.0, 9e-6});
        ThermalUnit ocgt;
        ocgt.id = "ocgt";
        ocgt.capacity = 50000.0;
        ocgt.availability = flat(T, 1.0);
        ocgt.efficiency = 0.40;
        ocgt.load_change_cost = rng.uniform(0.0, 6.0);
        z.thermal.push_back(ocgt);
        BatteryUnit bat;
        bat.id = "bess";
        bat.power_cap = rng.uniform(200.0, 2000.0);
        bat.energy_cap = rng.uniform(500.0, 8000.0);
        bat.eta_in = rng.uniform(0.85, 1.0);
        bat.eta_out = rng.uniform(0.85, 1.0);
        bat.loss_factor = rng.uniform(0.0, 0.01);
        bat.load_change_cost = rng.uniform(0.0, 0.5);
        z.batteries.push_back(bat);
        HydroSystem hy;
        hy.id = "phs";
        hy.turbine_cap = flat(T, rng.uniform(100.0, 800.0));
        hy.pumped_turbine_cap = flat(T, rng.uniform(200.0, 1500.0));
        hy.pump_cap = flat(T, rng.uniform(200.0, 1500.0));
        hy.pump_efficiency = rng.uniform(0.6, 0.9);
        hy.inflow_main = flat(T, rng.uniform(0.0, 300.0));
        hy.inflow_pumped = flat(T, 0.0);
        hy.reservoir_cap_main = rng.uniform(2000.0, 30000.0);
        hy.reservoir_cap_pumped = rng.uniform(1000.0, 10000.0);
        z.hydro.push_back(hy);
        s.zones.push_back(z);

        Assembled a = assemble(s);
        SolveOptions optr, opts;
        optr.solver = SolverChoice::Reference;
        opts.solver = SolverChoice::Revised;
        Solution ref = solve(a.lp, optr);
        Solution rev = solve(a.lp, opts);
        REQUIRE(ref.status == SolveStatus::Optimal);
        REQUIRE(rev.status == SolveStatus::Optimal);
        REQUIRE(std::abs(ref.objective - rev.objective) <=
                1e-7 * (1.0 + std::abs(ref.objective)));
        auto res = auditsup::conservation(s, a.registry, rev);
        REQUIRE(res.max_all() <= 1e-6);
    }
}
