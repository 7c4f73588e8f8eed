#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace merit::oracle {

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Marginal cost of a fuel-burning generator: fuel price over electric
/// efficiency (EUR/MWh_el). 119.2/0.40 = 298 for the backstop gas turbine.
inline double thermal_marginal(double fuel_price, double eta) {
    if (eta <= 0.0) throw OracleError("thermal_marginal: eta must be positive");
    return fuel_price / eta;
}

/// Willingness to pay of a power-to-gas plant: domestic fuel value times the
/// power-to-fuel conversion factor.
inline double ptg_willingness(double fuel_price_domestic, double pf) {
    if (pf < 0.0 || pf >= 1.0) throw OracleError("ptg_willingness: pf must be in [0,1)");
    return fuel_price_domestic * pf;
}

/// Charging-hour bid of a storage plant that later displaces a generator
/// with the given marginal cost.
inline double storage_step(double marginal, double roundtrip) {
    if (roundtrip <= 0.0 || roundtrip > 1.0)
        throw OracleError("storage_step: roundtrip efficiency must be in (0,1]");
    return marginal * roundtrip;
}

/// Electric-boiler step of a hybrid boiler system: the electricity price at
/// which heat from the fuel boiler and from the electric boiler cost the same.
inline double boiler_electric_step(double fuel_price, double eta_cb, double eta_con) {
    if (eta_cb <= 0.0) throw OracleError("boiler_electric_step: eta_cb must be positive");
    return fuel_price / eta_cb * eta_con;
}

/// Opportunity cost of CHP power when the fuel boiler could supply the heat
/// instead: P/eta_gen - P/(eta_cb*ph) + P*pl/ph.
inline double chp_vs_fuel_boiler(double fuel_price, double eta_gen, double eta_cb, double ph,
                                 double pl) {
    if (ph <= 0.0 || eta_gen <= 0.0 || eta_cb <= 0.0)
        throw OracleError("chp_vs_fuel_boiler: nonpositive parameter");
    return fuel_price / eta_gen - fuel_price / (eta_cb * ph) + fuel_price * pl / ph;
}

/// Ramping adjustment of the CHP/fuel-boiler opportunity: 2*C_LC*(1+pl/ph).
inline double chp_vs_fuel_boiler_ramp(double lc_cost, double ph, double pl) {
    if (ph <= 0.0) throw OracleError("chp_vs_fuel_boiler_ramp: ph must be positive");
    return 2.0 * lc_cost * (1.0 + pl / ph);
}

/// Opportunity cost of CHP power against the electric backup heater:
/// (P/eta_gen + P*pl/ph) / (1 + 1/(ph*eta_con)).
inline double chp_vs_electric_backup(double fuel_price, double eta_gen, double ph, double pl,
                                     double eta_con) {
    if (ph * eta_con <= 0.0 || eta_gen <= 0.0)
        throw OracleError("chp_vs_electric_backup: nonpositive parameter");
    return (fuel_price / eta_gen + fuel_price * pl / ph) / (1.0 + 1.0 / (ph * eta_con));
}

/// Ramping adjustment of the CHP/electric-backup opportunity.
inline double chp_vs_electric_backup_ramp(double lc_cost, double ph, double pl, double eta_con) {
    if (ph * eta_con <= 0.0)
        throw OracleError("chp_vs_electric_backup_ramp: nonpositive parameter");
    return 2.0 * lc_cost * (1.0 + pl / ph) / (1.0 + 1.0 / (ph * eta_con));
}

/// Heat value of a CHP at its fuel limit while a costlier turbine covers the
/// displaced power: P*pl*(1 + 1/eta_backstop - 1/eta_gen_chp).
inline double case_g_heat_value(double fuel_price, double pl, double eta_gen_chp,
                                double eta_backstop) {
    if (eta_gen_chp <= 0.0 || eta_backstop <= 0.0)
        throw OracleError("case_g_heat_value: nonpositive efficiency");
    return fuel_price * pl * (1.0 + 1.0 / eta_backstop - 1.0 / eta_gen_chp);
}

/// One analytic price level plus its symmetric ramp-adjusted companions.
struct OpportunityPrediction {
    std::string id;         // e.g. "thermal_marginal:ocgt"
    std::string inputs;     // echoed parameters, for reports
    double level = 0.0;     // EUR/MWh_el (or EUR/MWh_th where noted)
    double ramp = 0.0;      // step also appears at level +/- ramp
    bool required = false;  // the owning scenario promises this step occurs
};

}  // namespace merit::oracle
