#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>

#include "merit/builders.hpp"
#include "merit/oracle.hpp"

namespace merit {

struct AnalyticsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PriceSeries {
    std::string zone;
    std::vector<double> values;  // EUR/MWh_el per hour
};

struct DurationCurve {
    std::vector<double> values;     // nonincreasing
    std::vector<int> hour_of_rank;  // permutation back to hours
};

struct PriceStep {
    double level = 0.0;
    int start_rank = 0;
    int end_rank = 0;
    int duration = 0;
    std::string matched_source;  // filled by verification
};

struct MarketValueEntry {
    std::string zone;
    std::string cluster;
    bool consumer = false;
    double energy = 0.0;  // MWh
    double value = 0.0;   // EUR revenue (producers) or cost (consumers)
    std::optional<double> capture_price;
    double zone_average = 0.0;
};

using MarketValueReport = std::vector<MarketValueEntry>;

struct ChpStateLabel {
    int hour = 0;
    char state = '?';  // A..H, '?' when no table row matches
    double heat_value = 0.0;
    double power_price = 0.0;
};

/// Reads the market clearing duals of one zone out of a solution.
inline PriceSeries extract_prices(const Solution& sol, const std::vector<RowId>& clearing,
                                  const std::string& zone) {
    if (sol.status != SolveStatus::Optimal)
        throw AnalyticsError("cannot extract prices from a non-optimal solution (" +
                             std::string(to_string(sol.status)) + ")");
    PriceSeries p;
    p.zone = zone;
    p.values.reserve(clearing.size());
    for (RowId r : clearing) p.values.push_back(sol.dual_of(r));
    return p;
}

/// Sorts prices nonincreasing; ties keep chronological order.
inline DurationCurve duration_curve(const PriceSeries& prices) {
    DurationCurve c;
    const int T = static_cast<int>(prices.values.size());
    c.hour_of_rank.resize(T);
    std::iota(c.hour_of_rank.begin(), c.hour_of_rank.end(), 0);
    std::stable_sort(c.hour_of_rank.begin(), c.hour_of_rank.end(), [&](int a, int b) {
        return prices.values[a] > prices.values[b];
    });
    c.values.reserve(T);
    for (int h : c.hour_of_rank) c.values.push_back(prices.values[h]);
    return c;
}

/// Maximal runs of near-constant level in the sorted curve; a run must span
/// at least min_duration hours to count as a step.
inline std::vector<PriceStep> detect_steps(const DurationCurve& curve, double level_tol = 0.5,
                                           int min_duration = 5) {
    std::vector<PriceStep> steps;
    const int n = static_cast<int>(curve.values.size());
    int start = 0;
    while (start < n) {
        int end = start;
        double sum = curve.values[start];
        while (end + 1 < n && std::abs(curve.values[end + 1] - curve.values[start]) <= level_tol) {
            ++end;
            sum += curve.values[end];
        }
        int duration = end - start + 1;
        if (duration >= min_duration) {
            PriceStep s;
            s.level = sum / duration;
            s.start_rank = start;
            s.end_rank = end;
            s.duration = duration;
            steps.push_back(s);
        }
        start = end + 1;
    }
    return steps;
}

/// Per-cluster energy, revenue/cost and capture price. Producers use
/// generation-weighted prices, consumers symmetrically cost-weighted. A
/// cluster with no energy has an undefined capture price, not zero.
inline MarketValueReport market_values(const Scenario& s, const VariableRegistry& reg,
                                       const Solution& sol,
                                       const std::map<std::string, PriceSeries>& prices) {
    MarketValueReport report;
    for (const auto& z : s.zones) {
        const PriceSeries& p = prices.at(z.id);
        const int T = static_cast<int>(s.horizon);
        double avg = 0.0;
        for (double v : p.values) avg += v;
        avg /= std::max(1, T);

        auto add = [&](const std::string& cluster, bool consumer, auto energy_at) {
            MarketValueEntry e;
            e.zone = z.id;
            e.cluster = cluster;
            e.consumer = consumer;
            for (int t = 0; t < T; ++t) {
                double q = energy_at(t);
                e.energy += q;
                e.value += q * p.values[t];
            }
            if (e.energy > 1e-9)
                e.capture_price = e.value / e.energy;
            e.zone_average = avg;
            report.push_back(e);
        };
        auto val = [&](const std::string& unit, VarRole role, int t) {
            return sol.value_of(reg.require(z.id + "." + unit, role, t));
        };
        for (const auto& u : z.renewables)
            add(u.id, false, [&](int t) { return val(u.id, VarRole::Generation, t); });
        for (const auto& u : z.thermal)
            add(u.id, false, [&](int t) { return val(u.id, VarRole::Generation, t); });
        for (const auto& u : z.chp_systems) {
            add(u.id, false, [&](int t) { return val(u.id, VarRole::Generation, t); });
            add(u.id + ".backup", true, [&](int t) { return val(u.id, VarRole::Consumption, t); });
        }
        for (const auto& u : z.hydro) {
            add(u.id, false, [&](int t) { return val(u.id, VarRole::Generation, t); });
            add(u.id + ".pump", true, [&](int t) { return val(u.id, VarRole::Consumption, t); });
        }
        for (const auto& u : z.batteries) {
            add(u.id, false, [&](int t) { return val(u.id, VarRole::StorageDischarge, t); });
            add(u.id + ".charge", true, [&](int t) { return val(u.id, VarRole::StorageCharge, t); });
        }
        for (const auto& u : z.ptg)
            add(u.id, true, [&](int t) { return val(u.id, VarRole::Consumption, t); });
        for (const auto& u : z.hybrid_boilers)
            add(u.id, true, [&](int t) { return val(u.id, VarRole::Consumption, t); });
        for (const auto& u : z.heat_pumps)
            add(u.id, true, [&](int t) { return val(u.id, VarRole::Consumption, t); });
        for (const auto& u : z.cooling)
            add(u.id, true, [&](int t) { return val(u.id, VarRole::Consumption, t); });
        for (const auto& u : z.vehicles)
            add(u.id, true, [&](int t) { return val(u.id, VarRole::Consumption, t); });
    }
    return report;
}

/// Hour-by-hour classification of a multivalent CHP system into the eight
/// operating states, keyed on which units run, whether the fuel limit binds
/// and whether the unit sits on the backpressure line. Hours matching no
/// row are labeled '?' and surfaced, never dropped.
inline std::vector<ChpStateLabel> classify_chp_states(const Scenario& s, const Zone& z,
                                                      const ChpSystem& u,
                                                      const VariableRegistry& reg,
                                                      const Solution& sol,
                                                      const PriceSeries& prices) {
    if (sol.status != SolveStatus::Optimal)
        throw AnalyticsError("cannot classify states of a non-optimal solution");
    const int T = static_cast<int>(s.horizon);
    const double p = s.fuel_price_import;
    const double rel = 1e-6;

    // the backstop turbine for displaced-power heat values: the costliest
    // non-CHP thermal unit of the zone
    const ThermalUnit* backstop = nullptr;
    for (const auto& g : z.thermal)
        if (!backstop ||
            g.marginal_cost(p) > backstop->marginal_cost(p))
            backstop = &g;

    std::vector<ChpStateLabel> out;
    out.reserve(T);
    for (int t = 0; t < T; ++t) {
        auto val = [&](VarRole role) { return sol.value_of(reg.require(z.id + "." + u.id, role, t)); };
        double gen = val(VarRole::Generation);
        double q = val(VarRole::ChpHeat);
        double boiler = val(VarRole::BoilerFuel);
        double backup = val(VarRole::Consumption);
        double cap = u.availability[t] * u.chp_capacity;
        double backup_cap = u.electric_backup_design_factor * u.chp_capacity;

        bool ocgt_on = false;
        for (const auto& g : z.thermal)
            if (sol.value_of(reg.require(z.id + "." + g.id, VarRole::Generation, t)) >
                rel * std::max(1.0, g.capacity))
                ocgt_on = true;

        bool chp_on = gen > rel * std::max(1.0, u.chp_capacity) || q > rel * std::max(1.0, u.chp_capacity);
        bool fuel_limit = chp_on && cap > 0.0 && gen + u.power_loss_factor * q >= cap * (1.0 - rel) - rel;
        bool on_backpressure =
            chp_on && u.power_to_heat_ratio * q >= gen - rel * std::max(1.0, gen);
        bool boiler_on = boiler > rel * std::max(1.0, u.chp_capacity);
        bool backup_on = backup > rel * std::max(1.0, std::max(backup_cap, 1.0));
        bool backup_full = backup_cap > 0.0 && backup >= backup_cap * (1.0 - rel);

        ChpStateLabel lab;
        lab.hour = t;
        lab.power_price = prices.values[t];
        double boiler_heat_value = u.boiler_cost(p) / u.boiler_efficiency;
        double backup_heat_value = u.electric_backup_efficiency[t] > 0.0
                                       ? prices.values[t] / u.electric_backup_efficiency[t]
                                       : 0.0;
        if (boiler_on && backup_full) {
            if (ocgt_on && fuel_limit) lab.state = 'A';
            else if (!ocgt_on && chp_on && on_backpressure && !fuel_limit) lab.state = 'B';
            else if (!ocgt_on && !chp_on) lab.state = 'C';
            if (lab.state != '?') lab.heat_value = boiler_heat_value;
        } else if (!boiler_on && backup_on && !backup_full) {
            if (ocgt_on && fuel_limit) lab.state = 'D';
            else if (!ocgt_on && chp_on && on_backpressure && !fuel_limit) lab.state = 'E';
            else if (!ocgt_on && !chp_on) lab.state = 'F';
            if (lab.state != '?') lab.heat_value = backup_heat_value;
        } else if (!boiler_on && !backup_on) {
            if (ocgt_on && fuel_limit && backstop) {
                lab.state = 'G';
                lab.heat_value = oracle::case_g_heat_value(p, u.power_loss_factor,
                                                           u.electrical_efficiency,
                                                           backstop->efficiency);
            } else if (!ocgt_on && chp_on && !on_backpressure && !fuel_limit) {
                lab.state = 'H';
                lab.heat_value = u.heat_cost(p);
            }
        }
        out.push_back(lab);
    }
    return out;
}

// ---------------------------------------------------------------------------
// fixed-format CSV artifacts: hour-indexed, six decimal places

namespace csv {

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace csv

inline void write_prices_csv(const PriceSeries& p, std::ostream& os) {
    os << "hour,price\n";
    for (std::size_t t = 0; t < p.values.size(); ++t)
        os << t << "," << csv::num(p.values[t]) << "\n";
}

inline void write_duration_csv(const DurationCurve& c, std::ostream& os) {
    os << "rank,hour,price\n";
    for (std::size_t r = 0; r < c.values.size(); ++r)
        os << r << "," << c.hour_of_rank[r] << "," << csv::num(c.values[r]) << "\n";
}

inline void write_steps_csv(const std::vector<PriceStep>& steps, std::ostream& os) {
    os << "level,start_rank,end_rank,duration,matched_source\n";
    for (const auto& s : steps)
        os << csv::num(s.level) << "," << s.start_rank << "," << s.end_rank << "," << s.duration
           << "," << s.matched_source << "\n";
}

inline void write_market_values_csv(const MarketValueReport& r, std::ostream& os) {
    os << "zone,cluster,side,energy_mwh,value_eur,capture_price,zone_average_price\n";
    for (const auto& e : r) {
        os << e.zone << "," << e.cluster << "," << (e.consumer ? "consumption" : "generation")
           << "," << csv::num(e.energy) << "," << csv::num(e.value) << ",";
        if (e.capture_price) os << csv::num(*e.capture_price);
        os << "," << csv::num(e.zone_average) << "\n";
    }
}

inline void write_chp_states_csv(const std::vector<ChpStateLabel>& labels, std::ostream& os) {
    os << "hour,state,heat_value,power_price\n";
    for (const auto& l : labels)
        os << l.hour << "," << l.state << "," << csv::num(l.heat_value) << ","
           << csv::num(l.power_price) << "\n";
}

/// Net injection per unit and hour (generation positive, consumption
/// negative) next to the zonal demand.
inline void write_dispatch_csv(const Scenario& s, const Zone& z, const VariableRegistry& reg,
                               const Solution& sol, std::ostream& os) {
    struct Col {
        std::string name;
        std::vector<double> values;
    };
    const int T = static_cast<int>(s.horizon);
    std::vector<Col> cols;
    auto val = [&](const std::string& unit, VarRole role, int t) {
        return sol.value_of(reg.require(z.id + "." + unit, role, t));
    };
    auto add = [&](const std::string& name, auto f) {
        Col c;
        c.name = name;
        c.values.resize(T);
        for (int t = 0; t < T; ++t) c.values[t] = f(t);
        cols.push_back(std::move(c));
    };
    for (const auto& u : z.renewables)
        add(u.id, [&](int t) { return val(u.id, VarRole::Generation, t); });
    for (const auto& u : z.thermal)
        add(u.id, [&](int t) { return val(u.id, VarRole::Generation, t); });
    for (const auto& u : z.chp_systems)
        add(u.id, [&](int t) {
            return val(u.id, VarRole::Generation, t) - val(u.id, VarRole::Consumption, t);
        });
    for (const auto& u : z.hydro)
        add(u.id, [&](int t) {
            return val(u.id, VarRole::Generation, t) - val(u.id, VarRole::Consumption, t);
        });
    for (const auto& u : z.batteries)
        add(u.id, [&](int t) {
            return val(u.id, VarRole::StorageDischarge, t) - val(u.id, VarRole::StorageCharge, t);
        });
    for (const auto& u : z.ptg)
        add(u.id, [&](int t) { return -val(u.id, VarRole::Consumption, t); });
    for (const auto& u : z.hybrid_boilers)
        add(u.id, [&](int t) { return -val(u.id, VarRole::Consumption, t); });
    for (const auto& u : z.heat_pumps)
        add(u.id, [&](int t) { return -val(u.id, VarRole::Consumption, t); });
    for (const auto& u : z.cooling)
        add(u.id, [&](int t) { return -val(u.id, VarRole::Consumption, t); });
    for (const auto& u : z.vehicles)
        add(u.id, [&](int t) { return -val(u.id, VarRole::Consumption, t); });
    os << "hour,demand";
    for (const auto& c : cols) os << "," << c.name;
    os << "\n";
    for (int t = 0; t < T; ++t) {
        os << t << "," << csv::num(z.electricity_demand[t]);
        for (const auto& c : cols) os << "," << csv::num(c.values[t]);
        os << "\n";
    }
}

}  // namespace merit
