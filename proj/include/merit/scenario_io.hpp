#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "merit/scenario.hpp"

namespace merit {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace iodetail {

struct KV {
    std::string key, value;
    int line = 0;
    mutable bool used = false;
};

struct Block {
    std::string kind;
    std::vector<std::string> names;
    int line = 0;
    std::vector<KV> kvs;
    std::vector<Block> children;
};

[[noreturn]] inline void fail(const std::string& file, int line, const std::string& msg) {
    throw ScenarioError(file + ":" + std::to_string(line) + ": " + msg);
}

inline std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline Block parse_conf(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ScenarioError("missing file: " + file.string());
    Block root;
    std::vector<Block*> stack{&root};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line == "}") {
            if (stack.size() < 2) fail(file.string(), lineno, "unmatched '}'");
            stack.pop_back();
            continue;
        }
        auto eq = line.find('=');
        if (line.back() == '{') {
            std::istringstream hs(line.substr(0, line.size() - 1));
            Block b;
            b.line = lineno;
            hs >> b.kind;
            std::string n;
            while (hs >> n) b.names.push_back(n);
            if (b.kind.empty()) fail(file.string(), lineno, "block header without a kind");
            stack.back()->children.push_back(std::move(b));
            stack.push_back(&stack.back()->children.back());
        } else if (eq != std::string::npos) {
            KV kv;
            kv.key = trim(line.substr(0, eq));
            kv.value = trim(line.substr(eq + 1));
            kv.line = lineno;
            if (kv.key.empty() || kv.value.empty())
                fail(file.string(), lineno, "malformed record '" + line + "'");
            stack.back()->kvs.push_back(std::move(kv));
        } else {
            fail(file.string(), lineno, "malformed record '" + line + "'");
        }
    }
    if (stack.size() != 1) throw ScenarioError(file.string() + ": unterminated block");
    return root;
}

inline bool parse_number(const std::string& s, double& out) {
    const char* c = s.c_str();
    char* end = nullptr;
    out = std::strtod(c, &end);
    return end != c && *end == '\0';
}

/// Field accessors over one block, with file/line context on errors.
struct Fields {
    const Block& b;
    std::string file;

    const KV* find(const std::string& key) const {
        for (const auto& kv : b.kvs)
            if (kv.key == key) {
                kv.used = true;
                return &kv;
            }
        return nullptr;
    }
    double num(const std::string& key) const {
        const KV* kv = find(key);
        if (!kv) fail(file, b.line, b.kind + " block is missing '" + key + "'");
        double v;
        if (!parse_number(kv->value, v))
            fail(file, kv->line, "'" + key + "' is not a number: " + kv->value);
        return v;
    }
    double num_or(const std::string& key, double dflt) const {
        const KV* kv = find(key);
        if (!kv) return dflt;
        double v;
        if (!parse_number(kv->value, v))
            fail(file, kv->line, "'" + key + "' is not a number: " + kv->value);
        return v;
    }
    std::optional<double> num_opt(const std::string& key) const {
        const KV* kv = find(key);
        if (!kv) return std::nullopt;
        double v;
        if (!parse_number(kv->value, v))
            fail(file, kv->line, "'" + key + "' is not a number: " + kv->value);
        return v;
    }
    std::string str(const std::string& key) const {
        const KV* kv = find(key);
        if (!kv) fail(file, b.line, b.kind + " block is missing '" + key + "'");
        return kv->value;
    }
    Profile profile(const std::string& key, const TimeSeriesStore& ts, std::size_t T) const {
        const KV* kv = find(key);
        if (!kv) fail(file, b.line, b.kind + " block is missing profile '" + key + "'");
        return materialize(*kv, ts, T);
    }
    Profile profile_or(const std::string& key, const TimeSeriesStore& ts, std::size_t T,
                       double flat) const {
        const KV* kv = find(key);
        if (!kv) return Profile(T, flat);
        return materialize(*kv, ts, T);
    }
    Profile materialize(const KV& kv, const TimeSeriesStore& ts, std::size_t T) const {
        if (!kv.value.empty() && kv.value[0] == '@') {
            std::string name = kv.value.substr(1);
            auto it = ts.find(name);
            if (it == ts.end())
                fail(file, kv.line, "unknown time series '" + name + "'");
            return it->second;
        }
        double v;
        if (!parse_number(kv.value, v))
            fail(file, kv.line, "profile value must be a number or @reference: " + kv.value);
        return Profile(T, v);
    }
    const Block* child(const std::string& kind) const {
        for (const auto& c : b.children)
            if (c.kind == kind) return &c;
        return nullptr;
    }
    /// every key in the block must have been read by now
    void ensure_consumed() const {
        for (const auto& kv : b.kvs)
            if (!kv.used) fail(file, kv.line, "unknown key '" + kv.key + "' in " + b.kind + " block");
    }
};

inline ThermalStorageParams read_storage(const Block* blk, const std::string& file) {
    ThermalStorageParams s;
    if (!blk) return s;
    Fields f{*blk, file};
    s.energy_cap = f.num_or("energy_cap", 0.0);
    s.eta_in = f.num_or("eta_in", 1.0);
    s.eta_out = f.num_or("eta_out", 1.0);
    s.loss_factor = f.num_or("loss_factor", 0.0);
    s.self_discharge = f.num_or("self_discharge", 0.0);
    f.ensure_consumed();
    return s;
}

inline TimeSeriesStore load_timeseries(const std::filesystem::path& dir, std::size_t horizon) {
    TimeSeriesStore store;
    if (!std::filesystem::exists(dir)) return store;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".csv") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        std::ifstream in(f);
        if (!in) throw ScenarioError("missing file: " + f.string());
        std::string line;
        int lineno = 0;
        if (!std::getline(in, line)) fail(f.string(), 1, "empty time series file");
        ++lineno;
        std::vector<std::string> names;
        {
            std::stringstream hs(line);
            std::string cell;
            while (std::getline(hs, cell, ',')) names.push_back(trim(cell));
        }
        if (names.empty() || names[0] != "hour")
            fail(f.string(), 1, "header must start with 'hour'");
        std::vector<Profile> cols(names.size() - 1);
        std::size_t row = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (trim(line).empty()) continue;
            std::stringstream ls(line);
            std::string cell;
            std::size_t c = 0;
            while (std::getline(ls, cell, ',')) {
                double v;
                if (!parse_number(trim(cell), v))
                    fail(f.string(), lineno, "malformed record: '" + cell + "'");
                if (c == 0) {
                    if (v != static_cast<double>(row))
                        fail(f.string(), lineno,
                             "hour index must run 0.." + std::to_string(horizon - 1));
                } else {
                    if (c - 1 >= cols.size()) fail(f.string(), lineno, "too many columns");
                    cols[c - 1].push_back(v);
                }
                ++c;
            }
            if (c != names.size()) fail(f.string(), lineno, "wrong number of columns");
            ++row;
        }
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (cols[c].size() != horizon)
                throw ScenarioError(f.string() + ": profile length mismatch for '" + names[c + 1] +
                                    "': " + std::to_string(cols[c].size()) + " rows, horizon " +
                                    std::to_string(horizon));
            if (!store.emplace(names[c + 1], std::move(cols[c])).second)
                throw ScenarioError(f.string() + ": duplicate time series name '" + names[c + 1] +
                                    "'");
        }
    }
    return store;
}

}  // namespace iodetail

/// Reads a scenario directory: scenario.conf plus timeseries/*.csv.
inline Scenario load_scenario(const std::filesystem::path& dir) {
    namespace io = iodetail;
    const std::filesystem::path conf = dir / "scenario.conf";
    io::Block root = io::parse_conf(conf);
    const std::string file = conf.string();
    io::Fields top{root, file};

    Scenario s;
    s.horizon = static_cast<std::size_t>(top.num("horizon"));
    if (s.horizon < 1) io::fail(file, root.line, "horizon must be >= 1");
    s.fuel_price_import = top.num("fuel_price_import");
    s.fuel_price_domestic = top.num_or("fuel_price_domestic", s.fuel_price_import);
    for (const auto& kv : root.kvs)
        if (kv.key == "expect_step") {
            s.expect_steps.push_back(kv.value);
            kv.used = true;
        }
    top.ensure_consumed();
    s.timeseries = io::load_timeseries(dir / "timeseries", s.horizon);
    const TimeSeriesStore& ts = s.timeseries;
    const std::size_t T = s.horizon;

    for (const auto& zb : root.children) {
        if (zb.kind == "interconnector") {
            if (zb.names.size() != 2)
                io::fail(file, zb.line, "interconnector needs two zone names");
            io::Fields f{zb, file};
            Interconnector ic;
            ic.from_zone = zb.names[0];
            ic.to_zone = zb.names[1];
            ic.ntc = f.profile("ntc", ts, T);
            ic.transmission_efficiency = f.num("transmission_efficiency");
            f.ensure_consumed();
            s.interconnectors.push_back(std::move(ic));
            continue;
        }
        if (zb.kind != "zone") io::fail(file, zb.line, "unexpected block '" + zb.kind + "'");
        if (zb.names.size() != 1) io::fail(file, zb.line, "zone needs exactly one name");
        Zone z;
        z.id = zb.names[0];
        io::Fields zf{zb, file};
        z.electricity_demand = zf.profile("electricity_demand", ts, T);

        for (const auto& ub : zb.children) {
            io::Fields f{ub, file};
            if (ub.names.size() != 1)
                io::fail(file, ub.line, ub.kind + " needs exactly one name");
            const std::string& id = ub.names[0];
            if (ub.kind == "renewable") {
                RenewableUnit u;
                u.id = id;
                u.capacity = f.num("capacity");
                u.availability = f.profile("availability", ts, T);
                u.variable_cost = f.num_or("variable_cost", 0.0);
                u.curtailment_bonus = f.num_or("curtailment_bonus", 0.0);
                f.ensure_consumed();
                z.renewables.push_back(std::move(u));
            } else if (ub.kind == "thermal") {
                ThermalUnit u;
                u.id = id;
                u.capacity = f.num("capacity");
                u.availability = f.profile_or("availability", ts, T, 1.0);
                u.efficiency = f.num("efficiency");
                u.load_change_cost = f.num_or("load_change_cost", 0.0);
                u.variable_cost = f.num_opt("variable_cost");
                f.ensure_consumed();
                z.thermal.push_back(std::move(u));
            } else if (ub.kind == "chp") {
                ChpSystem u;
                u.id = id;
                u.chp_capacity = f.num("chp_capacity");
                u.electrical_efficiency = f.num("electrical_efficiency");
                u.power_to_heat_ratio = f.num("power_to_heat_ratio");
                u.power_loss_factor = f.num("power_loss_factor");
                u.design_ratio_chp = f.num_or("design_ratio_chp", 0.0);
                u.boiler_design_factor = f.num("boiler_design_factor");
                u.electric_backup_design_factor = f.num("electric_backup_design_factor");
                u.boiler_efficiency = f.num("boiler_efficiency");
                u.electric_backup_efficiency = f.profile("electric_backup_efficiency", ts, T);
                u.load_change_cost = f.num_or("load_change_cost", 0.0);
                u.storage = io::read_storage(f.child("storage"), file);
                u.network_loss = f.num_or("network_loss", 0.0);
                u.solar_thermal_factor = f.profile_or("solar_thermal_factor", ts, T, 1.0);
                u.heat_market = f.str("heat_market");
                u.availability = f.profile_or("availability", ts, T, 1.0);
                u.heat_extraction_cost = f.num_opt("heat_extraction_cost");
                u.boiler_fuel_cost = f.num_opt("boiler_fuel_cost");
                f.ensure_consumed();
                z.chp_systems.push_back(std::move(u));
            } else if (ub.kind == "hydro") {
                HydroSystem u;
                u.id = id;
                u.turbine_cap = f.profile("turbine_cap", ts, T);
                u.pumped_turbine_cap = f.profile_or("pumped_turbine_cap", ts, T, 0.0);
                u.pump_cap = f.profile_or("pump_cap", ts, T, 0.0);
                u.pump_efficiency = f.num("pump_efficiency");
                u.inflow_main = f.profile_or("inflow_main", ts, T, 0.0);
                u.inflow_pumped = f.profile_or("inflow_pumped", ts, T, 0.0);
                u.reservoir_cap_main = f.num("reservoir_cap_main");
                u.reservoir_cap_pumped = f.num_or("reservoir_cap_pumped", 0.0);
                f.ensure_consumed();
                z.hydro.push_back(std::move(u));
            } else if (ub.kind == "battery") {
                BatteryUnit u;
                u.id = id;
                u.power_cap = f.num("power_cap");
                u.energy_cap = f.num("energy_cap");
                u.eta_in = f.num("eta_in");
                u.eta_out = f.num("eta_out");
                u.loss_factor = f.num_or("loss_factor", 0.0);
                u.self_discharge = f.num_or("self_discharge", 0.0);
                u.load_change_cost = f.num_or("load_change_cost", 0.0);
                f.ensure_consumed();
                z.batteries.push_back(std::move(u));
            } else if (ub.kind == "ptg") {
                PowerToGasUnit u;
                u.id = id;
                u.capacity = f.num("capacity");
                u.conversion_factor = f.num("conversion_factor");
                u.load_change_cost = f.num_or("load_change_cost", 0.0);
                u.fuel_credit = f.num_opt("fuel_credit");
                f.ensure_consumed();
                z.ptg.push_back(std::move(u));
            } else if (ub.kind == "hybrid_boiler") {
                HybridBoilerSystem u;
                u.id = id;
                u.boiler_efficiency = f.num("boiler_efficiency");
                u.electric_efficiency = f.num("electric_efficiency");
                u.boiler_fuel_cost = f.num_opt("boiler_fuel_cost");
                u.boiler_cap = f.num("boiler_cap");
                u.electric_cap = f.num("electric_cap");
                u.network_loss = f.num_or("network_loss", 0.0);
                u.solar_thermal_factor = f.profile_or("solar_thermal_factor", ts, T, 1.0);
                u.heat_market = f.str("heat_market");
                f.ensure_consumed();
                z.hybrid_boilers.push_back(std::move(u));
            } else if (ub.kind == "heat_pump") {
                HeatPumpSystem u;
                u.id = id;
                u.hp_cap = f.num("hp_cap");
                u.cop = f.profile("cop", ts, T);
                u.backup_electric_efficiency = f.num_or("backup_electric_efficiency", 0.0);
                u.backup_fuel_efficiency = f.num_or("backup_fuel_efficiency", 0.0);
                u.backup_electric_cap = f.num_or("backup_electric_cap", 0.0);
                u.backup_fuel_cap = f.num_or("backup_fuel_cap", 0.0);
                u.storage = io::read_storage(f.child("storage"), file);
                u.solar_thermal_factor = f.profile_or("solar_thermal_factor", ts, T, 1.0);
                u.heat_market = f.str("heat_market");
                u.backup_fuel_cost = f.num_opt("backup_fuel_cost");
                f.ensure_consumed();
                z.heat_pumps.push_back(std::move(u));
            } else if (ub.kind == "cooling") {
                CoolingSystem u;
                u.id = id;
                u.capacity = f.num("capacity");
                u.electric_efficiency = f.profile("electric_efficiency", ts, T);
                u.storage = io::read_storage(f.child("storage"), file);
                u.cooling_market = f.str("cooling_market");
                f.ensure_consumed();
                z.cooling.push_back(std::move(u));
            } else if (ub.kind == "vehicles") {
                VehicleFleet u;
                u.id = id;
                u.market_share = f.num("market_share");
                u.flexible_share = f.num("flexible_share");
                u.max_electric_distance = f.profile("max_electric_distance", ts, T);
                u.inflexible_charging = f.profile_or("inflexible_charging", ts, T, 0.0);
                u.max_flexible_charging = f.profile_or("max_flexible_charging", ts, T, 0.0);
                u.soc_min = f.profile_or("soc_min", ts, T, 0.0);
                u.soc_max = f.profile("soc_max", ts, T);
                u.charging_efficiency = f.num("charging_efficiency");
                u.electricity_per_km = f.num("electricity_per_km");
                u.fuel_per_km = f.num_or("fuel_per_km", 0.0);
                u.ice_cost = f.num_opt("ice_cost");
                u.road_market = f.str("road_market");
                f.ensure_consumed();
                z.vehicles.push_back(std::move(u));
            } else if (ub.kind == "heat_market" || ub.kind == "cooling_market" ||
                       ub.kind == "road_market") {
                Market m;
                m.id = id;
                m.demand = f.profile("demand", ts, T);
                f.ensure_consumed();
                if (ub.kind == "heat_market") z.heat_markets.push_back(std::move(m));
                else if (ub.kind == "cooling_market") z.cooling_markets.push_back(std::move(m));
                else z.road_markets.push_back(std::move(m));
            } else {
                io::fail(file, ub.line, "unknown unit kind '" + ub.kind + "'");
            }
        }
        // dangling market references are load errors, with block context
        for (const auto& u : z.chp_systems)
            if (!z.find_market(z.heat_markets, u.heat_market))
                io::fail(file, zb.line, z.id + "." + u.id + ": dangling market reference '" +
                                            u.heat_market + "'");
        for (const auto& u : z.hybrid_boilers)
            if (!z.find_market(z.heat_markets, u.heat_market))
                io::fail(file, zb.line, z.id + "." + u.id + ": dangling market reference '" +
                                            u.heat_market + "'");
        for (const auto& u : z.heat_pumps)
            if (!z.find_market(z.heat_markets, u.heat_market))
                io::fail(file, zb.line, z.id + "." + u.id + ": dangling market reference '" +
                                            u.heat_market + "'");
        for (const auto& u : z.cooling)
            if (!z.find_market(z.cooling_markets, u.cooling_market))
                io::fail(file, zb.line, z.id + "." + u.id + ": dangling market reference '" +
                                            u.cooling_market + "'");
        for (const auto& u : z.vehicles)
            if (!z.find_market(z.road_markets, u.road_market))
                io::fail(file, zb.line, z.id + "." + u.id + ": dangling market reference '" +
                                            u.road_market + "'");
        s.zones.push_back(std::move(z));
    }
    return s;
}

// ---------------------------------------------------------------------------
// serialization: canonical scenario.conf plus one timeseries/profiles.csv

namespace iodetail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string sanitize(std::string s) {
    for (char& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
    return s;
}

struct ProfileSink {
    std::vector<std::pair<std::string, const Profile*>> cols;
    std::string ref(const std::string& zone, const std::string& unit, const std::string& field,
                    const Profile& p) {
        std::string name = sanitize(zone + "_" + unit + "_" + field);
        cols.emplace_back(name, &p);
        return "@" + name;
    }
};

inline void write_storage(std::ostream& os, const ThermalStorageParams& s, const char* pad) {
    os << pad << "storage {\n";
    os << pad << "  energy_cap = " << fmt(s.energy_cap) << "\n";
    os << pad << "  eta_in = " << fmt(s.eta_in) << "\n";
    os << pad << "  eta_out = " << fmt(s.eta_out) << "\n";
    os << pad << "  loss_factor = " << fmt(s.loss_factor) << "\n";
    os << pad << "  self_discharge = " << fmt(s.self_discharge) << "\n";
    os << pad << "}\n";
}

}  // namespace iodetail

inline void serialize_scenario(const Scenario& s, const std::filesystem::path& dir) {
    namespace io = iodetail;
    std::filesystem::create_directories(dir / "timeseries");
    io::ProfileSink sink;
    std::ostringstream os;
    os << "horizon = " << s.horizon << "\n";
    os << "fuel_price_import = " << io::fmt(s.fuel_price_import) << "\n";
    os << "fuel_price_domestic = " << io::fmt(s.fuel_price_domestic) << "\n";
    for (const auto& e : s.expect_steps) os << "expect_step = " << e << "\n";
    for (const auto& z : s.zones) {
        os << "\nzone " << z.id << " {\n";
        os << "  electricity_demand = " << sink.ref(z.id, "zone", "electricity_demand", z.electricity_demand)
           << "\n";
        for (const auto& m : z.heat_markets)
            os << "  heat_market " << m.id << " {\n    demand = "
               << sink.ref(z.id, m.id, "demand", m.demand) << "\n  }\n";
        for (const auto& m : z.cooling_markets)
            os << "  cooling_market " << m.id << " {\n    demand = "
               << sink.ref(z.id, m.id, "demand", m.demand) << "\n  }\n";
        for (const auto& m : z.road_markets)
            os << "  road_market " << m.id << " {\n    demand = "
               << sink.ref(z.id, m.id, "demand", m.demand) << "\n  }\n";
        for (const auto& u : z.renewables) {
            os << "  renewable " << u.id << " {\n";
            os << "    capacity = " << io::fmt(u.capacity) << "\n";
            os << "    availability = " << sink.ref(z.id, u.id, "availability", u.availability) << "\n";
            os << "    variable_cost = " << io::fmt(u.variable_cost) << "\n";
            os << "    curtailment_bonus = " << io::fmt(u.curtailment_bonus) << "\n";
            os << "  }\n";
        }
        for (const auto& u : z.thermal) {
            os << "  thermal " << u.id << " {\n";
            os << "    capacity = " << io::fmt(u.capacity) << "\n";
            os << "    availability = " << sink.ref(z.id, u.id, "availability", u.availability) << "\n";
            os << "    efficiency = " << io::fmt(u.efficiency) << "\n";
            os << "    load_change_cost = " << io::fmt(u.load_change_cost) << "\n";
            if (u.variable_cost) os << "    variable_cost = " << io::fmt(*u.variable_cost) << "\n";
            os << "  }\n";
        }
        for (const auto& u : z.chp_systems) {
            os << "  chp " << u.id << " {\n";
            os << "    chp_capacity = " << io::fmt(u.chp_capacity) << "\n";
            os << "    electrical_efficiency = " << io::fmt(u.electrical_efficiency) << "\n";
            os << "    power_to_heat_ratio = " << io::fmt(u.power_to_heat_ratio) << "\n";
            os << "    power_loss_factor = " << io::fmt(u.power_loss_factor) << "\n";
            os << "    design_ratio_chp = " << io::fmt(u.design_ratio_chp) << "\n";
            os << "    boiler_design_factor = " << io::fmt(u.boiler_design_factor) << "\n";
            os << "    electric_backup_design_factor = " << io::fmt(u.electric_backup_design_factor)
               << "\n";
            os << "    boiler_efficiency = " << io::fmt(u.boiler_efficiency) << "\n";
            os << "    electric_backup_efficiency = "
               << sink.ref(z.id, u.id, "electric_backup_efficiency", u.electric_backup_efficiency)
               << "\n";
            os << "    load_change_cost = " << io::fmt(u.load_change_cost) << "\n";
            os << "    network_loss = " << io::fmt(u.network_loss) << "\n";
            os << "    solar_thermal_factor = "
               << sink.ref(z.id, u.id, "solar_thermal_factor", u.solar_thermal_factor) << "\n";
            os << "    heat_market = " << u.heat_market << "\n";
            os << "    availability = " << sink.ref(z.id, u.id, "availability", u.availability) << "\n";
            if (u.heat_extraction_cost)
                os << "    heat_extraction_cost = " << io::fmt(*u.heat_extraction_cost) << "\n";
            if (u.boiler_fuel_cost)
                os << "    boiler_fuel_cost = " << io::fmt(*u.boiler_fuel_cost) << "\n";
            io::write_storage(os, u.storage, "    ");
            os << "  }\n";
        }
        for (const auto& u : z.hydro) {
            os << "  hydro " << u.id << " {\n";
            os << "    turbine_cap = " << sink.ref(z.id, u.id, "turbine_cap", u.turbine_cap) << "\n";
            os << "    pumped_turbine_cap = "
               << sink.ref(z.id, u.id, "pumped_turbine_cap", u.pumped_turbine_cap) << "\n";
            os << "    pump_cap = " << sink.ref(z.id, u.id, "pump_cap", u.pump_cap) << "\n";
            os << "    pump_efficiency = " << io::fmt(u.pump_efficiency) << "\n";
            os << "    inflow_main = " << sink.ref(z.id, u.id, "inflow_main", u.inflow_main) << "\n";
            os << "    inflow_pumped = " << sink.ref(z.id, u.id, "inflow_pumped", u.inflow_pumped)
               << "\n";
            os << "    reservoir_cap_main = " << io::fmt(u.reservoir_cap_main) << "\n";
            os << "    reservoir_cap_pumped = " << io::fmt(u.reservoir_cap_pumped) << "\n";
            os << "  }\n";
        }
        for (const auto& u : z.batteries) {
            os << "  battery " << u.id << " {\n";
            os << "    power_cap = " << io::fmt(u.power_cap) << "\n";
            os << "    energy_cap = " << io::fmt(u.energy_cap) << "\n";
            os << "    eta_in = " << io::fmt(u.eta_in) << "\n";
            os << "    eta_out = " << io::fmt(u.eta_out) << "\n";
            os << "    loss_factor = " << io::fmt(u.loss_factor) << "\n";
            os << "    self_discharge = " << io::fmt(u.self_discharge) << "\n";
            os << "    load_change_cost = " << io::fmt(u.load_change_cost) << "\n";
            os << "  }\n";
        }
        for (const auto& u : z.ptg) {
            os << "  ptg " << u.id << " {\n";
            os << "    capacity = " << io::fmt(u.capacity) << "\n";
            os << "    conversion_factor = " << io::fmt(u.conversion_factor) << "\n";
            os << "    load_change_cost = " << io::fmt(u.load_change_cost) << "\n";
            if (u.fuel_credit) os << "    fuel_credit = " << io::fmt(*u.fuel_credit) << "\n";
            os << "  }\n";
        }
        for (const auto& u : z.hybrid_boilers) {
            os << "  hybrid_boiler " << u.id << " {\n";
            os << "    boiler_efficiency = " << io::fmt(u.boiler_efficiency) << "\n";
            os << "    electric_efficiency = " << io::fmt(u.electric_efficiency) << "\n";
            if (u.boiler_fuel_cost)
                os << "    boiler_fuel_cost = " << io::fmt(*u.boiler_fuel_cost) << "\n";
            os << "    boiler_cap = " << io::fmt(u.boiler_cap) << "\n";
            os << "    electric_cap = " << io::fmt(u.electric_cap) << "\n";
            os << "    network_loss = " << io::fmt(u.network_loss) << "\n";
            os << "    solar_thermal_factor = "
               << sink.ref(z.id, u.id, "solar_thermal_factor", u.solar_thermal_factor) << "\n";
            os << "    heat_market = " << u.heat_market << "\n";
            os << "  }\n";
        }
        for (const auto& u : z.heat_pumps) {
            os << "  heat_pump " << u.id << " {\n";
            os << "    hp_cap = " << io::fmt(u.hp_cap) << "\n";
            os << "    cop = " << sink.ref(z.id, u.id, "cop", u.cop) << "\n";
            os << "    backup_electric_efficiency = " << io::fmt(u.backup_electric_efficiency) << "\n";
            os << "    backup_fuel_efficiency = " << io::fmt(u.backup_fuel_efficiency) << "\n";
            os << "    backup_electric_cap = " << io::fmt(u.backup_electric_cap) << "\n";
            os << "    backup_fuel_cap = " << io::fmt(u.backup_fuel_cap) << "\n";
            os << "    solar_thermal_factor = "
               << sink.ref(z.id, u.id, "solar_thermal_factor", u.solar_thermal_factor) << "\n";
            os << "    heat_market = " << u.heat_market << "\n";
            if (u.backup_fuel_cost)
                os << "    backup_fuel_cost = " << io::fmt(*u.backup_fuel_cost) << "\n";
            io::write_storage(os, u.storage, "    ");
            os << "  }\n";
        }
        for (const auto& u : z.cooling) {
            os << "  cooling " << u.id << " {\n";
            os << "    capacity = " << io::fmt(u.capacity) << "\n";
            os << "    electric_efficiency = "
               << sink.ref(z.id, u.id, "electric_efficiency", u.electric_efficiency) << "\n";
            os << "    cooling_market = " << u.cooling_market << "\n";
            io::write_storage(os, u.storage, "    ");
            os << "  }\n";
        }
        for (const auto& u : z.vehicles) {
            os << "  vehicles " << u.id << " {\n";
            os << "    market_share = " << io::fmt(u.market_share) << "\n";
            os << "    flexible_share = " << io::fmt(u.flexible_share) << "\n";
            os << "    max_electric_distance = "
               << sink.ref(z.id, u.id, "max_electric_distance", u.max_electric_distance) << "\n";
            os << "    inflexible_charging = "
               << sink.ref(z.id, u.id, "inflexible_charging", u.inflexible_charging) << "\n";
            os << "    max_flexible_charging = "
               << sink.ref(z.id, u.id, "max_flexible_charging", u.max_flexible_charging) << "\n";
            os << "    soc_min = " << sink.ref(z.id, u.id, "soc_min", u.soc_min) << "\n";
            os << "    soc_max = " << sink.ref(z.id, u.id, "soc_max", u.soc_max) << "\n";
            os << "    charging_efficiency = " << io::fmt(u.charging_efficiency) << "\n";
            os << "    electricity_per_km = " << io::fmt(u.electricity_per_km) << "\n";
            os << "    fuel_per_km = " << io::fmt(u.fuel_per_km) << "\n";
            if (u.ice_cost) os << "    ice_cost = " << io::fmt(*u.ice_cost) << "\n";
            os << "    road_market = " << u.road_market << "\n";
            os << "  }\n";
        }
        os << "}\n";
    }
    for (const auto& ic : s.interconnectors) {
        os << "\ninterconnector " << ic.from_zone << " " << ic.to_zone << " {\n";
        os << "  ntc = " << sink.ref(ic.from_zone, ic.to_zone, "ntc", ic.ntc) << "\n";
        os << "  transmission_efficiency = " << io::fmt(ic.transmission_efficiency) << "\n";
        os << "}\n";
    }

    std::ofstream conf(dir / "scenario.conf", std::ios::trunc);
    conf << os.str();

    std::ofstream csv(dir / "timeseries" / "profiles.csv", std::ios::trunc);
    csv << "hour";
    for (const auto& [name, p] : sink.cols) csv << "," << name;
    csv << "\n";
    for (std::size_t t = 0; t < s.horizon; ++t) {
        csv << t;
        for (const auto& [name, p] : sink.cols) csv << "," << io::fmt((*p)[t]);
        csv << "\n";
    }
}

/// Shortens every profile to the first `horizon` steps.
inline Scenario truncate_scenario(Scenario s, std::size_t horizon) {
    if (horizon > s.horizon)
        throw ScenarioError("horizon override " + std::to_string(horizon) +
                            " exceeds available profile length " + std::to_string(s.horizon));
    auto cut = [&](Profile& p) {
        if (p.size() > horizon) p.resize(horizon);
    };
    for (auto& z : s.zones) {
        cut(z.electricity_demand);
        for (auto& m : z.heat_markets) cut(m.demand);
        for (auto& m : z.cooling_markets) cut(m.demand);
        for (auto& m : z.road_markets) cut(m.demand);
        for (auto& u : z.renewables) cut(u.availability);
        for (auto& u : z.thermal) cut(u.availability);
        for (auto& u : z.chp_systems) {
            cut(u.electric_backup_efficiency);
            cut(u.solar_thermal_factor);
            cut(u.availability);
        }
        for (auto& u : z.hydro) {
            cut(u.turbine_cap);
            cut(u.pumped_turbine_cap);
            cut(u.pump_cap);
            cut(u.inflow_main);
            cut(u.inflow_pumped);
        }
        for (auto& u : z.hybrid_boilers) cut(u.solar_thermal_factor);
        for (auto& u : z.heat_pumps) {
            cut(u.cop);
            cut(u.solar_thermal_factor);
        }
        for (auto& u : z.cooling) cut(u.electric_efficiency);
        for (auto& u : z.vehicles) {
            cut(u.max_electric_distance);
            cut(u.inflexible_charging);
            cut(u.max_flexible_charging);
            cut(u.soc_min);
            cut(u.soc_max);
        }
    }
    for (auto& ic : s.interconnectors) cut(ic.ntc);
    for (auto& [name, p] : s.timeseries) cut(p);
    s.horizon = horizon;
    return s;
}

/// Field-by-field equality of the materialized model content, checked
/// through the canonical serialization (byte-equal canonical form iff equal
/// content). The raw time-series store is provenance and excluded:
/// serialization renames columns canonically.
inline bool equivalent(const Scenario& a, const Scenario& b) {
    namespace fs = std::filesystem;
    static int counter = 0;
    fs::path base = fs::temp_directory_path() / ("merit_eq_" + std::to_string(++counter));
    fs::path ta = base / "a", tb = base / "b";
    serialize_scenario(a, ta);
    serialize_scenario(b, tb);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    bool same = slurp(ta / "scenario.conf") == slurp(tb / "scenario.conf") &&
                slurp(ta / "timeseries" / "profiles.csv") ==
                    slurp(tb / "timeseries" / "profiles.csv");
    fs::remove_all(base);
    return same;
}

}  // namespace merit
