#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace merit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LpError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Identifies a variable or constraint: (zone, unit, role/equation, hour).
/// Tags must be unique within their kind; the empty string is allowed for
/// fields that do not apply (e.g. zone-level rows have no unit).
struct Tag {
    std::string zone;
    std::string unit;
    std::string role;
    std::int32_t step = -1;

    std::string key() const {
        std::string k;
        k.reserve(zone.size() + unit.size() + role.size() + 14);
        k += zone;
        k += '\x1f';
        k += unit;
        k += '\x1f';
        k += role;
        k += '\x1f';
        k += std::to_string(step);
        return k;
    }
    std::string str() const {
        std::string s = zone;
        if (!unit.empty()) {
            s += '.';
            s += unit;
        }
        s += ':';
        s += role;
        if (step >= 0) {
            s += "@t";
            s += std::to_string(step);
        }
        return s;
    }
    bool operator==(const Tag&) const = default;
};

struct VarId {
    std::uint32_t idx = UINT32_MAX;
    bool valid() const { return idx != UINT32_MAX; }
    bool operator==(const VarId&) const = default;
};

struct RowId {
    std::uint32_t idx = UINT32_MAX;
    bool valid() const { return idx != UINT32_MAX; }
    bool operator==(const RowId&) const = default;
};

enum class Sense : char { LessEqual = 'L', Equal = 'E', GreaterEqual = 'G' };

struct Bounds {
    double lower = 0.0;
    double upper = kInf;
};

struct Variable {
    Bounds bounds;
    double cost = 0.0;
    Tag tag;
};

struct RowEntry {
    std::uint32_t var;
    double coeff;
};

struct Constraint {
    std::vector<RowEntry> row;
    Sense sense = Sense::Equal;
    double rhs = 0.0;
    Tag tag;
};

/// Sparse LP in minimize form. Handles are stable for the lifetime of the
/// program object; variables and constraints cannot be removed.
class LinearProgram {
public:
    VarId add_variable(Bounds b, double cost, Tag tag) {
        if (!(b.lower <= b.upper))
            throw LpError("inverted bounds for variable " + tag.str());
        auto [it, fresh] = var_index_.emplace(tag.key(), static_cast<std::uint32_t>(vars_.size()));
        if (!fresh)
            throw LpError("tag collision: variable " + tag.str());
        vars_.push_back(Variable{b, cost, std::move(tag)});
        return VarId{it->second};
    }

    RowId add_constraint(const std::vector<std::pair<VarId, double>>& row, Sense sense, double rhs,
                         Tag tag) {
        Constraint c;
        c.row.reserve(row.size());
        for (auto [v, coeff] : row) {
            if (!v.valid() || v.idx >= vars_.size())
                throw LpError("constraint " + tag.str() + " references unknown variable handle");
            if (coeff != 0.0) c.row.push_back(RowEntry{v.idx, coeff});
        }
        c.sense = sense;
        c.rhs = rhs;
        auto [it, fresh] = row_index_.emplace(tag.key(), static_cast<std::uint32_t>(rows_.size()));
        if (!fresh)
            throw LpError("tag collision: constraint " + tag.str());
        c.tag = std::move(tag);
        rows_.push_back(std::move(c));
        return RowId{it->second};
    }

    std::size_t num_variables() const { return vars_.size(); }
    std::size_t num_constraints() const { return rows_.size(); }
    const Variable& variable(VarId v) const { return vars_.at(v.idx); }
    const Constraint& constraint(RowId r) const { return rows_.at(r.idx); }
    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<Constraint>& constraints() const { return rows_; }

    std::optional<VarId> find_variable(const Tag& t) const {
        auto it = var_index_.find(t.key());
        if (it == var_index_.end()) return std::nullopt;
        return VarId{it->second};
    }
    std::optional<RowId> find_constraint(const Tag& t) const {
        auto it = row_index_.find(t.key());
        if (it == row_index_.end()) return std::nullopt;
        return RowId{it->second};
    }

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> rows_;
    std::unordered_map<std::string, std::uint32_t> var_index_;
    std::unordered_map<std::string, std::uint32_t> row_index_;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
    }
    return "?";
}

/// Primal/dual result. dual[i] is d(objective)/d(rhs_i): for a market
/// clearing equality this is the price of one extra unit of demand.
struct Solution {
    SolveStatus status = SolveStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> primal;
    std::vector<double> dual;
    std::vector<double> reduced_cost;
    std::vector<Tag> conflict;  // hint for infeasible/unbounded outcomes
    double max_primal_residual = 0.0;
    double duality_gap = 0.0;
    long iterations = 0;

    double value_of(VarId v) const { return primal.at(v.idx); }
    double dual_of(RowId r) const { return dual.at(r.idx); }
};

/// Compensated sum; objective values combine ~1e5 terms spanning 1e-6..1e2.
inline double kahan_sum(const std::vector<double>& xs) {
    double s = 0.0, c = 0.0;
    for (double x : xs) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

}  // namespace merit
