#pragma once

#include <cmath>
#include <string>

#include "merit/lp.hpp"
#include "merit/simplex_reference.hpp"
#include "merit/simplex_revised.hpp"

namespace merit {

enum class SolverChoice { Reference, Revised };

inline std::optional<SolverChoice> parse_solver(const std::string& name) {
    if (name == "reference") return SolverChoice::Reference;
    if (name == "revised") return SolverChoice::Revised;
    return std::nullopt;
}

inline const char* to_string(SolverChoice c) {
    return c == SolverChoice::Reference ? "reference" : "revised";
}

struct SolveOptions {
    SolverChoice solver = SolverChoice::Revised;
    double tolerance = 1e-7;  // feasibility/duality tolerance on scaled data
    bool equilibrate = true;
    std::size_t reference_cap = 5000;
};

namespace detail {

inline double pow2_scale(double maxabs) {
    if (maxabs <= 0.0 || !std::isfinite(maxabs)) return 1.0;
    int e;
    std::frexp(maxabs, &e);
    e = std::min(20, std::max(-20, e - 1));
    return std::ldexp(1.0, -e);  // exact in binary floating point
}

struct Scaling {
    std::vector<double> row, col;
};

/// Max-abs row then column equilibration, factors rounded to powers of two
/// so that scaling and unscaling are exact. Hourly models mix coefficients
/// from storage losses (1e-7) to efficiencies and prices (1e2).
inline Scaling equilibrate(const LinearProgram& lp) {
    const auto& rows = lp.constraints();
    Scaling s;
    s.row.assign(lp.num_constraints(), 1.0);
    s.col.assign(lp.num_variables(), 1.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double mx = 0.0;
        for (const auto& e : rows[i].row) mx = std::max(mx, std::abs(e.coeff));
        s.row[i] = pow2_scale(mx);
    }
    std::vector<double> colmax(lp.num_variables(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& e : rows[i].row)
            colmax[e.var] = std::max(colmax[e.var], std::abs(e.coeff) * s.row[i]);
    for (std::size_t j = 0; j < colmax.size(); ++j) s.col[j] = pow2_scale(colmax[j]);
    return s;
}

inline LinearProgram scaled_copy(const LinearProgram& lp, const Scaling& s) {
    LinearProgram out;
    for (std::size_t j = 0; j < lp.num_variables(); ++j) {
        const auto& v = lp.variables()[j];
        Bounds b;
        b.lower = v.bounds.lower == -kInf ? -kInf : v.bounds.lower / s.col[j];
        b.upper = v.bounds.upper == kInf ? kInf : v.bounds.upper / s.col[j];
        out.add_variable(b, v.cost * s.col[j], v.tag);
    }
    for (std::size_t i = 0; i < lp.num_constraints(); ++i) {
        const auto& c = lp.constraints()[i];
        std::vector<std::pair<VarId, double>> row;
        row.reserve(c.row.size());
        for (const auto& e : c.row)
            row.emplace_back(VarId{e.var}, e.coeff * s.row[i] * s.col[e.var]);
        out.add_constraint(row, c.sense, c.rhs * s.row[i], c.tag);
    }
    return out;
}

inline void audit(const LinearProgram& lp, Solution& sol, double tol) {
    if (sol.status != SolveStatus::Optimal) return;
    const auto& rows = lp.constraints();
    double maxres = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double act = 0.0;
        for (const auto& e : rows[i].row) act += e.coeff * sol.primal[e.var];
        double v = 0.0;
        switch (rows[i].sense) {
            case Sense::LessEqual: v = act - rows[i].rhs; break;
            case Sense::GreaterEqual: v = rows[i].rhs - act; break;
            case Sense::Equal: v = std::abs(act - rows[i].rhs); break;
        }
        maxres = std::max(maxres, v / (1.0 + std::abs(rows[i].rhs)));
    }
    for (std::size_t j = 0; j < lp.num_variables(); ++j) {
        const auto& b = lp.variables()[j].bounds;
        double x = sol.primal[j];
        double v = std::max(b.lower == -kInf ? 0.0 : b.lower - x,
                            b.upper == kInf ? 0.0 : x - b.upper);
        maxres = std::max(maxres, v / (1.0 + std::abs(x)));
    }
    sol.max_primal_residual = maxres;

    // dual objective for the bounded problem
    std::vector<double> terms;
    terms.reserve(rows.size() + lp.num_variables());
    for (std::size_t i = 0; i < rows.size(); ++i) terms.push_back(sol.dual[i] * rows[i].rhs);
    for (std::size_t j = 0; j < lp.num_variables(); ++j) {
        double d = sol.reduced_cost[j];
        if (std::abs(d) < 1e-11) continue;
        const auto& b = lp.variables()[j].bounds;
        double bound = d > 0 ? b.lower : b.upper;
        if (std::isfinite(bound)) terms.push_back(d * bound);
    }
    double dobj = kahan_sum(terms);
    sol.duality_gap = std::abs(sol.objective - dobj) / (1.0 + std::abs(sol.objective));

    if (maxres > tol * 10.0)
        throw LpError("solution failed feasibility audit, residual " + std::to_string(maxres));
    if (sol.duality_gap > tol * 100.0)
        throw LpError("solution failed duality audit, gap " + std::to_string(sol.duality_gap));
}

}  // namespace detail

inline Solution solve(const LinearProgram& lp, const SolveOptions& opt = {}) {
    Solution sol;
    if (opt.equilibrate) {
        detail::Scaling s = detail::equilibrate(lp);
        LinearProgram scaled = detail::scaled_copy(lp, s);
        sol = opt.solver == SolverChoice::Reference ? ReferenceSimplex(scaled).solve()
                                                    : RevisedSimplex(scaled).solve();
        if (sol.status == SolveStatus::Optimal) {
            for (std::size_t j = 0; j < sol.primal.size(); ++j) sol.primal[j] *= s.col[j];
            for (std::size_t i = 0; i < sol.dual.size(); ++i) sol.dual[i] *= s.row[i];
            for (std::size_t j = 0; j < sol.reduced_cost.size(); ++j)
                sol.reduced_cost[j] /= s.col[j];
            std::vector<double> terms(lp.num_variables());
            for (std::size_t j = 0; j < lp.num_variables(); ++j)
                terms[j] = lp.variables()[j].cost * sol.primal[j];
            sol.objective = kahan_sum(terms);
        }
    } else {
        sol = opt.solver == SolverChoice::Reference ? ReferenceSimplex(lp).solve()
                                                    : RevisedSimplex(lp).solve();
    }
    detail::audit(lp, sol, opt.tolerance);
    return sol;
}

/// Deterministic dense-tableau oracle for small instances (Bland's rule,
/// bit-identical reruns). Throws when the instance exceeds the size cap.
inline Solution reference_simplex(const LinearProgram& lp, std::size_t cap = 5000) {
    if (lp.num_variables() > cap)
        throw LpError("reference simplex size cap exceeded: " +
                      std::to_string(lp.num_variables()) + " > " + std::to_string(cap));
    SolveOptions opt;
    opt.solver = SolverChoice::Reference;
    return solve(lp, opt);
}

}  // namespace merit
