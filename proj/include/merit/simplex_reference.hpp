#pragma once

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "merit/lp.hpp"

namespace merit {

/// Dense bounded-variable tableau simplex, two-phase, Bland's rule.
/// Deterministic: identical input gives a bit-identical Solution. Intended
/// as the small-instance oracle; cost per pivot is O(rows * columns).
class ReferenceSimplex {
public:
    explicit ReferenceSimplex(const LinearProgram& lp, double tol = 1e-9) : lp_(lp), tol_(tol) {}

    Solution solve() {
        canonicalize();
        init_basis();
        Solution out;

        // phase 1: drive artificial variables to zero
        if (nart_ > 0) {
            load_costs(true);
            if (!iterate(out)) return out;
            double infeas = 0.0;
            for (int i = 0; i < m_; ++i)
                if (basis_[i] >= width_ - nart_) infeas += std::abs(beta_[i]);
            if (infeas > 1e-7) {
                out.status = SolveStatus::Infeasible;
                for (int i = 0; i < m_; ++i)
                    if (basis_[i] >= width_ - nart_ && std::abs(beta_[i]) > 1e-7)
                        out.conflict.push_back(lp_.constraints()[art_row_[basis_[i] - (width_ - nart_)]].tag);
                return out;
            }
            for (int j = width_ - nart_; j < width_; ++j) lo_[j] = hi_[j] = 0.0;
        }

        load_costs(false);
        if (!iterate(out)) return out;
        extract(out);
        return out;
    }

private:
    const LinearProgram& lp_;
    double tol_;

    int m_ = 0, n_ = 0, nart_ = 0, width_ = 0;
    std::vector<double> tab_;    // m_ x width_, row-major: B^-1 * A
    std::vector<double> zrow_;   // reduced costs for current phase
    std::vector<double> beta_;   // values of basic variables
    std::vector<double> cost_;   // phase-2 costs per column
    std::vector<double> lo_, hi_;
    std::vector<int> basis_;     // row -> column
    std::vector<signed char> state_;  // 0 nonbasic at lower, 1 at upper, 2 basic
    std::vector<double> nbval_;  // value of nonbasic variable
    std::vector<bool> flip_;     // row negated during canonicalization
    std::vector<int> art_row_;   // artificial k -> row
    long iters_ = 0;

    double* row(int i) { return tab_.data() + static_cast<std::size_t>(i) * width_; }

    void canonicalize() {
        m_ = static_cast<int>(lp_.num_constraints());
        n_ = static_cast<int>(lp_.num_variables());
        flip_.assign(m_, false);

        // first pass: initial nonbasic point and row activities, to size artificials
        std::vector<double> x0(n_);
        for (int j = 0; j < n_; ++j) {
            const auto& v = lp_.variables()[j];
            if (v.bounds.lower == -kInf && v.bounds.upper == kInf)
                throw LpError("free variable unsupported: " + v.tag.str());
            x0[j] = std::isfinite(v.bounds.lower) ? v.bounds.lower : v.bounds.upper;
        }
        std::vector<signed char> art_sign(m_, 0);
        art_row_.clear();
        for (int i = 0; i < m_; ++i) {
            const auto& c = lp_.constraints()[i];
            flip_[i] = (c.sense == Sense::GreaterEqual);
            double sgn = flip_[i] ? -1.0 : 1.0;
            double a = 0.0;
            for (const auto& e : c.row) a += sgn * e.coeff * x0[e.var];
            double rhs = sgn * c.rhs;
            double slo = 0.0, shi = (c.sense == Sense::Equal) ? 0.0 : kInf;
            double s = rhs - a;
            if (s > shi + tol_) {
                art_sign[i] = 1;
                art_row_.push_back(i);
            } else if (s < slo - tol_) {
                art_sign[i] = -1;
                art_row_.push_back(i);
            }
        }
        nart_ = static_cast<int>(art_row_.size());
        width_ = n_ + m_ + nart_;

        tab_.assign(static_cast<std::size_t>(m_) * width_, 0.0);
        lo_.assign(width_, 0.0);
        hi_.assign(width_, kInf);
        cost_.assign(width_, 0.0);
        state_.assign(width_, 0);
        nbval_.assign(width_, 0.0);
        beta_.assign(m_, 0.0);
        basis_.assign(m_, -1);

        for (int j = 0; j < n_; ++j) {
            const auto& v = lp_.variables()[j];
            lo_[j] = v.bounds.lower;
            hi_[j] = v.bounds.upper;
            cost_[j] = v.cost;
            if (std::isfinite(v.bounds.lower)) {
                state_[j] = 0;
                nbval_[j] = v.bounds.lower;
            } else {
                state_[j] = 1;
                nbval_[j] = v.bounds.upper;
            }
        }
        for (int i = 0; i < m_; ++i) {
            const auto& c = lp_.constraints()[i];
            double sgn = flip_[i] ? -1.0 : 1.0;
            for (const auto& e : c.row) row(i)[e.var] += sgn * e.coeff;
            int sj = n_ + i;
            row(i)[sj] = 1.0;
            lo_[sj] = 0.0;
            hi_[sj] = (c.sense == Sense::Equal) ? 0.0 : kInf;
        }
        for (int k = 0; k < nart_; ++k) {
            int i = art_row_[k];
            row(i)[n_ + m_ + k] = art_sign[i] > 0 ? 1.0 : -1.0;
            lo_[n_ + m_ + k] = 0.0;
            hi_[n_ + m_ + k] = kInf;
        }

        art_sign_.swap(art_sign);
        x0_.swap(x0);
    }

    std::vector<double> x0_;
    std::vector<signed char> art_sign_;

    void init_basis() {
        for (int i = 0; i < m_; ++i) {
            const auto& c = lp_.constraints()[i];
            double sgn = flip_[i] ? -1.0 : 1.0;
            double a = 0.0;
            for (const auto& e : c.row) a += sgn * e.coeff * x0_[e.var];
            double rhs = sgn * c.rhs;
            double s = rhs - a;
            int sj = n_ + i;
            if (art_sign_[i] == 0) {
                basis_[i] = sj;
                state_[sj] = 2;
                beta_[i] = s;
            } else {
                // logical parked at the violated bound, artificial takes the residual
                double sb = (art_sign_[i] > 0) ? hi_[sj] : lo_[sj];
                if (!std::isfinite(sb)) sb = 0.0;
                state_[sj] = (art_sign_[i] > 0 && std::isfinite(hi_[sj])) ? 1 : 0;
                nbval_[sj] = sb;
                int aj = -1;
                for (int k = 0; k < nart_; ++k)
                    if (art_row_[k] == i) aj = n_ + m_ + k;
                basis_[i] = aj;
                state_[aj] = 2;
                beta_[i] = static_cast<double>(art_sign_[i]) * (s - sb);
                if (art_sign_[i] < 0) {
                    // row scaled by -1 so the basic artificial has +1 coefficient
                    double* r = row(i);
                    for (int j = 0; j < width_; ++j) r[j] = -r[j];
                }
            }
        }
    }

    void load_costs(bool phase1) {
        zrow_.assign(width_, 0.0);
        std::vector<double> c(width_, 0.0);
        if (phase1) {
            for (int k = 0; k < nart_; ++k) c[n_ + m_ + k] = 1.0;
        } else {
            for (int j = 0; j < n_; ++j) c[j] = cost_[j];
        }
        for (int j = 0; j < width_; ++j) zrow_[j] = c[j];
        for (int i = 0; i < m_; ++i) {
            double cb = c[basis_[i]];
            if (cb == 0.0) continue;
            const double* r = row(i);
            for (int j = 0; j < width_; ++j) zrow_[j] -= cb * r[j];
        }
        phase1_ = phase1;
    }

    bool phase1_ = false;

    // returns false only on unbounded (phase 2); fills `out` in that case
    bool iterate(Solution& out) {
        const long limit = 400000L + 400L * (m_ + width_);
        while (true) {
            if (++iters_ > limit) throw LpError("simplex iteration limit exceeded");
            int enter = -1, dir = 0;
            for (int j = 0; j < width_; ++j) {
                if (state_[j] == 2 || lo_[j] == hi_[j]) continue;
                if (state_[j] == 0 && zrow_[j] < -tol_) {
                    enter = j;
                    dir = 1;
                    break;  // Bland: first eligible index
                }
                if (state_[j] == 1 && zrow_[j] > tol_) {
                    enter = j;
                    dir = -1;
                    break;
                }
            }
            if (enter < 0) return true;

            // ratio test
            double tbest = kInf;
            bool own = false;
            if (std::isfinite(lo_[enter]) && std::isfinite(hi_[enter])) {
                tbest = hi_[enter] - lo_[enter];
                own = true;
            }
            int leave = -1;
            for (int i = 0; i < m_; ++i) {
                double w = dir * row(i)[enter];
                double t;
                if (w > tol_)
                    t = (beta_[i] - lo_[basis_[i]]) / w;
                else if (w < -tol_)
                    t = (hi_[basis_[i]] - beta_[i]) / (-w);
                else
                    continue;
                if (t < -1e-11) t = 0.0;
                if (t < tbest - 1e-9) {
                    tbest = t;
                    leave = i;
                    own = false;
                }
            }
            if (leave >= 0) {
                // Bland tie-break: smallest basic variable index within tolerance
                for (int i = 0; i < m_; ++i) {
                    if (i == leave) continue;
                    double w = dir * row(i)[enter];
                    double t;
                    if (w > tol_)
                        t = (beta_[i] - lo_[basis_[i]]) / w;
                    else if (w < -tol_)
                        t = (hi_[basis_[i]] - beta_[i]) / (-w);
                    else
                        continue;
                    if (t <= tbest + 1e-9 && basis_[i] < basis_[leave]) leave = i;
                }
            }
            if (!own && leave < 0) {
                out.status = SolveStatus::Unbounded;
                if (enter < n_) out.conflict.push_back(lp_.variables()[enter].tag);
                out.iterations = iters_;
                return false;
            }

            double t = std::max(0.0, tbest);
            if (leave < 0) {
                // bound flip
                for (int i = 0; i < m_; ++i) beta_[i] -= dir * t * row(i)[enter];
                state_[enter] = state_[enter] == 0 ? 1 : 0;
                nbval_[enter] = state_[enter] == 0 ? lo_[enter] : hi_[enter];
                continue;
            }

            double entering_value = nbval_[enter] + dir * t;
            double w_r = dir * row(leave)[enter];
            int out_var = basis_[leave];
            for (int i = 0; i < m_; ++i)
                if (i != leave) beta_[i] -= dir * t * row(i)[enter];
            // leaving variable parks at the bound it reached
            if (w_r > 0.0) {
                state_[out_var] = 0;
                nbval_[out_var] = lo_[out_var];
            } else {
                state_[out_var] = 1;
                nbval_[out_var] = hi_[out_var];
            }
            basis_[leave] = enter;
            state_[enter] = 2;
            beta_[leave] = entering_value;

            // eliminate
            double piv = row(leave)[enter];
            double* pr = row(leave);
            double inv = 1.0 / piv;
            for (int j = 0; j < width_; ++j) pr[j] *= inv;
            pr[enter] = 1.0;
            for (int i = 0; i < m_; ++i) {
                if (i == leave) continue;
                double f = row(i)[enter];
                if (f == 0.0) continue;
                double* ri = row(i);
                for (int j = 0; j < width_; ++j) ri[j] -= f * pr[j];
                ri[enter] = 0.0;
            }
            double zf = zrow_[enter];
            if (zf != 0.0) {
                for (int j = 0; j < width_; ++j) zrow_[j] -= zf * pr[j];
                zrow_[enter] = 0.0;
            }
        }
    }

    void extract(Solution& out) {
        out.status = SolveStatus::Optimal;
        out.iterations = iters_;
        out.primal.assign(n_, 0.0);
        std::vector<double> xall(width_, 0.0);
        for (int j = 0; j < width_; ++j) xall[j] = nbval_[j];
        for (int i = 0; i < m_; ++i) xall[basis_[i]] = beta_[i];
        std::vector<double> terms;
        terms.reserve(n_);
        for (int j = 0; j < n_; ++j) {
            out.primal[j] = xall[j];
            terms.push_back(cost_[j] * xall[j]);
        }
        out.objective = kahan_sum(terms);
        out.dual.assign(m_, 0.0);
        out.reduced_cost.assign(n_, 0.0);
        for (int i = 0; i < m_; ++i) {
            double y = -zrow_[n_ + i];
            out.dual[i] = flip_[i] ? -y : y;
        }
        for (int j = 0; j < n_; ++j) out.reduced_cost[j] = zrow_[j];
    }
};

}  // namespace merit
