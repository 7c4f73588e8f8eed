#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "merit/lp.hpp"

namespace merit {

/// Sparse bounded-variable revised simplex. LU factorization of the basis
/// (left-looking, partial pivoting), product-form eta updates between
/// refactorizations, Dantzig pricing with a Bland fallback on stalls.
/// Deterministic; independent of ReferenceSimplex except for the LP struct.
class RevisedSimplex {
public:
    explicit RevisedSimplex(const LinearProgram& lp, double tol = 1e-9) : lp_(lp), tol_(tol) {}

    Solution solve() {
        build();
        init_basis();
        Solution out;
        if (nart_ > 0) {
            phase1_ = true;
            if (!optimize(out)) return out;
            double infeas = 0.0;
            for (int i = 0; i < m_; ++i)
                if (basis_[i] >= first_art_) infeas += std::abs(beta_[i]);
            if (infeas > 1e-7) {
                out.status = SolveStatus::Infeasible;
                for (int i = 0; i < m_; ++i)
                    if (basis_[i] >= first_art_ && std::abs(beta_[i]) > 1e-7)
                        out.conflict.push_back(lp_.constraints()[art_home_[basis_[i] - first_art_]].tag);
                return out;
            }
            for (int j = first_art_; j < ncol_; ++j) lo_[j] = hi_[j] = 0.0;
        }
        phase1_ = false;
        factorize();
        recompute_beta();
        if (!optimize(out)) return out;
        extract(out);
        return out;
    }

private:
    const LinearProgram& lp_;
    double tol_;

    int m_ = 0, n_ = 0, ncol_ = 0, first_art_ = 0, nart_ = 0;
    std::vector<int> cp_, ri_;      // CSC column pointers / row indices
    std::vector<double> cv_;        // CSC values
    std::vector<double> cost_, lo_, hi_, b_;
    std::vector<bool> flip_;
    std::vector<int> art_home_;     // artificial k -> row

    std::vector<int> basis_;            // slot -> column
    std::vector<signed char> state_;    // 0 at lower, 1 at upper, 2 basic
    std::vector<double> nbval_;         // nonbasic values
    std::vector<double> beta_;          // basic values by slot
    bool phase1_ = false;
    long iters_ = 0;
    int cursor_ = 0;  // partial-pricing scan position

    // LU factors of the basis: L unit lower, U upper, in pivot order
    struct Ent {
        int idx;
        double v;
    };
    std::vector<std::vector<Ent>> lcol_, ucol_;  // lcol by original row, ucol by slot
    std::vector<double> udiag_;
    std::vector<int> rowof_, pivpos_;
    struct Eta {
        int slot;
        double pivot;
        std::vector<Ent> rest;  // slot-indexed, excluding the pivot slot
    };
    std::vector<Eta> etas_;

    double colcost(int j) const {
        if (phase1_) return j >= first_art_ ? 1.0 : 0.0;
        return cost_[j];
    }

    void build() {
        m_ = static_cast<int>(lp_.num_constraints());
        n_ = static_cast<int>(lp_.num_variables());
        flip_.assign(m_, false);
        b_.assign(m_, 0.0);

        int nstruct_logical = n_ + m_;
        cp_.assign(nstruct_logical + 1, 0);
        std::size_t nnz = 0;
        for (const auto& c : lp_.constraints()) nnz += c.row.size();
        // build CSC by counting per column
        std::vector<int> cnt(nstruct_logical, 0);
        for (const auto& c : lp_.constraints())
            for (const auto& e : c.row) ++cnt[e.var];
        for (int i = 0; i < m_; ++i) cnt[n_ + i] = 1;
        for (int j = 0; j < nstruct_logical; ++j) cp_[j + 1] = cp_[j] + cnt[j];
        ri_.assign(cp_[nstruct_logical], 0);
        cv_.assign(cp_[nstruct_logical], 0.0);
        std::vector<int> fill(cp_.begin(), cp_.end() - 1);
        for (int i = 0; i < m_; ++i) {
            const auto& c = lp_.constraints()[i];
            flip_[i] = (c.sense == Sense::GreaterEqual);
            double sgn = flip_[i] ? -1.0 : 1.0;
            b_[i] = sgn * c.rhs;
            for (const auto& e : c.row) {
                int p = fill[e.var]++;
                ri_[p] = i;
                cv_[p] = sgn * e.coeff;
            }
            int p = fill[n_ + i]++;
            ri_[p] = i;
            cv_[p] = 1.0;
        }
        // duplicate row entries for the same variable: merge
        merge_duplicates();

        cost_.assign(nstruct_logical, 0.0);
        lo_.assign(nstruct_logical, 0.0);
        hi_.assign(nstruct_logical, kInf);
        for (int j = 0; j < n_; ++j) {
            const auto& v = lp_.variables()[j];
            if (v.bounds.lower == -kInf && v.bounds.upper == kInf)
                throw LpError("free variable unsupported: " + v.tag.str());
            cost_[j] = v.cost;
            lo_[j] = v.bounds.lower;
            hi_[j] = v.bounds.upper;
        }
        for (int i = 0; i < m_; ++i) {
            int j = n_ + i;
            lo_[j] = 0.0;
            hi_[j] = lp_.constraints()[i].sense == Sense::Equal ? 0.0 : kInf;
        }
        ncol_ = first_art_ = nstruct_logical;
        nart_ = 0;
    }

    void merge_duplicates() {
        // within each column, sum entries that share a row index
        std::vector<int> last(m_, -1);
        std::vector<int> ncp{0};
        std::vector<int> nri;
        std::vector<double> ncv;
        nri.reserve(ri_.size());
        ncv.reserve(cv_.size());
        int ncols = static_cast<int>(cp_.size()) - 1;
        for (int j = 0; j < ncols; ++j) {
            int start = static_cast<int>(nri.size());
            for (int p = cp_[j]; p < cp_[j + 1]; ++p) {
                int r = ri_[p];
                if (last[r] >= start) {
                    ncv[last[r]] += cv_[p];
                } else {
                    last[r] = static_cast<int>(nri.size());
                    nri.push_back(r);
                    ncv.push_back(cv_[p]);
                }
            }
            ncp.push_back(static_cast<int>(nri.size()));
        }
        cp_.swap(ncp);
        ri_.swap(nri);
        cv_.swap(ncv);
    }

    void append_artificial(int row, double sgn) {
        cp_.push_back(cp_.back() + 1);
        ri_.push_back(row);
        cv_.push_back(sgn);
        cost_.push_back(0.0);
        lo_.push_back(0.0);
        hi_.push_back(kInf);
        art_home_.push_back(row);
        ++ncol_;
        ++nart_;
    }

    void init_basis() {
        state_.assign(ncol_, 0);
        nbval_.assign(ncol_, 0.0);
        for (int j = 0; j < ncol_; ++j) {
            if (std::isfinite(lo_[j])) {
                state_[j] = 0;
                nbval_[j] = lo_[j];
            } else {
                state_[j] = 1;
                nbval_[j] = hi_[j];
            }
        }
        std::vector<double> act(m_, 0.0);
        for (int j = 0; j < n_; ++j) {
            if (nbval_[j] == 0.0) continue;
            for (int p = cp_[j]; p < cp_[j + 1]; ++p) act[ri_[p]] += cv_[p] * nbval_[j];
        }
        basis_.assign(m_, -1);
        beta_.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            int sj = n_ + i;
            double s = b_[i] - act[i];
            if (s >= lo_[sj] - tol_ && s <= hi_[sj] + tol_) {
                basis_[i] = sj;
                state_[sj] = 2;
                beta_[i] = s;
            } else {
                double sb = (s > hi_[sj]) ? hi_[sj] : lo_[sj];
                state_[sj] = (s > hi_[sj]) ? 1 : 0;
                nbval_[sj] = sb;
                double viol = s - sb;
                append_artificial(i, viol > 0 ? 1.0 : -1.0);
                int aj = ncol_ - 1;
                basis_[i] = aj;
                state_.push_back(2);
                nbval_.push_back(0.0);
                beta_[i] = std::abs(viol);
            }
        }
        factorize();
    }

    // ---- LU machinery -------------------------------------------------

    std::vector<double> work_;
    std::vector<int> mark_, heapmark_, touched_;
    int epoch_ = 0;

    void factorize() {
        lcol_.assign(m_, {});
        ucol_.assign(m_, {});
        udiag_.assign(m_, 0.0);
        rowof_.assign(m_, -1);
        pivpos_.assign(m_, -1);
        etas_.clear();
        work_.assign(m_, 0.0);
        mark_.assign(m_, -1);        // row touched in current column
        heapmark_.assign(m_, -1);    // slot queued in current column
        epoch_ = 0;

        std::priority_queue<int, std::vector<int>, std::greater<int>> heap;
        for (int k = 0; k < m_; ++k) {
            ++epoch_;
            int col = basis_[k];
            touched_.clear();
            for (int p = cp_[col]; p < cp_[col + 1]; ++p) {
                int r = ri_[p];
                work_[r] = cv_[p];
                mark_[r] = epoch_;
                touched_.push_back(r);
            }
            for (int r : touched_)
                if (pivpos_[r] >= 0 && heapmark_[pivpos_[r]] != epoch_) {
                    heap.push(pivpos_[r]);
                    heapmark_[pivpos_[r]] = epoch_;
                }
            while (!heap.empty()) {
                int p = heap.top();
                heap.pop();
                double v = work_[rowof_[p]];
                if (std::abs(v) > 1e-14) {
                    ucol_[k].push_back(Ent{p, v});
                    for (const auto& e : lcol_[p]) {
                        if (mark_[e.idx] != epoch_) {
                            mark_[e.idx] = epoch_;
                            work_[e.idx] = 0.0;
                            touched_.push_back(e.idx);
                        }
                        work_[e.idx] -= e.v * v;
                        if (pivpos_[e.idx] >= 0 && heapmark_[pivpos_[e.idx]] != epoch_) {
                            heap.push(pivpos_[e.idx]);
                            heapmark_[pivpos_[e.idx]] = epoch_;
                        }
                    }
                }
                work_[rowof_[p]] = 0.0;
            }
            // pivot: largest magnitude among unassigned rows, smallest index on ties
            int prow = -1;
            double pmax = -1.0;
            for (int r : touched_) {
                if (pivpos_[r] >= 0) continue;
                double a = std::abs(work_[r]);
                if (a > pmax || (a == pmax && r < prow)) {
                    pmax = a;
                    prow = r;
                }
            }
            if (prow < 0 || pmax < 1e-11) throw LpError("singular basis in LU factorization");
            rowof_[k] = prow;
            pivpos_[prow] = k;
            udiag_[k] = work_[prow];
            for (int r : touched_) {
                if (r == prow || pivpos_[r] >= 0) {
                    work_[r] = 0.0;
                    continue;
                }
                if (std::abs(work_[r]) > 1e-14)
                    lcol_[k].push_back(Ent{r, work_[r] / udiag_[k]});
                work_[r] = 0.0;
            }
            work_[prow] = 0.0;
        }
    }

    /// x := B^-1 x ; input/output dense by original row, result by slot
    void ftran(std::vector<double>& xrow, std::vector<double>& zslot) const {
        for (int k = 0; k < m_; ++k) {
            double v = xrow[rowof_[k]];
            if (v == 0.0) continue;
            for (const auto& e : lcol_[k]) xrow[e.idx] -= e.v * v;
        }
        for (int k = m_ - 1; k >= 0; --k) {
            double v = xrow[rowof_[k]];
            if (v != 0.0) {
                v /= udiag_[k];
                for (const auto& e : ucol_[k]) xrow[rowof_[e.idx]] -= e.v * v;
            }
            zslot[k] = v;
            xrow[rowof_[k]] = 0.0;
        }
        for (const auto& eta : etas_) {
            double t = zslot[eta.slot] / eta.pivot;
            if (t != 0.0)
                for (const auto& e : eta.rest) zslot[e.idx] -= e.v * t;
            zslot[eta.slot] = t;
        }
    }

    /// y := B^-T c ; input dense by slot, output dense by original row
    void btran(std::vector<double>& cslot, std::vector<double>& yrow) const {
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double s = 0.0;
            for (const auto& e : it->rest) s += e.v * cslot[e.idx];
            cslot[it->slot] = (cslot[it->slot] - s) / it->pivot;
        }
        // U^T w = c (ascending), then L^T v = w (descending)
        for (int k = 0; k < m_; ++k) {
            double s = cslot[k];
            for (const auto& e : ucol_[k]) s -= e.v * cslot[e.idx];
            cslot[k] = s / udiag_[k];
        }
        for (int k = m_ - 1; k >= 0; --k) {
            double s = cslot[k];
            for (const auto& e : lcol_[k]) s -= e.v * cslot[pivpos_[e.idx]];
            cslot[k] = s;
        }
        for (int k = 0; k < m_; ++k) yrow[rowof_[k]] = cslot[k];
    }

    void recompute_beta() {
        std::vector<double> rhs(m_, 0.0);
        for (int i = 0; i < m_; ++i) rhs[i] = b_[i];
        for (int j = 0; j < ncol_; ++j) {
            if (state_[j] == 2 || nbval_[j] == 0.0) continue;
            for (int p = cp_[j]; p < cp_[j + 1]; ++p) rhs[ri_[p]] -= cv_[p] * nbval_[j];
        }
        std::vector<double> z(m_, 0.0);
        ftran(rhs, z);
        beta_ = z;
    }

    double current_objective() const {
        // plain sum is enough here: only used for stall detection
        double s = 0.0;
        for (int i = 0; i < m_; ++i) s += colcost(basis_[i]) * beta_[i];
        for (int j = 0; j < ncol_; ++j)
            if (state_[j] != 2 && nbval_[j] != 0.0) s += colcost(j) * nbval_[j];
        return s;
    }

    // returns false on unbounded (phase 2)
    bool optimize(Solution& out) {
        const long limit = 400000L + 400L * (m_ + ncol_);
        std::vector<double> cslot(m_), yrow(m_), colrow(m_, 0.0), w(m_);
        std::vector<int> wnz;
        wnz.reserve(m_);
        int stall = 0;
        bool bland = false;
        double obj_scale = 1.0 + std::abs(current_objective());
        int since_refactor = 0;

        while (true) {
            if (++iters_ > limit) throw LpError("simplex iteration limit exceeded");

            for (int i = 0; i < m_; ++i) cslot[i] = colcost(basis_[i]);
            std::fill(yrow.begin(), yrow.end(), 0.0);
            btran(cslot, yrow);

            int enter = -1, dir = 0;
            double best = tol_, chosen_d = 0.0;
            auto probe = [&](int j, bool take_first) {
                if (state_[j] == 2 || lo_[j] == hi_[j]) return false;
                double d = colcost(j);
                for (int p = cp_[j]; p < cp_[j + 1]; ++p) d -= cv_[p] * yrow[ri_[p]];
                double viol = 0.0;
                int dd = 0;
                if (state_[j] == 0 && d < -tol_) {
                    viol = -d;
                    dd = 1;
                } else if (state_[j] == 1 && d > tol_) {
                    viol = d;
                    dd = -1;
                } else {
                    return false;
                }
                if (take_first || viol > best) {
                    best = viol;
                    enter = j;
                    dir = dd;
                    chosen_d = viol;
                }
                return true;
            };
            if (bland) {
                // smallest eligible index guarantees finite termination
                for (int j = 0; j < ncol_ && enter < 0; ++j) probe(j, true);
            } else {
                // rotating partial pricing: settle for the best violation in
                // the first block that holds any eligible column
                const int block = std::max(1024, ncol_ / 64);
                int scanned = 0;
                while (scanned < ncol_) {
                    int take = std::min(block, ncol_ - cursor_);
                    for (int k = 0; k < take; ++k) probe(cursor_ + k, false);
                    cursor_ = (cursor_ + take) % ncol_;
                    scanned += take;
                    if (enter >= 0) break;
                }
            }
            if (enter < 0) return true;

            // ftran consumes and zeroes colrow, so no clear is needed here
            for (int p = cp_[enter]; p < cp_[enter + 1]; ++p) colrow[ri_[p]] = cv_[p];
            ftran(colrow, w);
            wnz.clear();
            for (int i = 0; i < m_; ++i)
                if (w[i] != 0.0) wnz.push_back(i);

            double tbest = kInf;
            bool own = false;
            if (std::isfinite(lo_[enter]) && std::isfinite(hi_[enter])) {
                tbest = hi_[enter] - lo_[enter];
                own = true;
            }
            int leave = -1;
            for (int i : wnz) {
                double wv = dir * w[i];
                double t;
                if (wv > tol_)
                    t = (beta_[i] - lo_[basis_[i]]) / wv;
                else if (wv < -tol_)
                    t = (hi_[basis_[i]] - beta_[i]) / (-wv);
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
                // stability tie-break: biggest pivot within tolerance of the min ratio
                double bestpiv = std::abs(w[leave]);
                for (int i : wnz) {
                    if (i == leave) continue;
                    double wv = dir * w[i];
                    double t;
                    if (wv > tol_)
                        t = (beta_[i] - lo_[basis_[i]]) / wv;
                    else if (wv < -tol_)
                        t = (hi_[basis_[i]] - beta_[i]) / (-wv);
                    else
                        continue;
                    if (t < 0) t = 0;
                    if (t <= tbest + 1e-9) {
                        double a = std::abs(w[i]);
                        if (a > bestpiv * (1.0 + 1e-12) || (a == bestpiv && i < leave)) {
                            bestpiv = a;
                            leave = i;
                        }
                    }
                }
            }
            if (!own && leave < 0) {
                out.status = SolveStatus::Unbounded;
                if (enter < n_) out.conflict.push_back(lp_.variables()[enter].tag);
                out.iterations = iters_;
                return false;
            }

            double t = std::max(0.0, std::min(tbest, kInf));
            if (leave < 0) {
                for (int i : wnz) beta_[i] -= dir * t * w[i];
                state_[enter] = state_[enter] == 0 ? 1 : 0;
                nbval_[enter] = state_[enter] == 0 ? lo_[enter] : hi_[enter];
            } else {
                if (std::abs(w[leave]) < 1e-9 && !etas_.empty()) {
                    // refresh factors rather than pivot on a doubtful element
                    factorize();
                    recompute_beta();
                    continue;
                }
                double entering_value = nbval_[enter] + dir * t;
                int out_var = basis_[leave];
                for (int i : wnz)
                    if (i != leave) beta_[i] -= dir * t * w[i];
                if (dir * w[leave] > 0.0) {
                    state_[out_var] = 0;
                    nbval_[out_var] = lo_[out_var];
                } else {
                    state_[out_var] = 1;
                    nbval_[out_var] = hi_[out_var];
                }
                basis_[leave] = enter;
                state_[enter] = 2;
                beta_[leave] = entering_value;

                Eta eta;
                eta.slot = leave;
                eta.pivot = w[leave];
                for (int i : wnz)
                    if (i != leave && std::abs(w[i]) > 1e-13) eta.rest.push_back(Ent{i, w[i]});
                etas_.push_back(std::move(eta));
                if (static_cast<int>(etas_.size()) >= 100 || ++since_refactor >= 100) {
                    factorize();
                    recompute_beta();
                    since_refactor = 0;
                }
            }

            // exact objective decrease of this iteration: |reduced cost| x step
            if (chosen_d * t > 1e-10 * obj_scale) {
                stall = 0;
                bland = false;
            } else if (++stall > 60) {
                bland = true;
            }
        }
    }

    void extract(Solution& out) {
        factorize();
        recompute_beta();
        out.status = SolveStatus::Optimal;
        out.iterations = iters_;
        out.primal.assign(n_, 0.0);
        std::vector<double> terms;
        terms.reserve(n_);
        for (int j = 0; j < n_; ++j) {
            double x = state_[j] == 2 ? 0.0 : nbval_[j];
            out.primal[j] = x;
        }
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) out.primal[basis_[i]] = beta_[i];
        for (int j = 0; j < n_; ++j) terms.push_back(cost_[j] * out.primal[j]);
        out.objective = kahan_sum(terms);

        std::vector<double> cslot(m_), yrow(m_, 0.0);
        for (int i = 0; i < m_; ++i) cslot[i] = colcost(basis_[i]);
        btran(cslot, yrow);
        out.dual.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) out.dual[i] = flip_[i] ? -yrow[i] : yrow[i];
        out.reduced_cost.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j) {
            double d = cost_[j];
            for (int p = cp_[j]; p < cp_[j + 1]; ++p) d -= cv_[p] * yrow[ri_[p]];
            out.reduced_cost[j] = d;
        }
    }
};

}  // namespace merit
