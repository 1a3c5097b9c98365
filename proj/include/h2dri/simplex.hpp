#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "h2dri/linear_model.hpp"

// Dense two-phase primal simplex with general variable bounds.
//
// Rows are converted to equalities with one slack each (<= gives s in
// [0,inf), = gives s fixed at 0, >= gives s in (-inf,0]); the initial basis
// is the slack set. Phase 1 drives the total bound violation of the basic
// variables to zero by minimizing it directly; phase 2 is the usual
// bounded-variable iteration with Dantzig pricing and a Bland fallback when
// degeneracy stalls progress. After optimality the basic values are
// recomputed from the original column data through a dense LU factorization,
// which removes the drift a long pivot sequence leaves in the tableau.

namespace h2dri {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

struct LpRow {
    std::vector<std::pair<int, double>> terms;  // (column, coefficient)
    Relation rel = Relation::Eq;
    double rhs = 0.0;
};

struct LpModel {
    std::vector<double> lb, ub, c;
    std::vector<LpRow> rows;

    int num_cols() const { return static_cast<int>(c.size()); }

    int add_col(double lo, double hi, double cost) {
        lb.push_back(lo);
        ub.push_back(hi);
        c.push_back(cost);
        return num_cols() - 1;
    }
};

struct LpResult {
    LpStatus status = LpStatus::IterLimit;
    std::vector<double> x;  // structural variables only
    double objective = 0.0;
    long iterations = 0;
    int most_violated_row = -1;  // set when Infeasible
};

namespace detail {

// Solves A y = d in place by LU with partial pivoting; returns false when A
// is numerically singular.
inline bool lu_solve(std::vector<std::vector<double>>& A, std::vector<double>& d) {
    const int n = static_cast<int>(A.size());
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i) {
            if (std::abs(A[i][k]) > std::abs(A[piv][k])) piv = i;
        }
        if (std::abs(A[piv][k]) < 1e-12) return false;
        std::swap(A[k], A[piv]);
        std::swap(d[k], d[piv]);
        for (int i = k + 1; i < n; ++i) {
            const double f = A[i][k] / A[k][k];
            if (f == 0.0) continue;
            A[i][k] = 0.0;
            for (int j = k + 1; j < n; ++j) A[i][j] -= f * A[k][j];
            d[i] -= f * d[k];
        }
    }
    for (int k = n - 1; k >= 0; --k) {
        double s = d[k];
        for (int j = k + 1; j < n; ++j) s -= A[k][j] * d[j];
        d[k] = s / A[k][k];
    }
    return true;
}

class Simplex {
public:
    explicit Simplex(const LpModel& model) : model_(model) {
        n_ = model.num_cols();
        m_ = static_cast<int>(model.rows.size());
        N_ = n_ + m_;
        lo_.assign(N_, 0.0);
        hi_.assign(N_, 0.0);
        cost_.assign(N_, 0.0);
        for (int j = 0; j < n_; ++j) {
            lo_[j] = model.lb[j];
            hi_[j] = model.ub[j];
            cost_[j] = model.c[j];
        }
        constexpr double inf = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m_; ++i) {
            switch (model.rows[i].rel) {
                case Relation::Le: lo_[n_ + i] = 0.0; hi_[n_ + i] = inf; break;
                case Relation::Eq: lo_[n_ + i] = 0.0; hi_[n_ + i] = 0.0; break;
                case Relation::Ge: lo_[n_ + i] = -inf; hi_[n_ + i] = 0.0; break;
            }
        }
        tab_.assign(m_, std::vector<double>(N_, 0.0));
        rhs_.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            for (const auto& [j, a] : model.rows[i].terms) tab_[i][j] += a;
            tab_[i][n_ + i] = 1.0;
            rhs_[i] = model.rows[i].rhs;
        }
        basis_.resize(m_);
        state_.assign(N_, State::AtLo);
        xval_.assign(N_, 0.0);
        for (int j = 0; j < N_; ++j) {
            if (std::isfinite(lo_[j])) {
                state_[j] = State::AtLo;
                xval_[j] = lo_[j];
            } else if (std::isfinite(hi_[j])) {
                state_[j] = State::AtUp;
                xval_[j] = hi_[j];
            } else {
                state_[j] = State::Free;
                xval_[j] = 0.0;
            }
        }
        for (int i = 0; i < m_; ++i) {
            basis_[i] = n_ + i;
            state_[n_ + i] = State::Basic;
        }
        refresh_basic_values();
    }

    LpResult run() {
        LpResult res;
        const long iter_limit = 20000 + 50L * N_;

        if (!iterate_phase1(iter_limit)) {
            res.iterations = iters_;
            if (iters_ >= iter_limit) {
                res.status = LpStatus::IterLimit;
                return res;
            }
            res.status = LpStatus::Infeasible;
            finish_point(res);
            res.most_violated_row = most_violated_original_row(res.x);
            return res;
        }
        const bool bounded = iterate_phase2(iter_limit);
        res.iterations = iters_;
        if (iters_ >= iter_limit) {
            res.status = LpStatus::IterLimit;
            return res;
        }
        if (!bounded) {
            res.status = LpStatus::Unbounded;
            return res;
        }
        refine_from_original();
        res.status = LpStatus::Optimal;
        finish_point(res);
        return res;
    }

private:
    enum class State : unsigned char { Basic, AtLo, AtUp, Free };

    static constexpr double kCostTol = 1e-9;
    static constexpr double kFeasTol = 1e-7;
    static constexpr double kPivotTol = 1e-10;

    const LpModel& model_;
    int n_ = 0, m_ = 0, N_ = 0;
    std::vector<double> lo_, hi_, cost_;
    std::vector<std::vector<double>> tab_;
    std::vector<double> rhs_;
    std::vector<int> basis_;
    std::vector<State> state_;
    std::vector<double> xval_;
    long iters_ = 0;
    bool bland_ = false;
    long degenerate_run_ = 0;

    bool is_fixed(int j) const { return lo_[j] == hi_[j] && std::isfinite(lo_[j]); }

    void refresh_basic_values() {
        for (int i = 0; i < m_; ++i) {
            double v = rhs_[i];
            const auto& row = tab_[i];
            for (int j = 0; j < N_; ++j) {
                if (state_[j] != State::Basic && xval_[j] != 0.0) v -= row[j] * xval_[j];
            }
            xval_[basis_[i]] = v;
        }
    }

    double violation(int i) const {
        const int b = basis_[i];
        const double v = xval_[b];
        if (v < lo_[b]) return lo_[b] - v;
        if (v > hi_[b]) return v - hi_[b];
        return 0.0;
    }

    double max_violation() const {
        double s = 0.0;
        for (int i = 0; i < m_; ++i) s = std::max(s, violation(i));
        return s;
    }

    // Phase-1 gradient of the total violation with respect to nonbasic j.
    void phase1_gradient(std::vector<double>& g) const {
        g.assign(N_, 0.0);
        for (int i = 0; i < m_; ++i) {
            const int b = basis_[i];
            double w = 0.0;
            if (xval_[b] < lo_[b] - kFeasTol) w = 1.0;       // below: d(lo-x)/dxj = +a_ij
            else if (xval_[b] > hi_[b] + kFeasTol) w = -1.0;  // above: d(x-hi)/dxj = -a_ij
            if (w == 0.0) continue;
            const auto& row = tab_[i];
            for (int j = 0; j < N_; ++j) g[j] += w * row[j];
        }
    }

    void phase2_reduced_costs(std::vector<double>& z) const {
        z = cost_;
        for (int i = 0; i < m_; ++i) {
            const double cb = cost_[basis_[i]];
            if (cb == 0.0) continue;
            const auto& row = tab_[i];
            for (int j = 0; j < N_; ++j) z[j] -= cb * row[j];
        }
    }

    // Picks the entering variable and its direction (+1 rising from lower,
    // -1 falling from upper). Returns -1 when no candidate passes the
    // optimality tolerance.
    int pick_entering(const std::vector<double>& d, int& direction) const {
        int best = -1;
        double best_score = kCostTol;
        for (int j = 0; j < N_; ++j) {
            if (state_[j] == State::Basic || is_fixed(j)) continue;
            int dir = 0;
            double score = 0.0;
            if (state_[j] == State::AtLo && d[j] < -kCostTol) {
                dir = +1;
                score = -d[j];
            } else if (state_[j] == State::AtUp && d[j] > kCostTol) {
                dir = -1;
                score = d[j];
            } else if (state_[j] == State::Free && std::abs(d[j]) > kCostTol) {
                dir = d[j] < 0 ? +1 : -1;
                score = std::abs(d[j]);
            }
            if (dir == 0) continue;
            if (bland_) {
                direction = dir;
                return j;  // smallest eligible index
            }
            if (score > best_score) {
                best_score = score;
                best = j;
                direction = dir;
            }
        }
        return best;
    }

    struct RatioHit {
        double t = std::numeric_limits<double>::infinity();
        int row = -1;          // -1 means the entering variable hits its own bound
        double to_value = 0.0; // bound the leaving variable lands on
    };

    // Walks the entering direction to the first blocking bound. In phase 1 a
    // basic variable outside its box blocks when it reaches the violated
    // bound, never while still outside it.
    RatioHit ratio_test(int enter, int dir, bool phase1) const {
        RatioHit hit;
        if (std::isfinite(hi_[enter]) && std::isfinite(lo_[enter])) {
            hit.t = hi_[enter] - lo_[enter];
        }
        for (int i = 0; i < m_; ++i) {
            const double a = tab_[i][enter];
            if (std::abs(a) < kPivotTol) continue;
            const int b = basis_[i];
            const double rate = -a * dir;  // d(x_b)/dt
            const double v = xval_[b];
            double t_i = std::numeric_limits<double>::infinity();
            double target = 0.0;
            if (phase1 && v < lo_[b] - kFeasTol) {
                if (rate > 0.0) { t_i = (lo_[b] - v) / rate; target = lo_[b]; }
            } else if (phase1 && v > hi_[b] + kFeasTol) {
                if (rate < 0.0) { t_i = (v - hi_[b]) / (-rate); target = hi_[b]; }
            } else if (rate > 0.0 && std::isfinite(hi_[b])) {
                t_i = std::max(hi_[b] - v, 0.0) / rate;
                target = hi_[b];
            } else if (rate < 0.0 && std::isfinite(lo_[b])) {
                t_i = std::max(v - lo_[b], 0.0) / (-rate);
                target = lo_[b];
            }
            if (!std::isfinite(t_i)) continue;
            t_i = std::max(t_i, 0.0);
            if (!std::isfinite(hit.t)) {
                hit.t = t_i;
                hit.row = i;
                hit.to_value = target;
                continue;
            }
            const double tol = 1e-9 * (1.0 + hit.t);
            if (t_i < hit.t - tol) {
                hit.t = t_i;
                hit.row = i;
                hit.to_value = target;
            } else if (t_i <= hit.t + tol && hit.row >= 0) {
                // near tie: Bland mode takes the smallest basis index,
                // otherwise prefer the numerically safer (larger) pivot
                const bool take = bland_ ? basis_[i] < basis_[hit.row]
                                         : std::abs(a) > std::abs(tab_[hit.row][enter]) + 1e-12;
                if (take) {
                    hit.row = i;
                    hit.to_value = target;
                    hit.t = std::min(hit.t, t_i);
                }
            }
        }
        return hit;
    }

    void pivot(int row, int col) {
        auto& prow = tab_[row];
        const double p = prow[col];
        const double inv = 1.0 / p;
        for (int j = 0; j < N_; ++j) prow[j] *= inv;
        prow[col] = 1.0;
        rhs_[row] *= inv;
        for (int i = 0; i < m_; ++i) {
            if (i == row) continue;
            const double f = tab_[i][col];
            if (f == 0.0) continue;
            auto& r = tab_[i];
            for (int j = 0; j < N_; ++j) r[j] -= f * prow[j];
            r[col] = 0.0;
            rhs_[i] -= f * rhs_[row];
        }
    }

    // One simplex step. Returns false when no entering candidate exists.
    bool step(bool phase1, const std::vector<double>& pricing) {
        int dir = 0;
        const int enter = pick_entering(pricing, dir);
        if (enter < 0) return false;
        ++iters_;

        const RatioHit hit = ratio_test(enter, dir, phase1);
        if (!std::isfinite(hit.t)) {
            if (phase1) return false;  // cannot happen with a bounded violation; treated as stall
            unbounded_ = true;
            return false;
        }
        if (hit.t <= 1e-12) {
            if (++degenerate_run_ > 2L * (m_ + N_)) bland_ = true;
        } else {
            degenerate_run_ = 0;
        }

        if (hit.row < 0) {
            // bound flip: the entering variable traverses its whole range
            state_[enter] = dir > 0 ? State::AtUp : State::AtLo;
            xval_[enter] = dir > 0 ? hi_[enter] : lo_[enter];
            refresh_basic_values();
            return true;
        }

        const int leave = basis_[hit.row];
        xval_[enter] += dir * hit.t;
        pivot(hit.row, enter);
        basis_[hit.row] = enter;
        state_[enter] = State::Basic;
        state_[leave] = (hit.to_value == hi_[leave] && std::isfinite(hi_[leave])) ? State::AtUp : State::AtLo;
        xval_[leave] = hit.to_value;
        refresh_basic_values();
        return true;
    }

    bool iterate_phase1(long iter_limit) {
        std::vector<double> g;
        while (iters_ < iter_limit) {
            if (max_violation() <= kFeasTol) return true;
            phase1_gradient(g);
            if (!step(true, g)) return max_violation() <= kFeasTol;
        }
        return false;
    }

    bool iterate_phase2(long iter_limit) {
        std::vector<double> z;
        unbounded_ = false;
        while (iters_ < iter_limit) {
            phase2_reduced_costs(z);
            if (!step(false, z)) return !unbounded_;
        }
        return true;  // limit handled by caller
    }

    // Re-solve B x_B = b - N x_N with original coefficients to clear
    // accumulated tableau roundoff.
    void refine_from_original() {
        std::vector<std::vector<double>> B(m_, std::vector<double>(m_, 0.0));
        std::vector<double> d(m_, 0.0);
        for (int i = 0; i < m_; ++i) d[i] = model_.rows[i].rhs;
        std::vector<int> col_of(N_, -1);
        for (int k = 0; k < m_; ++k) col_of[basis_[k]] = k;
        for (int i = 0; i < m_; ++i) {
            for (const auto& [j, a] : model_.rows[i].terms) {
                if (col_of[j] >= 0) {
                    B[i][col_of[j]] += a;
                } else if (xval_[j] != 0.0) {
                    d[i] -= a * xval_[j];
                }
            }
            const int s = n_ + i;  // slack column
            if (col_of[s] >= 0) {
                B[i][col_of[s]] += 1.0;
            } else if (xval_[s] != 0.0) {
                d[i] -= xval_[s];
            }
        }
        if (!lu_solve(B, d)) return;  // keep tableau values when B is ill-conditioned
        for (int k = 0; k < m_; ++k) xval_[basis_[k]] = d[k];
    }

    void finish_point(LpResult& res) const {
        res.x.assign(xval_.begin(), xval_.begin() + n_);
        double obj = 0.0;
        for (int j = 0; j < n_; ++j) obj += model_.c[j] * res.x[j];
        res.objective = obj;
    }

    int most_violated_original_row(const std::vector<double>& x) const {
        int worst = -1;
        double worst_v = 0.0;
        for (int i = 0; i < m_; ++i) {
            double lhs = 0.0;
            for (const auto& [j, a] : model_.rows[i].terms) lhs += a * x[j];
            const double r = lhs - model_.rows[i].rhs;
            double v = 0.0;
            switch (model_.rows[i].rel) {
                case Relation::Le: v = std::max(0.0, r); break;
                case Relation::Eq: v = std::abs(r); break;
                case Relation::Ge: v = std::max(0.0, -r); break;
            }
            if (v > worst_v) {
                worst_v = v;
                worst = i;
            }
        }
        return worst;
    }

    bool unbounded_ = false;
};

}  // namespace detail

inline LpResult solve_lp(const LpModel& model) {
    for (std::size_t j = 0; j < model.lb.size(); ++j) {
        if (model.lb[j] > model.ub[j]) {
            LpResult r;
            r.status = LpStatus::Infeasible;
            r.x.assign(model.lb.size(), 0.0);
            return r;
        }
    }
    detail::Simplex s(model);
    return s.run();
}

}  // namespace h2dri
