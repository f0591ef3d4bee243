#pragma once

#include <cassert>
#include <cstddef>
#include <set>

#include "crn/matrix.hpp"

namespace crn {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational objective;  // meaningful only when Optimal
    RatVec x;            // meaningful only when Optimal
};

namespace detail {

// Dense simplex tableau. Bland's rule (lowest index enters, lowest-index
// basic variable leaves on ratio ties) guarantees termination in exact
// arithmetic.
struct Tableau {
    std::size_t nvars = 0;
    std::vector<RatVec> rows;        // each row: nvars coefficients + rhs
    std::vector<std::size_t> basis;  // basis[i] = variable basic in row i

    Rational& rhs(std::size_t i) { return rows[i][nvars]; }

    void pivot(std::size_t l, std::size_t enter) {
        RatVec& pr = rows[l];
        Rational inv = Rational(1) / pr[enter];
        for (auto& v : pr) v *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == l || rows[i][enter] == 0) continue;
            Rational f = rows[i][enter];
            for (std::size_t j = 0; j <= nvars; ++j) rows[i][j] -= f * pr[j];
        }
        basis[l] = enter;
    }

    // Minimizes c over the allowed columns. Returns false on unboundedness.
    bool bland_minimize(const RatVec& c, const std::vector<bool>& allowed) {
        for (;;) {
            std::size_t enter = nvars;
            for (std::size_t j = 0; j < nvars && enter == nvars; ++j) {
                if (!allowed[j]) continue;
                Rational rc = c[j];
                for (std::size_t i = 0; i < rows.size(); ++i)
                    if (c[basis[i]] != 0 && rows[i][j] != 0) rc -= c[basis[i]] * rows[i][j];
                if (rc < 0) enter = j;
            }
            if (enter == nvars) return true;
            std::size_t leave = rows.size();
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][enter] <= 0) continue;
                Rational ratio = rhs(i) / rows[i][enter];
                if (leave == rows.size() || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows.size()) return false;
            pivot(leave, enter);
        }
    }

    Rational objective(const RatVec& c) const {
        Rational z = 0;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (c[basis[i]] != 0) z += c[basis[i]] * rows[i][nvars];
        return z;
    }
};

}  // namespace detail

// Minimizes c·x subject to A x = b, x >= 0. Two-phase, exact.
inline LpResult lp_minimize(const Mat& a, const RatVec& b, const RatVec& c) {
    const std::size_t m = a.rows(), n = a.cols();
    if (b.size() != m || c.size() != n) throw std::invalid_argument("lp_minimize: shape mismatch");

    detail::Tableau t;
    t.nvars = n + m;  // original variables + one artificial per row
    t.rows.assign(m, RatVec(t.nvars + 1, Rational(0)));
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        int s = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = s * a(i, j);
        t.rows[i][n + i] = 1;
        t.rows[i][t.nvars] = s * b[i];
        t.basis[i] = n + i;
    }

    RatVec phase1(t.nvars, Rational(0));
    for (std::size_t j = n; j < t.nvars; ++j) phase1[j] = 1;
    std::vector<bool> all(t.nvars, true);
    bool bounded = t.bland_minimize(phase1, all);
    assert(bounded);
    (void)bounded;
    if (t.objective(phase1) > 0) return {LpStatus::Infeasible, Rational(0), {}};

    // Drive remaining zero-level artificials out of the basis; a row where
    // that is impossible is redundant and gets dropped.
    for (std::size_t i = t.rows.size(); i-- > 0;) {
        if (t.basis[i] < n) continue;
        std::size_t j = 0;
        while (j < n && t.rows[i][j] == 0) ++j;
        if (j < n) {
            t.pivot(i, j);
        } else {
            t.rows.erase(t.rows.begin() + i);
            t.basis.erase(t.basis.begin() + i);
        }
    }

    RatVec phase2(t.nvars, Rational(0));
    for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
    std::vector<bool> allowed(t.nvars, false);
    for (std::size_t j = 0; j < n; ++j) allowed[j] = true;
    if (!t.bland_minimize(phase2, allowed)) return {LpStatus::Unbounded, Rational(0), {}};

    LpResult r;
    r.status = LpStatus::Optimal;
    r.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (t.basis[i] < n) r.x[t.basis[i]] = t.rows[i][t.nvars];
    r.objective = dot(c, r.x);
    return r;
}

// Searches for u with u_i = 0 off `support`, u >= 0, u != 0 and Aᵀu = 0.
// Runs the exact feasibility LP: maximize Σ_{ i in support } u_i subject to
// Aᵀu = 0 and 0 <= u_i <= 1; a certificate exists iff the optimum is
// positive. Absence is definitive. The returned vector is scaled primitive.
inline std::optional<RatVec> nonneg_kernel_certificate(const Mat& a,
                                                       const std::vector<std::size_t>& support) {
    std::set<std::size_t> uniq(support.begin(), support.end());
    if (uniq.empty()) throw std::invalid_argument("nonneg_kernel_certificate: empty support");
    for (auto i : uniq)
        if (i >= a.rows()) throw std::invalid_argument("nonneg_kernel_certificate: support index out of range");
    std::vector<std::size_t> idx(uniq.begin(), uniq.end());
    const std::size_t k = idx.size(), m = a.cols();

    // Variables: u_0..u_{k-1}, then box slacks s_0..s_{k-1}.
    Mat e(m + k, 2 * k);
    RatVec f(m + k, Rational(0));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t tt = 0; tt < k; ++tt) e(j, tt) = a(idx[tt], j);
    for (std::size_t tt = 0; tt < k; ++tt) {
        e(m + tt, tt) = 1;
        e(m + tt, k + tt) = 1;
        f[m + tt] = 1;
    }
    RatVec cost(2 * k, Rational(0));
    for (std::size_t tt = 0; tt < k; ++tt) cost[tt] = -1;

    LpResult r = lp_minimize(e, f, cost);
    assert(r.status == LpStatus::Optimal);  // feasible at u = 0 and bounded by the box
    if (r.status != LpStatus::Optimal || r.objective == 0) return std::nullopt;

    RatVec u(a.rows(), Rational(0));
    for (std::size_t tt = 0; tt < k; ++tt) u[idx[tt]] = r.x[tt];
    return primitive_ray(u);
}

}  // namespace crn
