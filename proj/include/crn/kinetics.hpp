#pragma once

#include <Eigen/Dense>
#include <limits>

#include "crn/dsr.hpp"
#include "crn/network.hpp"
#include "crn/order.hpp"
#include "crn/rng.hpp"

namespace crn {

using DVec = Eigen::VectorXd;
using DMat = Eigen::MatrixXd;

inline DMat to_double(const Mat& m) {
    DMat d(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = rat_to_double(m(i, j));
    return d;
}

inline Mat rationalize(const DMat& d) {
    Mat m(d.rows(), d.cols());
    for (Eigen::Index i = 0; i < d.rows(); ++i)
        for (Eigen::Index j = 0; j < d.cols(); ++j) m(i, j) = rat_of_double(d(i, j));
    return m;
}

inline RatVec rationalize(const DVec& d) {
    RatVec v(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) v[i] = rat_of_double(d(i));
    return v;
}

enum class RateKind { MassAction, PowerLaw };

struct ReactionRate {
    RateKind kind = RateKind::MassAction;
    double k_forward = 1.0;
    double k_reverse = 0.0;  // meaningful for reversible reactions only
    std::map<std::size_t, double> left_exponents;
    std::map<std::size_t, double> right_exponents;
};

// Reaction rates satisfying the kinetic assumptions by construction: each
// direction is a product of positive powers of its own reactants, so a
// reaction stalls exactly when a reactant is absent and speeds up in each
// reactant. Evaluation is pure and reentrant.
struct RateFunction {
    Network net;
    std::vector<ReactionRate> rates;

    double rate_of(std::size_t j, const DVec& x) const {
        const ReactionRate& rr = rates[j];
        double forward = rr.k_forward;
        for (const auto& [i, e] : rr.left_exponents) forward *= std::pow(x[i], e);
        double v = forward;
        if (net.reactions[j].reversible) {
            double backward = rr.k_reverse;
            for (const auto& [i, e] : rr.right_exponents) backward *= std::pow(x[i], e);
            v -= backward;
        }
        return v;
    }

    DVec operator()(const DVec& x) const {
        DVec v(net.m());
        for (std::size_t j = 0; j < net.m(); ++j) v[j] = rate_of(j, x);
        return v;
    }

    // One direction's contribution to dv_j/dx_i: k * d/dx_i prod x_l^{e_l}.
    // At x_i = 0 the monomial derivative is 0 for e > 1, the reduced product
    // for e = 1, and +infinity for e < 1 (unless another factor vanishes).
    static double monomial_partial(double k, const std::map<std::size_t, double>& exponents,
                                   const DVec& x, std::size_t i) {
        auto it = exponents.find(i);
        if (it == exponents.end()) return 0.0;
        double e = it->second;
        double others = k;
        for (const auto& [l, el] : exponents) {
            if (l == i) continue;
            others *= std::pow(x[l], el);
        }
        if (others == 0.0) return 0.0;
        if (x[i] > 0.0) return others * e * std::pow(x[i], e - 1.0);
        if (e > 1.0) return 0.0;
        if (e == 1.0) return others;
        return std::numeric_limits<double>::infinity();  // e < 1 at the boundary
    }

    // Analytic m x n derivative of v; no finite differences.
    DMat dv(const DVec& x) const {
        DMat d = DMat::Zero(net.m(), net.n());
        for (std::size_t j = 0; j < net.m(); ++j) {
            const ReactionRate& rr = rates[j];
            for (const auto& [i, e] : rr.left_exponents)
                d(j, i) = monomial_partial(rr.k_forward, rr.left_exponents, x, i);
            if (net.reactions[j].reversible)
                for (const auto& [i, e] : rr.right_exponents)
                    d(j, i) = -monomial_partial(rr.k_reverse, rr.right_exponents, x, i);
        }
        return d;
    }
};

inline RateFunction make_mass_action(const Network& net, const std::vector<double>& k_forward,
                                     const std::vector<double>& k_reverse) {
    if (k_forward.size() != net.m() || k_reverse.size() != net.m())
        throw std::invalid_argument("make_mass_action: one rate constant per reaction required");
    RateFunction rf;
    rf.net = net;
    rf.rates.resize(net.m());
    for (std::size_t j = 0; j < net.m(); ++j) {
        ReactionRate& rr = rf.rates[j];
        rr.kind = RateKind::MassAction;
        if (k_forward[j] <= 0) throw std::invalid_argument("make_mass_action: nonpositive forward rate");
        rr.k_forward = k_forward[j];
        if (net.reactions[j].reversible) {
            if (k_reverse[j] <= 0) throw std::invalid_argument("make_mass_action: nonpositive reverse rate");
            rr.k_reverse = k_reverse[j];
        }
        for (const auto& [i, c] : net.reactions[j].left) rr.left_exponents[i] = static_cast<double>(c);
        for (const auto& [i, c] : net.reactions[j].right) rr.right_exponents[i] = static_cast<double>(c);
    }
    return rf;
}

inline RateFunction make_mass_action(const Network& net, double k = 1.0) {
    return make_mass_action(net, std::vector<double>(net.m(), k), std::vector<double>(net.m(), k));
}

// Random admissible kinetics: per-species exponents in [1/2, 3] and rate
// constants in [1/2, 2], drawn deterministically from the seed.
inline RateFunction make_power_law(const Network& net, std::uint64_t seed) {
    RateFunction rf;
    rf.net = net;
    rf.rates.resize(net.m());
    Rng rng(seed);
    for (std::size_t j = 0; j < net.m(); ++j) {
        ReactionRate& rr = rf.rates[j];
        rr.kind = RateKind::PowerLaw;
        rr.k_forward = rng.uniform(0.5, 2.0);
        rr.k_reverse = rng.uniform(0.5, 2.0);  // drawn for determinism even if unused
        for (const auto& [i, c] : net.reactions[j].left) rr.left_exponents[i] = rng.uniform(0.5, 3.0);
        for (const auto& [i, c] : net.reactions[j].right) rr.right_exponents[i] = rng.uniform(0.5, 3.0);
    }
    return rf;
}

// Dv plus the composed Jacobian of the vector field x' = Gamma v(x).
struct JacobianPair {
    DMat dv;        // m x n
    DMat jacobian;  // n x n, Gamma * Dv
};

inline JacobianPair jacobian(const RateFunction& rf, const Mat& gamma, const DVec& x) {
    JacobianPair jp;
    jp.dv = rf.dv(x);
    jp.jacobian = to_double(gamma) * jp.dv;
    return jp;
}

// Sign-class membership for floating matrices (infinities carry their sign;
// NaN fails).
inline bool matches_Q0(const DMat& x, const SignPattern& p) {
    if (static_cast<std::size_t>(x.rows()) != p.rows || static_cast<std::size_t>(x.cols()) != p.cols)
        throw std::invalid_argument("matches_Q0: dimension mismatch");
    for (std::size_t i = 0; i < p.rows; ++i)
        for (std::size_t j = 0; j < p.cols; ++j) {
            double v = x(i, j);
            if (std::isnan(v)) return false;
            if (p(i, j) > 0 && v < 0) return false;
            if (p(i, j) < 0 && v > 0) return false;
            if (p(i, j) == 0 && v != 0) return false;
        }
    return true;
}

inline bool matches_Q(const DMat& x, const SignPattern& p) {
    if (static_cast<std::size_t>(x.rows()) != p.rows || static_cast<std::size_t>(x.cols()) != p.cols)
        throw std::invalid_argument("matches_Q: dimension mismatch");
    for (std::size_t i = 0; i < p.rows; ++i)
        for (std::size_t j = 0; j < p.cols; ++j) {
            double v = x(i, j);
            if (std::isnan(v)) return false;
            int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
            if (s != p(i, j)) return false;
        }
    return true;
}

// The quasipositivity test in pullback coordinates: with J = Gamma Dv and
// Gamma = Lambda Theta, J maps Lambda z to Lambda (M z) for M = Theta Dv
// Lambda, so J + aI preserves K(Lambda) for large a exactly when M is Metzler
// (off-diagonal entries nonnegative), and cone-irreducibility is strong
// connectivity of M's off-diagonal digraph. Computed in exact rationals from
// the snapped Dv so the answers are certificates, not float comparisons.
struct MetzlerResult {
    bool quasipositive = false;
    bool irreducible = false;
    Mat pulled_back;  // M, r x r
};

inline MetzlerResult pullback_metzler_check(const Factorization& f, const DMat& dv) {
    if (static_cast<std::size_t>(dv.rows()) != f.theta.cols() ||
        static_cast<std::size_t>(dv.cols()) != f.lambda.rows())
        throw std::invalid_argument("pullback_metzler_check: Dv has wrong shape");
    Mat m = f.theta * rationalize(dv) * f.lambda;
    const std::size_t r = m.rows();

    bool metzler = true;
    for (std::size_t i = 0; i < r && metzler; ++i)
        for (std::size_t j = 0; j < r && metzler; ++j)
            if (i != j && m(i, j) < 0) metzler = false;

    // Strong connectivity of the off-diagonal nonzero digraph.
    std::vector<std::vector<std::size_t>> adj(r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (i != j && m(i, j) != 0) adj[i].push_back(j);
    auto reaches_all = [&](const std::vector<std::vector<std::size_t>>& g) {
        std::vector<bool> seen(r, false);
        std::vector<std::size_t> todo{0};
        seen[0] = true;
        while (!todo.empty()) {
            std::size_t v = todo.back();
            todo.pop_back();
            for (auto w : g[v])
                if (!seen[w]) {
                    seen[w] = true;
                    todo.push_back(w);
                }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    };
    bool irr = true;
    if (r > 1) {
        std::vector<std::vector<std::size_t>> rev(r);
        for (std::size_t i = 0; i < r; ++i)
            for (auto j : adj[i]) rev[j].push_back(i);
        irr = reaches_all(adj) && reaches_all(rev);
    }
    return {metzler, irr, std::move(m)};
}

// Samples the closed orthant (interior plus every coordinate hyperplane) and
// checks all clauses of the kinetic assumptions. Returns human-readable
// descriptions of any violations; an empty result certifies the sampled
// points.
inline std::vector<std::string> validate_kinetics(const RateFunction& rf, const Mat& gamma,
                                                  std::uint64_t seed, int interior_samples = 40) {
    std::vector<std::string> bad;
    const std::size_t n = rf.net.n(), m = rf.net.m();
    SignPattern pattern = sign_pattern(-gamma.transpose());
    Rng rng(seed);

    auto check_point = [&](const DVec& x, const std::string& where) {
        DVec v = rf(x);
        DMat dv = rf.dv(x);
        if (!matches_Q0(dv, pattern)) bad.push_back("K1 violated " + where);
        for (std::size_t j = 0; j < m; ++j) {
            const Reaction& r = rf.net.reactions[j];
            bool left_zero = std::any_of(r.left.begin(), r.left.end(),
                                         [&](const auto& p) { return x[p.first] == 0.0; });
            bool right_zero = std::any_of(r.right.begin(), r.right.end(),
                                          [&](const auto& p) { return x[p.first] == 0.0; });
            std::string rj = "reaction " + std::to_string(j) + " " + where;
            if (!r.reversible) {
                if (v[j] < 0) bad.push_back("K2(i) sign violated at " + rj);
                if ((v[j] == 0) != left_zero) bad.push_back("K2(i) vanishing clause violated at " + rj);
                if (!left_zero)
                    for (const auto& [i, c] : r.left)
                        if (!(dv(j, i) > 0)) bad.push_back("K2(ii) violated at " + rj);
            } else {
                if (left_zero && v[j] > 0) bad.push_back("K3(i) violated (left) at " + rj);
                if (right_zero && v[j] < 0) bad.push_back("K3(i) violated (right) at " + rj);
                if (left_zero && ((v[j] < 0) != !right_zero))
                    bad.push_back("K3(ii) violated (left) at " + rj);
                if (right_zero && ((v[j] > 0) != !left_zero))
                    bad.push_back("K3(ii) violated (right) at " + rj);
                if (!left_zero)
                    for (const auto& [i, c] : r.left)
                        if (!(dv(j, i) > 0)) bad.push_back("K3(iii) violated (left) at " + rj);
                if (!right_zero)
                    for (const auto& [i, c] : r.right)
                        if (!(dv(j, i) < 0)) bad.push_back("K3(iii) violated (right) at " + rj);
            }
        }
    };

    for (int t = 0; t < interior_samples; ++t) {
        DVec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = rng.uniform(0.05, 2.5);
        check_point(x, "at an interior point");
    }
    for (std::size_t z = 0; z < n; ++z) {
        for (int t = 0; t < 4; ++t) {
            DVec x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = rng.uniform(0.05, 2.5);
            x[z] = 0.0;
            check_point(x, "on hyperplane x_" + std::to_string(z) + " = 0");
            // Also a second zero to exercise the vacuous branches.
            DVec y = x;
            y[rng.below(n)] = 0.0;
            check_point(y, "on a two-coordinate face");
        }
    }
    return bad;
}

}  // namespace crn
