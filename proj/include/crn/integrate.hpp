#pragma once

#include <array>
#include <ostream>

#include <json.hpp>

#include "crn/kinetics.hpp"

namespace crn {

struct IntegrateOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    double h_initial = 1e-4;
    double h_min = 1e-13;
    double vector_field_sign = 1.0;  // -1 integrates the reversed field (negative controls)
    bool nonneg_guard = true;        // reject steps that leave the orthant
    bool clamp_tiny = true;          // snap coordinates below 1e-14 onto invariant-compatible faces
};

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(double t, DVec state, const std::string& msg)
        : std::runtime_error(msg + " at t = " + std::to_string(t)), time(t), state(std::move(state)) {}

    double time;
    DVec state;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DVec> states;
    std::vector<double> h_values;    // integral H at each sample; empty when no p_theta given
    std::vector<double> min_coords;  // smallest coordinate at each sample
    std::vector<double> step_sizes;  // step size in use at each sample
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;
};

inline std::vector<double> sample_grid(double t_end, std::size_t samples) {
    std::vector<double> ts(samples);
    for (std::size_t k = 0; k < samples; ++k) ts[k] = t_end * static_cast<double>(k + 1) / samples;
    return ts;
}

// Adaptive embedded Dormand-Prince 5(4) pair, integrating x' = Gamma v(x) and
// recording the state exactly at the requested sample times. A step whose
// result leaves the nonnegative orthant is rejected and retried at half the
// step; persistent rejection below h_min raises IntegrationError.
inline Trajectory integrate(const RateFunction& rf, const Mat& gamma, DVec x,
                            const std::vector<double>& sample_times, const IntegrateOptions& opts = {},
                            const RatVec* p_theta = nullptr) {
    static const double A[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
    };
    static const double B5[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
    static const double B4[7] = {5179.0 / 57600,  0.0,         7571.0 / 16695, 393.0 / 640,
                                 -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

    const std::size_t n = rf.net.n();
    if (static_cast<std::size_t>(x.size()) != n) throw std::invalid_argument("integrate: state length mismatch");
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (x[i] < 0) throw std::invalid_argument("integrate: initial state must be nonnegative");

    DMat gd = to_double(gamma);
    auto field = [&](const DVec& y) -> DVec { return opts.vector_field_sign * (gd * rf(y)); };
    // Fractional powers are undefined below the boundary, so internal stages
    // must stay in the orthant for power-law kinetics.
    bool fractional = std::any_of(rf.rates.begin(), rf.rates.end(),
                                  [](const ReactionRate& r) { return r.kind == RateKind::PowerLaw; });
    DVec p = DVec::Zero(n);
    if (p_theta)
        for (std::size_t i = 0; i < n; ++i) p[i] = rat_to_double((*p_theta)[i]);

    Trajectory traj;
    auto record = [&](double t, double h) {
        traj.times.push_back(t);
        traj.states.push_back(x);
        if (p_theta) traj.h_values.push_back(p.dot(x));
        traj.min_coords.push_back(x.size() ? x.minCoeff() : 0.0);
        traj.step_sizes.push_back(h);
    };

    double t = 0.0, h = opts.h_initial;
    record(t, h);
    std::array<DVec, 7> k;
    for (double target : sample_times) {
        if (target <= t) throw std::invalid_argument("integrate: sample times must increase");
        while (t < target) {
            bool last = t + h >= target;
            double step = last ? target - t : h;

            k[0] = field(x);
            bool stage_ok = true;
            for (int s = 1; s < 7 && stage_ok; ++s) {
                DVec xs = x;
                for (int q = 0; q < s; ++q) xs += step * A[s][q] * k[q];
                if (opts.nonneg_guard && fractional && (xs.array() < 0).any()) {
                    stage_ok = false;
                    break;
                }
                k[s] = field(xs);
            }

            DVec x5, err;
            if (stage_ok) {
                x5 = x;
                err = DVec::Zero(n);
                for (int s = 0; s < 7; ++s) {
                    x5 += step * B5[s] * k[s];
                    err += step * (B5[s] - B4[s]) * k[s];
                }
            }

            bool reject = !stage_ok;
            if (!reject && opts.nonneg_guard && (x5.array() < 0.0).any()) reject = true;
            double err_ratio = 0.0;
            if (!reject) {
                for (std::size_t i = 0; i < n; ++i) {
                    double scale = opts.atol + opts.rtol * std::max(std::abs(x[i]), std::abs(x5[i]));
                    err_ratio = std::max(err_ratio, std::abs(err[i]) / scale);
                }
                if (!std::isfinite(err_ratio)) reject = true;
            }

            if (reject) {
                ++traj.steps_rejected;
                h = step / 2;
                if (h < opts.h_min) throw IntegrationError(t, x, "integrate: step size underflow");
                continue;
            }
            if (err_ratio > 1.0) {
                ++traj.steps_rejected;
                double shrink = std::max(0.2, 0.9 * std::pow(err_ratio, -0.2));
                h = step * shrink;
                if (h < opts.h_min) throw IntegrationError(t, x, "integrate: step size underflow");
                continue;
            }

            t = last ? target : t + step;
            x = x5;
            ++traj.steps_accepted;
            if (opts.clamp_tiny) {
                for (std::size_t i = 0; i < n; ++i) {
                    if (x[i] > 0.0 && x[i] < 1e-14) {
                        DVec trial = x;
                        trial[i] = 0.0;
                        if (field(trial)[i] >= 0.0) x[i] = 0.0;  // face flow tangent or inward
                    }
                }
            }
            double grow = err_ratio > 0 ? std::min(5.0, 0.9 * std::pow(err_ratio, -0.2)) : 5.0;
            h = std::max(step * grow, opts.h_min * 2);
        }
        record(t, h);
    }
    return traj;
}

inline Trajectory integrate(const RateFunction& rf, const Mat& gamma, const DVec& x0, double t_end,
                            const IntegrateOptions& opts = {}, const RatVec* p_theta = nullptr,
                            std::size_t samples = 200) {
    return integrate(rf, gamma, x0, sample_grid(t_end, samples), opts, p_theta);
}

// Basis of Im(Gamma) as the pivot columns of Gamma, in double precision for
// the Newton polish.
inline DMat im_gamma_basis(const Mat& gamma) {
    auto pivots = pivot_columns(gamma);
    DMat b(gamma.rows(), pivots.size());
    for (std::size_t k = 0; k < pivots.size(); ++k)
        for (std::size_t i = 0; i < gamma.rows(); ++i) b(i, k) = rat_to_double(gamma(i, pivots[k]));
    return b;
}

// Long-time integration followed by a damped Newton polish of Gamma v(x) = 0
// restricted to the stoichiometry class x0 + Im(Gamma).
inline DVec find_equilibrium(const RateFunction& rf, const Mat& gamma, const DVec& x0, double t_relax,
                             const IntegrateOptions& opts = {}, double tol = 1e-12) {
    Trajectory traj = integrate(rf, gamma, x0, sample_grid(t_relax, 8), opts, nullptr);
    DVec x = traj.states.back();

    DMat gd = to_double(gamma);
    DMat b = im_gamma_basis(gamma);
    const auto d = b.cols();
    auto residual = [&](const DVec& y) -> DVec { return b.transpose() * (gd * rf(y)); };

    for (int iter = 0; iter < 60; ++iter) {
        DVec f = residual(x);
        if (f.lpNorm<Eigen::Infinity>() < tol) break;
        DMat jf = b.transpose() * gd * rf.dv(x) * b;
        DVec delta = jf.fullPivLu().solve(-f);
        double lambda = 1.0;
        double f0 = f.norm();
        for (int halving = 0; halving < 40; ++halving, lambda /= 2) {
            DVec trial = x + b * (lambda * delta);
            if ((trial.array() < 0.0).any()) continue;
            if (residual(trial).norm() < f0) {
                x = trial;
                break;
            }
        }
        (void)d;
    }
    return x;
}

// Cone-order comparison of two trajectories on a shared time grid. The check
// is exact on rationalized states: pullback coordinates of y(t) - x(t) must
// stay above -slack. Initial states must be ordered (x0 below y0), exactly.
inline bool check_order_preservation(const ConeOrder& order, const Trajectory& tx, const Trajectory& ty,
                                     const Rational& slack = Rational(1, 100000000)) {
    if (tx.times.size() != ty.times.size())
        throw std::invalid_argument("check_order_preservation: trajectories have different grids");
    for (std::size_t k = 0; k < tx.times.size(); ++k)
        if (tx.times[k] != ty.times[k])
            throw std::invalid_argument("check_order_preservation: trajectories have different grids");

    // Initial order up to float rounding: pullback coordinates nonnegative
    // within slack and the off-image residual below slack.
    {
        RatVec diff = vec_sub(rationalize(ty.states.front()), rationalize(tx.states.front()));
        RatVec t0 = order.left_inverse * diff;
        RatVec residual = vec_sub(diff, order.lambda * t0);
        bool ordered = std::all_of(t0.begin(), t0.end(), [&](const Rational& q) { return q >= -slack; }) &&
                       std::all_of(residual.begin(), residual.end(),
                                   [&](const Rational& q) { return rat_abs(q) <= slack; });
        if (!ordered) throw std::invalid_argument("check_order_preservation: initial states are not ordered");
    }

    for (std::size_t k = 0; k < tx.times.size(); ++k) {
        RatVec diff = vec_sub(rationalize(ty.states[k]), rationalize(tx.states[k]));
        RatVec t = order.left_inverse * diff;
        for (const auto& q : t)
            if (q < -slack) return false;
    }
    return true;
}

inline void write_trajectory_csv(std::ostream& os, const Network& net, const Trajectory& traj) {
    os << "time";
    for (const auto& s : net.species) os << "," << s.name;
    os << ",H\n";
    os.precision(17);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        os << traj.times[k];
        for (Eigen::Index i = 0; i < traj.states[k].size(); ++i) os << "," << traj.states[k][i];
        if (k < traj.h_values.size())
            os << "," << traj.h_values[k];
        else
            os << ",nan";
        os << "\n";
    }
}

inline nlohmann::json trajectory_diagnostics(const Trajectory& traj) {
    nlohmann::json j;
    j["samples"] = traj.times.size();
    j["t_end"] = traj.times.empty() ? 0.0 : traj.times.back();
    j["steps_accepted"] = traj.steps_accepted;
    j["steps_rejected"] = traj.steps_rejected;
    double min_coord = 0.0;
    if (!traj.min_coords.empty()) min_coord = *std::min_element(traj.min_coords.begin(), traj.min_coords.end());
    j["min_coordinate"] = min_coord;
    if (!traj.h_values.empty()) {
        double h0 = traj.h_values.front(), drift = 0.0;
        for (double h : traj.h_values) drift = std::max(drift, std::abs(h - h0));
        j["h_initial"] = h0;
        j["h_max_drift"] = drift;
    }
    return j;
}

inline DVec random_interior(Rng& rng, std::size_t n, double lo = 0.25, double hi = 2.0) {
    DVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rng.uniform(lo, hi);
    return x;
}

// A random point on the stoichiometry class of x_ref, bounded away from the
// boundary. The spread shrinks until a valid point appears.
inline DVec random_on_class(Rng& rng, const Mat& gamma, const DVec& x_ref, double spread = 0.4,
                            double min_coord = 0.05) {
    DMat gd = to_double(gamma);
    for (double s = spread; s > 1e-6; s /= 2) {
        for (int attempt = 0; attempt < 100; ++attempt) {
            DVec w(gamma.cols());
            for (Eigen::Index j = 0; j < w.size(); ++j) w[j] = rng.uniform(-s, s);
            DVec x = x_ref + gd * w;
            if (x.minCoeff() >= min_coord) return x;
        }
    }
    return x_ref;
}

}  // namespace crn
