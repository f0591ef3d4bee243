#pragma once

#include <random>

#include "crn/factorization.hpp"
#include "crn/simplex.hpp"

namespace crn {

// The partial order on a Lambda-coset defined by the cone
// K(Lambda) = { Lambda y : y >= 0 }. Lambda must have full column rank, so
// pullback coordinates are unique.
struct ConeOrder {
    Mat lambda;        // n x r
    Mat left_inverse;  // r x n, left_inverse * lambda = I
};

inline ConeOrder make_cone_order(const Mat& lambda) {
    ConeOrder o{lambda, left_inverse(lambda)};
    return o;
}

// The unique t with lambda*t = v, or nullopt when v is outside Im(lambda).
inline std::optional<RatVec> pullback(const ConeOrder& o, const RatVec& v) {
    RatVec t = o.left_inverse * v;
    RatVec back = o.lambda * t;
    if (back != v) return std::nullopt;
    return t;
}

inline bool cone_contains(const ConeOrder& o, const RatVec& v) {
    auto t = pullback(o, v);
    if (!t) return false;
    return std::all_of(t->begin(), t->end(), [](const Rational& q) { return q >= 0; });
}

inline RatVec vec_sub(const RatVec& a, const RatVec& b) {
    RatVec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

inline RatVec vec_add(const RatVec& a, const RatVec& b) {
    RatVec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] + b[i];
    return d;
}

inline bool same_lambda_class(const ConeOrder& o, const RatVec& x, const RatVec& y) {
    return pullback(o, vec_sub(x, y)).has_value();
}

namespace detail {

enum class LatticeOp { Meet, Join };

inline RatVec lattice_op(const ConeOrder& o, const RatVec& c, const RatVec& x, const RatVec& y,
                         LatticeOp op) {
    auto px = pullback(o, vec_sub(x, c));
    auto py = pullback(o, vec_sub(y, c));
    if (!px || !py) throw std::invalid_argument("lattice op: points are not in a common Lambda-class");
    RatVec z(px->size());
    for (std::size_t k = 0; k < z.size(); ++k)
        z[k] = op == LatticeOp::Meet ? std::min((*px)[k], (*py)[k]) : std::max((*px)[k], (*py)[k]);
    return vec_add(c, o.lambda * z);
}

}  // namespace detail

// Greatest lower bound of x, y within their common Lambda-coset: componentwise
// min of the pullback coordinates relative to c, pushed forward again.
inline RatVec meet(const ConeOrder& o, const RatVec& c, const RatVec& x, const RatVec& y) {
    return detail::lattice_op(o, c, x, y, detail::LatticeOp::Meet);
}

inline RatVec join(const ConeOrder& o, const RatVec& c, const RatVec& x, const RatVec& y) {
    return detail::lattice_op(o, c, x, y, detail::LatticeOp::Join);
}

// The linear integral H(x) = p_theta . x: constant along trajectories
// (p_theta . Gamma = 0) and strictly increasing along the cone order
// (lambdaᵀ p_theta = y_theta >> 0).
struct Integral {
    RatVec y_theta;  // positive r-vector
    RatVec p_theta;  // n-vector
};

// Canonical sparse choice: lambdaᵀp = y_theta constrains one weighted sum per
// row class, so one entry per class suffices -- the class's lowest-index row.
inline Integral make_integral(const Factorization& f) {
    Integral in;
    in.y_theta = f.y_theta;
    in.p_theta.assign(f.lambda.rows(), Rational(0));
    for (std::size_t k = 0; k < f.row_partition.size(); ++k) {
        std::size_t i0 = f.row_partition[k].front();
        in.p_theta[i0] = f.y_theta[k] / f.lambda(i0, k);
    }
    RatVec check = f.lambda.transpose() * in.p_theta;
    if (check != in.y_theta) throw std::logic_error("integral construction: lambda^T p != y_theta");
    return in;
}

inline Rational H(const Integral& in, const RatVec& x) { return dot(in.p_theta, x); }

// Condition A5 for lambda of the one-nonzero-per-row form: K(lambda) meets the
// nonpositive orthant only at 0 iff no column of lambda is nonpositive.
inline bool check_A5(const Mat& lambda) {
    for (std::size_t k = 0; k < lambda.cols(); ++k) {
        bool has_positive = false;
        for (std::size_t i = 0; i < lambda.rows() && !has_positive; ++i)
            has_positive = lambda(i, k) > 0;
        if (!has_positive) return false;
    }
    return true;
}

// Least element of the Lambda-class (c + Im lambda) ∩ R^n>=0 in the cone
// order, by exact LP minimization of H. The identification of the H-minimizer
// with the order infimum is re-verified against sampled class points.
inline RatVec class_infimum(const ConeOrder& o, const Integral& in, const RatVec& c) {
    const std::size_t n = o.lambda.rows(), r = o.lambda.cols();
    if (c.size() != n) throw std::invalid_argument("class_infimum: point length mismatch");
    for (const auto& q : c)
        if (q < 0) throw std::invalid_argument("class_infimum: point must be nonnegative");

    // Variables [x, t+, t-] >= 0 with x - lambda t+ + lambda t- = c.
    Mat e(n, n + 2 * r);
    for (std::size_t i = 0; i < n; ++i) {
        e(i, i) = 1;
        for (std::size_t k = 0; k < r; ++k) {
            e(i, n + k) = -o.lambda(i, k);
            e(i, n + r + k) = o.lambda(i, k);
        }
    }
    RatVec cost(n + 2 * r, Rational(0));
    for (std::size_t i = 0; i < n; ++i) cost[i] = in.p_theta[i];
    LpResult lp = lp_minimize(e, c, cost);
    if (lp.status == LpStatus::Unbounded)
        throw std::logic_error("class_infimum: LP unbounded -- impossible when condition A5 holds");
    if (lp.status != LpStatus::Optimal) throw std::logic_error("class_infimum: LP infeasible");
    RatVec z(lp.x.begin(), lp.x.begin() + n);

    // Order-theoretic double check on sampled class points.
    if (!cone_contains(o, vec_sub(c, z)))
        throw std::logic_error("class_infimum: LP output is not below the class representative");
    std::mt19937_64 rng(0x1f1d0ull);
    std::uniform_int_distribution<int> num(-32, 32);
    std::size_t accepted = 0;
    for (int attempt = 0; attempt < 400 && accepted < 32; ++attempt) {
        RatVec tau(r);
        for (auto& q : tau) q = Rational(num(rng), 16);
        RatVec s = vec_add(c, o.lambda * tau);
        if (!std::all_of(s.begin(), s.end(), [](const Rational& q) { return q >= 0; })) continue;
        ++accepted;
        if (!cone_contains(o, vec_sub(s, z)))
            throw std::logic_error("class_infimum: sampled class point is not above the LP output");
    }
    return z;
}

}  // namespace crn
