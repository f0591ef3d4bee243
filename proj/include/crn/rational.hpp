#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace crn {

using Int = boost::multiprecision::cpp_int;

// Exact rational scalar. Always stored reduced with positive denominator;
// cpp_rational maintains that invariant on every operation.
using Rational = boost::multiprecision::cpp_rational;

using RatVec = std::vector<Rational>;

inline Int rat_num(const Rational& q) { return numerator(q); }
inline Int rat_den(const Rational& q) { return denominator(q); }

// Canonical "p/q" form, denominator always printed.
inline std::string rat_str(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

// Accepts "p/q" or a bare integer "p".
inline Rational rat_parse(std::string_view s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(Int(std::string(s)));
        Int p(std::string(s.substr(0, slash)));
        Int q(std::string(s.substr(slash + 1)));
        if (q == 0) throw std::invalid_argument("zero denominator");
        return Rational(p, q);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + std::string(s) + "'");
    }
}

// Exact conversion of a binary double: x = m * 2^e with integer m.
inline Rational rat_of_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value cannot be rationalized");
    if (x == 0.0) return Rational(0);
    int e = 0;
    double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5, 1)
    // 53 mantissa bits make m * 2^53 integral.
    auto mant = static_cast<long long>(std::ldexp(m, 53));
    e -= 53;
    Rational r(mant);
    if (e >= 0) {
        r *= Rational(Int(1) << e);
    } else {
        r /= Rational(Int(1) << -e);
    }
    return r;
}

inline double rat_to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline int rat_sign(const Rational& q) { return q < 0 ? -1 : (q > 0 ? 1 : 0); }

// Scales a rational vector to the primitive integer vector spanning the same
// ray, with the first nonzero entry positive. Zero vectors pass through.
inline RatVec primitive_ray(const RatVec& v) {
    Int l = 1;
    for (const auto& q : v) l = lcm(l, rat_den(q));
    std::vector<Int> w;
    w.reserve(v.size());
    for (const auto& q : v) w.push_back(rat_num(q) * (l / rat_den(q)));
    Int g = 0;
    for (const auto& x : w) g = gcd(g, x);
    if (g == 0) return v;  // zero vector
    int lead = 0;
    for (const auto& x : w) {
        if (x != 0) { lead = x > 0 ? 1 : -1; break; }
    }
    if (lead < 0) g = -g;
    RatVec out;
    out.reserve(w.size());
    for (const auto& x : w) out.emplace_back(x / g);
    return out;
}

inline Rational dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace crn
