#pragma once

#include <numeric>
#include <optional>
#include <string>

#include <json.hpp>

#include "crn/matrix.hpp"

namespace crn {

// A stoichiometric factorization G = lambda * theta where lambda has exactly
// one nonzero entry per row (and no zero column) and theta has at most one
// positive and at most one negative entry per column, with ker(thetaᵀ)
// one-dimensional and spanned by a strictly positive vector.
struct Factorization {
    Mat lambda;                  // n x r
    Mat theta;                   // r x m
    std::vector<int> sign_flip;  // diagonal of the +-1 matrix actually applied
    RatVec y_theta;              // positive primitive vector spanning ker(thetaᵀ)
    std::vector<std::vector<std::size_t>> row_partition;  // r disjoint classes covering all rows

    std::size_t r() const { return lambda.cols(); }
};

// Partitions the rows of G into maximal classes of pairwise collinear rows
// (u ~ v iff u = a*v for a nonzero scalar a). Classes are ordered by their
// smallest member, members ascending. Throws if G has a zero row.
inline std::vector<std::vector<std::size_t>> collinear_row_partition(const Mat& g) {
    std::vector<std::vector<std::size_t>> classes;
    std::vector<RatVec> reps;
    for (std::size_t i = 0; i < g.rows(); ++i) {
        RatVec row = g.row(i);
        std::size_t lead = 0;
        while (lead < row.size() && row[lead] == 0) ++lead;
        if (lead == row.size())
            throw std::invalid_argument("row " + std::to_string(i) + " is zero; no factorization of this form exists");
        bool placed = false;
        for (std::size_t k = 0; k < classes.size() && !placed; ++k) {
            const RatVec& rep = reps[k];
            std::size_t rl = 0;
            while (rep[rl] == 0) ++rl;
            if (rl != lead) continue;  // collinear rows share their support
            Rational alpha = row[lead] / rep[lead];
            bool match = true;
            for (std::size_t j = 0; j < row.size() && match; ++j) match = (row[j] == alpha * rep[j]);
            if (match) {
                classes[k].push_back(i);
                placed = true;
            }
        }
        if (!placed) {
            classes.push_back({i});
            reps.push_back(std::move(row));
        }
    }
    return classes;
}

struct FactorizeOutcome {
    std::optional<Factorization> factorization;
    std::string failure;  // set when factorization is absent
};

// Builds the candidate factorization from the maximal collinear partition and
// checks it: each class representative is its lowest-index row, theta is then
// uniquely determined, and a diagonal +-1 matrix is applied when the kernel
// vector of thetaᵀ lies in a different orthant. Failure of any check is a
// definitive negative answer for this factorization form.
inline FactorizeOutcome try_factorize(const Mat& g) {
    if (g.is_zero()) throw std::invalid_argument("zero matrix cannot be factorized");
    FactorizeOutcome out;
    auto classes = collinear_row_partition(g);
    const std::size_t n = g.rows(), m = g.cols(), r = classes.size();

    Mat lambda(n, r);
    Mat theta(r, m);
    for (std::size_t k = 0; k < r; ++k) {
        RatVec rep = g.row(classes[k].front());
        std::size_t lead = 0;
        while (rep[lead] == 0) ++lead;
        for (std::size_t i : classes[k]) lambda(i, k) = g(i, lead) / rep[lead];
        theta.set_row(k, rep);
    }

    auto kernel = kernel_basis(theta.transpose());
    if (kernel.size() != 1) {
        out.failure = "ker(Theta^T) is " + std::to_string(kernel.size()) + "-dimensional (must be one-dimensional)";
        return out;
    }
    RatVec y = kernel.front();
    for (std::size_t k = 0; k < r; ++k)
        if (y[k] == 0) {
            out.failure = "spanning vector of ker(Theta^T) has a zero coordinate; no positive kernel vector exists";
            return out;
        }

    std::vector<int> flip(r, 1);
    for (std::size_t k = 0; k < r; ++k) flip[k] = y[k] > 0 ? 1 : -1;
    for (std::size_t k = 0; k < r; ++k) {
        if (flip[k] == 1) continue;
        y[k] = -y[k];
        for (std::size_t i = 0; i < n; ++i) lambda(i, k) = -lambda(i, k);
        for (std::size_t j = 0; j < m; ++j) theta(k, j) = -theta(k, j);
    }

    for (std::size_t j = 0; j < m; ++j) {
        int pos = 0, neg = 0;
        for (std::size_t k = 0; k < r; ++k) {
            if (theta(k, j) > 0) ++pos;
            if (theta(k, j) < 0) ++neg;
        }
        if (pos > 1 || neg > 1) {
            out.failure = "column " + std::to_string(j) + " of Theta violates the sign condition";
            return out;
        }
    }

    Factorization f;
    f.lambda = std::move(lambda);
    f.theta = std::move(theta);
    f.sign_flip = std::move(flip);
    f.y_theta = primitive_ray(y);
    f.row_partition = std::move(classes);
    out.factorization = std::move(f);
    return out;
}

inline std::optional<Factorization> factorize(const Mat& g) { return try_factorize(g).factorization; }

// Names every violated clause; an empty list means the factorization is valid
// evidence for condition A3. Throws on dimension mismatch.
inline std::vector<std::string> verify_factorization(const Mat& g, const Factorization& f) {
    const std::size_t n = g.rows(), m = g.cols(), r = f.lambda.cols();
    if (f.lambda.rows() != n || f.theta.rows() != r || f.theta.cols() != m || f.y_theta.size() != r)
        throw std::invalid_argument("verify_factorization: dimension mismatch");

    std::vector<std::string> bad;
    if (!(f.lambda * f.theta == g)) bad.push_back("product mismatch: Lambda*Theta != Gamma");

    for (std::size_t i = 0; i < n; ++i) {
        int nz = 0;
        for (std::size_t k = 0; k < r; ++k)
            if (f.lambda(i, k) != 0) ++nz;
        if (nz != 1)
            bad.push_back("A3(i): row " + std::to_string(i) + " of Lambda has " + std::to_string(nz) +
                          " nonzero entries (must be exactly one)");
    }
    for (std::size_t k = 0; k < r; ++k) {
        bool zero = true;
        for (std::size_t i = 0; i < n && zero; ++i) zero = (f.lambda(i, k) == 0);
        if (zero) bad.push_back("A3(i): column " + std::to_string(k) + " of Lambda is zero");
    }

    for (std::size_t j = 0; j < m; ++j) {
        int pos = 0, neg = 0;
        for (std::size_t k = 0; k < r; ++k) {
            if (f.theta(k, j) > 0) ++pos;
            if (f.theta(k, j) < 0) ++neg;
        }
        if (pos > 1 || neg > 1)
            bad.push_back("A3(ii): column " + std::to_string(j) + " of Theta has two entries of equal sign");
    }

    auto kernel = kernel_basis(f.theta.transpose());
    if (kernel.size() != 1)
        bad.push_back("A3(ii): ker(Theta^T) has dimension " + std::to_string(kernel.size()) + " (must be 1)");

    bool ypos = true;
    for (const auto& q : f.y_theta) ypos = ypos && q > 0;
    if (!ypos) bad.push_back("A3(ii): y_theta is not strictly positive");
    RatVec res = f.theta.transpose() * f.y_theta;
    if (!std::all_of(res.begin(), res.end(), [](const Rational& q) { return q == 0; }))
        bad.push_back("A3(ii): y_theta is not in ker(Theta^T)");

    return bad;
}

// Normal form under the symmetries the factorization is unique up to:
// positive rescaling of each lambda-column (with inverse scaling of the
// matching theta-row) and simultaneous column/row permutation.
struct CanonicalFactors {
    Mat lambda, theta;

    bool operator==(const CanonicalFactors&) const = default;
};

inline CanonicalFactors canonical_factors(const Mat& lambda, const Mat& theta) {
    const std::size_t n = lambda.rows(), r = lambda.cols(), m = theta.cols();
    std::vector<std::pair<RatVec, RatVec>> pairs(r);
    for (std::size_t k = 0; k < r; ++k) {
        RatVec lc = lambda.col(k), tr = theta.row(k);
        std::size_t lead = 0;
        while (lead < n && lc[lead] == 0) ++lead;
        if (lead < n) {
            Rational scale = Rational(1) / rat_abs(lc[lead]);
            for (auto& q : lc) q *= scale;
            for (auto& q : tr) q /= scale;
        }
        pairs[k] = {std::move(lc), std::move(tr)};
    }
    std::sort(pairs.begin(), pairs.end());
    CanonicalFactors c{Mat(n, r), Mat(r, m)};
    for (std::size_t k = 0; k < r; ++k) {
        c.lambda.set_col(k, pairs[k].first);
        c.theta.set_row(k, pairs[k].second);
    }
    return c;
}

inline CanonicalFactors canonical_factors(const Factorization& f) {
    return canonical_factors(f.lambda, f.theta);
}

namespace detail {

inline nlohmann::json mat_to_json(const Mat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_str(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Mat mat_from_json(const nlohmann::json& j) {
    std::size_t rows = j.size(), cols = rows ? j.at(0).size() : 0;
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t jj = 0; jj < cols; ++jj) m(i, jj) = rat_parse(j.at(i).at(jj).get<std::string>());
    return m;
}

inline nlohmann::json vec_to_json(const RatVec& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& q : v) a.push_back(rat_str(q));
    return a;
}

inline RatVec vec_from_json(const nlohmann::json& j) {
    RatVec v;
    for (const auto& e : j) v.push_back(rat_parse(e.get<std::string>()));
    return v;
}

}  // namespace detail

inline nlohmann::json to_json(const Factorization& f) {
    nlohmann::json j;
    j["lambda"] = detail::mat_to_json(f.lambda);
    j["theta"] = detail::mat_to_json(f.theta);
    j["sign_flip"] = f.sign_flip;
    j["y_theta"] = detail::vec_to_json(f.y_theta);
    j["row_partition"] = f.row_partition;
    return j;
}

inline Factorization factorization_from_json(const nlohmann::json& j) {
    Factorization f;
    f.lambda = detail::mat_from_json(j.at("lambda"));
    f.theta = detail::mat_from_json(j.at("theta"));
    f.sign_flip = j.at("sign_flip").get<std::vector<int>>();
    f.y_theta = detail::vec_from_json(j.at("y_theta"));
    f.row_partition = j.at("row_partition").get<std::vector<std::vector<std::size_t>>>();
    return f;
}

}  // namespace crn
