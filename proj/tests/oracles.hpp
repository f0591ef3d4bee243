#pragma once

// Independent brute-force oracles used by the tests only. These deliberately
// avoid the library's elimination and graph machinery so that agreement is
// meaningful.

#include <vector>

#include "crn/dsr.hpp"
#include "crn/matrix.hpp"
#include "crn/order.hpp"

namespace oracle {

// Determinant by Laplace expansion along the first row. Exponential; fine for
// the small matrices the tests use.
inline crn::Rational det(const crn::Mat& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    crn::Rational d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        crn::Mat minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(i - 1, cc++) = m(i, c);
            }
        }
        crn::Rational term = m(0, j) * det(minor);
        d += (j % 2 == 0) ? term : -term;
    }
    return d;
}

namespace detail {
inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - (k - i)) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}
}  // namespace detail

// Rank as the largest k admitting a nonzero k x k minor.
inline std::size_t rank_by_minors(const crn::Mat& m) {
    std::size_t maxk = std::min(m.rows(), m.cols());
    for (std::size_t k = maxk; k >= 1; --k) {
        std::vector<std::size_t> ri(k), ci(k);
        for (std::size_t i = 0; i < k; ++i) ri[i] = i;
        do {
            for (std::size_t i = 0; i < k; ++i) ci[i] = i;
            do {
                crn::Mat sub(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(ri[i], ci[j]);
                if (det(sub) != 0) return k;
            } while (detail::next_combination(ci, m.cols()));
        } while (detail::next_combination(ri, m.rows()));
    }
    return 0;
}

// Cramer's rule for square nonsingular systems.
inline std::optional<crn::RatVec> cramer_solve(const crn::Mat& a, const crn::RatVec& b) {
    crn::Rational d = det(a);
    if (d == 0) return std::nullopt;
    crn::RatVec x(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        crn::Mat aj = a;
        for (std::size_t i = 0; i < a.rows(); ++i) aj(i, j) = b[i];
        x[j] = det(aj) / d;
    }
    return x;
}

// All-pairs reachability by Floyd-Warshall; the library uses Tarjan.
inline bool strongly_connected_fw(const crn::DsrGraph& g) {
    const std::size_t n = g.vertex_count();
    if (n <= 1) return true;
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t v = 0; v < n; ++v) reach[v][v] = true;
    for (const auto& a : g.arcs) reach[a.from][a.to] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!reach[i][j]) return false;
    return true;
}

// Quasipositivity via the cone's extremal vectors, independent of the
// pulled-back Metzler scan: J is K(Lambda)-quasipositive iff for large enough
// alpha every extremal image (J + alpha I) Lambda_k lands back in the cone.
// Exact arithmetic throughout.
inline bool extremal_oracle_quasipositive(const crn::ConeOrder& order, const crn::Mat& j_exact) {
    using crn::RatVec;
    using crn::Rational;
    const std::size_t r = order.lambda.cols();
    std::vector<RatVec> images(r);
    Rational alpha = 1;
    for (std::size_t k = 0; k < r; ++k) {
        images[k] = j_exact * order.lambda.col(k);
        auto t = pullback(order, images[k]);
        if (!t) return false;  // image leaves the span; no alpha can help
        if (-(*t)[k] + 1 > alpha) alpha = -(*t)[k] + 1;
    }
    for (std::size_t k = 0; k < r; ++k) {
        RatVec v = images[k];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += alpha * order.lambda(i, k);
        if (!cone_contains(order, v)) return false;
    }
    return true;
}

// Undirected connectivity, ignoring arc directions.
inline bool weakly_connected(const crn::DsrGraph& g) {
    const std::size_t n = g.vertex_count();
    if (n <= 1) return true;
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& a : g.arcs) {
        adj[a.from].push_back(a.to);
        adj[a.to].push_back(a.from);
    }
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> todo{0};
    seen[0] = true;
    while (!todo.empty()) {
        std::size_t v = todo.back();
        todo.pop_back();
        for (std::size_t w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                todo.push_back(w);
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace oracle
