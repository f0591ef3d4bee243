#pragma once

// Shared golden fixtures: the three worked reaction systems, the 5x3
// separation-certificate example, and the small negative-control networks.

#include "crn/matrix.hpp"
#include "crn/network.hpp"

namespace fx {

inline constexpr const char* EX1 =
    "A <-> B + C\n"
    "B <-> D\n"
    "C + D <-> A\n";

inline constexpr const char* EX2 =
    "A <-> B + C\n"
    "B <-> D\n"
    "C + D <-> A\n"
    "C + E <-> A\n";

inline constexpr const char* EX3 =
    "S1 + E <-> ES1\n"
    "ES1 -> S2 + E\n"
    "S2 + F <-> FS2\n"
    "FS2 -> S1 + F\n";

// Negative controls.
inline constexpr const char* AB = "A -> B\n";
inline constexpr const char* APLUSB = "A + B -> C\n";
inline constexpr const char* DISC = "A <-> B\nC <-> D\n";
// All-reversible core B <-> A + C plus an irreversible feed consuming P,
// which nothing produces: the face {x_P = 0} is an uncertifiable siphon face.
inline constexpr const char* TRAP = "P + A -> B\nB <-> A + C\n";

inline crn::Mat gamma_ex1() {
    return crn::Mat{{-1, 0, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}};
}
inline crn::Mat lambda_ex1() {
    return crn::Mat{{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, 0, 1}};
}
inline crn::Mat theta_ex1() {
    return crn::Mat{{-1, 0, 1}, {1, -1, 0}, {0, 1, -1}};
}

inline crn::Mat gamma_ex2() {
    return crn::Mat{{-1, 0, 1, 1}, {1, -1, 0, 0}, {1, 0, -1, -1}, {0, 1, -1, 0}, {0, 0, 0, -1}};
}
inline crn::Mat lambda_ex2() {
    return crn::Mat{{1, 0, 0, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
}
inline crn::Mat theta_ex2() {
    return crn::Mat{{-1, 0, 1, 1}, {1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 0, -1}};
}

// Species order [S1, E, ES1, S2, F, FS2].
inline crn::Mat gamma_ex3() {
    return crn::Mat{{-1, 0, 0, 1}, {-1, 1, 0, 0}, {1, -1, 0, 0},
                    {0, 1, -1, 0}, {0, 0, -1, 1}, {0, 0, 1, -1}};
}
inline crn::Mat lambda_ex3() {
    return crn::Mat{{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 1, 0, 0},
                    {0, 0, 1, 0}, {0, 0, 0, -1}, {0, 0, 0, 1}};
}
inline crn::Mat theta_ex3() {
    return crn::Mat{{-1, 0, 0, 1}, {1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, -1}};
}

// 5x3 worked example for face/separation analysis: Gamma = Lambda * Theta.
inline crn::Mat gamma_appc() {
    return crn::Mat{{1, 0, 1}, {-1, 1, 0}, {1, 0, 1}, {-1, 0, -1}, {0, -2, -2}};
}

// A reversible network realizing gamma_appc up to the species relabeling
// [B, D, A, C, E] -> rows 0..4 (first-appearance order pins the rows).
inline constexpr const char* APPC_NET =
    "B + D <-> A + C\n"
    "2 E <-> B\n"
    "D + 2 E <-> A + C\n";

// gamma of APPC_NET in its own species order.
inline crn::Mat gamma_appc_net() {
    return crn::Mat{{-1, 1, 0}, {-1, 0, -1}, {1, 0, 1}, {1, 0, 1}, {0, -2, -2}};
}

struct FacePair {
    std::vector<std::size_t> s;  // 0-based face support set
    crn::RatVec w;
};

// The eight tangent faces of the 5x3 example with their published
// certificates (indices shifted to 0-based).
inline std::vector<FacePair> appc_faces() {
    auto rv = [](std::initializer_list<long long> xs) {
        crn::RatVec v;
        for (long long x : xs) v.emplace_back(x);
        return v;
    };
    return {
        {{1, 2, 4}, rv({1, 0, 0, 1, 0})},
        {{0, 1, 4}, rv({0, 0, 1, 1, 0})},
        {{1, 4}, rv({1, 0, 1, 2, 0})},
        {{2, 3}, rv({2, 2, 0, 0, 1})},
        {{0, 3}, rv({0, 2, 2, 0, 1})},
        {{3}, rv({1, 2, 1, 0, 1})},
        {{2}, rv({3, 2, 0, 1, 1})},
        {{0}, rv({0, 2, 3, 1, 1})},
    };
}

inline crn::Network net_ex1() { return crn::parse_network(EX1); }
inline crn::Network net_ex2() { return crn::parse_network(EX2); }
inline crn::Network net_ex3() { return crn::parse_network(EX3); }

inline crn::RatVec rv(std::initializer_list<long long> xs) {
    crn::RatVec v;
    for (long long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace fx
