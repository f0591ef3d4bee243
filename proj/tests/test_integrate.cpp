#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "crn/integrate.hpp"
#include "fixtures.hpp"

using namespace crn;

namespace {

struct Ex1Setup {
    Network net = fx::net_ex1();
    Mat gamma = stoichiometric_matrix(net);
    Factorization f = *factorize(gamma);
    ConeOrder order = make_cone_order(f.lambda);
    Integral integral = make_integral(f);
    RateFunction rf = make_mass_action(net);
};

}  // namespace

TEST_CASE("an equilibrium stays put") {
    Ex1Setup s;
    // With all rate constants 1, the all-ones state is an equilibrium.
    DVec e = DVec::Ones(4);
    REQUIRE((to_double(s.gamma) * s.rf(e)).lpNorm<Eigen::Infinity>() == 0.0);
    Trajectory traj = integrate(s.rf, s.gamma, e, 10.0, {}, &s.integral.p_theta, 20);
    for (const auto& x : traj.states) REQUIRE((x - e).lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("H is conserved to the integrator budget") {
    Ex1Setup s;
    Rng rng(101);
    for (int run = 0; run < 3; ++run) {
        DVec x0 = random_interior(rng, 4);
        Trajectory traj = integrate(s.rf, s.gamma, x0, 100.0, {}, &s.integral.p_theta, 100);
        double h0 = traj.h_values.front();
        for (double h : traj.h_values) REQUIRE(std::abs(h - h0) <= 1e-7 * (1.0 + std::abs(h0)));
    }
}

TEST_CASE("trajectories never leave the orthant") {
    Network net = parse_network(fx::AB);
    Mat gamma = stoichiometric_matrix(net);
    RateFunction rf = make_mass_action(net);
    DVec x0(2);
    x0 << 1.0, 0.0;
    Trajectory traj = integrate(rf, gamma, x0, 60.0, {}, nullptr, 60);
    for (double m : traj.min_coords) REQUIRE(m >= 0.0);
    // A drains into B.
    REQUIRE(traj.states.back()[0] < 1e-10);
    REQUIRE(traj.states.back()[1] == Catch::Approx(1.0).margin(1e-8));
}

TEST_CASE("same-class starts converge to a common equilibrium") {
    Ex1Setup s;
    Rng rng(102);
    DVec ref = DVec::Ones(4) * 1.2;
    std::vector<DVec> ends;
    for (int run = 0; run < 3; ++run) {
        DVec x0 = random_on_class(rng, s.gamma, ref);
        ends.push_back(find_equilibrium(s.rf, s.gamma, x0, 150.0));
    }
    for (const auto& a : ends)
        for (const auto& b : ends) REQUIRE((a - b).lpNorm<Eigen::Infinity>() < 1e-6);
    // The polished point is an equilibrium to high accuracy.
    REQUIRE((to_double(s.gamma) * s.rf(ends[0])).lpNorm<Eigen::Infinity>() < 1e-11);
}

TEST_CASE("order preservation along the flow") {
    Ex1Setup s;
    Rng rng(103);
    auto grid = sample_grid(50.0, 100);
    for (int run = 0; run < 5; ++run) {
        DVec x0 = random_interior(rng, 4);
        DVec dir(3);
        dir << rng.uniform(0.1, 1.0), rng.uniform(0.1, 1.0), rng.uniform(0.1, 1.0);
        DVec shift = 0.1 * dir;
        DVec y0 = x0 + to_double(s.f.lambda) * shift;
        Trajectory tx = integrate(s.rf, s.gamma, x0, grid);
        Trajectory ty = integrate(s.rf, s.gamma, y0, grid);
        REQUIRE(check_order_preservation(s.order, tx, ty));

        // Strictness: by t = 1 the difference is in the relative interior.
        Trajectory tx1 = integrate(s.rf, s.gamma, x0, sample_grid(1.0, 1));
        Trajectory ty1 = integrate(s.rf, s.gamma, y0, sample_grid(1.0, 1));
        RatVec diff = vec_sub(rationalize(ty1.states.back()), rationalize(tx1.states.back()));
        RatVec t = s.order.left_inverse * diff;
        for (const auto& q : t) REQUIRE(q > Rational(1, 10000000000LL));
    }
}

TEST_CASE("identical starts are trivially ordered") {
    Ex1Setup s;
    DVec x0 = DVec::Ones(4);
    auto grid = sample_grid(5.0, 10);
    Trajectory tx = integrate(s.rf, s.gamma, x0, grid);
    REQUIRE(check_order_preservation(s.order, tx, tx));
}

TEST_CASE("the reversed field breaks the order") {
    Ex1Setup s;
    Rng rng(104);
    IntegrateOptions reversed;
    reversed.vector_field_sign = -1.0;
    reversed.nonneg_guard = false;
    reversed.clamp_tiny = false;
    auto grid = sample_grid(10.0, 100);
    bool violated = false;
    for (int run = 0; run < 5 && !violated; ++run) {
        DVec x0 = random_interior(rng, 4, 0.6, 1.4);
        DVec dz = 0.1 * DVec::Ones(3);
        DVec y0 = x0 + to_double(s.f.lambda) * dz;
        try {
            Trajectory tx = integrate(s.rf, s.gamma, x0, grid, reversed);
            Trajectory ty = integrate(s.rf, s.gamma, y0, grid, reversed);
            violated = !check_order_preservation(s.order, tx, ty);
        } catch (const IntegrationError&) {
            // Divergence of the reversed field before a violation is visible
            // counts for nothing; try the next pair.
        }
    }
    REQUIRE(violated);
}

TEST_CASE("order check rejects mismatched grids and unordered starts") {
    Ex1Setup s;
    DVec x0 = DVec::Ones(4);
    Trajectory a = integrate(s.rf, s.gamma, x0, sample_grid(1.0, 4));
    Trajectory b = integrate(s.rf, s.gamma, x0, sample_grid(1.0, 8));
    REQUIRE_THROWS_AS(check_order_preservation(s.order, a, b), std::invalid_argument);

    DVec y0 = x0;
    y0[0] += 0.5;  // not a cone displacement
    Trajectory c = integrate(s.rf, s.gamma, y0, sample_grid(1.0, 4));
    REQUIRE_THROWS_AS(check_order_preservation(s.order, a, c), std::invalid_argument);
}

TEST_CASE("integrate validates its inputs") {
    Ex1Setup s;
    DVec neg(4);
    neg << -1.0, 1.0, 1.0, 1.0;
    REQUIRE_THROWS_AS(integrate(s.rf, s.gamma, neg, 1.0), std::invalid_argument);
    DVec x0 = DVec::Ones(4);
    REQUIRE_THROWS_AS(integrate(s.rf, s.gamma, x0, std::vector<double>{1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("CSV and diagnostics output") {
    Ex1Setup s;
    Trajectory traj = integrate(s.rf, s.gamma, DVec::Ones(4), 1.0, {}, &s.integral.p_theta, 4);
    std::ostringstream os;
    write_trajectory_csv(os, s.net, traj);
    std::string csv = os.str();
    REQUIRE(csv.rfind("time,A,B,C,D,H", 0) == 0);
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 6);  // header + 5 samples (t=0 included)

    nlohmann::json d = trajectory_diagnostics(traj);
    REQUIRE(d["samples"] == 5);
    REQUIRE(d.contains("h_max_drift"));
    REQUIRE(d["min_coordinate"].get<double>() >= 0.0);
}

TEST_CASE("power-law dynamics integrate cleanly near the boundary") {
    Network net = fx::net_ex3();
    Mat gamma = stoichiometric_matrix(net);
    RateFunction rf = make_power_law(net, 42);
    DVec x0(6);
    x0 << 0.9, 0.02, 1.4, 0.6, 0.03, 1.1;
    Trajectory traj = integrate(rf, gamma, x0, 20.0, {}, nullptr, 40);
    for (double m : traj.min_coords) REQUIRE(m >= 0.0);
    REQUIRE(traj.steps_accepted > 0);
}
