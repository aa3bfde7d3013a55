#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mepack/packet.hpp"
#include "mepack/potential.hpp"

using mepack::PacketParams;
using mepack::PolynomialPotential;
using mepack::PotentialKind;

TEST_CASE("potential evaluation and force") {
    // V = q^2 / 2
    const PolynomialPotential hooke({0.0, 0.0, 1.0}, 1.0);
    CHECK(hooke.value(3.0) == doctest::Approx(4.5).epsilon(1e-15));
    CHECK(hooke.force(3.0) == doctest::Approx(-3.0).epsilon(1e-15));

    // V = V3 q^3 / 6 with V3 = 6
    const PolynomialPotential cubic({0.0, 0.0, 0.0, 6.0}, 1.0);
    CHECK(cubic.value(2.0) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(cubic.force(2.0) == doctest::Approx(-12.0).epsilon(1e-15));

    const PolynomialPotential constant({5.0}, 1.0);
    CHECK(constant.force(17.0) == 0.0);
    CHECK(constant.value(17.0) == 5.0);
}

TEST_CASE("potential classification and degree cap") {
    CHECK(PolynomialPotential({1.0}, 1.0).kind() == PotentialKind::free_particle);
    CHECK(PolynomialPotential({0.0, 2.0}, 1.0).kind() == PotentialKind::linear);
    CHECK(PolynomialPotential({0.0, 2.0, 1.0}, 1.0).kind() == PotentialKind::quadratic);
    CHECK(PolynomialPotential({0.0, 0.0, 0.0, 0.3}, 1.0).kind() == PotentialKind::higher);
    CHECK(PolynomialPotential({0.0, 0.0, 1.0, 0.0}, 1.0).degree() == 2);  // trailing zero

    std::vector<double> too_long(14, 1.0);
    CHECK_THROWS_AS(PolynomialPotential(too_long, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PolynomialPotential({0.0, 1.0}, -1.0), std::invalid_argument);
}

TEST_CASE("quadratic propagator: trigonometric branch") {
    const PolynomialPotential pot({0.0, 0.0, 1.0}, 1.0);
    const auto c = quadratic_propagator(pot, M_PI / 2.0);
    CHECK(c.f0 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(c.f1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.f2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.g0 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(c.g1 == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(c.g2 == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("quadratic propagator: free and linear branches") {
    const PolynomialPotential free_pot({0.0}, 2.0);
    const auto c = quadratic_propagator(free_pot, 3.0);
    CHECK(c.f0 == 0.0);
    CHECK(c.f1 == 1.0);
    CHECK(c.f2 == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(c.g0 == 0.0);
    CHECK(c.g1 == 0.0);
    CHECK(c.g2 == 1.0);

    const PolynomialPotential linear({0.0, 2.0}, 1.0);
    const auto d = quadratic_propagator(linear, 1.0);
    CHECK(d.f0 == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(d.g0 == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("propagator rejects degree >= 3") {
    const PolynomialPotential cubic({0.0, 0.0, 0.0, 1.0}, 1.0);
    CHECK_THROWS_AS(quadratic_propagator(cubic, 1.0), std::invalid_argument);
    const PacketParams params = PacketParams::make(0, 0, 1, 1);
    const std::vector<double> times{0.0, 1.0};
    CHECK_THROWS_AS(exact_trajectory(params, cubic, times), std::invalid_argument);
}

TEST_CASE("symplectic identity on random times, all branches") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    const PolynomialPotential trig({0.5, 0.4, 2.0}, 1.3);
    const PolynomialPotential hyper({0.5, 0.4, -2.0}, 1.3);
    const PolynomialPotential poly({0.5, 0.4}, 1.3);
    for (int rep = 0; rep < 100; ++rep) {
        const double t = u(gen);
        for (const auto* pot : {&trig, &hyper, &poly}) {
            const auto c = quadratic_propagator(*pot, t);
            // scale by the product magnitude: the hyperbolic branch cancels
            // cosh^2 - sinh^2 across many orders at large |t|
            const double scale = std::max(1.0, std::abs(c.f1 * c.g2));
            CHECK(std::abs(c.symplectic_defect()) < 1e-10 * scale);
        }
    }
    // absolute bound where the terms are O(1)
    std::uniform_real_distribution<double> v(-2.0, 2.0);
    for (int rep = 0; rep < 100; ++rep) {
        const double t = v(gen);
        for (const auto* pot : {&trig, &hyper, &poly})
            CHECK(std::abs(quadratic_propagator(*pot, t).symplectic_defect()) < 1e-10);
    }
}

TEST_CASE("hyperbolic branch solves the equations of motion") {
    // finite-difference check of qdot = p/mu, pdot = -V'(q) along the flow
    const PolynomialPotential pot({0.0, 0.7, -1.8}, 2.0);
    const double q0 = 0.4, p0 = -0.9, t = 0.8, h = 1e-5;
    auto flow = [&](double tt) {
        const auto c = quadratic_propagator(pot, tt);
        return std::pair{c.f0 + q0 * c.f1 + p0 * c.f2, c.g0 + q0 * c.g1 + p0 * c.g2};
    };
    const auto [q_minus, p_minus] = flow(t - h);
    const auto [q_plus, p_plus] = flow(t + h);
    const auto [q_mid, p_mid] = flow(t);
    CHECK((q_plus - q_minus) / (2.0 * h) ==
          doctest::Approx(p_mid / pot.mass()).epsilon(1e-8));
    CHECK((p_plus - p_minus) / (2.0 * h) ==
          doctest::Approx(pot.force(q_mid)).epsilon(1e-8));
}

TEST_CASE("trig and hyperbolic branches meet the V2 = 0 limit") {
    const double v1 = 0.6, mu = 1.7;
    const PolynomialPotential zero({0.0, v1}, mu);
    for (double v2 : {1e-8, -1e-8}) {
        const PolynomialPotential tiny({0.0, v1, v2}, mu);
        for (double t : {0.3, 1.1, 2.7}) {
            const auto a = quadratic_propagator(tiny, t);
            const auto b = quadratic_propagator(zero, t);
            CHECK(a.f0 == doctest::Approx(b.f0).epsilon(1e-6));
            CHECK(a.f1 == doctest::Approx(b.f1).epsilon(1e-6));
            CHECK(a.f2 == doctest::Approx(b.f2).epsilon(1e-6));
            CHECK(a.g0 == doctest::Approx(b.g0).epsilon(1e-6));
            CHECK(a.g2 == doctest::Approx(b.g2).epsilon(1e-6));
            CHECK(std::abs(a.g1 - b.g1) < 1e-6 * std::max(1.0, std::abs(b.g1)));
        }
    }
}

TEST_CASE("exact trajectory closed forms") {
    // free particle spreading
    const PolynomialPotential free_pot({0.0}, 1.0);
    const PacketParams p = PacketParams::make(0, 1, 1, 1);
    const std::vector<double> times{0.0, 2.0};
    const auto traj = exact_trajectory(p, free_pot, times);
    CHECK(traj.Q[1] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(traj.dQ[1] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));

    // harmonic: unit spreads stay frozen
    const PolynomialPotential hooke({0.0, 0.0, 1.0}, 1.0);
    const PacketParams h = PacketParams::make(1, 0, 1, 1);
    const std::vector<double> ht{0.0, 0.37, 1.9, M_PI, 5.1};
    const auto htraj = exact_trajectory(h, hooke, ht);
    for (std::size_t i = 0; i < ht.size(); ++i) {
        CHECK(htraj.dQ[i] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(htraj.dP[i] == doctest::Approx(1.0).epsilon(1e-14));
    }
    // half period flips the mean
    CHECK(htraj.Q[3] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(htraj.P[3]) < 1e-12);
}

TEST_CASE("exact trajectory restores initial state at t = 0") {
    const PolynomialPotential pot({0.1, -0.3, 0.9}, 2.2);
    const PacketParams p = PacketParams::make(0.4, -1.2, 0.7, 1.9);
    const std::vector<double> times{0.0};
    const auto traj = exact_trajectory(p, pot, times);
    CHECK(traj.Q[0] == p.Q);
    CHECK(traj.P[0] == p.P);
    CHECK(traj.dQ[0] == p.dQ);
    CHECK(traj.dP[0] == p.dP);
}
