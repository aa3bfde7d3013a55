#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mepack/classical_engine.hpp"
#include "mepack/errors.hpp"
#include "mepack/packet.hpp"
#include "mepack/potential.hpp"

using mepack::EvolveOptions;
using mepack::PacketParams;
using mepack::PhasePoint;
using mepack::PolynomialPotential;

namespace {

const PolynomialPotential hooke({0.0, 0.0, 1.0}, 1.0);
const PolynomialPotential free_pot({0.0}, 1.0);

EvolveOptions fast_opts(std::size_t n = 20000, std::uint64_t seed = 3) {
    EvolveOptions opt;
    opt.n_samples = n;
    opt.seed = seed;
    return opt;
}

}  // namespace

TEST_CASE("harmonic ensemble returns after one period") {
    const PacketParams p = PacketParams::make(1.2, -0.4, 0.9, 1.4);
    const std::vector<double> times{2.0 * M_PI};
    const auto traj = evolve_classical(p, hooke, times, fast_opts(50000));
    const double rn = std::sqrt(50000.0);
    CHECK(std::abs(traj.Q[0] - p.Q) < 5.0 * p.dQ / rn);
    CHECK(std::abs(traj.P[0] - p.P) < 5.0 * p.dP / rn);
    CHECK(std::abs(traj.dQ[0] - p.dQ) < 5.0 * p.dQ / std::sqrt(2.0 * 50000.0));
    CHECK(std::abs(traj.dP[0] - p.dP) < 5.0 * p.dP / std::sqrt(2.0 * 50000.0));
}

TEST_CASE("free particle spreading") {
    const PacketParams p = PacketParams::make(0, 1, 1, 1);
    const std::vector<double> times{2.0};
    const auto traj = evolve_classical(p, free_pot, times, fast_opts(50000));
    const double rn = std::sqrt(50000.0);
    CHECK(std::abs(traj.Q[0] - 2.0) < 5.0 * std::sqrt(5.0) / rn);
    CHECK(std::abs(traj.dQ[0] - std::sqrt(5.0)) < 5.0 * std::sqrt(5.0) / std::sqrt(2.0 * 50000.0));
}

TEST_CASE("zero potential conserves every momentum bitwise") {
    const PacketParams p = PacketParams::make(0.5, -1.0, 1.0, 2.0);
    const std::vector<double> times{0.0, 1.7};
    const auto traj = evolve_classical(p, free_pot, times, fast_opts());
    CHECK(traj.P[1] == traj.P[0]);
    CHECK(traj.dP[1] == traj.dP[0]);

    const auto pts = mepack::sample_classical(p, 100, 3);
    for (const auto& x : pts) {
        const auto moved = leapfrog_integrate(x, free_pot, 1.7, 1e-3);
        CHECK(moved.p == x.p);
    }
}

TEST_CASE("engine matches closed forms for degree <= 2") {
    const PolynomialPotential pot({0.0, 0.5, 2.0}, 1.3);
    const PacketParams p = PacketParams::make(0.8, 0.3, 0.7, 1.1);
    const std::vector<double> times{0.0, 0.5, 1.0, 2.0, 3.5};
    const std::size_t n = 50000;
    const auto mc = evolve_classical(p, pot, times, fast_opts(n, 17));
    const auto exact = exact_trajectory(p, pot, times);
    const double rn = std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < times.size(); ++i) {
        CHECK(std::abs(mc.Q[i] - exact.Q[i]) < 5.0 * exact.dQ[i] / rn);
        CHECK(std::abs(mc.P[i] - exact.P[i]) < 5.0 * exact.dP[i] / rn);
        CHECK(std::abs(mc.dQ[i] - exact.dQ[i]) < 5.0 * exact.dQ[i] / std::sqrt(2.0 * n));
        CHECK(std::abs(mc.dP[i] - exact.dP[i]) < 5.0 * exact.dP[i] / std::sqrt(2.0 * n));
    }
}

TEST_CASE("energy drift stays small for the harmonic run") {
    const PacketParams p = PacketParams::make(1, 0, 1, 1);
    const auto before = mepack::sample_classical(p, 5000, 5);
    std::vector<PhasePoint> after(before.size());
    for (std::size_t i = 0; i < before.size(); ++i)
        after[i] = leapfrog_integrate(before[i], hooke, 10.0, 1e-3);
    const double drift = ensemble_energy_drift(hooke, before, after);
    CHECK(drift < 1e-6);
    CHECK(ensemble_energy_drift(hooke, before, before) == 0.0);
}

TEST_CASE("energy drift flags an unstable step") {
    const PacketParams p = PacketParams::make(1, 0, 1, 1);
    const std::vector<double> times{10.0};
    EvolveOptions opt = fast_opts(2000);
    opt.dt = 0.5;  // wildly coarse for omega = 1
    opt.drift_tol = 1e-8;
    CHECK_THROWS_AS(evolve_classical(p, hooke, times, opt), mepack::numerics_error);
}

TEST_CASE("escaping cubic sample aborts with a diagnostic") {
    // packet placed on the downhill side of V = q^3/2
    const PolynomialPotential cubic({0.0, 0.0, 0.0, 3.0}, 1.0);
    const PacketParams p = PacketParams::make(-4.0, -2.0, 0.5, 0.5);
    const std::vector<double> times{8.0};
    EvolveOptions opt = fast_opts(2000);
    opt.q_bound = 30.0;
    CHECK_THROWS_AS(evolve_classical(p, cubic, times, opt), mepack::numerics_error);
}

TEST_CASE("escape time estimate is finite for unbound runs, infinite for bound ones") {
    const PolynomialPotential cubic({0.0, 0.0, 0.0, 3.0}, 1.0);
    const PacketParams p = PacketParams::make(-4.0, -2.0, 0.5, 0.5);
    EvolveOptions opt = fast_opts(2000);
    opt.q_bound = 30.0;
    const double t_esc = estimate_escape_time(p, cubic, 8.0, opt);
    CHECK(std::isfinite(t_esc));
    CHECK(t_esc > 0.0);

    const PacketParams h = PacketParams::make(1, 0, 1, 1);
    EvolveOptions hopt = fast_opts(2000);
    hopt.q_bound = 1e3;
    CHECK(!std::isfinite(estimate_escape_time(h, hooke, 10.0, hopt)));
}

TEST_CASE("leapfrog is time reversible") {
    const PacketParams p = PacketParams::make(0.7, -0.2, 1.0, 1.0);
    const auto pts = mepack::sample_classical(p, 200, 21);
    for (const auto& x : pts) {
        const auto fwd = leapfrog_integrate(x, hooke, 1.0, 1e-3);  // exact step multiple
        const auto back = leapfrog_integrate({fwd.q, -fwd.p}, hooke, 1.0, 1e-3);
        CHECK(std::abs(back.q - x.q) < 1e-8);
        CHECK(std::abs(-back.p - x.p) < 1e-8);
    }
}

TEST_CASE("moment error shrinks like 1 / sqrt(n)") {
    const PacketParams p = PacketParams::make(0.5, 0.1, 1.0, 1.0);
    const std::vector<double> times{0.5};
    const auto exact = exact_trajectory(p, hooke, times);
    auto rms_error = [&](std::size_t n) {
        double acc = 0.0;
        const int reps = 24;
        for (int r = 0; r < reps; ++r) {
            EvolveOptions opt = fast_opts(n, 1000 + r);
            opt.dt = 2e-3;
            const auto traj = evolve_classical(p, hooke, times, opt);
            acc += (traj.Q[0] - exact.Q[0]) * (traj.Q[0] - exact.Q[0]);
        }
        return std::sqrt(acc / reps);
    };
    const double coarse = rms_error(1000);
    const double fine = rms_error(16000);  // n x 16 => error / 4 expected
    const double ratio = coarse / fine;
    CHECK(ratio > 2.0);
    CHECK(ratio < 8.0);
}

TEST_CASE("input validation") {
    const PacketParams p = PacketParams::make(0, 0, 1, 1);
    const std::vector<double> bad_order{1.0, 0.5};
    CHECK_THROWS_AS(evolve_classical(p, hooke, bad_order, fast_opts()),
                    std::invalid_argument);
    const std::vector<double> ok{1.0};
    EvolveOptions opt;
    opt.n_samples = 10;  // below the contract minimum
    CHECK_THROWS_AS(evolve_classical(p, hooke, ok, opt), std::invalid_argument);
}
