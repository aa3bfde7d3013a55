#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "mepack/hermite.hpp"
#include "mepack/packet.hpp"
#include "support/oracles.hpp"

using mepack::PacketParams;
using mepack::two_pi;

namespace {
PacketParams params_of(double Q, double P, double dQ, double dP, double hbar = 1.0) {
    return PacketParams::make(Q, P, dQ, dP, hbar);
}
}  // namespace

TEST_CASE("fuzziness nu") {
    CHECK(mepack::nu(params_of(0, 0, 1, 1, 2)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mepack::nu(params_of(0, 0, 2, 1, 1)) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(mepack::nu(params_of(0, 0, 1, 0.5, 1)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("parameter validation") {
    PacketParams p;
    p.dQ = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = PacketParams{};
    p.hbar = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("classical density values") {
    PacketParams p = params_of(0, 0, 1, 1);
    p.v = two_pi;
    CHECK(mepack::classical_density(p, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mepack::classical_density(p, 1, 0) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("classical density normalizes against dq dp / v") {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    for (int rep = 0; rep < 25; ++rep) {
        PacketParams p = params_of(u(gen) - 1.5, u(gen) - 1.5, u(gen), u(gen), u(gen));
        p.v = u(gen);
        const double total = oracles::phase_integral(
            p, [&](double q, double pp) { return mepack::classical_density(p, q, pp); });
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("classical entropy closed form matches quadrature") {
    // nu = 2 with v = 2 pi hbar
    PacketParams p = params_of(0.3, -0.7, 1.0, 1.0);
    CHECK(mepack::classical_entropy(p) == doctest::Approx(1.0).epsilon(1e-12));
    const double s_quad = oracles::phase_integral(p, [&](double q, double pp) {
        const double rho = mepack::classical_density(p, q, pp);
        return rho > 0.0 ? -rho * std::log(rho) : 0.0;
    });
    CHECK(s_quad == doctest::Approx(1.0).epsilon(1e-9));

    PacketParams w = params_of(0, 0, 1, 1);
    w.v = two_pi;  // 2 pi dQ dP / v = 1
    CHECK(mepack::classical_entropy(w) == doctest::Approx(1.0).epsilon(1e-12));
    const double s_quad2 = oracles::phase_integral(w, [&](double q, double pp) {
        const double rho = mepack::classical_density(w, q, pp);
        return rho > 0.0 ? -rho * std::log(rho) : 0.0;
    });
    CHECK(s_quad2 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("classical entropy scaling shift") {
    const PacketParams p = params_of(0, 0, 1.3, 0.8);
    for (double a : {2.0, 5.0, 11.0}) {
        PacketParams scaled = p;
        scaled.dQ *= a;
        CHECK(mepack::classical_entropy(scaled) - mepack::classical_entropy(p) ==
              doctest::Approx(std::log(a)).epsilon(1e-12));
    }
}

TEST_CASE("central and raw moments") {
    PacketParams p = params_of(0, 0, 2, 1);
    CHECK(mepack::classical_central_moment(p, 6, 0) == doctest::Approx(960.0).epsilon(1e-13));
    CHECK(mepack::classical_central_moment(p, 1, 0) == 0.0);
    CHECK(mepack::classical_central_moment(p, 3, 2) == 0.0);

    PacketParams r = params_of(1, 0, 1, 1);
    CHECK(mepack::classical_raw_moment(r, 6, 0) == doctest::Approx(76.0).epsilon(1e-13));

    // quadrature cross-check of a mixed raw moment
    PacketParams m = params_of(0.5, -0.25, 1.1, 0.7);
    const double oracle = oracles::phase_integral(m, [&](double q, double pp) {
        return q * q * pp * pp * mepack::classical_density(m, q, pp);
    });
    CHECK(mepack::classical_raw_moment(m, 2, 2) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("quantum spectrum: geometric weights") {
    PacketParams p = params_of(0, 0, 1.5, 1.0);  // nu = 3
    const auto spec = mepack::quantum_spectrum(p, 1e-12);
    CHECK(spec.ratio == doctest::Approx(0.5).epsilon(1e-15));
    REQUIRE(spec.weights.size() >= 3);
    CHECK(spec.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(spec.weights[1] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(spec.weights[2] == doctest::Approx(0.125).epsilon(1e-14));
    for (std::size_t n = 1; n < spec.weights.size(); ++n)
        CHECK(spec.weights[n] < spec.weights[n - 1]);

    double sum = 0.0;
    for (double w : spec.weights) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("quantum spectrum matches dense operator exponential") {
    // exponentiate the displaced quadratic form in a truncated number basis
    PacketParams p = params_of(0.4, -0.3, 1.5, 1.0);  // nu = 3, displaced
    const auto spec = mepack::quantum_spectrum(p, 1e-12);
    const auto dense = oracles::packet_spectrum_dense(p, 160, 8);
    for (int k = 0; k < 8; ++k)
        CHECK(spec.weights[k] == doctest::Approx(dense[k]).epsilon(1e-8));
}

TEST_CASE("quantum spectrum boundary and errors") {
    const auto spec = mepack::quantum_spectrum(params_of(0, 0, 1, 0.5), 1e-12);  // nu = 1
    REQUIRE(spec.weights.size() == 1);
    CHECK(spec.weights[0] == 1.0);
    CHECK(spec.ratio == 0.0);

    CHECK_THROWS_AS(mepack::quantum_spectrum(params_of(0, 0, 0.5, 0.5), 1e-12),
                    std::invalid_argument);  // nu < 1
    CHECK_THROWS_AS(mepack::quantum_spectrum(params_of(0, 0, 1, 1), 2.0),
                    std::invalid_argument);  // bad tol
}

TEST_CASE("nu = 1 purity") {
    const auto spec = mepack::quantum_spectrum(params_of(0, 0, 1, 0.5), 1e-14);
    double purity = 0.0;
    for (double w : spec.weights) purity += w * w;
    CHECK(purity == 1.0);
}

TEST_CASE("quantum entropy values and monotonicity") {
    CHECK(mepack::quantum_entropy(params_of(0, 0, 1, 0.5)) == 0.0);  // nu = 1
    const PacketParams p3 = params_of(0, 0, 1.5, 1.0);                // nu = 3
    CHECK(mepack::quantum_entropy(p3) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));

    // agrees with -sum w ln w over the truncated spectrum
    const auto spec = mepack::quantum_spectrum(p3, 1e-14);
    double s = 0.0;
    for (double w : spec.weights) s -= w * std::log(w);
    CHECK(mepack::quantum_entropy(p3) == doctest::Approx(s).epsilon(1e-10));

    double last = -1.0;
    for (double fuzz : {1.1, 2.0, 4.0, 8.0, 16.0, 64.0, 256.0, 1024.0}) {
        const double entropy = mepack::quantum_entropy(params_of(0, 0, fuzz / 2.0, 1.0));
        CHECK(entropy > last);
        last = entropy;
    }
    CHECK(mepack::quantum_entropy(params_of(0, 0, 2.5, 1.0)) >
          mepack::quantum_entropy(params_of(0, 0, 1.5, 1.0)));
}

TEST_CASE("exponent coefficient approaches 1 for large nu") {
    auto coeff = [](double fuzz) { return 0.5 * fuzz * std::log((fuzz + 1.0) / (fuzz - 1.0)); };
    CHECK(std::abs(coeff(1e3) - 1.0) < 1e-6);
    CHECK(std::abs(coeff(10.0) - 1.0) > std::abs(coeff(100.0) - 1.0));
}

TEST_CASE("ground wavefunction") {
    const PacketParams p = params_of(0, 0, 1, 0.5);
    CHECK(std::abs(mepack::ground_wavefunction(p, 0.0)) ==
          doctest::Approx(std::pow(1.0 / two_pi, 0.25)).epsilon(1e-14));

    // normalization on a fine grid
    double norm = 0.0;
    const double dq = 1e-3;
    for (double q = -12.0; q <= 12.0; q += dq)
        norm += std::norm(mepack::ground_wavefunction(p, q)) * dq;
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));

    // |psi|^2 is a Gaussian of spread dQ
    const PacketParams wide = params_of(0.7, 0, 1.6, 0.5 / 1.6);
    double var = 0.0;
    for (double q = -16.0; q <= 18.0; q += dq)
        var += (q - wide.Q) * (q - wide.Q) * std::norm(mepack::ground_wavefunction(wide, q)) * dq;
    CHECK(var == doctest::Approx(wide.dQ * wide.dQ).epsilon(1e-8));

    // phase factor exp(i P q / hbar)
    const PacketParams boosted = params_of(0, 1, 1, 0.5);
    const auto at_pi = mepack::ground_wavefunction(boosted, M_PI);
    CHECK(std::arg(at_pi) == doctest::Approx(M_PI).epsilon(1e-12));
}

TEST_CASE("ground wavefunction equals the single nu = 1 eigenfunction") {
    const PacketParams p = params_of(0.3, -0.6, 0.9, 1.0 / (2.0 * 0.9));  // nu = 1
    const auto spec = mepack::quantum_spectrum(p, 1e-12);
    REQUIRE(spec.weights.size() == 1);
    const double ell = spec.length_scale;
    for (double q : {-2.0, -0.5, 0.3, 1.4, 3.0}) {
        const auto direct = mepack::ground_wavefunction(p, q);
        const std::complex<double> from_spec =
            mepack::hermite_function(0, (q - p.Q) / ell) / std::sqrt(ell) *
            std::polar(1.0, p.P * q / p.hbar);
        CHECK(std::abs(direct - from_spec) < 1e-10);
    }
}

TEST_CASE("hermite functions: orthonormal against quadrature") {
    const auto gh = oracles::gauss_hermite(64);
    for (unsigned m = 0; m < 6; ++m) {
        for (unsigned n = m; n < 6; ++n) {
            double acc = 0.0;
            for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
                const double x = gh.nodes[k];
                acc += gh.weights[k] * mepack::hermite_function(m, x) *
                       mepack::hermite_function(n, x) * std::exp(x * x);
            }
            CHECK(acc == doctest::Approx(m == n ? 1.0 : 0.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("classical sampling statistics") {
    const PacketParams p = params_of(1.5, -2.0, 0.8, 1.7);
    const std::size_t n = 1000000;
    const auto pts = mepack::sample_classical(p, n, 99);
    double mq = 0.0, mp = 0.0;
    for (const auto& x : pts) {
        mq += x.q;
        mp += x.p;
    }
    mq /= static_cast<double>(n);
    mp /= static_cast<double>(n);
    const double rn = std::sqrt(static_cast<double>(n));
    CHECK(std::abs(mq - p.Q) < 5.0 * p.dQ / rn);
    CHECK(std::abs(mp - p.P) < 5.0 * p.dP / rn);

    double vq = 0.0, vp = 0.0;
    for (const auto& x : pts) {
        vq += (x.q - mq) * (x.q - mq);
        vp += (x.p - mp) * (x.p - mp);
    }
    vq /= static_cast<double>(n - 1);
    vp /= static_cast<double>(n - 1);
    CHECK(std::abs(vq - p.dQ * p.dQ) < 5.0 * std::sqrt(2.0) * p.dQ * p.dQ / rn);
    CHECK(std::abs(vp - p.dP * p.dP) < 5.0 * std::sqrt(2.0) * p.dP * p.dP / rn);
}

TEST_CASE("classical sampling determinism") {
    const PacketParams p = params_of(0, 0, 1, 1);
    const auto a = mepack::sample_classical(p, 4096, 7);
    const auto b = mepack::sample_classical(p, 4096, 7);
    const auto c = mepack::sample_classical(p, 4096, 8);
    bool identical = true;
    bool distinct = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        identical = identical && a[i].q == b[i].q && a[i].p == b[i].p;
        distinct = distinct || a[i].q != c[i].q;
    }
    CHECK(identical);
    CHECK(distinct);
}
