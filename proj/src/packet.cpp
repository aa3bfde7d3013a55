#include "mepack/packet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mepack/errors.hpp"
#include "mepack/parallel.hpp"
#include "mepack/rng.hpp"

namespace mepack {

PacketParams PacketParams::make(double Q, double P, double dQ, double dP, double hbar) {
    PacketParams p{Q, P, dQ, dP, hbar, two_pi * hbar};
    p.validate();
    return p;
}

void PacketParams::validate() const {
    if (!(dQ > 0.0) || !std::isfinite(dQ)) throw std::invalid_argument("dQ must be positive");
    if (!(dP > 0.0) || !std::isfinite(dP)) throw std::invalid_argument("dP must be positive");
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw std::invalid_argument("hbar must be positive");
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("v must be positive");
    if (!std::isfinite(Q) || !std::isfinite(P)) throw std::invalid_argument("Q, P must be finite");
}

double nu(const PacketParams& params) { return 2.0 * params.dP * params.dQ / params.hbar; }

double classical_density(const PacketParams& params, double q, double p) {
    const double uq = (q - params.Q) / params.dQ;
    const double up = (p - params.P) / params.dP;
    return params.v / (two_pi * params.dQ * params.dP) * std::exp(-0.5 * (uq * uq + up * up));
}

double classical_entropy(const PacketParams& params) {
    return 1.0 + std::log(two_pi * params.dQ * params.dP / params.v);
}

namespace {

// (k-1)!! sigma^k for even k; odd central moments of a Gaussian vanish.
double gaussian_central_moment_1d(unsigned k, double sigma) {
    if (k % 2 != 0) return 0.0;
    double m = 1.0;
    for (unsigned j = 1; j < k; j += 2) m *= static_cast<double>(j);
    return m * std::pow(sigma, static_cast<double>(k));
}

double binomial(unsigned n, unsigned k) {
    double r = 1.0;
    for (unsigned j = 1; j <= k; ++j)
        r *= static_cast<double>(n - k + j) / static_cast<double>(j);
    return r;
}

double gaussian_raw_moment_1d(unsigned k, double mean, double sigma) {
    double acc = 0.0;
    for (unsigned j = 0; j <= k; j += 2)
        acc += binomial(k, j) * std::pow(mean, static_cast<double>(k - j)) *
               gaussian_central_moment_1d(j, sigma);
    return acc;
}

}  // namespace

double classical_central_moment(const PacketParams& params, unsigned i, unsigned j) {
    return gaussian_central_moment_1d(i, params.dQ) * gaussian_central_moment_1d(j, params.dP);
}

double classical_raw_moment(const PacketParams& params, unsigned i, unsigned j) {
    return gaussian_raw_moment_1d(i, params.Q, params.dQ) *
           gaussian_raw_moment_1d(j, params.P, params.dP);
}

QuantumSpectral quantum_spectrum(const PacketParams& params, double tol) {
    params.validate();
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("tol must be in (0, 1)");
    const double fuzz = nu(params);
    // rounding slack at the minimum-uncertainty boundary
    if (fuzz < 1.0 - 1e-12)
        throw std::invalid_argument("nu = 2 dP dQ / hbar = " + std::to_string(fuzz) +
                                    " < 1: no quantum state below minimum uncertainty");

    QuantumSpectral spec;
    spec.params = params;
    spec.length_scale = std::sqrt(params.hbar * params.dQ / params.dP);
    spec.ratio = std::max(0.0, (fuzz - 1.0) / (fuzz + 1.0));

    if (spec.ratio == 0.0) {
        spec.weights = {1.0};
        return spec;
    }
    // Geometric tail after n terms is ratio^n; stop once it drops below tol.
    double tail = 1.0;
    const double w0 = 1.0 - spec.ratio;
    for (std::size_t n = 0; n < max_spectrum_terms; ++n) {
        spec.weights.push_back(w0 * std::pow(spec.ratio, static_cast<double>(n)));
        tail *= spec.ratio;
        if (tail <= tol) return spec;
    }
    throw numerics_error("quantum_spectrum: nu = " + std::to_string(fuzz) +
                         " needs more than " + std::to_string(max_spectrum_terms) +
                         " eigenfunctions at tol = " + std::to_string(tol));
}

double quantum_entropy(const PacketParams& params) {
    params.validate();
    const double fuzz = nu(params);
    if (fuzz < 1.0 - 1e-12)
        throw std::invalid_argument("quantum_entropy requires nu >= 1");
    const double r = std::max(0.0, (fuzz - 1.0) / (fuzz + 1.0));
    if (r == 0.0) return 0.0;
    return -std::log1p(-r) - r / (1.0 - r) * std::log(r);
}

std::complex<double> ground_wavefunction(const PacketParams& params, double q) {
    const double x = q - params.Q;
    const double amp = std::pow(two_pi * params.dQ * params.dQ, -0.25) *
                       std::exp(-x * x / (4.0 * params.dQ * params.dQ));
    const double phase = params.P * q / params.hbar;
    return std::polar(amp, phase);
}

std::vector<PhasePoint> sample_classical(const PacketParams& params, std::size_t n,
                                         std::uint64_t seed) {
    params.validate();
    if (n == 0) throw std::invalid_argument("sample_classical: n must be >= 1");
    std::vector<PhasePoint> pts(n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto [z0, z1] = rng::normal_pair(seed, 0, i);
            pts[i].q = params.Q + params.dQ * z0;
            pts[i].p = params.P + params.dP * z1;
        }
    });
    return pts;
}

}  // namespace mepack
