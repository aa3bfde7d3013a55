#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace mepack {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Prescribed averages and spreads of position and momentum, plus the physical
// constants. Shared seed of the classical phase-space packet and the quantum
// state with the same four coordinates.
//
// `v` is the phase-space volume unit that makes the classical density
// dimensionless; it defaults to 2*pi*hbar, which lines the classical entropy
// 1 + ln(2*pi*dQ*dP/v) up with the quantum entropy as a function of the
// fuzziness nu.
struct PacketParams {
    double Q = 0.0;
    double P = 0.0;
    double dQ = 1.0;    // position standard deviation, > 0
    double dP = 1.0;    // momentum standard deviation, > 0
    double hbar = 1.0;  // > 0
    double v = two_pi;  // > 0

    static PacketParams make(double Q, double P, double dQ, double dP, double hbar = 1.0);

    void validate() const;  // throws std::invalid_argument on a bad field
};

// Dimensionless fuzziness 2*dP*dQ/hbar. Equals 1 at minimum uncertainty;
// a quantum packet exists only for nu >= 1.
double nu(const PacketParams& params);

// Gaussian phase-space density, normalized against dq dp / v:
//   rho(q,p) = (v / (2 pi dQ dP)) exp[-(q-Q)^2/(2 dQ^2) - (p-P)^2/(2 dP^2)].
double classical_density(const PacketParams& params, double q, double p);

// Closed form of -integral (dq dp / v) rho ln rho = 1 + ln(2 pi dQ dP / v).
double classical_entropy(const PacketParams& params);

// <(q-Q)^i (p-P)^j>: (i-1)!! dQ^i for even i (0 for odd), times the same in p.
double classical_central_moment(const PacketParams& params, unsigned i, unsigned j);

// Raw moment <q^i p^j> by binomial expansion around (Q, P).
double classical_raw_moment(const PacketParams& params, unsigned i, unsigned j);

// Eigen-decomposition of the quantum packet. The state is diagonal in the
// displaced oscillator basis of width `length_scale` centered at Q and
// boosted by exp(i P q / hbar); its spectrum is geometric:
//   weights[n] = (1 - ratio) * ratio^n,  ratio = (nu - 1)/(nu + 1).
struct QuantumSpectral {
    PacketParams params;
    double ratio = 0.0;
    std::vector<double> weights;
    double length_scale = 0.0;  // sqrt(hbar * dQ / dP)

    std::size_t n_max() const { return weights.size() - 1; }
};

// Hard cap on retained eigenfunctions; beyond this the fuzziness is too large
// for grid methods and the caller gets an error instead of a silent truncation.
inline constexpr std::size_t max_spectrum_terms = 100000;

// Truncates the geometric spectrum at the smallest n_max with
// sum_{n<=n_max} weights[n] >= 1 - tol. Rejects nu < 1.
QuantumSpectral quantum_spectrum(const PacketParams& params, double tol = 1e-10);

// -sum w_n ln w_n of the geometric spectrum:
//   -ln(1-r) - r ln(r) / (1-r); 0 at nu = 1 (limit value).
double quantum_entropy(const PacketParams& params);

// Gaussian wave packet
//   psi(q) = (2 pi dQ^2)^{-1/4} exp[-(q-Q)^2/(4 dQ^2) + i P q / hbar].
// It is the full quantum packet exactly when nu = 1.
std::complex<double> ground_wavefunction(const PacketParams& params, double q);

struct PhasePoint {
    double q = 0.0;
    double p = 0.0;
};

// n i.i.d. draws from the classical packet. Deterministic per
// (params, n, seed); sample i depends only on (seed, i), so the ensemble is
// identical however the index range is split across threads.
std::vector<PhasePoint> sample_classical(const PacketParams& params, std::size_t n,
                                         std::uint64_t seed);

}  // namespace mepack
