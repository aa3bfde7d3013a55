#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mepack {

// Open chain of N+1 particles coupled by nearest-neighbour springs:
//   H = (1/2mu) sum p_n^2 + (kappa^2/2) sum (x_n - x_{n-1} - xi)^2.
// N is the number of internal modes; the extra degree of freedom is the
// center of mass, which decouples and carries total mass (N+1) mu.
struct RodSpec {
    std::size_t N = 1;   // mode count; N+1 particles
    double mu = 1.0;     // particle mass
    double kappa = 1.0;  // oscillator strength; kappa^2 is the spring constant
    double xi = 1.0;     // equilibrium spacing
    double lam = 1.0;    // inverse temperature 1/kT
    double hbar = 1.0;

    double total_mass() const { return static_cast<double>(N + 1) * mu; }
    double temperature(double k_boltzmann = 1.0) const { return 1.0 / (k_boltzmann * lam); }
    void validate() const;
};

// omega_m = (2 kappa / sqrt(mu)) sin(pi m / (2(N+1))), m = 1..N, ascending.
std::vector<double> phonon_frequencies(const RodSpec& spec);

// Orthogonal map from equilibrium-shifted particle displacements to
// (center of mass, modes). Row 0 is the uniform center-of-mass row; row m is
// the open-chain cosine mode sqrt(2/(N+1)) cos(pi m (2n-1) / (2(N+1))).
struct ModeBasis {
    std::vector<double> frequencies;  // omega_1..omega_N
    std::vector<double> transform;    // row-major (N+1) x (N+1)

    std::size_t size() const { return frequencies.size() + 1; }
    double coeff(std::size_t row, std::size_t col) const { return transform[row * size() + col]; }
};

// Materializes the full matrix; intended for moderate N (memory grows as N^2).
ModeBasis mode_basis(const RodSpec& spec);

// P^m_r = (1 - e^{-lam hbar omega_m}) e^{-lam hbar omega_m r}, r = 0, 1, ...
double mode_occupation(const RodSpec& spec, std::size_t m, std::uint64_t r);

// Mean phonon number of mode m, 1 / (e^{lam hbar omega_m} - 1).
double bose_mean_occupation(const RodSpec& spec, std::size_t m);

// E = sum_m hbar omega_m (1/2 + bose(m)); strictly decreasing in lam.
double internal_energy(const RodSpec& spec);

double zero_point_energy(const RodSpec& spec);

// Inverts internal_energy for lam at fixed chain parameters (spec.lam is
// ignored). Requires energy above the zero-point value.
double lambda_from_energy(const RodSpec& spec, double energy);

struct RodLengthStats {
    double mean = 0.0;      // N xi exactly, independent of lam
    double variance = 0.0;  // sum over modes of c_m^2 <u_m^2>
};

// Statistics of the rod-length observable x_{N+1} - x_1 in the thermal state.
RodLengthStats rod_length_stats(const RodSpec& spec);

// Var(E_int)/E_int^2 with Var(E) = sum (hbar omega_m)^2 nbar (nbar + 1)
// (independent geometric mode occupations).
double energy_fluctuation(const RodSpec& spec);

}  // namespace mepack
