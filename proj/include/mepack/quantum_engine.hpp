#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mepack/packet.hpp"
#include "mepack/potential.hpp"
#include "mepack/trajectory.hpp"

namespace mepack {

// FFTW-aligned storage for branch amplitudes.
template <class T>
struct FftwAllocator {
    using value_type = T;
    FftwAllocator() = default;
    template <class U>
    FftwAllocator(const FftwAllocator<U>&) {}
    T* allocate(std::size_t n);
    void deallocate(T* p, std::size_t) noexcept;
    bool operator==(const FftwAllocator&) const { return true; }
};

using ComplexGrid = std::vector<std::complex<double>, FftwAllocator<std::complex<double>>>;

// Uniform position grid with periodic (FFT) conventions.
struct GridSpec {
    double q_min = 0.0;
    double q_max = 0.0;
    std::size_t n_points = 0;  // power of two >= 256

    double dq() const { return (q_max - q_min) / static_cast<double>(n_points); }
    double q_at(std::size_t i) const { return q_min + static_cast<double>(i) * dq(); }
    void validate() const;
};

// Smallest admissible power-of-two grid that spans [q_lo, q_hi] and resolves
// momenta up to p_max (dq <= pi hbar / p_max).
GridSpec make_grid(double q_lo, double q_hi, double p_max, double hbar,
                   std::size_t n_min = 256);

// Grid sized for a packet evolved up to t_max: spans the ballistic estimate
// of Q +- 8 dQ(t) with margin and resolves |P| + 8 dP with margin. Anharmonic
// runs that outgrow it are caught by the edge monitor, not silently wrapped.
GridSpec default_grid(const PacketParams& params, const PolynomialPotential& pot, double t_max);

// Weighted mixture of pure states on a grid. Branch n holds the n-th
// eigenfunction of the packet (Hermite function of width length_scale,
// displaced by Q, boosted by exp(i P q / hbar)); `weights` is the geometric
// spectrum, which unitary evolution never changes.
struct MixedStateGrid {
    GridSpec grid;
    std::vector<double> weights;
    std::vector<ComplexGrid> branches;
    double hbar = 1.0;

    std::size_t n_branches() const { return branches.size(); }
    double branch_norm(std::size_t b) const;        // integral |psi_b|^2 dq
    double weight_sum() const;                       // trace of the mixture
    std::vector<double> density() const;             // mixture |psi|^2 on grid
};

// Samples the spectral form of the packet on the grid. Rejects nu < 1 and
// grids that violate the coverage rule (span < Q +- 8 dQ or dq too coarse for
// |P| + 8 dP).
MixedStateGrid build_state(const PacketParams& params, const GridSpec& grid, double tol = 1e-10);

// (Q, P, dQ, dP) of the mixture: position moments by grid quadrature,
// momentum moments spectrally (Fourier multiplier), branch means combined by
// the law of total variance. Deterministic branch order.
StateQuad observables(const MixedStateGrid& state);

struct QuantumEvolveOptions {
    double dt = 0.0;           // 0 -> characteristic_time / 2000
    double leak_tol = 1e-6;    // max tolerated probability near the grid edge
    std::size_t edge_cells = 0;  // 0 -> n_points / 64 per side (min 4)
};

// Strang-split propagation exp(-iV dt/2h) exp(-i p^2 dt/2mu h) exp(-iV dt/2h)
// of every branch, kinetic factor applied in momentum space. Observables are
// recorded at each requested time; weights stay fixed. Throws numerics_error
// when probability mass at the grid edge exceeds leak_tol (wrap-around would
// silently corrupt moments otherwise). The state is advanced in place.
Trajectory evolve_quantum(MixedStateGrid& state, const PolynomialPotential& pot,
                          std::span<const double> times, const QuantumEvolveOptions& opt = {});

struct MomentResult {
    double value = 0.0;       // grid quadrature of q^k against the mixture
    double tail_bound = 0.0;  // edge-mass estimate of the truncated tail
};

// <q^k> of the mixture, k <= 12; tail_bound reports how much the grid
// truncation could plausibly contribute at the edges.
MomentResult quantum_polynomial_moment(const MixedStateGrid& state, unsigned k);

}  // namespace mepack
