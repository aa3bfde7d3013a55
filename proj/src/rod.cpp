#include "mepack/rod.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mepack/errors.hpp"

namespace mepack {

void RodSpec::validate() const {
    if (N < 1) throw std::invalid_argument("rod: N must be >= 1");
    if (!(mu > 0.0) || !(kappa > 0.0) || !(xi > 0.0) || !(hbar > 0.0))
        throw std::invalid_argument("rod: mu, kappa, xi, hbar must be positive");
    if (!(lam > 0.0)) throw std::invalid_argument("rod: lam must be positive");
}

std::vector<double> phonon_frequencies(const RodSpec& spec) {
    spec.validate();
    std::vector<double> w(spec.N);
    const double pref = 2.0 * spec.kappa / std::sqrt(spec.mu);
    const double arg = M_PI / (2.0 * static_cast<double>(spec.N + 1));
    for (std::size_t m = 1; m <= spec.N; ++m)
        w[m - 1] = pref * std::sin(arg * static_cast<double>(m));
    return w;
}

namespace {

// mode-m component of the displacement of particle n (1-based), m >= 1
double mode_coeff(std::size_t N, std::size_t m, std::size_t n) {
    const double denom = 2.0 * static_cast<double>(N + 1);
    return std::sqrt(2.0 / static_cast<double>(N + 1)) *
           std::cos(M_PI * static_cast<double>(m) * (2.0 * static_cast<double>(n) - 1.0) / denom);
}

double lam_hbar_omega(const RodSpec& spec, double omega) { return spec.lam * spec.hbar * omega; }

// <u_m^2> in the mode's thermal state: (hbar / 2 mu omega) coth(x/2)
// with coth(x/2) = 1 + 2/(e^x - 1)
double mode_square_displacement(const RodSpec& spec, double omega) {
    const double x = lam_hbar_omega(spec, omega);
    return spec.hbar / (2.0 * spec.mu * omega) * (1.0 + 2.0 / std::expm1(x));
}

}  // namespace

ModeBasis mode_basis(const RodSpec& spec) {
    spec.validate();
    const std::size_t size = spec.N + 1;
    if (size > 4097)
        throw std::invalid_argument("mode_basis: refusing to materialize a " +
                                    std::to_string(size) + "^2 matrix; use the closed forms");
    ModeBasis basis;
    basis.frequencies = phonon_frequencies(spec);
    basis.transform.assign(size * size, 0.0);
    const double cm = 1.0 / std::sqrt(static_cast<double>(size));
    for (std::size_t n = 0; n < size; ++n) basis.transform[n] = cm;
    for (std::size_t m = 1; m <= spec.N; ++m)
        for (std::size_t n = 1; n <= size; ++n)
            basis.transform[m * size + (n - 1)] = mode_coeff(spec.N, m, n);
    return basis;
}

double mode_occupation(const RodSpec& spec, std::size_t m, std::uint64_t r) {
    spec.validate();
    if (m < 1 || m > spec.N)
        throw std::invalid_argument("mode_occupation: mode index out of range");
    const double x = lam_hbar_omega(spec, phonon_frequencies(spec)[m - 1]);
    return -std::expm1(-x) * std::exp(-x * static_cast<double>(r));
}

double bose_mean_occupation(const RodSpec& spec, std::size_t m) {
    spec.validate();
    if (m < 1 || m > spec.N)
        throw std::invalid_argument("bose_mean_occupation: mode index out of range");
    return 1.0 / std::expm1(lam_hbar_omega(spec, phonon_frequencies(spec)[m - 1]));
}

double internal_energy(const RodSpec& spec) {
    spec.validate();
    double e = 0.0;
    for (double w : phonon_frequencies(spec))
        e += spec.hbar * w * (0.5 + 1.0 / std::expm1(lam_hbar_omega(spec, w)));
    return e;
}

double zero_point_energy(const RodSpec& spec) {
    spec.validate();
    double e = 0.0;
    for (double w : phonon_frequencies(spec)) e += 0.5 * spec.hbar * w;
    return e;
}

double lambda_from_energy(const RodSpec& spec, double energy) {
    spec.validate();
    const double e_zp = zero_point_energy(spec);
    if (!(energy > e_zp))
        throw std::invalid_argument("lambda_from_energy: energy " + std::to_string(energy) +
                                    " is at or below the zero-point value " +
                                    std::to_string(e_zp));
    const auto freqs = phonon_frequencies(spec);
    auto energy_at = [&](double lam) {
        double e = 0.0;
        for (double w : freqs)
            e += spec.hbar * w * (0.5 + 1.0 / std::expm1(lam * spec.hbar * w));
        return e;
    };
    // dE/dlam = -sum (hbar w)^2 nbar (nbar + 1), always negative
    auto slope_at = [&](double lam) {
        double s = 0.0;
        for (double w : freqs) {
            const double nbar = 1.0 / std::expm1(lam * spec.hbar * w);
            s -= spec.hbar * w * spec.hbar * w * nbar * (nbar + 1.0);
        }
        return s;
    };

    // bracket around the equipartition guess lam ~ N / (E - E_zp)
    double lo = static_cast<double>(spec.N) / (energy - e_zp);
    double hi = lo;
    for (int i = 0; i < 2100 && energy_at(lo) < energy; ++i) lo *= 0.5;
    for (int i = 0; i < 2100 && energy_at(hi) > energy; ++i) hi *= 2.0;
    if (!(energy_at(lo) >= energy && energy_at(hi) <= energy))
        throw numerics_error("lambda_from_energy: could not bracket the requested energy");

    double lam = 0.5 * (lo + hi);
    const double tol = 1e-12 * energy;
    for (int it = 0; it < 200; ++it) {
        const double e = energy_at(lam);
        if (std::abs(e - energy) <= tol) return lam;
        if (e > energy)
            lo = lam;
        else
            hi = lam;
        double next = lam - (e - energy) / slope_at(lam);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // safeguarded bisection
        lam = next;
    }
    if (std::abs(energy_at(lam) - energy) <= 1e-10 * energy) return lam;
    throw numerics_error("lambda_from_energy: no convergence to requested residual");
}

RodLengthStats rod_length_stats(const RodSpec& spec) {
    spec.validate();
    const auto freqs = phonon_frequencies(spec);
    RodLengthStats stats;
    stats.mean = static_cast<double>(spec.N) * spec.xi;  // mode displacements average to zero
    double var = 0.0;
    for (std::size_t m = 1; m <= spec.N; ++m) {
        // projection of x_{N+1} - x_1 on mode m; even modes drop out
        const double c = mode_coeff(spec.N, m, spec.N + 1) - mode_coeff(spec.N, m, 1);
        var += c * c * mode_square_displacement(spec, freqs[m - 1]);
    }
    stats.variance = var;
    return stats;
}

double energy_fluctuation(const RodSpec& spec) {
    spec.validate();
    double var = 0.0;
    for (double w : phonon_frequencies(spec)) {
        const double nbar = 1.0 / std::expm1(lam_hbar_omega(spec, w));
        var += spec.hbar * w * spec.hbar * w * nbar * (nbar + 1.0);
    }
    const double e = internal_energy(spec);
    return var / (e * e);
}

}  // namespace mepack
