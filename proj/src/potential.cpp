#include "mepack/potential.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mepack {

PolynomialPotential::PolynomialPotential(std::vector<double> coeffs, double mass)
    : coeffs_(std::move(coeffs)), mass_(mass) {
    if (!(mass_ > 0.0) || !std::isfinite(mass_))
        throw std::invalid_argument("potential: mass must be positive");
    if (coeffs_.size() > max_degree + 1)
        throw std::invalid_argument("potential: degree exceeds cap of " +
                                    std::to_string(max_degree));
    for (double c : coeffs_)
        if (!std::isfinite(c)) throw std::invalid_argument("potential: coefficients must be finite");
}

unsigned PolynomialPotential::degree() const {
    for (std::size_t k = coeffs_.size(); k > 0; --k)
        if (coeffs_[k - 1] != 0.0) return static_cast<unsigned>(k - 1);
    return 0;
}

double PolynomialPotential::coeff(unsigned k) const {
    return k < coeffs_.size() ? coeffs_[k] : 0.0;
}

PotentialKind PolynomialPotential::kind() const {
    if (degree() >= 3) return PotentialKind::higher;
    if (v2() != 0.0) return PotentialKind::quadratic;
    if (v1() != 0.0) return PotentialKind::linear;
    return PotentialKind::free_particle;
}

double PolynomialPotential::value(double q) const {
    // Horner on the Taylor form: V = sum c_k q^k / k!
    double acc = 0.0;
    double factorial = 1.0;
    double qk = 1.0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (k > 0) {
            factorial *= static_cast<double>(k);
            qk *= q;
        }
        acc += coeffs_[k] * qk / factorial;
    }
    return acc;
}

double PolynomialPotential::force(double q) const {
    // -dV/dq = -sum_{k>=1} c_k q^{k-1} / (k-1)!
    double acc = 0.0;
    double factorial = 1.0;
    double qk = 1.0;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        if (k > 1) {
            factorial *= static_cast<double>(k - 1);
            qk *= q;
        }
        acc += coeffs_[k] * qk / factorial;
    }
    return -acc;
}

PropagatorCoefficients quadratic_propagator(const PolynomialPotential& pot, double t) {
    if (!pot.at_most_quadratic())
        throw std::invalid_argument("quadratic_propagator: potential degree " +
                                    std::to_string(pot.degree()) + " > 2 has no closed form");
    const double mu = pot.mass();
    const double v1 = pot.v1();
    const double v2 = pot.v2();
    PropagatorCoefficients c;
    if (v2 > 0.0) {
        const double omega = std::sqrt(v2 / mu);
        const double xi = std::sqrt(mu * v2);
        const double s = std::sin(omega * t);
        const double cs = std::cos(omega * t);
        c.f0 = -(v1 / v2) * (1.0 - cs);
        c.f1 = cs;
        c.f2 = s / xi;
        c.g0 = -xi * (v1 / v2) * s;
        c.g1 = -xi * s;
        c.g2 = cs;
    } else if (v2 < 0.0) {
        const double omega = std::sqrt(-v2 / mu);
        const double xi = std::sqrt(-mu * v2);
        const double s = std::sinh(omega * t);
        const double ch = std::cosh(omega * t);
        c.f0 = -(v1 / v2) * (1.0 - ch);
        c.f1 = ch;
        c.f2 = s / xi;
        c.g0 = xi * (v1 / v2) * s;
        c.g1 = xi * s;
        c.g2 = ch;
    } else {
        c.f0 = -0.5 * v1 * t * t / mu;
        c.f1 = 1.0;
        c.f2 = t / mu;
        c.g0 = -v1 * t;
        c.g1 = 0.0;
        c.g2 = 1.0;
    }
    return c;
}

Trajectory exact_trajectory(const PacketParams& params, const PolynomialPotential& pot,
                            std::span<const double> times) {
    params.validate();
    Trajectory traj;
    traj.kind = TrajectoryKind::exact;
    for (double t : times) {
        const auto c = quadratic_propagator(pot, t);
        StateQuad s;
        s.Q = c.f0 + params.Q * c.f1 + params.P * c.f2;
        s.P = c.g0 + params.Q * c.g1 + params.P * c.g2;
        s.dQ = std::sqrt(c.f1 * c.f1 * params.dQ * params.dQ + c.f2 * c.f2 * params.dP * params.dP);
        s.dP = std::sqrt(c.g1 * c.g1 * params.dQ * params.dQ + c.g2 * c.g2 * params.dP * params.dP);
        traj.push_back(t, s);
    }
    return traj;
}

}  // namespace mepack
