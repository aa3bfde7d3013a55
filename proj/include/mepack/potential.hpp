#pragma once

#include <span>
#include <vector>

#include "mepack/packet.hpp"
#include "mepack/trajectory.hpp"

namespace mepack {

enum class PotentialKind { free_particle, linear, quadratic, higher };

// Polynomial potential in Taylor form,
//   V(q) = sum_k coeffs[k] q^k / k!,
// so coeffs[2] is the curvature V''(0) that sets omega = sqrt(coeffs[2]/mass)
// and coeffs[3] the cubic strength in V = coeffs[3] q^3 / 6.
class PolynomialPotential {
public:
    // Degree cap keeps force evaluation and moment bookkeeping exact in
    // double precision.
    static constexpr unsigned max_degree = 12;

    PolynomialPotential(std::vector<double> coeffs, double mass);

    double mass() const { return mass_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    unsigned degree() const;  // highest k with coeffs[k] != 0 (0 if none)
    PotentialKind kind() const;
    bool at_most_quadratic() const { return degree() <= 2; }

    double v1() const { return coeff(1); }
    double v2() const { return coeff(2); }
    double coeff(unsigned k) const;

    double value(double q) const;
    double force(double q) const;  // -dV/dq

private:
    std::vector<double> coeffs_;
    double mass_;
};

// Closed-form affine propagator of the at-most-quadratic dynamics:
//   q(t) = f0 + q0 f1 + p0 f2,   p(t) = g0 + q0 g1 + p0 g2.
// The rows satisfy f1 g2 - f2 g1 = 1 (phase-space volume is preserved).
struct PropagatorCoefficients {
    double f0 = 0.0, f1 = 1.0, f2 = 0.0;
    double g0 = 0.0, g1 = 0.0, g2 = 1.0;

    double symplectic_defect() const { return f1 * g2 - f2 * g1 - 1.0; }
};

// V2 > 0: trigonometric branch with omega = sqrt(V2/mu), xi = sqrt(mu V2);
// V2 = 0: polynomial branch; V2 < 0: hyperbolic branch (analytic
// continuation cos -> cosh, sin -> sinh). Rejects degree >= 3.
PropagatorCoefficients quadratic_propagator(const PolynomialPotential& pot, double t);

// Evaluates the four closed forms at each time:
//   Q(t), P(t) through the affine rows, and
//   dQ(t) = sqrt(f1^2 dQ^2 + f2^2 dP^2),  dP(t) = sqrt(g1^2 dQ^2 + g2^2 dP^2).
// Rejects degree >= 3.
Trajectory exact_trajectory(const PacketParams& params, const PolynomialPotential& pot,
                            std::span<const double> times);

}  // namespace mepack
