#pragma once

#include <span>

namespace mepack {

// Orthonormal Hermite functions phi_n on the real line:
//   phi_0(x) = pi^{-1/4} exp(-x^2/2),  integral phi_m phi_n dx = delta_mn.
// Evaluated by the normalized three-term recurrence
//   phi_{n+1} = sqrt(2/(n+1)) x phi_n - sqrt(n/(n+1)) phi_{n-1},
// which keeps every intermediate bounded (no factorials, no overflow).

// Fills out[n] = phi_n(x) for n = 0 .. out.size()-1.
void hermite_functions(double x, std::span<double> out);

double hermite_function(unsigned n, double x);

}  // namespace mepack
