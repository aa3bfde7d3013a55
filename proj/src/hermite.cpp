#include "mepack/hermite.hpp"

#include <cmath>
#include <vector>

namespace mepack {

void hermite_functions(double x, std::span<double> out) {
    if (out.empty()) return;
    const double phi0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    out[0] = phi0;
    if (out.size() == 1) return;
    out[1] = std::sqrt(2.0) * x * phi0;
    for (std::size_t n = 1; n + 1 < out.size(); ++n) {
        const double a = std::sqrt(2.0 / static_cast<double>(n + 1));
        const double b = std::sqrt(static_cast<double>(n) / static_cast<double>(n + 1));
        out[n + 1] = a * x * out[n] - b * out[n - 1];
    }
}

double hermite_function(unsigned n, double x) {
    std::vector<double> buf(static_cast<std::size_t>(n) + 1);
    hermite_functions(x, buf);
    return buf[n];
}

}  // namespace mepack
