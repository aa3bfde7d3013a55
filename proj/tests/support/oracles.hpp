// Independent numerical routes used only by tests: quadrature, dense matrix
// oracles, and small fitting helpers. Nothing here touches the library's own
// implementation paths.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "mepack/packet.hpp"

namespace oracles {

struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;  // for weight function exp(-x^2)
};

// Golub-Welsch on the Jacobi matrix of the (physicists') Hermite polynomials.
inline GaussHermite gauss_hermite(int n) {
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double beta = std::sqrt(0.5 * static_cast<double>(k));
        jacobi(k, k - 1) = beta;
        jacobi(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    GaussHermite gh;
    gh.nodes.resize(n);
    gh.weights.resize(n);
    const double sqrt_pi = std::sqrt(M_PI);
    for (int k = 0; k < n; ++k) {
        gh.nodes[k] = es.eigenvalues()(k);
        const double v0 = es.eigenvectors()(0, k);
        gh.weights[k] = sqrt_pi * v0 * v0;
    }
    return gh;
}

// integral f(q, p) dq dp / v against the packet's own Gaussian scales:
// exact for f = polynomial * packet density.
inline double phase_integral(const mepack::PacketParams& params,
                             const std::function<double(double, double)>& f, int n_nodes = 48) {
    const auto gh = gauss_hermite(n_nodes);
    const double aq = std::sqrt(2.0) * params.dQ;
    const double ap = std::sqrt(2.0) * params.dP;
    double acc = 0.0;
    for (int i = 0; i < n_nodes; ++i) {
        const double q = params.Q + aq * gh.nodes[i];
        for (int j = 0; j < n_nodes; ++j) {
            const double p = params.P + ap * gh.nodes[j];
            const double gauss = std::exp(-gh.nodes[i] * gh.nodes[i] - gh.nodes[j] * gh.nodes[j]);
            acc += gh.weights[i] * gh.weights[j] * f(q, p) / gauss;
        }
    }
    return acc * aq * ap / params.v;
}

// Spectrum of the packet operator by brute force: q and p operators in a
// truncated number basis of width ell, the quadratic form K assembled as a
// dense Hermitian matrix, exponentiated through its eigen-decomposition.
// Returns the leading eigenvalues of (2/sqrt(nu^2-1)) exp(-c K), descending.
inline std::vector<double> packet_spectrum_dense(const mepack::PacketParams& params, int dim,
                                                 int keep) {
    using Mat = Eigen::MatrixXcd;
    const double fuzz = mepack::nu(params);
    const double ell = std::sqrt(params.hbar * params.dQ / params.dP);
    Mat a = Mat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const Mat adag = a.adjoint();
    const std::complex<double> im(0.0, 1.0);
    const Mat q_op = ell / std::sqrt(2.0) * (a + adag);
    const Mat p_op = -im * params.hbar / (ell * std::sqrt(2.0)) * (a - adag);
    const Mat dq_op = q_op - params.Q * Mat::Identity(dim, dim);
    const Mat dp_op = p_op - params.P * Mat::Identity(dim, dim);
    const Mat K = dq_op * dq_op / (2.0 * params.dQ * params.dQ) +
                  dp_op * dp_op / (2.0 * params.dP * params.dP);

    Eigen::SelfAdjointEigenSolver<Mat> es(K);
    const double c = 0.5 * fuzz * std::log((fuzz + 1.0) / (fuzz - 1.0));
    const double prefactor = 2.0 / std::sqrt(fuzz * fuzz - 1.0);
    std::vector<double> eig(dim);
    for (int k = 0; k < dim; ++k) eig[k] = prefactor * std::exp(-c * es.eigenvalues()(k));
    std::sort(eig.begin(), eig.end(), std::greater<>());
    eig.resize(keep);
    return eig;
}

// Eigenfrequencies of the explicit (N+1)-particle coupling matrix
// kappa^2 L (free-end Laplacian), ascending, including the zero mode.
inline std::vector<double> chain_frequencies_dense(std::size_t N, double mu, double kappa) {
    const int n = static_cast<int>(N) + 1;
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        lap(i, i) += 1.0;
        lap(i + 1, i + 1) += 1.0;
        lap(i, i + 1) -= 1.0;
        lap(i + 1, i) -= 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kappa * kappa / mu * lap);
    std::vector<double> freqs(n);
    for (int k = 0; k < n; ++k) freqs[k] = std::sqrt(std::max(0.0, es.eigenvalues()(k)));
    return freqs;
}

// least-squares slope of ln(y) against ln(x)
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracles
