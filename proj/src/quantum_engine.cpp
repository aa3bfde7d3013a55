#include "mepack/quantum_engine.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "mepack/classical_engine.hpp"
#include "mepack/errors.hpp"
#include "mepack/hermite.hpp"
#include "mepack/parallel.hpp"

namespace mepack {

template <class T>
T* FftwAllocator<T>::allocate(std::size_t n) {
    void* p = fftw_malloc(n * sizeof(T));
    if (!p) throw std::bad_alloc();
    return static_cast<T*>(p);
}

template <class T>
void FftwAllocator<T>::deallocate(T* p, std::size_t) noexcept {
    fftw_free(p);
}

template struct FftwAllocator<std::complex<double>>;

namespace {

std::mutex planner_mutex;  // FFTW's planner is not thread-safe

// Forward/inverse in-place c2c plans for one size, executed on caller arrays
// (all FFTW-aligned). FFTW_ESTIMATE keeps plan choice deterministic.
class FftPlan {
public:
    explicit FftPlan(std::size_t n) : n_(n), scratch_(n) {
        std::lock_guard<std::mutex> lock(planner_mutex);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch_.data());
        fwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        if (!fwd_ || !bwd_) throw std::runtime_error("FFTW plan creation failed");
    }
    ~FftPlan() {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    void forward(ComplexGrid& a) const {
        auto* buf = reinterpret_cast<fftw_complex*>(a.data());
        fftw_execute_dft(fwd_, buf, buf);
    }
    // includes the 1/n normalization
    void inverse(ComplexGrid& a) const {
        auto* buf = reinterpret_cast<fftw_complex*>(a.data());
        fftw_execute_dft(bwd_, buf, buf);
        const double scale = 1.0 / static_cast<double>(n_);
        for (auto& z : a) z *= scale;
    }

private:
    std::size_t n_;
    ComplexGrid scratch_;
    fftw_plan fwd_;
    fftw_plan bwd_;
};

// Wavenumber of FFT bin j on an n-point grid of spacing dq.
inline double wavenumber(std::size_t j, std::size_t n, double dq) {
    const auto half = n / 2;
    const double m = j < half ? static_cast<double>(j)
                              : static_cast<double>(j) - static_cast<double>(n);
    return two_pi * m / (static_cast<double>(n) * dq);
}

struct BranchMoments {
    double norm, mean_q, var_q, mean_p, var_p;
};

BranchMoments branch_moments(const ComplexGrid& psi, const GridSpec& grid, double hbar,
                             const FftPlan& plan) {
    const double dq = grid.dq();
    double norm = 0.0, sq = 0.0, sq2 = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double d = std::norm(psi[i]);
        const double q = grid.q_at(i);
        norm += d;
        sq += q * d;
        sq2 += q * q * d;
    }
    norm *= dq;
    sq *= dq;
    sq2 *= dq;
    const double mean_q = sq / norm;
    const double var_q = sq2 / norm - mean_q * mean_q;

    ComplexGrid spec = psi;
    plan.forward(spec);
    double wsum = 0.0, sp = 0.0, sp2 = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        const double d = std::norm(spec[j]);
        const double p = hbar * wavenumber(j, spec.size(), dq);
        wsum += d;
        sp += p * d;
        sp2 += p * p * d;
    }
    const double mean_p = sp / wsum;
    const double var_p = sp2 / wsum - mean_p * mean_p;
    return {norm, mean_q, var_q, mean_p, var_p};
}

double edge_mass(const ComplexGrid& psi, double dq, std::size_t margin) {
    double m = 0.0;
    const std::size_t n = psi.size();
    for (std::size_t i = 0; i < margin; ++i) m += std::norm(psi[i]) + std::norm(psi[n - 1 - i]);
    return m * dq;
}

}  // namespace

void GridSpec::validate() const {
    if (n_points < 256 || !std::has_single_bit(n_points))
        throw std::invalid_argument("GridSpec: n_points must be a power of two >= 256");
    if (!(q_max > q_min)) throw std::invalid_argument("GridSpec: q_max must exceed q_min");
}

GridSpec make_grid(double q_lo, double q_hi, double p_max, double hbar, std::size_t n_min) {
    if (!(q_hi > q_lo)) throw std::invalid_argument("make_grid: empty interval");
    const double dq_max = M_PI * hbar / std::max(p_max, 1e-300);
    std::size_t n = std::max<std::size_t>(n_min, 256);
    n = std::bit_ceil(n);
    while ((q_hi - q_lo) / static_cast<double>(n) > dq_max) n *= 2;
    return GridSpec{q_lo, q_hi, n};
}

GridSpec default_grid(const PacketParams& params, const PolynomialPotential& pot, double t_max) {
    // Ballistic spreading estimate; the quadratic closed form is exact for
    // degree <= 2 with V2 <= 0 and an upper bound for confining V2 > 0.
    const double dq_t = std::sqrt(params.dQ * params.dQ +
                                  std::pow(t_max * params.dP / pot.mass(), 2));
    const double travel = std::abs(params.P) / pot.mass() * t_max;
    const double half = 8.0 * 1.25 * dq_t + travel + std::abs(params.Q);
    const double p_max = (std::abs(params.P) + 8.0 * params.dP) * 1.25;
    return make_grid(params.Q - half, params.Q + half, p_max, params.hbar);
}

double MixedStateGrid::branch_norm(std::size_t b) const {
    double s = 0.0;
    for (const auto& z : branches[b]) s += std::norm(z);
    return s * grid.dq();
}

double MixedStateGrid::weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

std::vector<double> MixedStateGrid::density() const {
    std::vector<double> rho(grid.n_points, 0.0);
    for (std::size_t b = 0; b < branches.size(); ++b)
        for (std::size_t i = 0; i < rho.size(); ++i) rho[i] += weights[b] * std::norm(branches[b][i]);
    return rho;
}

MixedStateGrid build_state(const PacketParams& params, const GridSpec& grid, double tol) {
    params.validate();
    grid.validate();
    const auto spec = quantum_spectrum(params, tol);  // rejects nu < 1

    // Coverage rule: span at least Q +- 8 dQ, resolve at least |P| + 8 dP.
    const double span_lo = params.Q - 8.0 * params.dQ;
    const double span_hi = params.Q + 8.0 * params.dQ;
    if (grid.q_min > span_lo || grid.q_max < span_hi)
        throw std::invalid_argument("build_state: grid does not span Q +- 8 dQ");
    const double p_need = std::abs(params.P) + 8.0 * params.dP;
    if (grid.dq() > M_PI * params.hbar / p_need * (1.0 + 1e-12))
        throw std::invalid_argument("build_state: dq too coarse to resolve |P| + 8 dP");

    MixedStateGrid state;
    state.grid = grid;
    state.weights = spec.weights;
    state.hbar = params.hbar;
    state.branches.assign(spec.weights.size(), ComplexGrid(grid.n_points));

    const double ell = spec.length_scale;
    const double sqrt_ell = std::sqrt(ell);
    const std::size_t n_b = spec.weights.size();
    parallel_for(grid.n_points, [&](std::size_t begin, std::size_t end) {
        std::vector<double> phi(n_b);
        for (std::size_t i = begin; i < end; ++i) {
            const double q = grid.q_at(i);
            hermite_functions((q - params.Q) / ell, phi);
            const auto boost = std::polar(1.0, params.P * q / params.hbar);
            for (std::size_t b = 0; b < n_b; ++b)
                state.branches[b][i] = phi[b] / sqrt_ell * boost;
        }
    });
    return state;
}

StateQuad observables(const MixedStateGrid& state) {
    const FftPlan plan(state.grid.n_points);
    const std::size_t n_b = state.n_branches();
    std::vector<BranchMoments> mom(n_b);
    parallel_for(n_b, [&](std::size_t begin, std::size_t end) {
        for (std::size_t b = begin; b < end; ++b)
            mom[b] = branch_moments(state.branches[b], state.grid, state.hbar, plan);
    });
    // law of total variance over branches, fixed order
    double wsum = 0.0, mq = 0.0, mp = 0.0;
    for (std::size_t b = 0; b < n_b; ++b) {
        wsum += state.weights[b];
        mq += state.weights[b] * mom[b].mean_q;
        mp += state.weights[b] * mom[b].mean_p;
    }
    mq /= wsum;
    mp /= wsum;
    double vq = 0.0, vp = 0.0;
    for (std::size_t b = 0; b < n_b; ++b) {
        const double w = state.weights[b] / wsum;
        vq += w * (mom[b].var_q + (mom[b].mean_q - mq) * (mom[b].mean_q - mq));
        vp += w * (mom[b].var_p + (mom[b].mean_p - mp) * (mom[b].mean_p - mp));
    }
    return {mq, mp, std::sqrt(vq), std::sqrt(vp)};
}

Trajectory evolve_quantum(MixedStateGrid& state, const PolynomialPotential& pot,
                          std::span<const double> times, const QuantumEvolveOptions& opt) {
    if (times.empty()) throw std::invalid_argument("evolve_quantum: empty time grid");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0) throw std::invalid_argument("evolve_quantum: negative time");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw std::invalid_argument("evolve_quantum: times must be ascending");
    }
    const GridSpec& grid = state.grid;
    const std::size_t n = grid.n_points;
    const double dq = grid.dq();

    double dt = opt.dt;
    if (!(dt > 0.0)) {
        // reconstruct the step default from the current spreads
        PacketParams proxy;
        const auto now = observables(state);
        proxy.Q = now.Q;
        proxy.P = now.P;
        proxy.dQ = now.dQ;
        proxy.dP = now.dP;
        proxy.hbar = state.hbar;
        dt = characteristic_time(proxy, pot) / 2000.0;
    }

    const std::size_t margin =
        opt.edge_cells > 0 ? opt.edge_cells : std::max<std::size_t>(4, n / 64);

    std::vector<double> v_grid(n);
    for (std::size_t i = 0; i < n; ++i) {
        v_grid[i] = pot.value(grid.q_at(i));
        if (!std::isfinite(v_grid[i]))
            throw std::invalid_argument("evolve_quantum: potential unbounded on grid");
    }
    std::vector<double> kin(n);  // hbar k^2 / (2 mu)
    for (std::size_t j = 0; j < n; ++j) {
        const double k = wavenumber(j, n, dq);
        kin[j] = state.hbar * k * k / (2.0 * pot.mass());
    }

    const FftPlan plan(n);
    ComplexGrid half_v(n), full_k(n);
    auto fill_phases = [&](double h) {
        for (std::size_t i = 0; i < n; ++i)
            half_v[i] = std::polar(1.0, -0.5 * v_grid[i] * h / state.hbar);
        for (std::size_t j = 0; j < n; ++j) full_k[j] = std::polar(1.0, -kin[j] * h);
    };

    Trajectory traj;
    traj.kind = TrajectoryKind::quantum;
    traj.meta.dt = dt;
    traj.meta.grid_points = n;
    traj.meta.n_branches = state.n_branches();

    std::atomic<bool> leaked{false};
    std::atomic<double> worst_edge{0.0};
    auto evolve_branch = [&](std::size_t b, std::size_t steps) {
        auto& psi = state.branches[b];
        for (std::size_t s = 0; s < steps; ++s) {
            for (std::size_t i = 0; i < n; ++i) psi[i] *= half_v[i];
            plan.forward(psi);
            for (std::size_t j = 0; j < n; ++j) psi[j] *= full_k[j];
            plan.inverse(psi);
            for (std::size_t i = 0; i < n; ++i) psi[i] *= half_v[i];
            const double em = state.weights[b] * edge_mass(psi, dq, margin);
            double cur = worst_edge.load(std::memory_order_relaxed);
            while (em > cur && !worst_edge.compare_exchange_weak(cur, em)) {
            }
            if (em > opt.leak_tol) {
                leaked.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    double t_now = 0.0;
    for (double t_out : times) {
        double span = t_out - t_now;
        if (span > 0.0) {
            const auto full_steps = static_cast<std::size_t>(std::floor(span / dt + 1e-12));
            const double rest = span - static_cast<double>(full_steps) * dt;
            if (full_steps > 0) {
                fill_phases(dt);
                parallel_for(state.n_branches(), [&](std::size_t begin, std::size_t end) {
                    for (std::size_t b = begin; b < end && !leaked.load(); ++b)
                        evolve_branch(b, full_steps);
                });
            }
            if (!leaked.load() && rest > 1e-15 * std::max(1.0, t_out)) {
                fill_phases(rest);
                parallel_for(state.n_branches(), [&](std::size_t begin, std::size_t end) {
                    for (std::size_t b = begin; b < end && !leaked.load(); ++b)
                        evolve_branch(b, 1);
                });
            }
            if (leaked.load())
                throw numerics_error(
                    "evolve_quantum: probability " + std::to_string(worst_edge.load()) +
                    " reached the grid edge before t = " + std::to_string(t_out) +
                    " (tolerance " + std::to_string(opt.leak_tol) + "); enlarge the grid");
        }
        t_now = t_out;
        // per-branch checks bound each contribution; the mixture total is
        // checked whenever observables are taken
        double total_edge = 0.0;
        for (std::size_t b = 0; b < state.n_branches(); ++b)
            total_edge += state.weights[b] * edge_mass(state.branches[b], dq, margin);
        traj.meta.max_edge_mass = std::max({traj.meta.max_edge_mass, worst_edge.load(), total_edge});
        if (total_edge > opt.leak_tol)
            throw numerics_error("evolve_quantum: mixture edge mass " +
                                 std::to_string(total_edge) + " exceeds tolerance " +
                                 std::to_string(opt.leak_tol) + " at t = " +
                                 std::to_string(t_out) + "; enlarge the grid");
        traj.push_back(t_out, observables(state));
    }
    traj.validate();
    return traj;
}

MomentResult quantum_polynomial_moment(const MixedStateGrid& state, unsigned k) {
    if (k > 12) throw std::invalid_argument("quantum_polynomial_moment: k must be <= 12");
    const auto rho = state.density();
    const double dq = state.grid.dq();
    const std::size_t n = state.grid.n_points;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += std::pow(state.grid.q_at(i), static_cast<double>(k)) * rho[i];
    acc *= dq;
    const double trace = state.weight_sum();

    const std::size_t margin = std::max<std::size_t>(4, n / 64);
    double em = 0.0;
    for (std::size_t i = 0; i < margin; ++i) em += rho[i] + rho[n - 1 - i];
    em *= dq;
    const double q_big = std::max(std::abs(state.grid.q_min), std::abs(state.grid.q_max));
    MomentResult r;
    r.value = acc / trace;
    r.tail_bound = em * std::pow(q_big, static_cast<double>(k)) / trace;
    return r;
}

}  // namespace mepack
