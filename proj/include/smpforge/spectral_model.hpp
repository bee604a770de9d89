#pragma once

// Truncated spectral setting: the Hilbert space is R^n spanned by the first n
// eigenmodes, the generator A is diagonal with eigenvalues (lambda_1..lambda_n),
// and the semigroup acts componentwise as (e^{tA} x)_k = e^{t lambda_k} x_k.
// The horizon is [0,1] on a uniform grid of n_steps steps.

#include "core.hpp"
#include "noise.hpp"

#include <algorithm>
#include <cmath>

namespace smpforge {

struct SpectralModel {
    int n_modes = 1;      // dimension n of the truncated space
    Vec eigenvalues;      // (lambda_1..lambda_n), 1/time units
    int n_noise = 1;      // retained Wiener processes m
    int n_steps = 2;      // uniform grid on [0,1]

    SpectralModel() = default;
    SpectralModel(Vec lambdas, int m, int steps)
        : n_modes(static_cast<int>(lambdas.size())),
          eigenvalues(std::move(lambdas)), n_noise(m), n_steps(steps) {
        require(n_modes >= 1, "SpectralModel: n_modes must be >= 1");
        require(n_noise >= 1, "SpectralModel: n_noise must be >= 1");
        require(n_steps >= 2, "SpectralModel: n_steps must be >= 2");
        require(eigenvalues.allFinite(), "SpectralModel: eigenvalues must be finite");
    }

    // Dirichlet Laplacian modes: lambda_k = -(k pi)^2 * scale.
    static SpectralModel dirichlet_laplacian(int n, double scale, int m, int steps) {
        Vec lam(n);
        constexpr double pi = 3.14159265358979323846;
        for (int k = 0; k < n; ++k) {
            const double kp = (k + 1) * pi;
            lam[k] = -kp * kp * scale;
        }
        return SpectralModel(std::move(lam), m, steps);
    }

    double dt() const { return 1.0 / static_cast<double>(n_steps); }
    double time_at(int j) const { return static_cast<double>(j) * dt(); }

    // sup_{t in [0,1]} |e^{tA}| = max(1, e^{max_k lambda_k}).
    double semigroup_bound() const {
        return std::max(1.0, std::exp(eigenvalues.maxCoeff()));
    }

    // Per-mode factors e^{t lambda_k}.
    Vec semigroup_factors(double t) const {
        return (t * eigenvalues.array()).exp().matrix();
    }

    bool grid_aligned(double t, double tol = 1e-9) const {
        const double s = t * n_steps;
        return std::abs(s - std::round(s)) <= tol * std::max(1.0, std::abs(s));
    }

    int node_index(double t) const {
        require(grid_aligned(t), "time not aligned to the simulation grid");
        return static_cast<int>(std::llround(t * n_steps));
    }
};

// (e^{tA} x)_k = e^{t lambda_k} x_k, valid for t in [0,1].
inline Vec semigroup_apply(const SpectralModel& model, double t, const Vec& x) {
    require_domain(t >= 0.0 && t <= 1.0, "semigroup_apply: t must lie in [0,1]");
    require(x.size() == model.n_modes, "semigroup_apply: dimension mismatch");
    return model.semigroup_factors(t).cwiseProduct(x);
}

// Reproducible increment array [n_paths][n_steps][n_noise] realizing the
// truncated Wiener family on the model grid.
inline std::vector<double> sample_wiener_increments(const NoiseSeed& seed,
                                                    int n_paths,
                                                    const SpectralModel& model) {
    require(n_paths >= 1, "sample_wiener_increments: n_paths must be >= 1");
    WienerGrid grid(seed, model.n_steps, model.n_noise);
    std::vector<double> out(static_cast<std::size_t>(n_paths) * model.n_steps *
                            model.n_noise);
    std::size_t at = 0;
    for (int p = 0; p < n_paths; ++p)
        for (int j = 0; j < model.n_steps; ++j)
            for (int i = 0; i < model.n_noise; ++i)
                out[at++] = grid.increment(static_cast<std::uint64_t>(p), j, i);
    return out;
}

} // namespace smpforge
