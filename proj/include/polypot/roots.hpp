#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "polypot/errors.hpp"

namespace polypot {

struct RootOptions {
    int max_sweeps = 400;
    double step_tol = 1e-12;     // converged when corrections fall below step_tol*(1+|root|)
    double residual_tol = 1e-8;  // |p(root)| <= residual_tol * sum_k |c_k||root|^k
    bool force_companion = false;
};

struct RootResult {
    std::vector<std::complex<double>> roots;
    double max_residual = 0.0; // scaled backward error
    bool used_fallback = false;
};

namespace detail {

inline void horner2(std::span<const std::complex<double>> c, const std::complex<double>& x,
                    std::complex<double>& p, std::complex<double>& dp) {
    p = c.back();
    dp = {0.0, 0.0};
    for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
        dp = dp * x + p;
        p = p * x + c[static_cast<std::size_t>(k)];
    }
}

inline double scaled_residual(std::span<const std::complex<double>> c,
                              const std::complex<double>& x) {
    std::complex<double> p, dp;
    horner2(c, x, p, dp);
    double ax = std::abs(x);
    double scale = 0.0, pw = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        scale += std::abs(c[k]) * pw;
        pw *= ax;
    }
    if (scale == 0.0) return std::abs(p);
    return std::abs(p) / scale;
}

inline std::vector<std::complex<double>> companion_roots(
    std::span<const std::complex<double>> c) {
    const int m = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 1; i < m; ++i) A(i, i - 1) = 1.0;
    for (int i = 0; i < m; ++i) A(i, m - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
    std::vector<std::complex<double>> r(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) r[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return r;
}

} // namespace detail

/// All complex roots of the polynomial with graded coefficients
/// c[0] + c[1] z + ... (multiplicities preserved).
///
/// Exact-zero leading coefficients are stripped (defining the effective
/// degree) and trailing zeros contribute roots at the origin. The workhorse
/// is Aberth-Ehrlich simultaneous iteration started on a perturbed Cauchy
/// circle; non-convergence or a failed residual check falls back to
/// companion-matrix eigenvalues.
inline RootResult roots(std::span<const std::complex<double>> coeffs, RootOptions opt = {}) {
    int hi = static_cast<int>(coeffs.size()) - 1;
    while (hi >= 0 && coeffs[static_cast<std::size_t>(hi)] == std::complex<double>(0.0, 0.0)) --hi;
    if (hi < 0) throw ArgumentError("roots: all coefficients are zero (degenerate polynomial)");
    int lo = 0;
    while (lo < hi && coeffs[static_cast<std::size_t>(lo)] == std::complex<double>(0.0, 0.0)) ++lo;

    RootResult out;
    out.roots.assign(static_cast<std::size_t>(lo), {0.0, 0.0}); // z^lo factor

    const int m = hi - lo;
    if (m == 0) return out; // nonzero constant (times z^lo)

    // Normalized working copy c[0..m].
    std::vector<std::complex<double>> c(static_cast<std::size_t>(m) + 1);
    double cmax = 0.0;
    for (int k = 0; k <= m; ++k) cmax = std::max(cmax, std::abs(coeffs[static_cast<std::size_t>(k + lo)]));
    for (int k = 0; k <= m; ++k) c[static_cast<std::size_t>(k)] = coeffs[static_cast<std::size_t>(k + lo)] / cmax;

    std::vector<std::complex<double>> x(static_cast<std::size_t>(m));
    bool converged = false;
    if (!opt.force_companion) {
        double top = std::abs(c[static_cast<std::size_t>(m)]);
        double mx = 0.0;
        for (int k = 0; k < m; ++k) mx = std::max(mx, std::abs(c[static_cast<std::size_t>(k)]));
        const double cauchy = 1.0 + mx / top;
        const double golden = 0.61803398874989484;
        for (int i = 0; i < m; ++i) {
            double frac = std::fmod(0.5 + golden * i, 1.0);
            double ang = 2.0 * std::numbers::pi * (static_cast<double>(i) + 0.351) / m;
            double rad = cauchy * (0.9 + 0.1 * frac);
            x[static_cast<std::size_t>(i)] = {rad * std::cos(ang), rad * std::sin(ang)};
        }
        for (int sweep = 0; sweep < opt.max_sweeps && !converged; ++sweep) {
            double worst = 0.0;
            for (int i = 0; i < m; ++i) {
                std::complex<double> p, dp;
                detail::horner2(c, x[static_cast<std::size_t>(i)], p, dp);
                if (p == std::complex<double>(0.0, 0.0)) continue;
                std::complex<double> N = (dp != std::complex<double>(0.0, 0.0))
                                             ? p / dp
                                             : std::complex<double>(1e-3, 1e-3);
                std::complex<double> S{0.0, 0.0};
                for (int j = 0; j < m; ++j) {
                    if (j == i) continue;
                    std::complex<double> d = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
                    if (d == std::complex<double>(0.0, 0.0)) d = {1e-30, 0.0};
                    S += 1.0 / d;
                }
                std::complex<double> den = 1.0 - N * S;
                std::complex<double> w = (std::abs(den) > 1e-30) ? N / den : N;
                x[static_cast<std::size_t>(i)] -= w;
                worst = std::max(worst, std::abs(w) / (1.0 + std::abs(x[static_cast<std::size_t>(i)])));
            }
            converged = worst <= opt.step_tol;
        }
        if (converged) {
            for (int i = 0; i < m; ++i)
                if (detail::scaled_residual(c, x[static_cast<std::size_t>(i)]) > opt.residual_tol) {
                    converged = false;
                    break;
                }
        }
    }
    if (!converged) {
        x = detail::companion_roots(c);
        out.used_fallback = true;
        double worst = 0.0;
        for (const auto& r : x) worst = std::max(worst, detail::scaled_residual(c, r));
        if (worst > opt.residual_tol * 100.0)
            throw NumericalError("roots: residual " + std::to_string(worst) +
                                 " after companion fallback");
    }
    for (const auto& r : x) out.max_residual = std::max(out.max_residual, detail::scaled_residual(c, r));
    out.roots.insert(out.roots.end(), x.begin(), x.end());
    return out;
}

} // namespace polypot
