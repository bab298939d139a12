#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "polypot/basis.hpp"
#include "polypot/field.hpp"
#include "polypot/geometry.hpp"
#include "polypot/measure.hpp"

namespace polypot {

/// log B_n(z) = log sum_j |p_{n,j}(z)|^2, max-rescaled so large degree blocks
/// cannot overflow the sum.
inline double log_bergman(const OrthonormalBasis& basis,
                          std::span<const std::complex<double>> z) {
    BasisEval ev = basis.evaluate(z);
    if (ev.overflow) return std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    std::vector<double> lg(ev.values.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < ev.values.size(); ++j) {
        double a = std::abs(ev.values[j]);
        if (a > 0) {
            lg[j] = 2.0 * std::log(a);
            mx = std::max(mx, lg[j]);
        }
    }
    if (!std::isfinite(mx)) return -std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (double v : lg)
        if (std::isfinite(v)) s += std::exp(v - mx);
    return mx + std::log(s);
}

inline double log_bergman(const OrthonormalBasis& basis, const std::complex<double>& z) {
    std::array<std::complex<double>, 1> p{z};
    return log_bergman(basis, std::span<const std::complex<double>>(p));
}

/// B_n(z) itself; saturates at the double range (flagged by +inf).
inline double bergman_fn(const OrthonormalBasis& basis,
                         std::span<const std::complex<double>> z) {
    return std::exp(log_bergman(basis, z));
}

inline double bergman_fn(const OrthonormalBasis& basis, const std::complex<double>& z) {
    std::array<std::complex<double>, 1> p{z};
    return bergman_fn(basis, std::span<const std::complex<double>>(p));
}

/// Optimal discrete Bernstein-Markov constant:
/// M_n = sqrt(max over nodes of w(z)^{2n} B_n(z)).
inline double bernstein_markov_constant(const OrthonormalBasis& basis, const WeightedSet& set,
                                        std::span<const C2Point> nodes) {
    if (nodes.empty()) throw ArgumentError("bernstein_markov_constant: empty node set");
    const double n = basis.degree();
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : nodes) {
        std::span<const std::complex<double>> z(p.data(), static_cast<std::size_t>(basis.dimension()));
        double v = log_bergman(basis, z) - 2.0 * n * set.q_at(z);
        best = std::max(best, v);
    }
    return std::exp(0.5 * best);
}

/// Field of (1/2n) log B_n over the grid (d = 1 bases; for d = 2 pass a
/// fixed second coordinate).
inline ScalarField extremal_estimate(const OrthonormalBasis& basis, const GridSpec& grid,
                                     std::complex<double> slice_w = {0.0, 0.0}) {
    if (grid.nx < 1 || grid.ny < 1) throw ArgumentError("extremal_estimate: empty grid");
    ScalarField f(grid, "extremal_estimate:n=" + std::to_string(basis.degree()));
    const double scale = 1.0 / (2.0 * std::max(1, basis.degree()));
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            C2Point p{std::complex<double>(grid.x(i), grid.y(j)), slice_w};
            std::span<const std::complex<double>> z(p.data(),
                                                    static_cast<std::size_t>(basis.dimension()));
            f.set(i, j, scale * log_bergman(basis, z));
        }
    return f;
}

enum class RefCase { circle_unweighted, interval_unweighted, ginibre_disk };

/// Closed-form reference extremal functions used as oracles.
struct ReferenceExtremal {
    RefCase tag = RefCase::circle_unweighted;
    double radius = 1.0; // circle
    double a = -1.0;     // interval
    double b = 1.0;

    static ReferenceExtremal circle(double R = 1.0) { return {RefCase::circle_unweighted, R, -1, 1}; }
    static ReferenceExtremal interval(double a = -1.0, double b = 1.0) {
        return {RefCase::interval_unweighted, 1.0, a, b};
    }
    static ReferenceExtremal ginibre() { return {RefCase::ginibre_disk, 1.0, -1, 1}; }
};

inline double reference_extremal(const ReferenceExtremal& ref, std::complex<double> z) {
    switch (ref.tag) {
        case RefCase::circle_unweighted: {
            double r = std::abs(z) / ref.radius;
            return r > 1.0 ? std::log(r) : 0.0;
        }
        case RefCase::interval_unweighted: {
            // Joukowski map: V = log|zeta + sqrt(zeta^2 - 1)|, branch >= 1.
            std::complex<double> zeta = (2.0 * z - ref.a - ref.b) / (ref.b - ref.a);
            std::complex<double> s = std::sqrt(zeta - 1.0) * std::sqrt(zeta + 1.0);
            std::complex<double> phi = zeta + s;
            double m = std::abs(phi);
            if (m < 1.0) m = 1.0 / m;
            return std::log(m);
        }
        case RefCase::ginibre_disk: {
            // K = unit disk, Q = |z|^2; droplet radius 2^{-1/2}.
            double r = std::abs(z);
            const double r0 = 1.0 / std::sqrt(2.0);
            if (r <= r0) return r * r;
            return std::log(r) + 0.5 * (1.0 + std::log(2.0));
        }
    }
    throw UnsupportedError("reference_extremal: unsupported case");
}

inline ScalarField reference_field(const ReferenceExtremal& ref, const GridSpec& grid) {
    ScalarField f(grid, "reference");
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            f.set(i, j, reference_extremal(ref, {grid.x(i), grid.y(j)}));
    return f;
}

/// Number of entries with (1/n) log |value| >= threshold.
inline int threshold_count(std::span<const std::complex<double>> values, int n,
                           double threshold) {
    int c = 0;
    const double lim = threshold * std::max(1, n);
    for (const auto& v : values) {
        double a = std::abs(v);
        if (a > 0 && std::log(a) >= lim) ++c;
    }
    return c;
}

/// J_n(z, eps) with the reference value V supplied by the caller.
inline int jn_count(const OrthonormalBasis& basis, std::complex<double> z, double eps,
                    double v_ref) {
    std::array<std::complex<double>, 1> p{z};
    BasisEval ev = basis.evaluate(std::span<const std::complex<double>>(p));
    return threshold_count(ev.values, basis.degree(), v_ref - eps);
}

/// K_n(M) over basis values at z.
inline int kn_count(const OrthonormalBasis& basis, std::complex<double> z, double M) {
    std::array<std::complex<double>, 1> p{z};
    BasisEval ev = basis.evaluate(std::span<const std::complex<double>>(p));
    return threshold_count(ev.values, basis.degree(), M);
}

/// Diagnostic trace (1/n) log |p_{n,alpha(n)}(z)| along a schedule of n with
/// a low-degree index selector; converges to inf_K Q off an exceptional set.
inline std::vector<double> low_degree_flatness(const WeightedSet& set,
                                               const std::vector<int>& schedule,
                                               const std::function<MultiIndex(int)>& alpha_of_n,
                                               std::complex<double> z,
                                               BasisOptions opt = {}) {
    std::vector<double> trace;
    trace.reserve(schedule.size());
    for (int n : schedule) {
        MultiIndex a = alpha_of_n(n);
        if (multi_degree(a) > n)
            throw ArgumentError("low_degree_flatness: index degree exceeds n");
        DiscreteMeasure tau = quadrature_measure(set, 2 * n);
        OrthonormalBasis b = orthonormal_basis(tau, set, n, opt);
        int pos = b.order().position(a);
        std::array<std::complex<double>, 1> p{z};
        BasisEval ev = b.evaluate(std::span<const std::complex<double>>(p));
        double av = std::abs(ev.values[static_cast<std::size_t>(pos)]);
        trace.push_back(av > 0 ? std::log(av) / n : -std::numeric_limits<double>::infinity());
    }
    return trace;
}

} // namespace polypot
