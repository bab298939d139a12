#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "polypot/field.hpp"
#include "polypot/random_poly.hpp"
#include "polypot/roots.hpp"

namespace polypot {

/// Normalized counting measure on the zero set of one trial polynomial.
struct EmpiricalZeroMeasure {
    std::vector<std::complex<double>> zeros;
    int trial_id = 0;
    int n = 0;
    std::string law_id;
    double max_residual = 0.0;
    bool used_fallback = false;

    double normalization() const { return zeros.empty() ? 0.0 : 1.0 / static_cast<double>(zeros.size()); }
};

/// Roots of the monomial form of G (univariate only).
inline EmpiricalZeroMeasure zero_measure(const RandomPolynomial& poly, RootOptions opt = {},
                                         int trial_id = 0) {
    if (poly.dimension() != 1)
        throw UnsupportedError("zero_measure: root finding is univariate");
    RootResult rr = roots(poly.monomial_coefficients(), opt);
    EmpiricalZeroMeasure em;
    em.zeros = std::move(rr.roots);
    em.trial_id = trial_id;
    em.n = poly.degree_bound();
    em.max_residual = rr.max_residual;
    em.used_fallback = rr.used_fallback;
    return em;
}

struct HistogramTable {
    std::vector<double> radial_edges; // ascending, size R+1
    int angular_bins = 1;
    std::vector<std::vector<long>> counts; // [radial][angular]
    long outside = 0;

    long total() const {
        long t = outside;
        for (const auto& row : counts)
            for (long c : row) t += c;
        return t;
    }

    std::vector<long> angular_totals() const {
        std::vector<long> a(static_cast<std::size_t>(angular_bins), 0);
        for (const auto& row : counts)
            for (int k = 0; k < angular_bins; ++k) a[static_cast<std::size_t>(k)] += row[static_cast<std::size_t>(k)];
        return a;
    }
};

inline HistogramTable radial_sector_histogram(const EmpiricalZeroMeasure& em,
                                              std::span<const double> radial_edges,
                                              int angular_bins) {
    if (radial_edges.size() < 2 || angular_bins < 1)
        throw ArgumentError("radial_sector_histogram: bins must be nonempty");
    HistogramTable h;
    h.radial_edges.assign(radial_edges.begin(), radial_edges.end());
    h.angular_bins = angular_bins;
    h.counts.assign(radial_edges.size() - 1,
                    std::vector<long>(static_cast<std::size_t>(angular_bins), 0));
    const double tau = 2.0 * std::numbers::pi;
    for (const auto& z : em.zeros) {
        double r = std::abs(z);
        double a = std::arg(z);
        if (a < 0) a += tau;
        int ka = std::min(angular_bins - 1, static_cast<int>(a / tau * angular_bins));
        bool placed = false;
        for (std::size_t i = 0; i + 1 < h.radial_edges.size(); ++i) {
            bool last = (i + 2 == h.radial_edges.size());
            if (r >= h.radial_edges[i] && (r < h.radial_edges[i + 1] || (last && r <= h.radial_edges[i + 1]))) {
                ++h.counts[i][static_cast<std::size_t>(ka)];
                placed = true;
                break;
            }
        }
        if (!placed) ++h.outside;
    }
    return h;
}

inline double annulus_fraction(const EmpiricalZeroMeasure& em, double r0, double r1) {
    if (em.zeros.empty()) return 0.0;
    long c = 0;
    for (const auto& z : em.zeros) {
        double r = std::abs(z);
        if (r >= r0 && r <= r1) ++c;
    }
    return static_cast<double>(c) / static_cast<double>(em.zeros.size());
}

inline double inside_fraction(const EmpiricalZeroMeasure& em, double r) {
    if (em.zeros.empty()) return 0.0;
    long c = 0;
    for (const auto& z : em.zeros)
        if (std::abs(z) <= r) ++c;
    return static_cast<double>(c) / static_cast<double>(em.zeros.size());
}

/// Empirical radial CDF of pooled zeros evaluated on a radius grid.
inline std::vector<double> radial_cdf(std::span<const std::complex<double>> zeros,
                                      std::span<const double> r_grid) {
    std::vector<double> radii;
    radii.reserve(zeros.size());
    for (const auto& z : zeros) radii.push_back(std::abs(z));
    std::sort(radii.begin(), radii.end());
    std::vector<double> cdf;
    cdf.reserve(r_grid.size());
    for (double r : r_grid) {
        auto it = std::upper_bound(radii.begin(), radii.end(), r);
        cdf.push_back(radii.empty() ? 0.0
                                    : static_cast<double>(it - radii.begin()) /
                                          static_cast<double>(radii.size()));
    }
    return cdf;
}

/// Field of (1/n) log |G| over the grid; d = 2 slices fix the second
/// coordinate. Grid points within rounding of a zero land on the clamp floor.
inline ScalarField potential_field(const RandomPolynomial& poly, const GridSpec& grid,
                                   std::complex<double> slice_w = {0.0, 0.0}) {
    ScalarField f(grid, "potential:n=" + std::to_string(poly.degree_bound()));
    const double inv_n = 1.0 / std::max(1, poly.degree_bound());
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            C2Point p{std::complex<double>(grid.x(i), grid.y(j)), slice_w};
            std::span<const std::complex<double>> z(p.data(),
                                                    static_cast<std::size_t>(poly.dimension()));
            f.set(i, j, inv_n * poly.log_abs(z));
        }
    return f;
}

/// Lebesgue fraction of the disk B(center, radius) where |p| <= eps^deg after
/// sup-normalization over the boundary circle (max principle).
inline double cartan_fraction(std::span<const std::complex<double>> coeffs,
                              std::complex<double> center, double radius, double eps,
                              int boundary_samples = 1024, int grid_n = 201) {
    if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("cartan_fraction: need 0 < eps < 1");
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg >= 0 && coeffs[static_cast<std::size_t>(deg)] == std::complex<double>(0.0, 0.0)) --deg;
    if (deg < 0) throw ArgumentError("cartan_fraction: degenerate polynomial");
    auto eval = [&](std::complex<double> z) {
        std::complex<double> p = coeffs[static_cast<std::size_t>(deg)];
        for (int k = deg - 1; k >= 0; --k) p = p * z + coeffs[static_cast<std::size_t>(k)];
        return std::abs(p);
    };
    double sup = 0.0;
    for (int k = 0; k < boundary_samples; ++k) {
        double t = 2.0 * std::numbers::pi * k / boundary_samples;
        sup = std::max(sup, eval(center + radius * std::complex<double>(std::cos(t), std::sin(t))));
    }
    if (!(sup > 0.0)) throw ArgumentError("cartan_fraction: polynomial vanishes on the normalization grid");
    const double cut = sup * std::pow(eps, deg);
    long inside = 0, small = 0;
    for (int j = 0; j < grid_n; ++j)
        for (int i = 0; i < grid_n; ++i) {
            double x = -1.0 + 2.0 * i / (grid_n - 1);
            double y = -1.0 + 2.0 * j / (grid_n - 1);
            if (x * x + y * y > 1.0) continue;
            ++inside;
            if (eval(center + radius * std::complex<double>(x, y)) <= cut) ++small;
        }
    return static_cast<double>(small) / static_cast<double>(inside);
}

} // namespace polypot
