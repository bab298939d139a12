#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "polypot/basis.hpp"
#include "polypot/geometry.hpp"
#include "polypot/measure.hpp"
#include "polypot/multiindex.hpp"

namespace polypot {

/// Homogeneous polynomial P(t,z) = t^n G(z/t) of degree n in C^{d+1}.
///
/// Coefficients stay aligned with the base order: entry i is the coefficient
/// of t^{n-|beta|} z^beta for beta = base_order.at(i). In the extended order
/// (t before all z variables) the degree-n block lists exactly these
/// monomials in the same sequence.
struct HomogeneousPolynomial {
    int base_dim = 1;
    int n = 0;
    MultiIndexOrder base_order;
    std::vector<std::complex<double>> coeffs;

    int ambient_dimension() const { return base_dim + 1; }

    std::complex<double> evaluate(const std::complex<double>& t,
                                  std::span<const std::complex<double>> z) const {
        std::vector<std::complex<double>> tp(static_cast<std::size_t>(n) + 1, {1.0, 0.0});
        for (int k = 1; k <= n; ++k) tp[static_cast<std::size_t>(k)] = tp[static_cast<std::size_t>(k - 1)] * t;
        std::array<std::vector<std::complex<double>>, 2> pw;
        for (int v = 0; v < base_dim; ++v) {
            auto& p = pw[static_cast<std::size_t>(v)];
            p.assign(static_cast<std::size_t>(n) + 1, {1.0, 0.0});
            for (int k = 1; k <= n; ++k) p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k - 1)] * z[static_cast<std::size_t>(v)];
        }
        std::complex<double> s{0.0, 0.0};
        for (int i = 0; i < base_order.size(); ++i) {
            const MultiIndex& b = base_order.at(i);
            std::complex<double> v = coeffs[static_cast<std::size_t>(i)] *
                                     tp[static_cast<std::size_t>(n - multi_degree(b))];
            v *= pw[0][static_cast<std::size_t>(b[0])];
            if (base_dim > 1) v *= pw[1][static_cast<std::size_t>(b[1])];
            s += v;
        }
        return s;
    }
};

/// Lift of monomial coefficients (in the base order) to the homogeneous form.
inline HomogeneousPolynomial homogenize(std::span<const std::complex<double>> coeffs,
                                        const MultiIndexOrder& base_order, int n) {
    if (static_cast<int>(coeffs.size()) != base_order.size())
        throw ArgumentError("homogenize: coefficient count does not match the order");
    for (int i = 0; i < base_order.size(); ++i)
        if (coeffs[static_cast<std::size_t>(i)] != std::complex<double>(0.0, 0.0) &&
            multi_degree(base_order.at(i)) > n)
            throw ArgumentError("homogenize: polynomial degree exceeds n");
    HomogeneousPolynomial h;
    h.base_dim = base_order.dimension();
    h.n = n;
    h.base_order = base_order;
    h.coeffs.assign(coeffs.begin(), coeffs.end());
    return h;
}

/// Coefficients of P(1, z), i.e. the original polynomial.
inline std::vector<std::complex<double>> dehomogenize(const HomogeneousPolynomial& h) {
    return h.coeffs;
}

/// Circle-bundle measure nu over Z(K,w): per base node lambda, M uniform
/// fiber nodes (t, t*lambda) on |t| = w(lambda), each carrying 1/M of the
/// base weight.
struct BundleMeasure {
    DiscreteMeasure measure; // dimension base+1
    int fiber_count = 0;
    std::size_t base_count = 0;
    std::string base_id;

    std::size_t node_index(std::size_t base, int fiber) const {
        return base * static_cast<std::size_t>(fiber_count) + static_cast<std::size_t>(fiber);
    }
};

inline BundleMeasure bundle_measure(const WeightedSet& set, const DiscreteMeasure& base, int M,
                                    int intended_degree = -1) {
    if (M < 2) throw ArgumentError("bundle_measure: need at least 2 fiber nodes");
    if (intended_degree >= 0 && M < 2 * intended_degree + 1)
        throw ArgumentError("bundle_measure: M = " + std::to_string(M) +
                            " is below the exact fiber count 2n+1 for degree " +
                            std::to_string(intended_degree));
    if (base.dim != set.dimension())
        throw ArgumentError("bundle_measure: base measure dimension mismatch");
    BundleMeasure bm;
    bm.fiber_count = M;
    bm.base_count = base.size();
    bm.base_id = base.id;
    DiscreteMeasure& nu = bm.measure;
    nu.dim = base.dim + 1;
    nu.exactness = std::min(base.exactness, M - 1);
    nu.mass = base.mass;
    nu.id = "bundle(" + base.id + ",M=" + std::to_string(M) + ")";
    const double tau = 2.0 * std::numbers::pi;
    nu.coords.reserve(base.size() * static_cast<std::size_t>(M) * static_cast<std::size_t>(nu.dim));
    nu.weights.reserve(base.size() * static_cast<std::size_t>(M));
    std::vector<std::complex<double>> zbuf(static_cast<std::size_t>(base.dim));
    for (std::size_t i = 0; i < base.size(); ++i) {
        for (int v = 0; v < base.dim; ++v) zbuf[static_cast<std::size_t>(v)] = base.coord(i, v);
        const double w = std::exp(-set.q_at(std::span<const std::complex<double>>(zbuf.data(), zbuf.size())));
        for (int k = 0; k < M; ++k) {
            double a = tau * k / M;
            std::complex<double> t(w * std::cos(a), w * std::sin(a));
            nu.coords.push_back(t);
            for (int v = 0; v < base.dim; ++v) nu.coords.push_back(t * zbuf[static_cast<std::size_t>(v)]);
            nu.weights.push_back(base.weights[i] / M);
        }
    }
    return bm;
}

inline int default_fiber_count(int n) { return 2 * n + 3; }

/// ||P||_{L^2(nu)} evaluated from the homogeneous coefficient form.
inline double l2_norm_bundle(const HomogeneousPolynomial& h, const BundleMeasure& bm) {
    const DiscreteMeasure& nu = bm.measure;
    long double acc = 0.0L;
    std::vector<std::complex<double>> zbuf(static_cast<std::size_t>(nu.dim) - 1);
    for (std::size_t i = 0; i < nu.size(); ++i) {
        std::complex<double> t = nu.coord(i, 0);
        for (int v = 1; v < nu.dim; ++v) zbuf[static_cast<std::size_t>(v - 1)] = nu.coord(i, v);
        std::complex<double> val =
            h.evaluate(t, std::span<const std::complex<double>>(zbuf.data(), zbuf.size()));
        acc += static_cast<long double>(nu.weights[i]) * std::norm(std::complex<long double>(val));
    }
    return static_cast<double>(std::sqrt(acc));
}

/// max over bundle nodes of |P|.
inline double sup_norm_bundle(const HomogeneousPolynomial& h, const BundleMeasure& bm) {
    const DiscreteMeasure& nu = bm.measure;
    double best = 0.0;
    std::vector<std::complex<double>> zbuf(static_cast<std::size_t>(nu.dim) - 1);
    for (std::size_t i = 0; i < nu.size(); ++i) {
        std::complex<double> t = nu.coord(i, 0);
        for (int v = 1; v < nu.dim; ++v) zbuf[static_cast<std::size_t>(v - 1)] = nu.coord(i, v);
        best = std::max(best, std::abs(h.evaluate(
                                  t, std::span<const std::complex<double>>(zbuf.data(), zbuf.size()))));
    }
    return best;
}

/// ||w^n G||_{L^2(tau)} from monomial coefficients of G over the base order.
inline double weighted_l2_base(std::span<const std::complex<double>> coeffs,
                               const MultiIndexOrder& ord, const WeightedSet& set,
                               const DiscreteMeasure& tau, int n) {
    if (static_cast<int>(coeffs.size()) != ord.size())
        throw ArgumentError("weighted_l2_base: coefficient count mismatch");
    long double acc = 0.0L;
    const int dim = tau.dim;
    std::vector<std::complex<double>> zbuf(static_cast<std::size_t>(dim));
    std::array<std::vector<std::complex<double>>, 2> pw;
    const int deg = ord.max_degree();
    for (int v = 0; v < dim; ++v) pw[static_cast<std::size_t>(v)].resize(static_cast<std::size_t>(deg) + 1);
    for (std::size_t i = 0; i < tau.size(); ++i) {
        for (int v = 0; v < dim; ++v) zbuf[static_cast<std::size_t>(v)] = tau.coord(i, v);
        for (int v = 0; v < dim; ++v) {
            auto& p = pw[static_cast<std::size_t>(v)];
            p[0] = {1.0, 0.0};
            for (int k = 1; k <= deg; ++k) p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k - 1)] * zbuf[static_cast<std::size_t>(v)];
        }
        std::complex<double> g{0.0, 0.0};
        for (int c = 0; c < ord.size(); ++c) {
            const MultiIndex& b = ord.at(c);
            std::complex<double> v = coeffs[static_cast<std::size_t>(c)] * pw[0][static_cast<std::size_t>(b[0])];
            if (dim > 1) v *= pw[1][static_cast<std::size_t>(b[1])];
            g += v;
        }
        const double q = set.q_at(std::span<const std::complex<double>>(zbuf.data(), zbuf.size()));
        acc += static_cast<long double>(tau.weights[i]) *
               std::exp(-2.0L * n * static_cast<long double>(q)) *
               std::norm(std::complex<long double>(g));
    }
    return static_cast<double>(std::sqrt(acc));
}

/// max over tau nodes of w^n |G| (sup-norm surrogate on K).
inline double weighted_sup_base(std::span<const std::complex<double>> coeffs,
                                const MultiIndexOrder& ord, const WeightedSet& set,
                                const DiscreteMeasure& tau, int n) {
    double best = 0.0;
    const int dim = tau.dim;
    std::vector<std::complex<double>> zbuf(static_cast<std::size_t>(dim));
    std::array<std::vector<std::complex<double>>, 2> pw;
    const int deg = ord.max_degree();
    for (int v = 0; v < dim; ++v) pw[static_cast<std::size_t>(v)].resize(static_cast<std::size_t>(deg) + 1);
    for (std::size_t i = 0; i < tau.size(); ++i) {
        for (int v = 0; v < dim; ++v) zbuf[static_cast<std::size_t>(v)] = tau.coord(i, v);
        for (int v = 0; v < dim; ++v) {
            auto& p = pw[static_cast<std::size_t>(v)];
            p[0] = {1.0, 0.0};
            for (int k = 1; k <= deg; ++k) p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k - 1)] * zbuf[static_cast<std::size_t>(v)];
        }
        std::complex<double> g{0.0, 0.0};
        for (int c = 0; c < ord.size(); ++c) {
            const MultiIndex& b = ord.at(c);
            std::complex<double> v = coeffs[static_cast<std::size_t>(c)] * pw[0][static_cast<std::size_t>(b[0])];
            if (dim > 1) v *= pw[1][static_cast<std::size_t>(b[1])];
            g += v;
        }
        const double q = set.q_at(std::span<const std::complex<double>>(zbuf.data(), zbuf.size()));
        best = std::max(best, std::exp(-static_cast<double>(n) * q) * std::abs(g));
    }
    return best;
}

/// Lift of basis column j to its homogeneous representative P_{n,alpha(j)}.
inline HomogeneousPolynomial lift_basis_column(const OrthonormalBasis& basis, int col) {
    const int m = basis.size();
    std::vector<std::complex<double>> coeffs(static_cast<std::size_t>(m), {0.0, 0.0});
    for (int r = 0; r <= col; ++r) coeffs[static_cast<std::size_t>(r)] = basis.coeff(r, col);
    return homogenize(coeffs, basis.order(), basis.degree());
}

} // namespace polypot
