#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polypot/errors.hpp"
#include "polypot/geometry.hpp"
#include "polypot/multiindex.hpp"

namespace polypot {

/// Quadrature nodes and positive weights for a finite measure on K
/// (or on the circle bundle over K), with a degree-of-exactness
/// certificate: integrals of p * conj(q) against the measure are exact for
/// polynomials with deg p + deg q <= exactness.
struct DiscreteMeasure {
    int dim = 1;
    int exactness = 0;
    double mass = 1.0;
    std::vector<std::complex<double>> coords; // dim entries per node
    std::vector<double> weights;
    std::string id;

    std::size_t size() const { return weights.size(); }

    std::complex<double> coord(std::size_t node, int j) const {
        return coords[node * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)];
    }

    std::span<const std::complex<double>> node(std::size_t i) const {
        return {coords.data() + i * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }

    double weight_sum() const {
        double s = 0;
        for (double w : weights) s += w;
        return s;
    }

    Json to_json() const {
        Json nodes = Json::array();
        for (std::size_t i = 0; i < size(); ++i) {
            Json row = Json::array();
            for (int j = 0; j < dim; ++j) {
                row.push_back(coord(i, j).real());
                row.push_back(coord(i, j).imag());
            }
            nodes.push_back(std::move(row));
        }
        return Json{{"schema", "measure-v1"}, {"dimension", dim},      {"exactness", exactness},
                    {"mass", mass},           {"nodes", std::move(nodes)}, {"weights", weights},
                    {"id", id}};
    }
};

namespace detail {

/// Gauss-Legendre rule on [0,1] via the Golub-Welsch eigenproblem.
inline void gauss_legendre01(int m, std::vector<double>& x, std::vector<double>& w) {
    if (m < 1) throw ArgumentError("gauss_legendre01: need at least one node");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    for (int k = 1; k < m; ++k) {
        double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    x.resize(static_cast<std::size_t>(m));
    w.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        x[static_cast<std::size_t>(k)] = 0.5 * (es.eigenvalues()(k) + 1.0);
        double v = es.eigenvectors()(0, k);
        w[static_cast<std::size_t>(k)] = v * v; // weights on [0,1] sum to 1
    }
}

} // namespace detail

/// Builds the reference discretization of tau on K with the requested
/// exactness degree D.
///
/// circle: D+1 uniform angular nodes of normalized arclength.
/// interval: Gauss-Chebyshev nodes of the arcsine density, ceil((D+1)/2) points.
/// disk: normalized area measure; Gauss-Legendre in r^2 (D/2+1 points)
///   tensor uniform angles (D+1).
/// ball / ellipsoid: pushforward of the sphere measure under
///   (z,w) = (r sqrt(t) e^{i t1}, A sqrt(1-t) e^{i t2}); Gauss-Legendre in t
///   (D/2+1 points) tensor uniform angles (D+1 each).
/// polydisk: tensor of two normalized disk rules with the minimal exact
///   radial count floor(D/4)+1 to keep the tensor grid small.
inline DiscreteMeasure quadrature_measure(const WeightedSet& set, int D) {
    if (D < 0) throw ArgumentError("quadrature_measure: exactness must be >= 0");
    const double tau = 2.0 * std::numbers::pi;
    DiscreteMeasure m;
    m.dim = set.dimension();
    m.exactness = D;
    m.mass = 1.0;
    m.id = set.id() + ":D=" + std::to_string(D);

    switch (set.kind) {
        case SetKind::circle: {
            const int ma = D + 1;
            m.coords.reserve(static_cast<std::size_t>(ma));
            for (int k = 0; k < ma; ++k) {
                double t = tau * k / ma;
                m.coords.emplace_back(set.radius * std::cos(t), set.radius * std::sin(t));
                m.weights.push_back(1.0 / ma);
            }
            break;
        }
        case SetKind::interval: {
            const int mr = (D + 2) / 2; // exact to degree 2*mr - 1 >= D
            const double mid = 0.5 * (set.a + set.b), half = 0.5 * (set.b - set.a);
            for (int k = 1; k <= mr; ++k) {
                double x = std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * mr));
                m.coords.emplace_back(mid + half * x, 0.0);
                m.weights.push_back(1.0 / mr);
            }
            break;
        }
        case SetKind::disk: {
            const int mr = D / 2 + 1;
            const int ma = D + 1;
            std::vector<double> u, wu;
            detail::gauss_legendre01(mr, u, wu);
            for (int i = 0; i < mr; ++i) {
                double r = set.radius * std::sqrt(u[static_cast<std::size_t>(i)]);
                for (int k = 0; k < ma; ++k) {
                    double t = tau * k / ma;
                    m.coords.emplace_back(r * std::cos(t), r * std::sin(t));
                    m.weights.push_back(wu[static_cast<std::size_t>(i)] / ma);
                }
            }
            break;
        }
        case SetKind::ball:
        case SetKind::ellipsoid: {
            const double rz = (set.kind == SetKind::ball) ? 1.0 : set.semi_z;
            const double rw = (set.kind == SetKind::ball) ? 1.0 : set.semi_w;
            const int mt = D / 2 + 1;
            const int ma = D + 1;
            std::vector<double> t, wt;
            detail::gauss_legendre01(mt, t, wt);
            m.coords.reserve(static_cast<std::size_t>(mt) * ma * ma * 2);
            m.weights.reserve(static_cast<std::size_t>(mt) * ma * ma);
            for (int i = 0; i < mt; ++i) {
                double r1 = rz * std::sqrt(t[static_cast<std::size_t>(i)]);
                double r2 = rw * std::sqrt(1.0 - t[static_cast<std::size_t>(i)]);
                double wi = wt[static_cast<std::size_t>(i)] / (static_cast<double>(ma) * ma);
                for (int k1 = 0; k1 < ma; ++k1) {
                    double a1 = tau * k1 / ma;
                    std::complex<double> z1(r1 * std::cos(a1), r1 * std::sin(a1));
                    for (int k2 = 0; k2 < ma; ++k2) {
                        double a2 = tau * k2 / ma;
                        m.coords.push_back(z1);
                        m.coords.emplace_back(r2 * std::cos(a2), r2 * std::sin(a2));
                        m.weights.push_back(wi);
                    }
                }
            }
            break;
        }
        case SetKind::polydisk: {
            const int mr = D / 4 + 1; // r^2-degree D/2 needs 2*mr - 1 >= D/2
            const int ma = D + 1;
            std::vector<double> u, wu;
            detail::gauss_legendre01(mr, u, wu);
            std::vector<std::complex<double>> pts;
            std::vector<double> ws;
            for (int i = 0; i < mr; ++i) {
                double r = std::sqrt(u[static_cast<std::size_t>(i)]);
                for (int k = 0; k < ma; ++k) {
                    double t = tau * k / ma;
                    pts.emplace_back(r * std::cos(t), r * std::sin(t));
                    ws.push_back(wu[static_cast<std::size_t>(i)] / ma);
                }
            }
            m.coords.reserve(pts.size() * pts.size() * 2);
            m.weights.reserve(pts.size() * pts.size());
            for (std::size_t i = 0; i < pts.size(); ++i)
                for (std::size_t k = 0; k < pts.size(); ++k) {
                    m.coords.push_back(pts[i]);
                    m.coords.push_back(pts[k]);
                    m.weights.push_back(ws[i] * ws[k]);
                }
            break;
        }
    }
    return m;
}

} // namespace polypot
