#pragma once

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polypot/basis.hpp"
#include "polypot/geometry.hpp"
#include "polypot/homog.hpp"
#include "polypot/measure.hpp"
#include "polypot/qr.hpp"

namespace polypot {

/// L^2 Chebyshev number T(n, alpha) = 1 / a_{n,alpha}.
inline double l2_chebyshev(const OrthonormalBasis& basis, const MultiIndex& alpha) {
    int pos = basis.order().position(alpha);
    if (pos < 0) throw ArgumentError("l2_chebyshev: index not in the basis order");
    return std::exp(-basis.log_leading(pos));
}

/// Independent route: minimal ||w^n p||_{L^2(tau)} over the monic class
/// P(alpha), via the normal equations of the constrained least-squares
/// problem assembled directly from quadrature sums.
inline double l2_chebyshev_normal_eq(const DiscreteMeasure& tau, const WeightedSet& set, int n,
                                     const MultiIndex& alpha, int precision_bits = 256) {
    MultiIndexOrder ord = monomial_order(set.dimension(), n);
    const int p = ord.position(alpha);
    if (p < 0) throw ArgumentError("l2_chebyshev_normal_eq: index outside P_n");
    return dispatch_tier(precision_tier(precision_bits), [&](auto tag) -> double {
        using R = typename decltype(tag)::type;
        const int dim = tau.dim;
        const std::size_t nn = tau.size();
        std::vector<Cx<R>> v(static_cast<std::size_t>(p) + 1);
        CMatrix<R> G(p, p);
        std::vector<Cx<R>> g(static_cast<std::size_t>(p));
        R target_nrm2(0);
        std::array<std::vector<Cx<R>>, 2> pw;
        for (int d = 0; d < dim; ++d) pw[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(n) + 1);
        std::vector<std::complex<double>> zbuf(static_cast<std::size_t>(dim));
        for (std::size_t i = 0; i < nn; ++i) {
            for (int d = 0; d < dim; ++d) zbuf[static_cast<std::size_t>(d)] = tau.coord(i, d);
            const double q = set.q_at(std::span<const std::complex<double>>(zbuf.data(), zbuf.size()));
            const R s2 = R(tau.weights[i]) * real_exp(R(-2.0 * n * q));
            for (int d = 0; d < dim; ++d) {
                auto& t = pw[static_cast<std::size_t>(d)];
                t[0] = Cx<R>(R(1));
                Cx<R> zv(zbuf[static_cast<std::size_t>(d)]);
                for (int k = 1; k <= n; ++k) t[static_cast<std::size_t>(k)] = t[static_cast<std::size_t>(k - 1)] * zv;
            }
            for (int c = 0; c <= p; ++c) {
                const MultiIndex& b = ord.at(c);
                Cx<R> val = pw[0][static_cast<std::size_t>(b[0])];
                if (dim > 1) val = val * pw[1][static_cast<std::size_t>(b[1])];
                v[static_cast<std::size_t>(c)] = val;
            }
            for (int r = 0; r < p; ++r) {
                Cx<R> cr = conj(v[static_cast<std::size_t>(r)]) * s2;
                for (int c = 0; c < p; ++c) G.at(r, c) += cr * v[static_cast<std::size_t>(c)];
                g[static_cast<std::size_t>(r)] += cr * v[static_cast<std::size_t>(p)];
            }
            target_nrm2 += s2 * abs2(v[static_cast<std::size_t>(p)]);
        }
        if (p == 0) return to_double(real_sqrt(target_nrm2));
        for (auto& e : g) e = Cx<R>(R(0)) - e;
        std::vector<Cx<R>> c = hermitian_solve(G, g);
        // Residual norm recomputed by a second quadrature pass.
        R acc(0);
        for (std::size_t i = 0; i < nn; ++i) {
            for (int d = 0; d < dim; ++d) zbuf[static_cast<std::size_t>(d)] = tau.coord(i, d);
            const double q = set.q_at(std::span<const std::complex<double>>(zbuf.data(), zbuf.size()));
            const R s2 = R(tau.weights[i]) * real_exp(R(-2.0 * n * q));
            for (int d = 0; d < dim; ++d) {
                auto& t = pw[static_cast<std::size_t>(d)];
                t[0] = Cx<R>(R(1));
                Cx<R> zv(zbuf[static_cast<std::size_t>(d)]);
                for (int k = 1; k <= n; ++k) t[static_cast<std::size_t>(k)] = t[static_cast<std::size_t>(k - 1)] * zv;
            }
            Cx<R> val;
            for (int cc = 0; cc <= p; ++cc) {
                const MultiIndex& b = ord.at(cc);
                Cx<R> mono = pw[0][static_cast<std::size_t>(b[0])];
                if (dim > 1) mono = mono * pw[1][static_cast<std::size_t>(b[1])];
                val += (cc == p ? Cx<R>(R(1)) : c[static_cast<std::size_t>(cc)]) * mono;
            }
            acc += s2 * abs2(val);
        }
        return to_double(real_sqrt(acc));
    });
}

/// (1/n) log(a_{n,alpha(i)} / a_{n,alpha(k)}) from the stored diagonal.
inline double coeff_ratio_probe(const OrthonormalBasis& basis, int i, int k) {
    return (basis.log_leading(i) - basis.log_leading(k)) / std::max(1, basis.degree());
}

struct LawsonOptions {
    int max_iter = 2000;
    double tol = 1e-8;
};

struct SupChebResult {
    double tau = 0.0;     // |alpha|-th root of the minimax value
    double minimax = 0.0; // minimal sup over the node set
    bool certified = true;
    std::vector<MultiIndex> competitors;
    Eigen::VectorXcd coeffs;
};

/// Minimal sup-norm over a node set of a monic polynomial in the class
/// P(alpha) (optionally restricted to homogeneous competitors), via Lawson
/// iteratively-reweighted least squares. Stagnation past the iteration cap
/// returns the best value with certified = false.
inline SupChebResult sup_chebyshev(std::span<const C2Point> nodes, const MultiIndex& alpha,
                                   bool homogeneous, LawsonOptions opt = {}) {
    if (alpha.size() != 2) throw ArgumentError("sup_chebyshev: expects C^2 multi-indices");
    const int deg = multi_degree(alpha);
    if (deg < 1) throw ArgumentError("sup_chebyshev: |alpha| must be >= 1");
    if (nodes.empty()) throw ArgumentError("sup_chebyshev: empty node set");
    MultiIndexOrder ord = monomial_order(2, deg);
    const int pos = ord.position(alpha);
    SupChebResult res;
    for (int i = 0; i < pos; ++i) {
        const MultiIndex& b = ord.at(i);
        if (homogeneous && multi_degree(b) != deg) continue;
        res.competitors.push_back(b);
    }
    const int N = static_cast<int>(nodes.size());
    const int k = static_cast<int>(res.competitors.size());
    auto mono = [&](const C2Point& z, const MultiIndex& b) {
        std::complex<double> v{1.0, 0.0};
        for (int t = 0; t < b[0]; ++t) v *= z[0];
        for (int t = 0; t < b[1]; ++t) v *= z[1];
        return v;
    };
    Eigen::VectorXcd b(N);
    for (int i = 0; i < N; ++i) b(i) = mono(nodes[static_cast<std::size_t>(i)], alpha);
    if (k == 0) {
        res.minimax = b.cwiseAbs().maxCoeff();
        res.tau = std::pow(res.minimax, 1.0 / deg);
        res.coeffs.resize(0);
        return res;
    }
    Eigen::MatrixXcd V(N, k);
    for (int c = 0; c < k; ++c)
        for (int i = 0; i < N; ++i)
            V(i, c) = mono(nodes[static_cast<std::size_t>(i)], res.competitors[static_cast<std::size_t>(c)]);
    Eigen::VectorXd w = Eigen::VectorXd::Constant(N, 1.0 / N);
    double prev = std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXcd best_c = Eigen::VectorXcd::Zero(k);
    res.certified = false;
    for (int it = 0; it < opt.max_iter; ++it) {
        Eigen::VectorXd sw = w.cwiseSqrt();
        Eigen::MatrixXcd Vw = sw.asDiagonal() * V;
        Eigen::VectorXcd bw = sw.asDiagonal() * b;
        Eigen::VectorXcd c = Vw.colPivHouseholderQr().solve(-bw);
        Eigen::VectorXcd r = b + V * c;
        Eigen::VectorXd ra = r.cwiseAbs();
        double sup = ra.maxCoeff();
        if (sup < best) {
            best = sup;
            best_c = c;
        }
        if (std::abs(sup - prev) <= opt.tol * std::max(1.0, sup)) {
            res.certified = true;
            break;
        }
        prev = sup;
        // Lawson update with a floor so zero-residual nodes stay live.
        double wsum = 0.0;
        for (int i = 0; i < N; ++i) {
            w(i) = std::max(w(i) * ra(i), 1e-300);
            wsum += w(i);
        }
        w /= wsum;
    }
    res.minimax = best;
    res.coeffs = best_c;
    res.tau = std::pow(best, 1.0 / deg);
    return res;
}

/// Node families for sup-norm minimization on the supported C^2 sets.
///
/// With `homogeneous` set, |p| of a homogeneous polynomial depends only on
/// the phase difference of the coordinates on these circled sets, so one
/// angular variable is collapsed.
inline std::vector<C2Point> sup_sample_nodes(const WeightedSet& set, int target,
                                             bool homogeneous) {
    if (set.dimension() != 2)
        throw UnsupportedError("sup_sample_nodes: sup-Chebyshev node sets are for C^2 sets");
    const double tau = 2.0 * std::numbers::pi;
    std::vector<C2Point> pts;
    switch (set.kind) {
        case SetKind::polydisk: {
            if (homogeneous) {
                int na = std::max(64, target);
                pts.reserve(static_cast<std::size_t>(na));
                for (int j = 0; j < na; ++j) {
                    double t = tau * j / na;
                    pts.push_back({C1(1.0, 0.0), C1(std::cos(t), std::sin(t))});
                }
            } else {
                int na = std::max(16, static_cast<int>(std::sqrt(target)));
                for (int i = 0; i < na; ++i)
                    for (int j = 0; j < na; ++j) {
                        double t1 = tau * i / na, t2 = tau * j / na;
                        pts.push_back({C1(std::cos(t1), std::sin(t1)), C1(std::cos(t2), std::sin(t2))});
                    }
            }
            break;
        }
        case SetKind::ball:
        case SetKind::ellipsoid: {
            const double rz = (set.kind == SetKind::ball) ? 1.0 : set.semi_z;
            const double rw = (set.kind == SetKind::ball) ? 1.0 : set.semi_w;
            int nt = std::max(65, static_cast<int>(std::sqrt(target)) | 1);
            int na = std::max(64, target / nt);
            for (int i = 0; i < nt; ++i) {
                double t = static_cast<double>(i) / (nt - 1);
                double z1 = rz * std::sqrt(t), z2 = rw * std::sqrt(1.0 - t);
                if (homogeneous) {
                    for (int j = 0; j < na; ++j) {
                        double a = tau * j / na;
                        pts.push_back({C1(z1, 0.0), C1(z2 * std::cos(a), z2 * std::sin(a))});
                    }
                } else {
                    int nb = std::max(12, static_cast<int>(std::sqrt(static_cast<double>(na))) + 2);
                    for (int j1 = 0; j1 < nb; ++j1)
                        for (int j2 = 0; j2 < nb; ++j2) {
                            double a1 = tau * j1 / nb, a2 = tau * j2 / nb;
                            pts.push_back({C1(z1 * std::cos(a1), z1 * std::sin(a1)),
                                           C1(z2 * std::cos(a2), z2 * std::sin(a2))});
                        }
                }
            }
            break;
        }
        default:
            throw UnsupportedError("sup_sample_nodes: unsupported set kind " +
                                   set_kind_name(set.kind));
    }
    return pts;
}

struct ScanOptions {
    int sup_node_target = 6000;
    BasisOptions basis;
    LawsonOptions lawson;
};

/// Directional Chebyshev scan along a schedule of degrees.
struct DirectionScan {
    std::vector<double> theta;
    std::string route; // "l2-bundle" or "sup"
    struct Entry {
        int n = 0;
        MultiIndex alpha;
        double value = 0.0;
        std::optional<double> diff; // successive difference within the offset slot
        bool certified = true;
    };
    std::vector<Entry> entries;

    void write_csv(const std::string& path) const {
        std::ofstream os(path);
        if (!os) throw Error("cannot open " + path);
        os << "n,alpha,value,diff\n";
        char buf[96];
        for (const auto& e : entries) {
            std::string a;
            for (std::size_t i = 0; i < e.alpha.size(); ++i) {
                if (i) a += ":";
                a += std::to_string(e.alpha[i]);
            }
            std::snprintf(buf, sizeof buf, "%.17g", e.value);
            os << e.n << "," << a << "," << buf << ",";
            if (e.diff) {
                std::snprintf(buf, sizeof buf, "%.17g", *e.diff);
                os << buf;
            }
            os << "\n";
        }
    }
};

namespace detail {

inline std::vector<int> boundary_offsets(int n) {
    std::vector<int> ks{0, 1, 2, static_cast<int>(std::sqrt(static_cast<double>(n)))};
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
}

} // namespace detail

/// Scans the schedule along theta (a point of the simplex Sigma_2).
///
/// d = 1 sets take the L^2 route through the homogenized bundle picture:
/// values T(n, alpha)^{1/n} with (n-alpha, alpha)/n -> theta. d = 2 circled
/// sets take the sup route: values tau_alpha from Lawson minimax with
/// alpha/|alpha| -> theta. Boundary directions walk the offsets
/// k in {0,1,2,floor(sqrt(n))}.
inline DirectionScan direction_scan(const WeightedSet& set, std::span<const double> theta,
                                    std::span<const int> ns, ScanOptions opt = {}) {
    if (theta.size() != 2 || theta[0] < 0 || theta[1] < 0 ||
        std::fabs(theta[0] + theta[1] - 1.0) > 1e-9)
        throw ArgumentError("direction_scan: theta must lie on the standard simplex of R^2");
    DirectionScan scan;
    scan.theta.assign(theta.begin(), theta.end());
    const bool l2 = set.dimension() == 1;
    scan.route = l2 ? "l2-bundle" : "sup";

    // slot -> previous value, for successive differences
    std::vector<std::pair<int, double>> prev;
    auto push = [&](int n, MultiIndex alpha, double value, bool certified, int slot) {
        DirectionScan::Entry e;
        e.n = n;
        e.alpha = std::move(alpha);
        e.value = value;
        e.certified = certified;
        for (auto& p : prev)
            if (p.first == slot) {
                e.diff = value - p.second;
                p.second = value;
            }
        if (!e.diff) {
            prev.emplace_back(slot, value);
        }
        scan.entries.push_back(std::move(e));
    };

    std::vector<C2Point> nodes;
    if (!l2) nodes = sup_sample_nodes(set, opt.sup_node_target, true);

    for (int n : ns) {
        const bool boundary = theta[0] == 0.0 || theta[1] == 0.0;
        std::vector<std::pair<int, MultiIndex>> picks; // (slot, alpha)
        if (l2) {
            // theta = (theta_t, theta_z); alpha/n -> theta_z.
            if (boundary) {
                for (int kk : detail::boundary_offsets(n)) {
                    int a = theta[1] == 1.0 ? n - kk : kk;
                    if (a >= 0 && a <= n) picks.emplace_back(kk, MultiIndex{a});
                }
            } else {
                picks.emplace_back(0, MultiIndex{static_cast<int>(std::lround(theta[1] * n))});
            }
        } else {
            if (boundary) {
                for (int kk : detail::boundary_offsets(n)) {
                    int a = theta[0] == 1.0 ? n - kk : kk;
                    if (a >= 0 && a <= n) picks.emplace_back(kk, MultiIndex{a, n - a});
                }
            } else {
                int a = static_cast<int>(std::lround(theta[0] * n));
                picks.emplace_back(0, MultiIndex{a, n - a});
            }
        }
        if (l2) {
            DiscreteMeasure tau = quadrature_measure(set, 2 * n);
            OrthonormalBasis basis = orthonormal_basis(tau, set, n, opt.basis);
            for (auto& [slot, alpha] : picks) {
                double t = l2_chebyshev(basis, alpha);
                push(n, alpha, std::pow(t, 1.0 / n), true, slot);
            }
        } else {
            for (auto& [slot, alpha] : picks) {
                SupChebResult r = sup_chebyshev(nodes, alpha, true, opt.lawson);
                push(n, alpha, r.tau, r.certified, slot);
            }
        }
    }
    return scan;
}

} // namespace polypot
