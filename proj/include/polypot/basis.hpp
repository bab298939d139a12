#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "polypot/errors.hpp"
#include "polypot/geometry.hpp"
#include "polypot/measure.hpp"
#include "polypot/multiindex.hpp"
#include "polypot/precision.hpp"
#include "polypot/qr.hpp"

namespace polypot {

struct BasisOptions {
    int precision_bits = 256;
    bool force_general_qr = false;
};

/// Change-of-basis coefficients at one precision tier. Column j holds
/// p_j = sum_{r <= j} cols[j][r] * z^{alpha(r)}; the diagonal layout keeps a
/// single entry per column.
template <class R>
struct CoeffCols {
    bool diagonal = false;
    std::vector<std::vector<Cx<R>>> cols;
};

struct BasisEval {
    std::vector<std::complex<double>> values;
    bool overflow = false;
};

namespace detail {

inline std::string format_index(const MultiIndex& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + ")";
}

} // namespace detail

/// Orthonormal basis {p_{n,alpha}} of P_n in L^2(e^{-2nQ} tau), triangular
/// over the graded monomial order with strictly positive real leading
/// coefficients a_{n,alpha}.
class OrthonormalBasis {
public:
    using Storage = std::variant<CoeffCols<long double>, CoeffCols<Float128>,
                                 CoeffCols<Float256>, CoeffCols<Float512>>;

    OrthonormalBasis() = default;

    template <class R>
    OrthonormalBasis(int dim, int n, int bits, MultiIndexOrder order, CoeffCols<R> cols,
                     std::string measure_id, std::string weight_id)
        : dim_(dim),
          n_(n),
          bits_(bits),
          order_(std::move(order)),
          store_(std::move(cols)),
          measure_id_(std::move(measure_id)),
          weight_id_(std::move(weight_id)) {
        build_mirror();
    }

    int dimension() const { return dim_; }
    int degree() const { return n_; }
    int precision_bits() const { return bits_; }
    int size() const { return order_.size(); }
    bool diagonal() const { return diagonal_; }
    const MultiIndexOrder& order() const { return order_; }
    const std::string& measure_id() const { return measure_id_; }
    const std::string& weight_id() const { return weight_id_; }

    /// Leading coefficients a_{n,alpha} (diagonal of the triangular factor).
    const std::vector<double>& leading() const { return leading_; }

    /// log a_{n,alpha}, computed at the construction precision.
    double log_leading(int i) const { return log_leading_.at(static_cast<std::size_t>(i)); }

    /// Coefficient of z^{alpha(row)} in p_{alpha(col)}; exact zero above the
    /// diagonal of the order.
    std::complex<double> coeff(int row, int col) const {
        if (row > col) return {0.0, 0.0};
        const auto& c = cols_d_[static_cast<std::size_t>(col)];
        if (diagonal_) return row == col ? c[0] : std::complex<double>(0.0, 0.0);
        return c[static_cast<std::size_t>(row)];
    }

    BasisEval evaluate(std::span<const std::complex<double>> z) const {
        BasisEval out;
        const int m = size();
        out.values.assign(static_cast<std::size_t>(m), {0.0, 0.0});
        std::vector<std::complex<double>> mono;
        monomials_at(z, mono);
        if (diagonal_) {
            for (int j = 0; j < m; ++j)
                out.values[static_cast<std::size_t>(j)] =
                    cols_d_[static_cast<std::size_t>(j)][0] * mono[static_cast<std::size_t>(j)];
        } else {
            for (int j = 0; j < m; ++j) {
                std::complex<double> s{0.0, 0.0};
                const auto& c = cols_d_[static_cast<std::size_t>(j)];
                for (int r = 0; r <= j; ++r)
                    s += c[static_cast<std::size_t>(r)] * mono[static_cast<std::size_t>(r)];
                out.values[static_cast<std::size_t>(j)] = s;
            }
        }
        for (const auto& v : out.values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                out.overflow = true;
                break;
            }
        return out;
    }

    BasisEval evaluate(const std::complex<double>& z) const {
        std::array<std::complex<double>, 1> p{z};
        return evaluate(std::span<const std::complex<double>>(p));
    }

    BasisEval evaluate(const C2Point& z) const {
        return evaluate(std::span<const std::complex<double>>(z.data(), 2));
    }

    template <class F>
    decltype(auto) visit_coeffs(F&& f) const {
        return std::visit(std::forward<F>(f), store_);
    }

    /// Dense row-major export; complex entries as lossless decimal pairs.
    Json to_json() const {
        Json mat = Json::array();
        visit_coeffs([&](const auto& cc) {
            using R = std::decay_t<decltype(cc.cols[0][0].re)>;
            const int m = size();
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c) {
                    Cx<R> v;
                    if (cc.diagonal) {
                        if (r == c) v = cc.cols[static_cast<std::size_t>(c)][0];
                    } else if (r <= c) {
                        v = cc.cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
                    }
                    mat.push_back(Json::array({to_decimal(v.re), to_decimal(v.im)}));
                }
        });
        return Json{{"schema", "basis-v1"},
                    {"dimension", dim_},
                    {"n", n_},
                    {"precision_bits", bits_},
                    {"order", "graded-lex"},
                    {"size", size()},
                    {"coeffs", std::move(mat)},
                    {"provenance",
                     {{"measure_id", measure_id_}, {"weight_id", weight_id_},
                      {"precision_bits", bits_}}}};
    }

    static OrthonormalBasis from_json(const Json& j) {
        std::vector<std::string> bad;
        if (!j.is_object()) throw SchemaError("basis: expected an object", {"basis"});
        if (j.value("schema", "") != "basis-v1") bad.push_back("schema");
        if (j.value("order", "") != "graded-lex") bad.push_back("order");
        const int dim = j.value("dimension", 0);
        const int n = j.value("n", -1);
        const int bits = j.value("precision_bits", 0);
        if (dim < 1 || dim > 3) bad.push_back("dimension");
        if (n < 0) bad.push_back("n");
        if (!bad.empty()) throw SchemaError("basis: invalid fields", bad);
        MultiIndexOrder ord = monomial_order(dim, n);
        const int m = ord.size();
        const auto& mat = j.at("coeffs");
        if (static_cast<int>(mat.size()) != m * m)
            throw SchemaError("basis: coeffs must hold size^2 complex pairs", {"coeffs"});
        return dispatch_tier(precision_tier(bits), [&](auto tag) {
            using R = typename decltype(tag)::type;
            CoeffCols<R> cc;
            cc.diagonal = false;
            cc.cols.resize(static_cast<std::size_t>(m));
            for (int c = 0; c < m; ++c) {
                auto& col = cc.cols[static_cast<std::size_t>(c)];
                col.resize(static_cast<std::size_t>(c) + 1);
                for (int r = 0; r <= c; ++r) {
                    const auto& pr = mat.at(static_cast<std::size_t>(r) * m + c);
                    col[static_cast<std::size_t>(r)] =
                        Cx<R>(from_decimal<R>(pr.at(0).get<std::string>()),
                              from_decimal<R>(pr.at(1).get<std::string>()));
                }
            }
            std::string mid, wid;
            if (j.contains("provenance")) {
                mid = j["provenance"].value("measure_id", "");
                wid = j["provenance"].value("weight_id", "");
            }
            return OrthonormalBasis(dim, n, bits, std::move(ord), std::move(cc), mid, wid);
        });
    }

private:
    void monomials_at(std::span<const std::complex<double>> z,
                      std::vector<std::complex<double>>& mono) const {
        const int m = size();
        mono.assign(static_cast<std::size_t>(m), {1.0, 0.0});
        std::array<std::vector<std::complex<double>>, 3> pw;
        for (int v = 0; v < dim_; ++v) {
            auto& p = pw[static_cast<std::size_t>(v)];
            p.assign(static_cast<std::size_t>(n_) + 1, {1.0, 0.0});
            for (int k = 1; k <= n_; ++k)
                p[static_cast<std::size_t>(k)] =
                    p[static_cast<std::size_t>(k - 1)] * z[static_cast<std::size_t>(v)];
        }
        for (int i = 0; i < m; ++i) {
            const MultiIndex& a = order_.at(i);
            std::complex<double> v = pw[0][static_cast<std::size_t>(a[0])];
            for (int d = 1; d < dim_; ++d)
                v *= pw[static_cast<std::size_t>(d)][static_cast<std::size_t>(a[static_cast<std::size_t>(d)])];
            mono[static_cast<std::size_t>(i)] = v;
        }
    }

    void build_mirror() {
        visit_coeffs([&](const auto& cc) {
            using R = std::decay_t<decltype(cc.cols[0][0].re)>;
            diagonal_ = cc.diagonal;
            const int m = static_cast<int>(cc.cols.size());
            cols_d_.resize(static_cast<std::size_t>(m));
            leading_.resize(static_cast<std::size_t>(m));
            log_leading_.resize(static_cast<std::size_t>(m));
            for (int jcol = 0; jcol < m; ++jcol) {
                const auto& col = cc.cols[static_cast<std::size_t>(jcol)];
                auto& dst = cols_d_[static_cast<std::size_t>(jcol)];
                dst.resize(col.size());
                for (std::size_t r = 0; r < col.size(); ++r) dst[r] = col[r].to_std();
                const Cx<R>& diag = col.back();
                leading_[static_cast<std::size_t>(jcol)] = to_double(diag.re);
                log_leading_[static_cast<std::size_t>(jcol)] = to_double(real_log(diag.re));
            }
        });
    }

    int dim_ = 1;
    int n_ = 0;
    int bits_ = 256;
    MultiIndexOrder order_;
    Storage store_;
    bool diagonal_ = false;
    std::vector<std::vector<std::complex<double>>> cols_d_;
    std::vector<double> leading_;
    std::vector<double> log_leading_;
    std::string measure_id_;
    std::string weight_id_;
};

namespace detail {

// Diagonal-Gram configurations: per-variable rotation invariance of tau and
// Q makes distinct monomials orthogonal, so orthonormalization reduces to
// column normalization. Output matches the general QR path to rounding.
inline bool diagonal_gram(const WeightedSet& set) {
    return set.kind != SetKind::interval && set.weight.rotation_invariant();
}

template <class R>
CoeffCols<R> build_diagonal(const DiscreteMeasure& tau, const WeightedSet& set, int n,
                            const MultiIndexOrder& ord) {
    const int m = ord.size();
    const int dim = tau.dim;
    std::vector<long double> norm2(static_cast<std::size_t>(m), 0.0L);
    std::array<std::vector<long double>, 2> p2;
    for (int v = 0; v < dim; ++v) p2[static_cast<std::size_t>(v)].resize(static_cast<std::size_t>(n) + 1);
    std::vector<std::complex<double>> zbuf(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < tau.size(); ++i) {
        for (int v = 0; v < dim; ++v) zbuf[static_cast<std::size_t>(v)] = tau.coord(i, v);
        const double q = set.q_at(std::span<const std::complex<double>>(zbuf.data(), zbuf.size()));
        const long double s2 =
            static_cast<long double>(tau.weights[i]) * std::exp(-2.0L * n * static_cast<long double>(q));
        for (int v = 0; v < dim; ++v) {
            auto& p = p2[static_cast<std::size_t>(v)];
            const long double r2 = std::norm(std::complex<long double>(zbuf[static_cast<std::size_t>(v)]));
            p[0] = 1.0L;
            for (int k = 1; k <= n; ++k) p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k - 1)] * r2;
        }
        for (int jcol = 0; jcol < m; ++jcol) {
            const MultiIndex& a = ord.at(jcol);
            long double t = p2[0][static_cast<std::size_t>(a[0])];
            if (dim > 1) t *= p2[1][static_cast<std::size_t>(a[1])];
            norm2[static_cast<std::size_t>(jcol)] += s2 * t;
        }
    }
    CoeffCols<R> cc;
    cc.diagonal = true;
    cc.cols.resize(static_cast<std::size_t>(m));
    for (int jcol = 0; jcol < m; ++jcol) {
        const long double nn = norm2[static_cast<std::size_t>(jcol)];
        if (!(nn > 0.0L) || std::isinf(nn))
            throw PrecisionError("orthonormal_basis: column " + format_index(ord.at(jcol)) +
                                 " has vanishing norm in the discrete measure");
        R a = R(1) / real_sqrt(R(nn));
        cc.cols[static_cast<std::size_t>(jcol)] = {Cx<R>(a)};
    }
    return cc;
}

template <class R>
CoeffCols<R> build_general(const DiscreteMeasure& tau, const WeightedSet& set, int n,
                           const MultiIndexOrder& ord) {
    const int m = ord.size();
    const int rows = static_cast<int>(tau.size());
    const int dim = tau.dim;
    CMatrix<R> A(rows, m);
    std::array<std::vector<Cx<R>>, 2> pw;
    for (int v = 0; v < dim; ++v) pw[static_cast<std::size_t>(v)].resize(static_cast<std::size_t>(n) + 1);
    std::vector<std::complex<double>> zbuf(static_cast<std::size_t>(dim));
    for (int i = 0; i < rows; ++i) {
        for (int v = 0; v < dim; ++v) zbuf[static_cast<std::size_t>(v)] = tau.coord(static_cast<std::size_t>(i), v);
        const double q = set.q_at(std::span<const std::complex<double>>(zbuf.data(), zbuf.size()));
        const R s = real_sqrt(R(tau.weights[static_cast<std::size_t>(i)])) * real_exp(R(-static_cast<double>(n) * q));
        for (int v = 0; v < dim; ++v) {
            auto& p = pw[static_cast<std::size_t>(v)];
            p[0] = Cx<R>(R(1));
            Cx<R> zv(zbuf[static_cast<std::size_t>(v)]);
            for (int k = 1; k <= n; ++k) p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k - 1)] * zv;
        }
        for (int jcol = 0; jcol < m; ++jcol) {
            const MultiIndex& a = ord.at(jcol);
            Cx<R> v = pw[0][static_cast<std::size_t>(a[0])];
            if (dim > 1) v = v * pw[1][static_cast<std::size_t>(a[1])];
            A.at(i, jcol) = v * s;
        }
    }
    CMatrix<R> Rf;
    mgs_qr(A, Rf, [&](int j) { return format_index(ord.at(j)); });
    CoeffCols<R> cc;
    cc.diagonal = false;
    cc.cols = triangular_inverse(Rf);
    return cc;
}

} // namespace detail

/// Gram-Schmidt construction of the orthonormal basis of P_n in
/// L^2(e^{-2nQ} tau), realized as QR of the weighted node-monomial matrix at
/// the requested precision. Requires tau exact to degree >= 2n.
inline OrthonormalBasis orthonormal_basis(const DiscreteMeasure& tau, const WeightedSet& set,
                                          int n, BasisOptions opt = {}) {
    if (n < 0) throw ArgumentError("orthonormal_basis: degree must be >= 0");
    if (tau.dim != set.dimension())
        throw ArgumentError("orthonormal_basis: measure dimension does not match the set");
    if (tau.exactness < 2 * n)
        throw ArgumentError("orthonormal_basis: measure exactness " +
                            std::to_string(tau.exactness) + " is below 2n = " +
                            std::to_string(2 * n));
    const PrecTier tier = precision_tier(opt.precision_bits);
    MultiIndexOrder ord = monomial_order(set.dimension(), n);
    if (static_cast<std::size_t>(ord.size()) > tau.size())
        throw ArgumentError("orthonormal_basis: fewer nodes than basis columns");
    return dispatch_tier(tier, [&](auto tag) {
        using R = typename decltype(tag)::type;
        CoeffCols<R> cc;
        if (!opt.force_general_qr && detail::diagonal_gram(set))
            cc = detail::build_diagonal<R>(tau, set, n, ord);
        else
            cc = detail::build_general<R>(tau, set, n, ord);
        return OrthonormalBasis(set.dimension(), n, tier_bits(tier), std::move(ord),
                                std::move(cc), tau.id, set.weight_id());
    });
}

inline const std::vector<double>& leading_coefficients(const OrthonormalBasis& b) {
    return b.leading();
}

} // namespace polypot
