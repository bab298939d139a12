#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include "polypot/basis.hpp"
#include "polypot/errors.hpp"

namespace polypot {

struct SeedRecord {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;
};

/// Random polynomial G_n = sum_alpha xi_alpha p_{n,alpha}, stored both as a
/// basis combination and, for root finding, as graded monomial coefficients
/// obtained through the triangular factor at the basis's precision.
class RandomPolynomial {
public:
    RandomPolynomial() = default;

    RandomPolynomial(std::shared_ptr<const OrthonormalBasis> basis,
                     std::vector<std::complex<double>> xi,
                     std::vector<std::complex<double>> monomial, int effective_degree,
                     SeedRecord seed)
        : basis_(std::move(basis)),
          xi_(std::move(xi)),
          monomial_(std::move(monomial)),
          effective_degree_(effective_degree),
          seed_(seed) {}

    const OrthonormalBasis& basis() const { return *basis_; }
    std::shared_ptr<const OrthonormalBasis> basis_ptr() const { return basis_; }
    const std::vector<std::complex<double>>& coefficients() const { return xi_; }
    const std::vector<std::complex<double>>& monomial_coefficients() const { return monomial_; }
    int effective_degree() const { return effective_degree_; }
    int degree_bound() const { return basis_->degree(); }
    int dimension() const { return basis_->dimension(); }
    const SeedRecord& seed() const { return seed_; }

    /// G(z) through the orthonormal-basis route.
    std::complex<double> evaluate(std::span<const std::complex<double>> z) const {
        BasisEval ev = basis_->evaluate(z);
        std::complex<double> s{0.0, 0.0};
        for (std::size_t j = 0; j < xi_.size(); ++j) s += xi_[j] * ev.values[j];
        return s;
    }

    std::complex<double> evaluate(const std::complex<double>& z) const {
        std::array<std::complex<double>, 1> p{z};
        return evaluate(std::span<const std::complex<double>>(p));
    }

    /// G(z) through the monomial route (long double accumulation).
    std::complex<double> evaluate_monomial(std::span<const std::complex<double>> z) const {
        return static_cast<std::complex<double>>(accumulate(z));
    }

    /// log|G(z)|; long double accumulation keeps huge coefficients finite.
    double log_abs(std::span<const std::complex<double>> z) const {
        std::complex<long double> s = accumulate(z);
        long double a = std::abs(s);
        return a > 0.0L ? static_cast<double>(std::log(a))
                        : -std::numeric_limits<double>::infinity();
    }

    double log_abs(const std::complex<double>& z) const {
        std::array<std::complex<double>, 1> p{z};
        return log_abs(std::span<const std::complex<double>>(p));
    }

private:
    std::complex<long double> accumulate(std::span<const std::complex<double>> z) const {
        const int dim = basis_->dimension();
        const int n = basis_->degree();
        const MultiIndexOrder& ord = basis_->order();
        std::array<std::vector<std::complex<long double>>, 2> pw;
        for (int v = 0; v < dim; ++v) {
            auto& p = pw[static_cast<std::size_t>(v)];
            p.assign(static_cast<std::size_t>(n) + 1, {1.0L, 0.0L});
            std::complex<long double> zv(z[static_cast<std::size_t>(v)]);
            for (int k = 1; k <= n; ++k) p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k - 1)] * zv;
        }
        std::complex<long double> s{0.0L, 0.0L};
        for (int i = 0; i < ord.size(); ++i) {
            const auto& a = ord.at(i);
            std::complex<long double> t(monomial_[static_cast<std::size_t>(i)]);
            t *= pw[0][static_cast<std::size_t>(a[0])];
            if (dim > 1) t *= pw[1][static_cast<std::size_t>(a[1])];
            s += t;
        }
        return s;
    }

    std::shared_ptr<const OrthonormalBasis> basis_;
    std::vector<std::complex<double>> xi_;
    std::vector<std::complex<double>> monomial_;
    int effective_degree_ = 0;
    SeedRecord seed_;
};

/// Combines coefficients with the basis. The monomial form is accumulated at
/// the basis's construction precision and then rounded to double; the
/// effective degree is the top graded block with a nonzero rounded
/// coefficient.
inline RandomPolynomial assemble(std::shared_ptr<const OrthonormalBasis> basis,
                                 std::vector<std::complex<double>> xi, SeedRecord seed = {}) {
    const int m = basis->size();
    if (static_cast<int>(xi.size()) != m)
        throw ArgumentError("assemble: coefficient count " + std::to_string(xi.size()) +
                            " does not match basis size " + std::to_string(m));
    std::vector<std::complex<double>> mono(static_cast<std::size_t>(m), {0.0, 0.0});
    basis->visit_coeffs([&](const auto& cc) {
        using R = std::decay_t<decltype(cc.cols[0][0].re)>;
        if (cc.diagonal) {
            for (int j = 0; j < m; ++j)
                mono[static_cast<std::size_t>(j)] =
                    (Cx<R>(xi[static_cast<std::size_t>(j)]) * cc.cols[static_cast<std::size_t>(j)][0]).to_std();
        } else {
            std::vector<Cx<R>> acc(static_cast<std::size_t>(m));
            for (int j = 0; j < m; ++j) {
                Cx<R> x(xi[static_cast<std::size_t>(j)]);
                const auto& col = cc.cols[static_cast<std::size_t>(j)];
                for (int r = 0; r <= j; ++r) acc[static_cast<std::size_t>(r)] += x * col[static_cast<std::size_t>(r)];
            }
            for (int r = 0; r < m; ++r) mono[static_cast<std::size_t>(r)] = acc[static_cast<std::size_t>(r)].to_std();
        }
    });
    const MultiIndexOrder& ord = basis->order();
    int eff = 0;
    for (int i = 0; i < m; ++i)
        if (mono[static_cast<std::size_t>(i)] != std::complex<double>(0.0, 0.0))
            eff = std::max(eff, multi_degree(ord.at(i)));
    return RandomPolynomial(std::move(basis), std::move(xi), std::move(mono), eff, seed);
}

} // namespace polypot
