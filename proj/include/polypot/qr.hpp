#pragma once

#include <functional>
#include <string>
#include <vector>

#include "polypot/errors.hpp"
#include "polypot/precision.hpp"

namespace polypot {

/// Dense column-major complex matrix over a precision tier.
template <class R>
struct CMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Cx<R>> a;

    CMatrix() = default;
    CMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    Cx<R>& at(int i, int j) { return a[static_cast<std::size_t>(j) * rows + i]; }
    const Cx<R>& at(int i, int j) const { return a[static_cast<std::size_t>(j) * rows + i]; }
    Cx<R>* col(int j) { return a.data() + static_cast<std::size_t>(j) * rows; }
    const Cx<R>* col(int j) const { return a.data() + static_cast<std::size_t>(j) * rows; }
};

namespace detail {

template <class R>
R col_norm(const Cx<R>* v, int m) {
    R s(0);
    for (int i = 0; i < m; ++i) s += abs2(v[i]);
    return real_sqrt(s);
}

// <q, v> = q^H v
template <class R>
Cx<R> col_dot(const Cx<R>* q, const Cx<R>* v, int m) {
    Cx<R> s;
    for (int i = 0; i < m; ++i) s += conj(q[i]) * v[i];
    return s;
}

} // namespace detail

/// Modified Gram-Schmidt QR with one reorthogonalization pass.
///
/// A (m x k) is overwritten with Q; Rfac receives the upper-triangular factor
/// with a strictly positive real diagonal. Throws PrecisionError when a
/// column collapses to rounding level; `column_name` labels it in the message.
template <class R>
void mgs_qr(CMatrix<R>& A, CMatrix<R>& Rfac,
            const std::function<std::string(int)>& column_name = {}) {
    const int m = A.rows;
    const int k = A.cols;
    if (k == 0 || m == 0) throw ArgumentError("mgs_qr: empty matrix");
    Rfac = CMatrix<R>(k, k);
    const R eps = tier_eps<R>();
    const R drop = eps * R(1e4) * real_sqrt(R(m));
    for (int j = 0; j < k; ++j) {
        Cx<R>* v = A.col(j);
        const R orig = detail::col_norm(v, m);
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < j; ++i) {
                Cx<R> h = detail::col_dot(A.col(i), v, m);
                Rfac.at(i, j) += h;
                const Cx<R>* q = A.col(i);
                for (int r = 0; r < m; ++r) v[r] -= h * q[r];
            }
        }
        R nrm = detail::col_norm(v, m);
        if (!(nrm > orig * drop)) {
            std::string label = column_name ? column_name(j) : std::to_string(j);
            throw PrecisionError("orthogonalization: column " + label +
                                 " is numerically rank-deficient at the requested precision");
        }
        Rfac.at(j, j) = Cx<R>(nrm);
        R inv = R(1) / nrm;
        for (int r = 0; r < m; ++r) v[r] *= inv;
    }
}

/// Inverse of an upper-triangular factor, returned column-wise:
/// cols[j] holds rows 0..j of column j.
template <class R>
std::vector<std::vector<Cx<R>>> triangular_inverse(const CMatrix<R>& Rfac) {
    const int k = Rfac.cols;
    std::vector<std::vector<Cx<R>>> cols(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        auto& c = cols[static_cast<std::size_t>(j)];
        c.assign(static_cast<std::size_t>(j) + 1, Cx<R>());
        c[static_cast<std::size_t>(j)] = cx_div(Cx<R>(R(1)), Rfac.at(j, j));
        for (int i = j - 1; i >= 0; --i) {
            Cx<R> s;
            for (int l = i + 1; l <= j; ++l) s += Rfac.at(i, l) * c[static_cast<std::size_t>(l)];
            c[static_cast<std::size_t>(i)] = cx_div(Cx<R>(R(0)) - s, Rfac.at(i, i));
        }
    }
    return cols;
}

/// In-place LDL^H solve for a Hermitian positive definite system G x = b.
template <class R>
std::vector<Cx<R>> hermitian_solve(CMatrix<R> G, std::vector<Cx<R>> b) {
    const int n = G.cols;
    if (G.rows != n || static_cast<int>(b.size()) != n)
        throw ArgumentError("hermitian_solve: shape mismatch");
    // LDL^H factorization without pivoting (Gram matrices are PD).
    std::vector<R> d(static_cast<std::size_t>(n), R(0));
    for (int j = 0; j < n; ++j) {
        R dj = G.at(j, j).re;
        for (int k = 0; k < j; ++k) dj -= abs2(G.at(j, k)) * d[static_cast<std::size_t>(k)];
        if (!(dj > R(0)))
            throw PrecisionError("hermitian_solve: matrix not positive definite at pivot " +
                                 std::to_string(j));
        d[static_cast<std::size_t>(j)] = dj;
        for (int i = j + 1; i < n; ++i) {
            Cx<R> s = G.at(i, j);
            for (int k = 0; k < j; ++k)
                s -= G.at(i, k) * conj(G.at(j, k)) * d[static_cast<std::size_t>(k)];
            G.at(i, j) = cx_div(s, Cx<R>(d[static_cast<std::size_t>(j)]));
        }
    }
    // Forward: L y = b
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < i; ++k)
            b[static_cast<std::size_t>(i)] -= G.at(i, k) * b[static_cast<std::size_t>(k)];
    // Diagonal
    for (int i = 0; i < n; ++i) b[static_cast<std::size_t>(i)] /= d[static_cast<std::size_t>(i)];
    // Backward: L^H x = y
    for (int i = n - 1; i >= 0; --i)
        for (int k = i + 1; k < n; ++k)
            b[static_cast<std::size_t>(i)] -= conj(G.at(k, i)) * b[static_cast<std::size_t>(k)];
    return b;
}

} // namespace polypot
