#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "polypot/errors.hpp"

namespace polypot {

using MultiIndex = std::vector<int>;

inline int multi_degree(const MultiIndex& a) {
    int s = 0;
    for (int v : a) s += v;
    return s;
}

/// Graded ordering of the multi-indices {alpha in N^d : |alpha| <= n}.
///
/// Total degree compares first; within a degree block, indices are listed
/// with the first variable strongest (larger alpha_1 earlier, ties broken
/// by alpha_2, ...). For d = 2 the degree-m block reads
/// (m,0), (m-1,1), ..., (0,m). The ordering is translation-compatible:
/// alpha before beta implies alpha+e_j before beta+e_j.
class MultiIndexOrder {
public:
    MultiIndexOrder() = default;

    static MultiIndexOrder graded_lex(int d, int n) {
        if (d < 1 || d > 3)
            throw UnsupportedError("multi-index order: dimension " + std::to_string(d) +
                                   " outside supported range {1,2,3}");
        if (n < 0 || n > 600)
            throw UnsupportedError("multi-index order: degree " + std::to_string(n) +
                                   " outside supported range [0,600]");
        MultiIndexOrder ord;
        ord.dim_ = d;
        ord.degree_ = n;
        MultiIndex cur(d, 0);
        for (int m = 0; m <= n; ++m) {
            emit_block(d, m, cur, 0, ord.indices_);
        }
        ord.pos_.reserve(ord.indices_.size() * 2);
        for (std::size_t i = 0; i < ord.indices_.size(); ++i)
            ord.pos_.emplace(encode(ord.indices_[i]), static_cast<int>(i));
        return ord;
    }

    int dimension() const { return dim_; }
    int max_degree() const { return degree_; }
    int size() const { return static_cast<int>(indices_.size()); }

    const MultiIndex& at(int i) const { return indices_.at(static_cast<std::size_t>(i)); }
    const std::vector<MultiIndex>& indices() const { return indices_; }

    /// Position of alpha in the order; -1 if absent.
    int position(const MultiIndex& a) const {
        if (static_cast<int>(a.size()) != dim_) return -1;
        auto it = pos_.find(encode(a));
        return it == pos_.end() ? -1 : it->second;
    }

    bool contains(const MultiIndex& a) const { return position(a) >= 0; }

private:
    // Degree-m block, first variable strongest: enumerate alpha_1 from m down.
    static void emit_block(int d, int rem, MultiIndex& cur, int var,
                           std::vector<MultiIndex>& out) {
        if (var == d - 1) {
            cur[static_cast<std::size_t>(var)] = rem;
            out.push_back(cur);
            return;
        }
        for (int k = rem; k >= 0; --k) {
            cur[static_cast<std::size_t>(var)] = k;
            emit_block(d, rem - k, cur, var + 1, out);
        }
        cur[static_cast<std::size_t>(var)] = 0;
    }

    static std::uint64_t encode(const MultiIndex& a) {
        std::uint64_t key = 0;
        for (int v : a) key = (key << 16) | static_cast<std::uint64_t>(v & 0xffff);
        return key;
    }

    int dim_ = 0;
    int degree_ = -1;
    std::vector<MultiIndex> indices_;
    std::unordered_map<std::uint64_t, int> pos_;
};

inline MultiIndexOrder monomial_order(int d, int n) {
    return MultiIndexOrder::graded_lex(d, n);
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

} // namespace polypot
