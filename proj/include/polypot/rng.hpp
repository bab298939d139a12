#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace polypot {

/// SplitMix64. Fixed algorithm so streams reproduce across platforms.
struct SplitMix64 {
    std::uint64_t s = 0;

    std::uint64_t next() {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
    SplitMix64 g{master ^ (0x632be59bd9b4e019ULL * (stream + 1))};
    g.next();
    return g.next();
}

/// Stream identifiers: one master seed, per-(n, trial, purpose) streams via a
/// stateless counter construction, so trials are order-independent.
inline std::uint64_t stream_id(int n, int trial, int purpose) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(n)) << 32) |
           (static_cast<std::uint64_t>(static_cast<std::uint32_t>(trial)) << 8) |
           static_cast<std::uint64_t>(purpose & 0xff);
}

class RngStream {
public:
    RngStream(std::uint64_t master, std::uint64_t stream) : g_{mix_seed(master, stream)} {}

    std::uint64_t next_u64() { return g_.next(); }

    /// Uniform in [0,1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0,1); never returns an endpoint.
    double uniform01_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::complex<double> unit_phase() {
        double t = 2.0 * std::numbers::pi * uniform01();
        return {std::cos(t), std::sin(t)};
    }

    /// Standard normal via Box-Muller; second draw cached.
    double gaussian() {
        if (have_cache_) {
            have_cache_ = false;
            return cache_;
        }
        double u1 = uniform01_open();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 2.0 * std::numbers::pi * u2;
        cache_ = r * std::sin(t);
        have_cache_ = true;
        return r * std::cos(t);
    }

private:
    SplitMix64 g_;
    bool have_cache_ = false;
    double cache_ = 0.0;
};

} // namespace polypot
