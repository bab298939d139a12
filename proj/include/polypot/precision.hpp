#pragma once

#include <cfloat>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "polypot/errors.hpp"

namespace polypot {

namespace mp = boost::multiprecision;

using Float128 = mp::number<mp::cpp_bin_float<128, mp::backends::digit_base_2>, mp::et_off>;
using Float256 = mp::number<mp::cpp_bin_float<256, mp::backends::digit_base_2>, mp::et_off>;
using Float512 = mp::number<mp::cpp_bin_float<512, mp::backends::digit_base_2>, mp::et_off>;

// The 64-bit tier rides on the x87 extended format.
static_assert(LDBL_MANT_DIG >= 64, "long double must carry a 64-bit significand");

enum class PrecTier { bits64, bits128, bits256, bits512 };

inline PrecTier precision_tier(int bits) {
    if (bits < 64)
        throw UnsupportedError("precision_bits must be >= 64 (got " + std::to_string(bits) + ")");
    if (bits <= 64) return PrecTier::bits64;
    if (bits <= 128) return PrecTier::bits128;
    if (bits <= 256) return PrecTier::bits256;
    if (bits <= 512) return PrecTier::bits512;
    throw UnsupportedError("precision_bits above 512 not supported (got " + std::to_string(bits) + ")");
}

inline int tier_bits(PrecTier t) {
    switch (t) {
        case PrecTier::bits64: return 64;
        case PrecTier::bits128: return 128;
        case PrecTier::bits256: return 256;
        case PrecTier::bits512: return 512;
    }
    return 0;
}

/// Invoke f with std::type_identity<Real> for the tier's scalar type.
template <class F>
decltype(auto) dispatch_tier(PrecTier t, F&& f) {
    switch (t) {
        case PrecTier::bits64: return f(std::type_identity<long double>{});
        case PrecTier::bits128: return f(std::type_identity<Float128>{});
        case PrecTier::bits256: return f(std::type_identity<Float256>{});
        case PrecTier::bits512: return f(std::type_identity<Float512>{});
    }
    throw UnsupportedError("invalid precision tier");
}

template <class R>
double to_double(const R& x) {
    return static_cast<double>(x);
}

/// Minimal complex value type usable with every precision tier.
template <class R>
struct Cx {
    R re{};
    R im{};

    Cx() = default;
    Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}
    explicit Cx(R r) : re(std::move(r)), im(R(0)) {}
    explicit Cx(const std::complex<double>& z) : re(R(z.real())), im(R(z.imag())) {}

    std::complex<double> to_std() const { return {to_double(re), to_double(im)}; }

    Cx& operator+=(const Cx& o) { re += o.re; im += o.im; return *this; }
    Cx& operator-=(const Cx& o) { re -= o.re; im -= o.im; return *this; }
    Cx& operator*=(const R& s) { re *= s; im *= s; return *this; }
    Cx& operator/=(const R& s) { re /= s; im /= s; return *this; }

    friend Cx operator+(Cx a, const Cx& b) { a += b; return a; }
    friend Cx operator-(Cx a, const Cx& b) { a -= b; return a; }
    friend Cx operator*(const Cx& a, const Cx& b) {
        return Cx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend Cx operator*(Cx a, const R& s) { a *= s; return a; }
    friend Cx operator*(const R& s, Cx a) { a *= s; return a; }
};

template <class R>
Cx<R> conj(const Cx<R>& z) {
    return Cx<R>(z.re, R(0) - z.im);
}

template <class R>
R abs2(const Cx<R>& z) {
    return z.re * z.re + z.im * z.im;
}

template <class R>
R cx_abs(const Cx<R>& z) {
    using std::sqrt;
    return sqrt(abs2(z));
}

template <class R>
Cx<R> cx_div(const Cx<R>& a, const Cx<R>& b) {
    R d = abs2(b);
    return Cx<R>((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
}

template <class R>
R real_exp(const R& x) {
    using std::exp;
    return exp(x);
}

template <class R>
R real_log(const R& x) {
    using std::log;
    return log(x);
}

template <class R>
R real_sqrt(const R& x) {
    using std::sqrt;
    return sqrt(x);
}

template <class R>
R tier_eps() {
    return std::numeric_limits<R>::epsilon();
}

/// Lossless decimal rendering (round-trips at the same tier).
template <class R>
std::string to_decimal(const R& v) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<R>::max_digits10) << std::scientific << v;
    return os.str();
}

template <class R>
R from_decimal(const std::string& s) {
    if constexpr (std::is_same_v<R, long double>) {
        return std::strtold(s.c_str(), nullptr);
    } else if constexpr (std::is_same_v<R, double>) {
        return std::strtod(s.c_str(), nullptr);
    } else {
        return R(s);
    }
}

} // namespace polypot
