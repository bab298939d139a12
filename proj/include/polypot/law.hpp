#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "polypot/errors.hpp"
#include "polypot/rng.hpp"

namespace polypot {

enum class LawKind { complex_gaussian, rademacher, uniform_disk, log_pareto };

enum class TailClass { satisfies, boundary_fails, fails };

/// i.i.d. coefficient law. All kinds are non-degenerate by construction.
///
/// complex-gaussian(sigma): E|xi|^2 = sigma^2, independent N(0, sigma^2/2)
/// parts. rademacher: +-1 equiprobable (atomic). uniform-disk(R): uniform on
/// |xi| <= R. log-pareto(gamma): P(log(1+|xi|) > t) = min(1, t^-gamma),
/// uniform phase; sampled as |xi| = exp(U^{-1/gamma}) - 1 with the exponent
/// capped at 700 to stay inside double range.
struct CoefficientLaw {
    LawKind kind = LawKind::complex_gaussian;
    double param = 1.0; // sigma / R / gamma

    std::string id() const {
        switch (kind) {
            case LawKind::complex_gaussian: return "complex-gaussian(" + num(param) + ")";
            case LawKind::rademacher: return "rademacher";
            case LawKind::uniform_disk: return "uniform-disk(" + num(param) + ")";
            case LawKind::log_pareto: return "log-pareto(" + num(param) + ")";
        }
        return "?";
    }

    Json to_json() const {
        switch (kind) {
            case LawKind::complex_gaussian:
                return {{"kind", "complex-gaussian"}, {"params", {{"sigma", param}}}};
            case LawKind::rademacher:
                return {{"kind", "rademacher"}, {"params", Json::object()}};
            case LawKind::uniform_disk:
                return {{"kind", "uniform-disk"}, {"params", {{"R", param}}}};
            case LawKind::log_pareto:
                return {{"kind", "log-pareto"}, {"params", {{"gamma", param}}}};
        }
        return {};
    }

    static CoefficientLaw from_json(const Json& j) {
        std::vector<std::string> bad;
        CoefficientLaw law;
        const std::string kind = j.value("kind", "");
        const Json params = j.value("params", Json::object());
        auto need = [&](const char* name) {
            if (params.contains(name) && params[name].is_number() &&
                params[name].get<double>() > 0)
                law.param = params[name].get<double>();
            else
                bad.push_back(std::string("law.params.") + name);
        };
        if (kind == "complex-gaussian") {
            law.kind = LawKind::complex_gaussian;
            need("sigma");
        } else if (kind == "rademacher") {
            law.kind = LawKind::rademacher;
        } else if (kind == "uniform-disk") {
            law.kind = LawKind::uniform_disk;
            need("R");
        } else if (kind == "log-pareto") {
            law.kind = LawKind::log_pareto;
            need("gamma");
        } else {
            bad.push_back("law.kind");
        }
        if (!bad.empty()) throw SchemaError("coefficient law: invalid fields", bad);
        return law;
    }

private:
    static std::string num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return buf;
    }
};

/// Tail classification against P(log(1+|xi|) > t) = o(t^{-d}).
inline TailClass classify_tail(const CoefficientLaw& law, int d) {
    if (d < 1) throw ArgumentError("classify_tail: dimension must be >= 1");
    switch (law.kind) {
        case LawKind::complex_gaussian:
        case LawKind::rademacher:
        case LawKind::uniform_disk:
            return TailClass::satisfies; // bounded or sub-exponential log-tail
        case LawKind::log_pareto: {
            const double g = law.param;
            if (g > static_cast<double>(d)) return TailClass::satisfies;
            if (g == static_cast<double>(d)) return TailClass::boundary_fails;
            return TailClass::fails;
        }
    }
    return TailClass::satisfies;
}

inline std::complex<double> sample_one(const CoefficientLaw& law, RngStream& rng) {
    switch (law.kind) {
        case LawKind::complex_gaussian: {
            const double s = law.param / std::sqrt(2.0);
            return {s * rng.gaussian(), s * rng.gaussian()};
        }
        case LawKind::rademacher:
            return {(rng.next_u64() & 1u) ? 1.0 : -1.0, 0.0};
        case LawKind::uniform_disk: {
            double r = law.param * std::sqrt(rng.uniform01());
            return r * rng.unit_phase();
        }
        case LawKind::log_pareto: {
            double g = std::pow(rng.uniform01_open(), -1.0 / law.param);
            if (g > 700.0) g = 700.0; // double-range cap; tail beyond ~1e304 saturates
            return std::expm1(g) * rng.unit_phase();
        }
    }
    return {0.0, 0.0};
}

inline std::vector<std::complex<double>> sample_coefficients(const CoefficientLaw& law,
                                                             int count, RngStream& rng) {
    if (count < 1) throw ArgumentError("sample_coefficients: count must be >= 1");
    std::vector<std::complex<double>> out(static_cast<std::size_t>(count));
    for (auto& v : out) v = sample_one(law, rng);
    return out;
}

} // namespace polypot
