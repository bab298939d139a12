#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "polypot/errors.hpp"
#include "polypot/weight_expr.hpp"

namespace polypot {

using C1 = std::complex<double>;
using C2Point = std::array<std::complex<double>, 2>;

enum class SetKind { circle, interval, disk, ball, polydisk, ellipsoid };

inline std::string set_kind_name(SetKind k) {
    switch (k) {
        case SetKind::circle: return "circle";
        case SetKind::interval: return "interval";
        case SetKind::disk: return "disk";
        case SetKind::ball: return "ball";
        case SetKind::polydisk: return "polydisk";
        case SetKind::ellipsoid: return "ellipsoid";
    }
    return "?";
}

/// A supported compact set K together with a weight Q (w = e^{-Q}).
///
/// Kinds: circle |z|=R and interval [a,b] and closed disk |z|<=R in C;
/// closed unit ball, unit polydisk and ellipsoid E(A,r) = {|z|^2/r^2 +
/// |w|^2/A^2 <= 1} in C^2.
struct WeightedSet {
    SetKind kind = SetKind::circle;
    double radius = 1.0;   // circle, disk
    double a = -1.0;       // interval left endpoint
    double b = 1.0;        // interval right endpoint
    double semi_z = 0.5;   // ellipsoid: semiaxis r of the z coordinate
    double semi_w = 2.0;   // ellipsoid: semiaxis A of the w coordinate
    WeightExpr weight = WeightExpr::zero();

    int dimension() const {
        switch (kind) {
            case SetKind::circle:
            case SetKind::interval:
            case SetKind::disk:
                return 1;
            default:
                return 2;
        }
    }

    /// Q at a point, with a finiteness check.
    double q_at(std::span<const std::complex<double>> z) const {
        double q = weight.eval(z);
        if (!std::isfinite(q))
            throw DomainError("weight evaluation is not finite at the given point");
        return q;
    }

    double q_at(const C1& z) const {
        std::array<C1, 1> p{z};
        return q_at(std::span<const C1>(p));
    }

    double q_at(const C2Point& z) const { return q_at(std::span<const C1>(z.data(), 2)); }

    /// Returns (Q(z), w(z)) with w = exp(-Q).
    std::pair<double, double> weight_at(std::span<const std::complex<double>> z) const {
        double q = q_at(z);
        return {q, std::exp(-q)};
    }

    std::string id() const {
        switch (kind) {
            case SetKind::circle: return "circle(R=" + fmt(radius) + ")";
            case SetKind::interval: return "interval[" + fmt(a) + "," + fmt(b) + "]";
            case SetKind::disk: return "disk(R=" + fmt(radius) + ")";
            case SetKind::ball: return "ball";
            case SetKind::polydisk: return "polydisk";
            case SetKind::ellipsoid:
                return "ellipsoid(A=" + fmt(semi_w) + ",r=" + fmt(semi_z) + ")";
        }
        return "?";
    }

    std::string weight_id() const { return weight.to_json().dump(); }

    /// Dense sample of K itself, used for sup-norm surrogates.
    /// Guarantees at least `target` points for d = 1 sets.
    std::vector<C2Point> sample(int target) const {
        std::vector<C2Point> pts;
        const double tau = 2.0 * std::numbers::pi;
        switch (kind) {
            case SetKind::circle: {
                int m = std::max(target, 8);
                pts.reserve(static_cast<std::size_t>(m));
                for (int k = 0; k < m; ++k) {
                    double t = tau * k / m;
                    pts.push_back({C1(radius * std::cos(t), radius * std::sin(t)), C1(0)});
                }
                break;
            }
            case SetKind::interval: {
                int m = std::max(target, 8);
                double mid = 0.5 * (a + b), half = 0.5 * (b - a);
                for (int k = 0; k < m; ++k) {
                    double x = mid + half * std::cos(std::numbers::pi * k / (m - 1));
                    pts.push_back({C1(x, 0.0), C1(0)});
                }
                break;
            }
            case SetKind::disk: {
                // Rings equidistributed in area, boundary ring included.
                int nr = std::max(4, static_cast<int>(std::ceil(std::sqrt(target / 3.0))));
                pts.push_back({C1(0, 0), C1(0)});
                for (int i = 1; i <= nr; ++i) {
                    double r = radius * std::sqrt(static_cast<double>(i) / nr);
                    int ma = std::max(8, static_cast<int>(std::ceil(3.0 * target * i /
                                                                    (nr * (nr + 1.0)))));
                    for (int k = 0; k < ma; ++k) {
                        double t = tau * k / ma;
                        pts.push_back({C1(r * std::cos(t), r * std::sin(t)), C1(0)});
                    }
                }
                break;
            }
            case SetKind::ball:
            case SetKind::ellipsoid: {
                double rz = (kind == SetKind::ball) ? 1.0 : semi_z;
                double rw = (kind == SetKind::ball) ? 1.0 : semi_w;
                int nt = std::max(9, static_cast<int>(std::cbrt(target)) | 1);
                int na = std::max(8, static_cast<int>(std::sqrt(target / nt)) + 4);
                for (int i = 0; i < nt; ++i) {
                    double t = static_cast<double>(i) / (nt - 1);
                    double z1 = rz * std::sqrt(t), z2 = rw * std::sqrt(1.0 - t);
                    for (int k1 = 0; k1 < na; ++k1)
                        for (int k2 = 0; k2 < na; ++k2) {
                            double t1 = tau * k1 / na, t2 = tau * k2 / na;
                            pts.push_back({C1(z1 * std::cos(t1), z1 * std::sin(t1)),
                                           C1(z2 * std::cos(t2), z2 * std::sin(t2))});
                        }
                }
                break;
            }
            case SetKind::polydisk: {
                // Distinguished boundary plus a few interior radii.
                int na = std::max(8, static_cast<int>(std::sqrt(target)) + 4);
                const double radii[] = {1.0, 0.6};
                for (double r1 : radii)
                    for (double r2 : radii)
                        for (int k1 = 0; k1 < na; ++k1)
                            for (int k2 = 0; k2 < na; ++k2) {
                                double t1 = tau * k1 / na, t2 = tau * k2 / na;
                                pts.push_back({C1(r1 * std::cos(t1), r1 * std::sin(t1)),
                                               C1(r2 * std::cos(t2), r2 * std::sin(t2))});
                            }
                break;
            }
        }
        return pts;
    }

    Json to_json() const {
        Json params;
        switch (kind) {
            case SetKind::circle:
            case SetKind::disk:
                params = {{"radius", radius}};
                break;
            case SetKind::interval:
                params = {{"a", a}, {"b", b}};
                break;
            case SetKind::ball:
            case SetKind::polydisk:
                params = Json::object();
                break;
            case SetKind::ellipsoid:
                params = {{"A", semi_w}, {"r", semi_z}};
                break;
        }
        return Json{{"schema", "geom-v1"},
                    {"kind", set_kind_name(kind)},
                    {"params", params},
                    {"weight_expr", weight.to_json()}};
    }

    static WeightedSet from_json(const Json& j) {
        std::vector<std::string> bad;
        WeightedSet s;
        if (!j.is_object()) throw SchemaError("geometry: expected an object", {"geometry"});
        if (j.contains("schema") && j["schema"] != "geom-v1")
            throw SchemaError("geometry: unknown schema (expected \"geom-v1\")", {"schema"});
        std::string kind = j.value("kind", "");
        if (kind == "circle") s.kind = SetKind::circle;
        else if (kind == "interval") s.kind = SetKind::interval;
        else if (kind == "disk") s.kind = SetKind::disk;
        else if (kind == "ball") s.kind = SetKind::ball;
        else if (kind == "polydisk") s.kind = SetKind::polydisk;
        else if (kind == "ellipsoid") s.kind = SetKind::ellipsoid;
        else bad.push_back("kind");

        const Json params = j.value("params", Json::object());
        auto get = [&](const char* name, double& dst, bool positive) {
            if (!params.contains(name) || !params[name].is_number()) {
                bad.push_back(std::string("params.") + name);
                return;
            }
            dst = params[name].get<double>();
            if (positive && !(dst > 0)) bad.push_back(std::string("params.") + name);
        };
        if (bad.empty()) {
            switch (s.kind) {
                case SetKind::circle:
                case SetKind::disk:
                    get("radius", s.radius, true);
                    break;
                case SetKind::interval:
                    get("a", s.a, false);
                    get("b", s.b, false);
                    if (bad.empty() && !(s.a < s.b)) bad.push_back("params.b");
                    break;
                case SetKind::ellipsoid:
                    get("A", s.semi_w, true);
                    get("r", s.semi_z, true);
                    break;
                default:
                    break;
            }
        }
        if (j.contains("weight_expr")) {
            try {
                s.weight = WeightExpr::from_json(j["weight_expr"]);
            } catch (const SchemaError& e) {
                for (const auto& f : e.fields()) bad.push_back(f);
                if (e.fields().empty()) bad.push_back("weight_expr");
            }
        }
        if (!bad.empty()) throw SchemaError("geometry: invalid fields", bad);
        return s;
    }

private:
    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return buf;
    }
};

} // namespace polypot
