#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polypot/errors.hpp"

namespace polypot {

/// Rectangular evaluation lattice over a box in C (node-centered cells).
struct GridSpec {
    double x0 = -2.0, x1 = 2.0;
    double y0 = -2.0, y1 = 2.0;
    int nx = 201, ny = 201;
    double clamp = -50.0;

    double dx() const { return nx > 1 ? (x1 - x0) / (nx - 1) : 0.0; }
    double dy() const { return ny > 1 ? (y1 - y0) / (ny - 1) : 0.0; }
    double x(int i) const { return x0 + dx() * i; }
    double y(int j) const { return y0 + dy() * j; }

    Json to_json() const {
        return {{"x0", x0}, {"x1", x1}, {"y0", y0}, {"y1", y1},
                {"nx", nx}, {"ny", ny}, {"clamp", clamp}};
    }

    static GridSpec from_json(const Json& j) {
        GridSpec g;
        g.x0 = j.value("x0", -2.0);
        g.x1 = j.value("x1", 2.0);
        g.y0 = j.value("y0", -2.0);
        g.y1 = j.value("y1", 2.0);
        g.nx = j.value("nx", 201);
        g.ny = j.value("ny", 201);
        g.clamp = j.value("clamp", -50.0);
        if (g.nx < 2 || g.ny < 2 || !(g.x0 < g.x1) || !(g.y0 < g.y1))
            throw SchemaError("grid: invalid box or resolution",
                              {"grid.nx", "grid.ny", "grid.x0", "grid.x1"});
        return g;
    }
};

/// Real scalar field sampled on a GridSpec, values clamped from below.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(GridSpec g, std::string provenance = {})
        : grid_(g),
          provenance_(std::move(provenance)),
          v_(static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny), g.clamp) {}

    const GridSpec& grid() const { return grid_; }
    const std::string& provenance() const { return provenance_; }

    double at(int ix, int iy) const {
        return v_[static_cast<std::size_t>(iy) * grid_.nx + ix];
    }

    /// Stores max(value, clamp); non-finite values collapse to the clamp floor
    /// (a -inf log spike) or saturate high.
    void set(int ix, int iy, double value) {
        double x = value;
        if (std::isnan(x)) x = grid_.clamp;
        if (x < grid_.clamp) x = grid_.clamp;
        v_[static_cast<std::size_t>(iy) * grid_.nx + ix] = x;
    }

    std::size_t size() const { return v_.size(); }
    const std::vector<double>& values() const { return v_; }

    void write_csv(const std::string& path) const {
        std::ofstream os(path);
        if (!os) throw Error("cannot open " + path);
        os << "x,y,value\n";
        char buf[96];
        for (int j = 0; j < grid_.ny; ++j)
            for (int i = 0; i < grid_.nx; ++i) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid_.x(i), grid_.y(j),
                              at(i, j));
                os << buf;
            }
    }

    void write_sidecar(const std::string& path) const {
        std::ofstream os(path);
        if (!os) throw Error("cannot open " + path);
        Json j{{"box", {{"x0", grid_.x0}, {"x1", grid_.x1}, {"y0", grid_.y0}, {"y1", grid_.y1}}},
               {"spacing", {{"dx", grid_.dx()}, {"dy", grid_.dy()}}},
               {"nx", grid_.nx},
               {"ny", grid_.ny},
               {"clamp", grid_.clamp},
               {"provenance", provenance_}};
        os << j.dump(2) << "\n";
    }

private:
    GridSpec grid_;
    std::string provenance_;
    std::vector<double> v_;
};

enum class FieldDistance { L1, sup };

/// L1: cell-area-weighted mean absolute difference over the box (uniform
/// cells). sup: maximum absolute difference.
inline double field_distance(const ScalarField& a, const ScalarField& b, FieldDistance mode) {
    const GridSpec& ga = a.grid();
    const GridSpec& gb = b.grid();
    if (ga.nx != gb.nx || ga.ny != gb.ny || ga.x0 != gb.x0 || ga.x1 != gb.x1 ||
        ga.y0 != gb.y0 || ga.y1 != gb.y1)
        throw ArgumentError("field_distance: grids do not match");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = std::fabs(a.values()[i] - b.values()[i]);
        if (mode == FieldDistance::sup)
            acc = std::max(acc, d);
        else
            acc += d;
    }
    return mode == FieldDistance::sup ? acc : acc / static_cast<double>(a.size());
}

} // namespace polypot
