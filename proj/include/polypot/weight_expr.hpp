#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "polypot/errors.hpp"

namespace polypot {

using Json = nlohmann::json;

/// Closed-form weight expression Q over points of C^d.
///
/// The tree is limited to shapes that evaluate identically across runs:
/// constants, |z_j|, |z_j|^2, Re z_j, log(1+|z|^2), sums and scalar multiples.
class WeightExpr {
public:
    enum class Op { constant, abs_var, abs2_var, re_var, log1p_abs2, sum, scale };

    Op op = Op::constant;
    double value = 0.0; // constant value or scale factor
    int var = 0;        // variable index for abs/abs2/re
    std::vector<WeightExpr> terms;

    static WeightExpr zero() { return WeightExpr{}; }

    static WeightExpr constant(double c) {
        WeightExpr e;
        e.op = Op::constant;
        e.value = c;
        return e;
    }

    static WeightExpr abs_var(int j) {
        WeightExpr e;
        e.op = Op::abs_var;
        e.var = j;
        return e;
    }

    static WeightExpr abs2_var(int j) {
        WeightExpr e;
        e.op = Op::abs2_var;
        e.var = j;
        return e;
    }

    static WeightExpr re_var(int j) {
        WeightExpr e;
        e.op = Op::re_var;
        e.var = j;
        return e;
    }

    static WeightExpr log1p_abs2() {
        WeightExpr e;
        e.op = Op::log1p_abs2;
        return e;
    }

    static WeightExpr sum(std::vector<WeightExpr> ts) {
        WeightExpr e;
        e.op = Op::sum;
        e.terms = std::move(ts);
        return e;
    }

    static WeightExpr scale(double s, WeightExpr t) {
        WeightExpr e;
        e.op = Op::scale;
        e.value = s;
        e.terms.push_back(std::move(t));
        return e;
    }

    double eval(std::span<const std::complex<double>> z) const {
        switch (op) {
            case Op::constant:
                return value;
            case Op::abs_var:
                check_var(z.size());
                return std::abs(z[static_cast<std::size_t>(var)]);
            case Op::abs2_var:
                check_var(z.size());
                return std::norm(z[static_cast<std::size_t>(var)]);
            case Op::re_var:
                check_var(z.size());
                return z[static_cast<std::size_t>(var)].real();
            case Op::log1p_abs2: {
                double s = 0;
                for (const auto& c : z) s += std::norm(c);
                return std::log1p(s);
            }
            case Op::sum: {
                double s = 0;
                for (const auto& t : terms) s += t.eval(z);
                return s;
            }
            case Op::scale:
                return value * terms.at(0).eval(z);
        }
        return 0;
    }

    /// True when Q(z) is unchanged by independent phase rotations of each
    /// coordinate (no Re z_j node anywhere in the tree).
    bool rotation_invariant() const {
        if (op == Op::re_var) return false;
        for (const auto& t : terms)
            if (!t.rotation_invariant()) return false;
        return true;
    }

    bool is_zero() const { return op == Op::constant && value == 0.0; }

    Json to_json() const {
        Json j;
        switch (op) {
            case Op::constant: j = {{"op", "const"}, {"value", value}}; break;
            case Op::abs_var: j = {{"op", "abs"}, {"var", var}}; break;
            case Op::abs2_var: j = {{"op", "abs2"}, {"var", var}}; break;
            case Op::re_var: j = {{"op", "re"}, {"var", var}}; break;
            case Op::log1p_abs2: j = {{"op", "log1p_abs2"}}; break;
            case Op::sum: {
                j["op"] = "sum";
                j["terms"] = Json::array();
                for (const auto& t : terms) j["terms"].push_back(t.to_json());
                break;
            }
            case Op::scale:
                j = {{"op", "scale"}, {"factor", value}, {"term", terms.at(0).to_json()}};
                break;
        }
        return j;
    }

    static WeightExpr from_json(const Json& j) {
        if (!j.is_object() || !j.contains("op") || !j["op"].is_string())
            throw SchemaError("weight_expr: node must be an object with an \"op\" string",
                              {"weight_expr.op"});
        const std::string op = j["op"].get<std::string>();
        if (op == "const") return constant(j.at("value").get<double>());
        if (op == "abs") return abs_var(j.at("var").get<int>());
        if (op == "abs2") return abs2_var(j.at("var").get<int>());
        if (op == "re") return re_var(j.at("var").get<int>());
        if (op == "log1p_abs2") return log1p_abs2();
        if (op == "sum") {
            std::vector<WeightExpr> ts;
            for (const auto& t : j.at("terms")) ts.push_back(from_json(t));
            return sum(std::move(ts));
        }
        if (op == "scale") return scale(j.at("factor").get<double>(), from_json(j.at("term")));
        throw SchemaError("weight_expr: unknown op \"" + op + "\"", {"weight_expr.op"});
    }

private:
    void check_var(std::size_t d) const {
        if (var < 0 || static_cast<std::size_t>(var) >= d)
            throw DomainError("weight_expr: variable index " + std::to_string(var) +
                              " out of range for dimension " + std::to_string(d));
    }
};

} // namespace polypot
