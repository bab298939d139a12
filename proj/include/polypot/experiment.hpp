#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "polypot/csv.hpp"
#include "polypot/errors.hpp"
#include "polypot/extremal.hpp"
#include "polypot/field.hpp"
#include "polypot/geometry.hpp"
#include "polypot/law.hpp"

namespace polypot {

enum class ExperimentKind {
    zero_measure,
    potential_l1,
    jn_growth,
    bm_constant,
    cheb_scan,
    tail_boundary
};

inline std::string kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::zero_measure: return "zero-measure";
        case ExperimentKind::potential_l1: return "potential-l1";
        case ExperimentKind::jn_growth: return "jn-growth";
        case ExperimentKind::bm_constant: return "bm-constant";
        case ExperimentKind::cheb_scan: return "cheb-scan";
        case ExperimentKind::tail_boundary: return "tail-boundary";
    }
    return "?";
}

/// One experiment: geometry + law + schedule + grid + seed + kind-specific
/// parameters, parsed from a single JSON document.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::zero_measure;
    WeightedSet geometry;
    CoefficientLaw law;
    bool has_law = false;
    std::vector<int> n_schedule;
    int trials = 1;
    GridSpec grid;
    std::uint64_t seed = 0;
    std::string output_dir;
    int precision_bits = 256;

    // kind-specific parameters
    double annulus_r0 = 0.9, annulus_r1 = 1.1;   // zero-measure
    double inner_radius = 0.75;                  // zero-measure
    std::vector<std::complex<double>> z_points;  // jn-growth
    double epsilon = 0.1;                        // jn-growth
    double kn_offset = 0.1;                      // jn-growth
    std::string reference = "auto";              // potential/jn reference tag
    std::vector<double> direction;               // cheb-scan
    double dev_threshold = 0.2;                  // tail-boundary / potential exceed stat
    bool dump_zeros = false;
    bool dump_fields = false;

    Json thresholds;  // optional acceptance thresholds (kept in config, not code)
    Json raw;         // original document (echoed into reports)
    std::string config_hash;

    bool needs_trials() const {
        return kind == ExperimentKind::zero_measure || kind == ExperimentKind::potential_l1 ||
               kind == ExperimentKind::tail_boundary;
    }
};

/// Reference extremal function for the config's geometry (or the explicit
/// "reference" override).
inline ReferenceExtremal resolve_reference(const ExperimentConfig& cfg) {
    const std::string& r = cfg.reference;
    if (r == "circle") return ReferenceExtremal::circle(cfg.geometry.radius);
    if (r == "interval") return ReferenceExtremal::interval(cfg.geometry.a, cfg.geometry.b);
    if (r == "ginibre") return ReferenceExtremal::ginibre();
    // auto
    const WeightedSet& g = cfg.geometry;
    if (g.kind == SetKind::circle && g.weight.is_zero())
        return ReferenceExtremal::circle(g.radius);
    if (g.kind == SetKind::interval && g.weight.is_zero())
        return ReferenceExtremal::interval(g.a, g.b);
    if (g.kind == SetKind::disk && g.radius == 1.0 &&
        g.weight.op == WeightExpr::Op::abs2_var && g.weight.var == 0)
        return ReferenceExtremal::ginibre();
    if (g.kind == SetKind::polydisk && g.weight.is_zero())
        return ReferenceExtremal::circle(1.0); // slice w = 0 of the polydisk
    throw SchemaError("no reference extremal function for this geometry; set \"reference\"",
                      {"reference"});
}

inline ExperimentConfig parse_config(const Json& j) {
    std::vector<std::string> bad;
    ExperimentConfig cfg;
    cfg.raw = j;
    if (!j.is_object()) throw SchemaError("config: expected a JSON object", {"config"});

    const std::string kind = j.value("kind", "");
    if (kind == "zero-measure") cfg.kind = ExperimentKind::zero_measure;
    else if (kind == "potential-l1") cfg.kind = ExperimentKind::potential_l1;
    else if (kind == "jn-growth") cfg.kind = ExperimentKind::jn_growth;
    else if (kind == "bm-constant") cfg.kind = ExperimentKind::bm_constant;
    else if (kind == "cheb-scan") cfg.kind = ExperimentKind::cheb_scan;
    else if (kind == "tail-boundary") cfg.kind = ExperimentKind::tail_boundary;
    else bad.push_back("kind");

    if (j.contains("geometry")) {
        try {
            cfg.geometry = WeightedSet::from_json(j["geometry"]);
        } catch (const SchemaError& e) {
            for (const auto& f : e.fields()) bad.push_back("geometry." + f);
        }
    } else {
        bad.push_back("geometry");
    }

    if (j.contains("law")) {
        try {
            cfg.law = CoefficientLaw::from_json(j["law"]);
            cfg.has_law = true;
        } catch (const SchemaError& e) {
            for (const auto& f : e.fields()) bad.push_back(f);
        }
    }

    if (j.contains("n_schedule") && j["n_schedule"].is_array() && !j["n_schedule"].empty()) {
        int prev = 0;
        bool ok = true;
        for (const auto& v : j["n_schedule"]) {
            if (!v.is_number_integer() || v.get<int>() <= prev) {
                ok = false;
                break;
            }
            prev = v.get<int>();
            cfg.n_schedule.push_back(prev);
        }
        if (!ok) {
            cfg.n_schedule.clear();
            bad.push_back("n_schedule");
        }
    } else {
        bad.push_back("n_schedule");
    }

    cfg.trials = j.value("trials", 1);
    if (cfg.trials < 1) bad.push_back("trials");

    if (j.contains("grid")) {
        try {
            cfg.grid = GridSpec::from_json(j["grid"]);
        } catch (const SchemaError& e) {
            for (const auto& f : e.fields()) bad.push_back(f);
        }
    }

    if (j.contains("seed")) {
        if (j["seed"].is_number_unsigned() || j["seed"].is_number_integer())
            cfg.seed = j["seed"].get<std::uint64_t>();
        else
            bad.push_back("seed");
    }
    cfg.output_dir = j.value("output_dir", "");
    if (cfg.output_dir.empty()) bad.push_back("output_dir");

    cfg.precision_bits = j.value("precision_bits", 256);
    if (cfg.precision_bits < 64 || cfg.precision_bits > 512) bad.push_back("precision_bits");

    const Json params = j.value("params", Json::object());
    if (params.contains("annulus")) {
        const auto& a = params["annulus"];
        if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number() &&
            a[0].get<double>() < a[1].get<double>()) {
            cfg.annulus_r0 = a[0].get<double>();
            cfg.annulus_r1 = a[1].get<double>();
        } else {
            bad.push_back("params.annulus");
        }
    }
    cfg.inner_radius = params.value("inner_radius", cfg.inner_radius);
    cfg.epsilon = params.value("epsilon", cfg.epsilon);
    cfg.kn_offset = params.value("kn_offset", cfg.kn_offset);
    cfg.reference = params.value("reference", cfg.reference);
    cfg.dev_threshold = params.value("dev_threshold", cfg.dev_threshold);
    cfg.dump_zeros = params.value("dump_zeros", false);
    cfg.dump_fields = params.value("dump_fields", false);
    if (params.contains("z_points")) {
        const auto& zp = params["z_points"];
        if (!zp.is_array()) {
            bad.push_back("params.z_points");
        } else {
            for (const auto& p : zp) {
                if (p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number())
                    cfg.z_points.emplace_back(p[0].get<double>(), p[1].get<double>());
                else if (p.is_number())
                    cfg.z_points.emplace_back(p.get<double>(), 0.0);
                else {
                    bad.push_back("params.z_points");
                    break;
                }
            }
        }
    }
    if (params.contains("direction")) {
        const auto& d = params["direction"];
        if (d.is_array() && d.size() == 2 && d[0].is_number() && d[1].is_number()) {
            cfg.direction = {d[0].get<double>(), d[1].get<double>()};
            if (cfg.direction[0] < 0 || cfg.direction[1] < 0 ||
                std::fabs(cfg.direction[0] + cfg.direction[1] - 1.0) > 1e-9)
                bad.push_back("params.direction");
        } else {
            bad.push_back("params.direction");
        }
    }

    // kind-specific requirements
    if (bad.empty()) {
        if (cfg.needs_trials() && !cfg.has_law) bad.push_back("law");
        if (cfg.kind == ExperimentKind::jn_growth && cfg.z_points.empty())
            bad.push_back("params.z_points");
        if (cfg.kind == ExperimentKind::cheb_scan && cfg.direction.empty())
            bad.push_back("params.direction");
        if ((cfg.kind == ExperimentKind::potential_l1 || cfg.kind == ExperimentKind::jn_growth ||
             cfg.kind == ExperimentKind::tail_boundary)) {
            try {
                resolve_reference(cfg);
            } catch (const SchemaError&) {
                bad.push_back("params.reference");
            }
        }
    }

    if (j.contains("thresholds")) {
        if (j["thresholds"].is_object())
            cfg.thresholds = j["thresholds"];
        else
            bad.push_back("thresholds");
    }

    if (!bad.empty()) {
        std::string msg = "config: invalid or missing fields:";
        for (const auto& f : bad) msg += " " + f;
        throw SchemaError(msg, bad);
    }

    Json canon = cfg.raw;
    canon.erase("output_dir");
    cfg.config_hash = fnv1a_hex(canon.dump());
    return cfg;
}

} // namespace polypot
